#include "depcov/sample_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "depcov/concurrency.hpp"
#include "depcov/errors.hpp"
#include "depcov/numeric.hpp"
#include "depcov/rng.hpp"

namespace depcov {

namespace {

std::vector<double> centered_copy(std::span<const double> v) {
    std::vector<double> out(v.begin(), v.end());
    const double m = mean(out);
    for (double& e : out) e -= m;
    return out;
}

// Row sums sum_j |v_i - v_j| for every i, via one sort and prefix sums:
// with w the sorted values and P_k the sum of w before rank k, the row sum
// at rank k is w_k (2k - n) + sum(w) - 2 P_k.
std::vector<double> abs_diff_row_sums(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    KahanSum total;
    for (double e : v) total.add(e);
    const double t = total.value();

    std::vector<double> out(n);
    KahanSum prefix;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = v[order[k]];
        out[order[k]] =
            w * (2.0 * static_cast<double>(k) - static_cast<double>(n)) + t -
            2.0 * prefix.value();
        prefix.add(w);
    }
    return out;
}

// Sum over x-ordered pairs i < j of (x_j - x_i) |y_j - y_i|. Inputs must
// already be sorted by x (ascending); both arrays are consumed as merge
// buffers. The signed sum comes from running prefix sums; the correction
// for pairs with y_i > y_j is accumulated during one merge sort of y, where
// popping a right-run element pairs it with every left-run element still
// unmerged (exactly the larger-y, smaller-x-rank elements of its block).
double ordered_abs_product_sum(std::vector<double>&& xs, std::vector<double>&& ys) {
    const std::size_t n = xs.size();

    KahanSum signed_sum;
    {
        double pc = 0.0, px = 0.0, py = 0.0, pxy = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            signed_sum.add(pc * xs[j] * ys[j] - xs[j] * py - ys[j] * px + pxy);
            pc += 1.0;
            px += xs[j];
            py += ys[j];
            pxy += xs[j] * ys[j];
        }
    }

    KahanSum inv;
    std::vector<double> xalt(n), yalt(n);
    std::vector<double> sfx(n), sfy(n), sfxy(n);
    double* srcx = xs.data();
    double* srcy = ys.data();
    double* dstx = xalt.data();
    double* dsty = yalt.data();

    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            if (mid >= hi) {
                std::copy(srcx + lo, srcx + hi, dstx + lo);
                std::copy(srcy + lo, srcy + hi, dsty + lo);
                continue;
            }
            // suffix aggregates of the left run, indexed by absolute position
            double accx = 0.0, accy = 0.0, accxy = 0.0;
            for (std::size_t t = mid; t-- > lo;) {
                accx += srcx[t];
                accy += srcy[t];
                accxy += srcx[t] * srcy[t];
                sfx[t] = accx;
                sfy[t] = accy;
                sfxy[t] = accxy;
            }
            std::size_t l = lo, r = mid, o = lo;
            while (l < mid && r < hi) {
                if (srcy[l] <= srcy[r]) {
                    dstx[o] = srcx[l];
                    dsty[o] = srcy[l];
                    ++l;
                    ++o;
                } else {
                    const double xr = srcx[r];
                    const double yr = srcy[r];
                    const double c = static_cast<double>(mid - l);
                    inv.add(c * xr * yr - xr * sfy[l] - yr * sfx[l] + sfxy[l]);
                    dstx[o] = xr;
                    dsty[o] = yr;
                    ++r;
                    ++o;
                }
            }
            while (l < mid) {
                dstx[o] = srcx[l];
                dsty[o] = srcy[l];
                ++l;
                ++o;
            }
            while (r < hi) {
                dstx[o] = srcx[r];
                dsty[o] = srcy[r];
                ++r;
                ++o;
            }
        }
        std::swap(srcx, dstx);
        std::swap(srcy, dsty);
    }

    // Inversion terms carry y_j - y_i < 0, so the correction flips their
    // sign in the signed sum: subtract them twice.
    return signed_sum.value() - 2.0 * inv.value();
}

SampleMoments sample_moments_naive(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);

    std::vector<double> ax(n), ay(n), rowprod(n);
    parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double sx = 0.0, sy = 0.0, sp = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double dx = std::abs(x[i] - x[j]);
                const double dy = std::abs(y[i] - y[j]);
                sx += dx;
                sy += dy;
                sp += dx * dy;
            }
            ax[i] = sx / dn;
            ay[i] = sy / dn;
            rowprod[i] = sp;
        }
    });

    KahanSum gxs, gys, cross, prod;
    for (std::size_t i = 0; i < n; ++i) {
        gxs.add(ax[i]);
        gys.add(ay[i]);
        cross.add(ax[i] * ay[i]);
        prod.add(rowprod[i]);
    }
    SampleMoments m;
    m.mean_dx = gxs.value() / dn;
    m.mean_dy = gys.value() / dn;
    m.mean_cross = cross.value() / dn;
    m.mean_prod = prod.value() / (dn * dn);
    return m;
}

}  // namespace

CenteredDistanceMatrix centered_distance_matrix(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2)
        fail(ErrorCode::length_too_small,
             "need at least 2 values, got " + std::to_string(n));

    CenteredDistanceMatrix m;
    m.n = n;
    m.values.resize(n * n);
    m.row_means.resize(n);

    const double dn = static_cast<double>(n);
    KahanSum grand;
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum row;
        for (std::size_t j = 0; j < n; ++j) row.add(std::abs(v[i] - v[j]));
        m.row_means[i] = row.value() / dn;
        grand.add(m.row_means[i]);
    }
    m.grand_mean = grand.value() / dn;

    // (d + g) - (r_i + r_j), never d - r_i - r_j + g: the first form is
    // bit-symmetric in (i, j), so the matrix is exactly its own transpose.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.values[i * n + j] = (std::abs(v[i] - v[j]) + m.grand_mean) -
                                  (m.row_means[i] + m.row_means[j]);
    return m;
}

SampleMoments sample_moments_fast(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);

    // Distances are translation invariant; centering the coordinates keeps
    // the coordinate products in the merge pass well conditioned when the
    // data sit far from 0.
    const std::vector<double> cx = centered_copy(x);
    const std::vector<double> cy = centered_copy(y);

    const std::vector<double> rowx = abs_diff_row_sums(cx);
    const std::vector<double> rowy = abs_diff_row_sums(cy);

    KahanSum dx_total, dy_total, cross;
    for (std::size_t i = 0; i < n; ++i) {
        dx_total.add(rowx[i]);
        dy_total.add(rowy[i]);
        cross.add(rowx[i] * rowy[i]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cx[a] < cx[b]; });
    std::vector<double> xs(n), ys(n);
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = cx[order[k]];
        ys[k] = cy[order[k]];
    }
    const double pair_sum = ordered_abs_product_sum(std::move(xs), std::move(ys));

    SampleMoments m;
    m.mean_prod = 2.0 * pair_sum / (dn * dn);
    m.mean_dx = dx_total.value() / (dn * dn);
    m.mean_dy = dy_total.value() / (dn * dn);
    m.mean_cross = cross.value() / (dn * dn * dn);
    return m;
}

double dcov_naive(const PairedSample& s) {
    s.validate();
    const std::size_t n = s.size();
    const double dn = static_cast<double>(n);
    std::span<const double> x(s.x), y(s.y);

    std::vector<double> ax(n), ay(n);
    parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double sx = 0.0, sy = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                sx += std::abs(x[i] - x[j]);
                sy += std::abs(y[i] - y[j]);
            }
            ax[i] = sx / dn;
            ay[i] = sy / dn;
        }
    });
    KahanSum gxs, gys;
    for (std::size_t i = 0; i < n; ++i) {
        gxs.add(ax[i]);
        gys.add(ay[i]);
    }
    const double gx = gxs.value() / dn;
    const double gy = gys.value() / dn;

    std::vector<double> rowprod(n);
    parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double cxij = std::abs(x[i] - x[j]) - ax[i] - ax[j] + gx;
                const double cyij = std::abs(y[i] - y[j]) - ay[i] - ay[j] + gy;
                acc += cxij * cyij;
            }
            rowprod[i] = acc;
        }
    });
    KahanSum total;
    for (std::size_t i = 0; i < n; ++i) total.add(rowprod[i]);
    return total.value() / (dn * dn);
}

double dcov_fast(const PairedSample& s) {
    s.validate();
    return sample_moments_fast(s.x, s.y).dcov();
}

DcorResult dcor_sample(const PairedSample& s, SampleMethod method) {
    s.validate();
    const auto self = [&](const std::vector<double>& v) {
        PairedSample p{v, v};
        return method == SampleMethod::naive ? dcov_naive(p) : dcov_fast(p);
    };
    const double vx = self(s.x);
    const double vy = self(s.y);
    if (vx < kDegenerateThreshold || vy < kDegenerateThreshold)
        return DcorResult{0.0, true};
    const double dcov =
        method == SampleMethod::naive ? dcov_naive(s) : dcov_fast(s);
    return DcorResult{std::clamp(dcov / std::sqrt(vx * vy), 0.0, 1.0), false};
}

PairedSample difference_sample_all_pairs(const PairedSample& s) {
    s.validate();
    const std::size_t n = s.size();
    PairedSample out;
    out.x.reserve(n * n);
    out.y.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.x.push_back(s.x[i] - s.x[j]);
            out.y.push_back(s.y[i] - s.y[j]);
        }
    }
    return out;
}

PairedSample difference_sample_subsampled(const PairedSample& s, std::size_t k,
                                          std::uint64_t seed) {
    s.validate();
    const std::size_t n = s.size();
    Rng rng = make_rng(seed);
    PairedSample out;
    out.x.reserve(k);
    out.y.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t i = static_cast<std::size_t>(uniform_below(rng, n));
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, n));
        out.x.push_back(s.x[i] - s.x[j]);
        out.y.push_back(s.y[i] - s.y[j]);
    }
    return out;
}

double sample_cov_xy(const PairedSample& s) {
    s.validate();
    const double mx = mean(s.x);
    const double my = mean(s.y);
    KahanSum acc;
    for (std::size_t i = 0; i < s.size(); ++i)
        acc.add((s.x[i] - mx) * (s.y[i] - my));
    return acc.value() / static_cast<double>(s.size());
}

double pearson(const PairedSample& s) {
    s.validate();
    const double mx = mean(s.x);
    const double my = mean(s.y);
    KahanSum sxx, syy, sxy;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double dx = s.x[i] - mx;
        const double dy = s.y[i] - my;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    const double denom = sxx.value() * syy.value();
    if (denom <= 0.0) return 0.0;
    return sxy.value() / std::sqrt(denom);
}

DependenceReport sample_report(const PairedSample& s, SampleMethod method) {
    s.validate();
    DependenceReport rep;
    if (method == SampleMethod::naive) {
        const SampleMoments m = sample_moments_naive(s.x, s.y);
        rep.dcov = dcov_naive(s);
        rep.cov_dist = m.cov_dist();
        rep.cross_cov_dist = m.cross_cov();
        rep.method = Method::sample_naive;
    } else {
        const SampleMoments m = sample_moments_fast(s.x, s.y);
        rep.dcov = m.dcov();
        rep.cov_dist = m.cov_dist();
        rep.cross_cov_dist = m.cross_cov();
        rep.method = Method::sample_fast;
    }
    const DcorResult r = dcor_sample(s, method);
    rep.dcor = r.value;
    rep.degenerate = r.degenerate;
    return rep;
}

}  // namespace depcov
