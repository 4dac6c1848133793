#include "depcov/population.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "depcov/errors.hpp"

namespace depcov {

namespace {

double coord(const Atom& a, Axis which) { return which == Axis::x ? a.x : a.y; }

// Row means of a marginal against itself: out[k] = sum_j mass[j]*|v[k]-v[j]|.
std::vector<double> marginal_row_means(const DiscreteMarginal& m) {
    std::vector<double> out(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        KahanSum acc;
        for (std::size_t j = 0; j < m.size(); ++j)
            acc.add(m.mass[j] * std::abs(m.value[k] - m.value[j]));
        out[k] = acc.value();
    }
    return out;
}

// The doubly centered distance. Written as (d + g) - (mi + mj) so that the
// (i, j) and (j, i) evaluations produce bit-identical doubles and transposed
// atom pairs merge exactly.
double centered_distance(double d, double mi, double mj, double g) {
    return (d + g) - (mi + mj);
}

struct JointCentering {
    CenteringConstants cx;
    CenteringConstants cy;
    std::vector<double> mx;  // per-atom row mean on the X margin
    std::vector<double> my;
};

JointCentering joint_centering(const DiscreteBivariate& d) {
    JointCentering jc;
    jc.cx = centering_constants(d, Axis::x);
    jc.cy = centering_constants(d, Axis::y);
    jc.mx.reserve(d.size());
    jc.my.reserve(d.size());
    for (const Atom& a : d.atoms) {
        jc.mx.push_back(jc.cx.row_mean_at(a.x));
        jc.my.push_back(jc.cy.row_mean_at(a.y));
    }
    return jc;
}

}  // namespace

double CenteringConstants::row_mean_at(double v) const {
    auto it = std::lower_bound(support.begin(), support.end(), v);
    if (it == support.end() || *it != v)
        fail(ErrorCode::internal_error,
             "value " + std::to_string(v) + " is not a support point");
    return row_mean[static_cast<std::size_t>(it - support.begin())];
}

DiscreteMarginal marginal(const DiscreteBivariate& d, Axis which) {
    std::vector<std::pair<double, double>> vm;
    vm.reserve(d.size());
    for (const Atom& a : d.atoms) vm.emplace_back(coord(a, which), a.p);
    std::sort(vm.begin(), vm.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    DiscreteMarginal out;
    for (const auto& [v, p] : vm) {
        if (!out.value.empty() && out.value.back() == v) {
            out.mass.back() += p;
        } else {
            out.value.push_back(v);
            out.mass.push_back(p);
        }
    }
    return out;
}

CenteringConstants centering_constants(const DiscreteBivariate& d, Axis which) {
    const DiscreteMarginal m = marginal(d, which);
    CenteringConstants c;
    c.support = m.value;
    c.row_mean = marginal_row_means(m);
    KahanSum grand;
    for (std::size_t k = 0; k < m.size(); ++k) grand.add(m.mass[k] * c.row_mean[k]);
    c.grand_mean = grand.value();
    return c;
}

DiscreteBivariate pairwise_abs_diff_distribution(const DiscreteBivariate& d) {
    DiscreteBivariate out;
    out.atoms.reserve(d.size() * d.size());
    for (const Atom& ai : d.atoms)
        for (const Atom& aj : d.atoms)
            out.atoms.push_back(
                Atom{std::abs(ai.x - aj.x), std::abs(ai.y - aj.y), ai.p * aj.p});
    out.validate();
    return out;
}

DiscreteBivariate doubly_centered_distribution(const DiscreteBivariate& d) {
    const JointCentering jc = joint_centering(d);
    const double gx = jc.cx.grand_mean;
    const double gy = jc.cy.grand_mean;

    DiscreteBivariate out;
    out.atoms.reserve(d.size() * d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double dx = std::abs(d.atoms[i].x - d.atoms[j].x);
            const double dy = std::abs(d.atoms[i].y - d.atoms[j].y);
            out.atoms.push_back(Atom{centered_distance(dx, jc.mx[i], jc.mx[j], gx),
                                     centered_distance(dy, jc.my[i], jc.my[j], gy),
                                     d.atoms[i].p * d.atoms[j].p});
        }
    }
    out.validate();
    return out;
}

double pop_cov_distances(const DiscreteBivariate& d) {
    const DiscreteBivariate diff = pairwise_abs_diff_distribution(d);
    KahanSum exy, ex, ey;
    for (const Atom& a : diff.atoms) {
        exy.add(a.p * a.x * a.y);
        ex.add(a.p * a.x);
        ey.add(a.p * a.y);
    }
    return exy.value() - ex.value() * ey.value();
}

double pop_cross_cov(const DiscreteBivariate& d) {
    // E[|X - X'| |Y - Y''|] by the literal triple sum: atom i carries the
    // joint (X, Y), atom j the copy behind X', atom k the copy behind Y''.
    KahanSum s3;
    for (const Atom& ai : d.atoms)
        for (const Atom& aj : d.atoms)
            for (const Atom& ak : d.atoms)
                s3.add(ai.p * aj.p * ak.p * std::abs(ai.x - aj.x) *
                       std::abs(ai.y - ak.y));

    const double gx = centering_constants(d, Axis::x).grand_mean;
    const double gy = centering_constants(d, Axis::y).grand_mean;
    return s3.value() - gx * gy;
}

DcovRoutes pop_dcov_routes(const DiscreteBivariate& d) {
    DcovRoutes r;

    KahanSum def;
    for (const Atom& a : doubly_centered_distribution(d).atoms)
        def.add(a.p * a.x * a.y);
    r.definition = def.value();

    KahanSum s1;
    for (const Atom& a : pairwise_abs_diff_distribution(d).atoms)
        s1.add(a.p * a.x * a.y);
    const double gx = centering_constants(d, Axis::x).grand_mean;
    const double gy = centering_constants(d, Axis::y).grand_mean;
    const double cross = pop_cross_cov(d);
    const double s3 = cross + gx * gy;
    r.three_term = s1.value() + gx * gy - 2.0 * s3;

    r.two_term = pop_cov_distances(d) - 2.0 * cross;
    return r;
}

double pop_dcov(const DiscreteBivariate& d) {
    const DcovRoutes r = pop_dcov_routes(d);
    assert(std::abs(r.definition - r.three_term) <= 1e-12 * std::max(1.0, std::abs(r.definition)));
    assert(std::abs(r.definition - r.two_term) <= 1e-12 * std::max(1.0, std::abs(r.definition)));
    return r.definition;
}

double pop_distance_variance(const DiscreteMarginal& m) {
    const std::vector<double> row = marginal_row_means(m);
    KahanSum grand;
    for (std::size_t k = 0; k < m.size(); ++k) grand.add(m.mass[k] * row[k]);
    const double g = grand.value();

    KahanSum acc;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double c =
                centered_distance(std::abs(m.value[i] - m.value[j]), row[i], row[j], g);
            acc.add(m.mass[i] * m.mass[j] * c * c);
        }
    }
    return acc.value();
}

DcorResult pop_dcor(const DiscreteBivariate& d) {
    const double vx = pop_distance_variance(marginal(d, Axis::x));
    const double vy = pop_distance_variance(marginal(d, Axis::y));
    if (vx < kDegenerateThreshold || vy < kDegenerateThreshold)
        return DcorResult{0.0, true};
    const double r = pop_dcov(d) / std::sqrt(vx * vy);
    return DcorResult{std::clamp(r, 0.0, 1.0), false};
}

double pop_cov_xy(const DiscreteBivariate& d) {
    KahanSum exy, ex, ey;
    for (const Atom& a : d.atoms) {
        exy.add(a.p * a.x * a.y);
        ex.add(a.p * a.x);
        ey.add(a.p * a.y);
    }
    return exy.value() - ex.value() * ey.value();
}

LineFit pop_regression_line(const DiscreteBivariate& d) {
    const DiscreteBivariate dc = doubly_centered_distribution(d);
    KahanSum sxy, sxx, sx, sy;
    for (const Atom& a : dc.atoms) {
        sxy.add(a.p * a.x * a.y);
        sxx.add(a.p * a.x * a.x);
        sx.add(a.p * a.x);
        sy.add(a.p * a.y);
    }
    const double mx = sx.value();
    const double my = sy.value();
    const double varx = sxx.value() - mx * mx;
    if (varx < kDegenerateThreshold) return LineFit{0.0, my};
    const double slope = (sxy.value() - mx * my) / varx;
    return LineFit{slope, my - slope * mx};
}

double contingency_dcov(const ContingencyTable2x2& t) {
    const double r[2] = {t.row0(), t.row1()};
    const double c[2] = {t.col0(), t.col1()};
    const double p[2][2] = {{t.p00, t.p01}, {t.p10, t.p11}};
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double dev = p[i][j] - r[i] * c[j];
            acc += dev * dev;
        }
    return acc;
}

double contingency_cov_dist(const ContingencyTable2x2& t) {
    return 2.0 * (t.p00 * t.p11 + t.p01 * t.p10 -
                  2.0 * t.row0() * t.row1() * t.col0() * t.col1());
}

double contingency_chisq_pop(const ContingencyTable2x2& t) {
    const double r[2] = {t.row0(), t.row1()};
    const double c[2] = {t.col0(), t.col1()};
    const double p[2][2] = {{t.p00, t.p01}, {t.p10, t.p11}};
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double expected = r[i] * c[j];
            if (expected == 0.0)
                fail(ErrorCode::degenerate_marginal,
                     "marginal product p" + std::to_string(i) + ".p." + std::to_string(j) +
                         " is zero");
            const double rel = (p[i][j] - expected) / expected;
            acc += rel * rel;
        }
    return acc;
}

DiscreteBivariate contingency_to_bivariate(const ContingencyTable2x2& t) {
    DiscreteBivariate d;
    const double p[2][2] = {{t.p00, t.p01}, {t.p10, t.p11}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (p[i][j] > 0.0)
                d.atoms.push_back(Atom{static_cast<double>(i), static_cast<double>(j), p[i][j]});
    d.validate();
    return d;
}

DependenceReport pop_report(const DiscreteBivariate& d) {
    DependenceReport rep;
    rep.dcov = pop_dcov(d);
    const DcorResult dc = pop_dcor(d);
    rep.dcor = dc.value;
    rep.degenerate = dc.degenerate;
    rep.cov_dist = pop_cov_distances(d);
    rep.cross_cov_dist = pop_cross_cov(d);
    rep.method = Method::population_exact;
    return rep;
}

DependenceReport contingency_report(const ContingencyTable2x2& t) {
    t.validate();
    DependenceReport rep;
    rep.dcov = contingency_dcov(t);
    rep.cov_dist = contingency_cov_dist(t);
    // two-term identity: dcov = cov_dist - 2 * cross_cov
    rep.cross_cov_dist = (rep.cov_dist - rep.dcov) / 2.0;
    rep.method = Method::contingency_closed_form;

    DiscreteMarginal mx, my;
    mx.value = {0.0, 1.0};
    mx.mass = {t.row0(), t.row1()};
    my.value = {0.0, 1.0};
    my.mass = {t.col0(), t.col1()};
    const double vx = pop_distance_variance(mx);
    const double vy = pop_distance_variance(my);
    if (vx < kDegenerateThreshold || vy < kDegenerateThreshold) {
        rep.dcor = 0.0;
        rep.degenerate = true;
    } else {
        rep.dcor = std::clamp(rep.dcov / std::sqrt(vx * vy), 0.0, 1.0);
        rep.degenerate = false;
    }
    return rep;
}

}  // namespace depcov
