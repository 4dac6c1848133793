#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "depcov/generators.hpp"
#include "depcov/perm_test.hpp"
#include "depcov/population.hpp"
#include "depcov/rng.hpp"
#include "depcov/sample_stats.hpp"

using namespace depcov;

namespace {

PairedSample example1_sample() {
    return PairedSample{{-1.0, 1.0, 0.0, 0.0}, {1.0, 1.0, 0.6, -1.0}};
}

double equivalence_tolerance(const PairedSample& s) {
    const auto [xmin, xmax] = std::minmax_element(s.x.begin(), s.x.end());
    const auto [ymin, ymax] = std::minmax_element(s.y.begin(), s.y.end());
    return std::max(1e-10, 1e-12 * (*xmax - *xmin) * (*ymax - *ymin));
}

PairedSample random_sample(Rng& rng, std::size_t n, int flavor) {
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (flavor % 4) {
            case 0:  // continuous, dependent
                s.x[i] = normal(rng);
                s.y[i] = s.x[i] * s.x[i] + 0.5 * normal(rng);
                break;
            case 1:  // heavy ties on both margins
                s.x[i] = static_cast<double>(uniform_below(rng, 5));
                s.y[i] = static_cast<double>(uniform_below(rng, 3));
                break;
            case 2:  // large common offset
                s.x[i] = 1e6 + uniform_unit(rng);
                s.y[i] = -1e6 + uniform_unit(rng);
                break;
            default:  // one constant margin
                s.x[i] = uniform_unit(rng);
                s.y[i] = 42.0;
                break;
        }
    }
    return s;
}

// The cross moment spelled out as the O(n^3) triple sum it abbreviates.
double cross_moment_triple_sum(const PairedSample& s) {
    const std::size_t n = s.size();
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                acc.add(std::abs(s.x[i] - s.x[j]) * std::abs(s.y[i] - s.y[k]));
    const double nn = static_cast<double>(n);
    return acc.value() / (nn * nn * nn);
}

}  // namespace

TEST_CASE("centered distance matrix on two points") {
    const std::vector<double> v{0.0, 1.0};
    const CenteredDistanceMatrix m = centered_distance_matrix(v);
    REQUIRE(m.n == 2);
    CHECK(m.at(0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(m.at(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.at(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.at(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(m.grand_mean == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("centered distance matrix row and column sums vanish") {
    Rng rng = make_rng(17);
    std::vector<double> v(120);
    for (double& e : v) e = 10.0 * uniform_unit(rng) - 5.0;
    const CenteredDistanceMatrix m = centered_distance_matrix(v);
    for (std::size_t i = 0; i < m.n; ++i) {
        KahanSum row, col;
        for (std::size_t j = 0; j < m.n; ++j) {
            row.add(m.at(i, j));
            col.add(m.at(j, i));
            CHECK(m.at(i, j) == m.at(j, i));
        }
        CHECK(std::abs(row.value()) <= static_cast<double>(m.n) * 1e-10);
        CHECK(std::abs(col.value()) <= static_cast<double>(m.n) * 1e-10);
    }

    const std::vector<double> flat(8, 3.25);
    const CenteredDistanceMatrix z = centered_distance_matrix(flat);
    for (double e : z.values) CHECK(e == 0.0);

    CHECK_THROWS_AS(centered_distance_matrix(std::vector<double>{1.0}), Error);
}

TEST_CASE("duplicating the counterexample atoms reproduces its population centering") {
    // Each atom twice: the empirical distribution equals the population one,
    // so the matrix must contain the population's centered distances.
    const std::vector<double> x8{-1, -1, 1, 1, 0, 0, 0, 0};
    const CenteredDistanceMatrix m = centered_distance_matrix(x8);
    CHECK(m.grand_mean == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(m.at(0, 0) == doctest::Approx(-1.25).epsilon(1e-14));  // (-1,-1)
    CHECK(m.at(0, 2) == doctest::Approx(0.75).epsilon(1e-14));   // (-1, 1)
    CHECK(m.at(0, 4) == doctest::Approx(0.25).epsilon(1e-14));   // (-1, 0)
    CHECK(m.at(4, 5) == doctest::Approx(-0.25).epsilon(1e-14));  // ( 0, 0)
}

TEST_CASE("estimators on the counterexample sample") {
    const PairedSample s = example1_sample();
    CHECK(dcov_naive(s) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dcov_fast(s) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(sample_cov_xy(s) == doctest::Approx(0.0).epsilon(1e-12));

    const DependenceReport fast = sample_report(s, SampleMethod::fast);
    CHECK(fast.method == Method::sample_fast);
    CHECK(fast.dcov == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(std::abs(fast.cov_dist) <= 1e-10);
    CHECK(fast.cross_cov_dist == doctest::Approx(-0.05).epsilon(1e-10));

    const DependenceReport naive = sample_report(s, SampleMethod::naive);
    CHECK(naive.method == Method::sample_naive);
    CHECK(naive.dcov == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("two points have dcov |dx||dy| / 4") {
    Rng rng = make_rng(3);
    for (int rep = 0; rep < 25; ++rep) {
        const double x0 = 10.0 * uniform_unit(rng) - 5.0;
        const double x1 = 10.0 * uniform_unit(rng) - 5.0;
        const double y0 = 10.0 * uniform_unit(rng) - 5.0;
        const double y1 = 10.0 * uniform_unit(rng) - 5.0;
        const PairedSample s{{x0, x1}, {y0, y1}};
        const double want = std::abs(x0 - x1) * std::abs(y0 - y1) / 4.0;
        CHECK(dcov_naive(s) == doctest::Approx(want).epsilon(1e-12).scale(1));
        CHECK(dcov_fast(s) == doctest::Approx(want).epsilon(1e-10).scale(1));
    }
}

TEST_CASE("a constant margin forces dcov to zero") {
    Rng rng = make_rng(8);
    PairedSample s;
    for (int i = 0; i < 60; ++i) {
        s.x.push_back(uniform_unit(rng));
        s.y.push_back(-7.0);
    }
    CHECK(std::abs(dcov_naive(s)) <= 1e-14);
    CHECK(std::abs(dcov_fast(s)) <= 1e-14);
    const DcorResult r = dcor_sample(s, SampleMethod::fast);
    CHECK(r.degenerate);
    CHECK(r.value == 0.0);
}

TEST_CASE("fast and naive estimators agree across sizes and data shapes") {
    Rng rng = make_rng(20260815);
    int flavor = 0;
    for (std::size_t n : {2, 3, 5, 10, 100, 1000, 8192}) {
        const PairedSample s = random_sample(rng, n, flavor++);
        const double naive = dcov_naive(s);
        const double fast = dcov_fast(s);
        CHECK(std::abs(fast - naive) <= equivalence_tolerance(s));
        CHECK(naive >= -1e-12);
        CHECK(fast >= -1e-12);
    }
}

TEST_CASE("three-term moments match their brute-force definitions") {
    Rng rng = make_rng(91);
    for (std::size_t n : {2, 7, 23, 40}) {
        PairedSample s;
        for (std::size_t i = 0; i < n; ++i) {
            s.x.push_back(normal(rng));
            s.y.push_back(normal(rng) + 0.3 * s.x.back());
        }
        const SampleMoments m = sample_moments_fast(s.x, s.y);

        KahanSum prod, dx, dy;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double ax = std::abs(s.x[i] - s.x[j]);
                const double ay = std::abs(s.y[i] - s.y[j]);
                prod.add(ax * ay);
                dx.add(ax);
                dy.add(ay);
            }
        const double nn = static_cast<double>(n) * static_cast<double>(n);
        CHECK(m.mean_prod == doctest::Approx(prod.value() / nn).epsilon(1e-10));
        CHECK(m.mean_dx == doctest::Approx(dx.value() / nn).epsilon(1e-10));
        CHECK(m.mean_dy == doctest::Approx(dy.value() / nn).epsilon(1e-10));
        CHECK(m.mean_cross ==
              doctest::Approx(cross_moment_triple_sum(s)).epsilon(1e-10));
        CHECK(m.dcov() == doctest::Approx(dcov_naive(s)).epsilon(1e-9).scale(1));
    }
}

TEST_CASE("dcov is invariant under joint reordering of the pairs") {
    Rng rng = make_rng(2718);
    PairedSample s = random_sample(rng, 200, 0);
    const double base_naive = dcov_naive(s);
    const double base_fast = dcov_fast(s);

    const auto perm = random_permutation(rng, s.size());
    PairedSample shuffled;
    for (std::uint32_t idx : perm) {
        shuffled.x.push_back(s.x[idx]);
        shuffled.y.push_back(s.y[idx]);
    }
    CHECK(dcov_naive(shuffled) == doctest::Approx(base_naive).epsilon(1e-12));
    CHECK(dcov_fast(shuffled) == doctest::Approx(base_fast).epsilon(1e-12));
}

TEST_CASE("dcov scales by |a||b|, dcor stays put") {
    Rng rng = make_rng(14142);
    const PairedSample s = random_sample(rng, 150, 0);
    const double base = dcov_naive(s);
    const double base_dcor = dcor_sample(s, SampleMethod::fast).value;

    for (const auto& [a, b] : std::vector<std::pair<double, double>>{
             {2.0, 3.0}, {-1.5, 0.25}, {-0.1, -10.0}}) {
        PairedSample t = s;
        for (double& v : t.x) v = a * v + 4.0;
        for (double& v : t.y) v = b * v - 9.0;
        CHECK(dcov_naive(t) ==
              doctest::Approx(std::abs(a) * std::abs(b) * base).epsilon(1e-9).scale(1));
        CHECK(dcor_sample(t, SampleMethod::fast).value ==
              doctest::Approx(base_dcor).epsilon(1e-9));
    }
}

TEST_CASE("dcor of a variable with itself is one") {
    Rng rng = make_rng(5);
    PairedSample s;
    for (int i = 0; i < 80; ++i) {
        s.x.push_back(normal(rng));
        s.y.push_back(s.x.back());
    }
    CHECK(dcor_sample(s, SampleMethod::fast).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dcor_sample(s, SampleMethod::naive).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dcor on the deterministic parabola grid") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::uniform_parabola_grid;
    spec.n = 101;
    const PairedSample s = generate(spec);
    const DcorResult fast = dcor_sample(s, SampleMethod::fast);
    CHECK_FALSE(fast.degenerate);
    CHECK(fast.value == doctest::Approx(0.24159748380828353).epsilon(1e-9));
    const DcorResult naive = dcor_sample(s, SampleMethod::naive);
    CHECK(naive.value == doctest::Approx(fast.value).epsilon(1e-9));
}

TEST_CASE("difference sample enumerates all ordered pairs") {
    const PairedSample s{{0.0, 1.0}, {0.0, 1.0}};
    const PairedSample d = difference_sample_all_pairs(s);
    REQUIRE(d.size() == 4);
    std::vector<std::pair<double, double>> got;
    for (std::size_t i = 0; i < d.size(); ++i) got.emplace_back(d.x[i], d.y[i]);
    std::sort(got.begin(), got.end());
    const std::vector<std::pair<double, double>> want{
        {-1.0, -1.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}};
    CHECK(got == want);

    const PairedSample s3{{0.0, 1.0, 5.0}, {2.0, 4.0, 8.0}};
    CHECK(difference_sample_all_pairs(s3).size() == 9);
}

TEST_CASE("subsampled differences are deterministic and drawn from the grid") {
    Rng rng = make_rng(63);
    const PairedSample s = random_sample(rng, 30, 0);
    const PairedSample d1 = difference_sample_subsampled(s, 500, 77);
    const PairedSample d2 = difference_sample_subsampled(s, 500, 77);
    REQUIRE(d1.size() == 500);
    CHECK(d1.x == d2.x);
    CHECK(d1.y == d2.y);

    const PairedSample all = difference_sample_all_pairs(s);
    std::vector<std::pair<double, double>> grid;
    for (std::size_t i = 0; i < all.size(); ++i) grid.emplace_back(all.x[i], all.y[i]);
    std::sort(grid.begin(), grid.end());
    for (std::size_t i = 0; i < d1.size(); ++i)
        CHECK(std::binary_search(grid.begin(), grid.end(),
                                 std::make_pair(d1.x[i], d1.y[i])));

    const PairedSample d3 = difference_sample_subsampled(s, 500, 78);
    CHECK(d1.x != d3.x);
}

TEST_CASE("pearson basics") {
    PairedSample line{{0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0}};
    CHECK(pearson(line) == doctest::Approx(1.0).epsilon(1e-12));
    for (double& v : line.y) v = -v;
    CHECK(pearson(line) == doctest::Approx(-1.0).epsilon(1e-12));

    const PairedSample flat{{1.0, 1.0, 1.0}, {0.0, 2.0, 5.0}};
    CHECK(pearson(flat) == 0.0);
}

TEST_CASE("validation errors surface from the estimators") {
    PairedSample mismatch{{1.0, 2.0}, {1.0}};
    CHECK_THROWS_AS(dcov_naive(mismatch), Error);
    PairedSample tiny{{1.0}, {2.0}};
    CHECK_THROWS_AS(dcov_fast(tiny), Error);
}

TEST_CASE("sample dcov converges to the population value") {
    // One draw from the 4-atom counterexample; the acceptance suite runs the
    // full five-seed version of this check.
    GeneratorSpec spec;
    spec.kind = GeneratorKind::discrete;
    spec.n = 20000;
    spec.seed = derive_seed(99, 1);
    spec.dist.atoms = {Atom{-1.0, 1.0, 0.25}, Atom{1.0, 1.0, 0.25},
                       Atom{0.0, 0.6, 0.25}, Atom{0.0, -1.0, 0.25}};
    spec.dist.validate();
    const PairedSample s = generate(spec);
    CHECK(dcov_fast(s) == doctest::Approx(0.1).epsilon(0.1));
}

TEST_CASE("difference pairs of independent margins stay independent") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::gaussian_pair;
    spec.n = 300;
    spec.seed = 9001;
    const PairedSample s = generate(spec);

    // (x_i - x_j, y_k): the X difference against an unrelated Y coordinate.
    PairedSample d1 = difference_sample_subsampled(s, 3000, 501);
    for (std::size_t i = 0; i < d1.size(); ++i) d1.y[i] = s.y[i % s.size()];
    PermTestConfig cfg;
    cfg.m = 999;
    cfg.seed = 502;
    CHECK(perm_test(d1, cfg).p_hat > 0.01);

    // (x_i - x_j, y_i - y_j): both margins differenced.
    const PairedSample d2 = difference_sample_subsampled(s, 3000, 503);
    cfg.seed = 504;
    CHECK(perm_test(d2, cfg).p_hat > 0.01);
}
