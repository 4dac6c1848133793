#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace depcov {

// Tolerance for "masses sum to one" checks.
inline constexpr double kMassTolerance = 1e-12;

// Below this, a marginal's distance variance counts as degenerate and the
// correlation is reported as 0 instead of dividing by noise.
inline constexpr double kDegenerateThreshold = 1e-14;

// One support point of a discrete bivariate distribution.
struct Atom {
    double x = 0.0;
    double y = 0.0;
    double p = 0.0;
};

// Finitely supported joint distribution of (X, Y). `atoms` is kept sorted by
// (x, y) with exact-duplicate points merged once validate() has run.
struct DiscreteBivariate {
    std::vector<Atom> atoms;

    // Checks masses (> 0, sum to 1 within kMassTolerance) and coordinates
    // (finite), then sorts and merges duplicate support points in place.
    // Throws Error on violation.
    void validate();

    std::size_t size() const { return atoms.size(); }
};

// Weighted univariate distribution; the (value, mass) pairs of one margin.
struct DiscreteMarginal {
    std::vector<double> value;
    std::vector<double> mass;

    std::size_t size() const { return value.size(); }
};

// Paired observations (x_i, y_i), i = 0..n-1.
struct PairedSample {
    std::vector<double> x;
    std::vector<double> y;

    // Requires equal lengths, n >= 2, and finite entries. Throws Error.
    void validate() const;

    std::size_t size() const { return x.size(); }
};

// Cell probabilities of a 2x2 table over {0,1} x {0,1}.
// Layout: p[i][j] = P(X = i, Y = j).
struct ContingencyTable2x2 {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;

    // Requires nonnegative cells summing to 1 within kMassTolerance.
    void validate() const;

    static ContingencyTable2x2 from_counts(double n00, double n01, double n10,
                                           double n11);

    double row0() const { return p00 + p01; }
    double row1() const { return p10 + p11; }
    double col0() const { return p00 + p10; }
    double col1() const { return p01 + p11; }
};

// How a dependence report was produced.
enum class Method {
    population_exact,
    sample_naive,
    sample_fast,
    contingency_closed_form,
};

std::string method_name(Method m);

// The four dependence summaries the toolkit reports together.
//   dcov            E[Dx * Dy] for the doubly centered distances
//   dcor            dcov normalized by the marginal distance variances
//   cov_dist        Cov(|X - X'|, |Y - Y'|), same-pair distances
//   cross_cov_dist  Cov(|X - X'|, |Y - Y''|), distances sharing one index
struct DependenceReport {
    double dcov = 0.0;
    double dcor = 0.0;
    double cov_dist = 0.0;
    double cross_cov_dist = 0.0;
    Method method = Method::population_exact;
    bool degenerate = false;
};

}  // namespace depcov
