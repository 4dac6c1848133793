#pragma once

#include <vector>

#include "depcov/numeric.hpp"
#include "depcov/types.hpp"

// Exact dependence measures for finitely supported bivariate distributions.
// Everything here is a finite weighted sum over atoms; no sampling, no
// approximation beyond double arithmetic.
//
// Conventions: dcov is the mean of the product of doubly centered distances
// (no square root), dcor = dcov / sqrt(dcov_xx * dcov_yy) and lies in [0, 1].

namespace depcov {

enum class Axis { x, y };

// Centering data of one margin: for each support point v, the expected
// distance E|v - V'| to an independent copy, plus the grand mean E|V' - V''|.
struct CenteringConstants {
    std::vector<double> support;   // sorted, unique
    std::vector<double> row_mean;  // row_mean[k] = E|support[k] - V'|
    double grand_mean = 0.0;

    // Exact-match lookup of E|v - V'|; v must be a support point.
    double row_mean_at(double v) const;
};

// Masses of d grouped by the chosen coordinate, sorted ascending.
DiscreteMarginal marginal(const DiscreteBivariate& d, Axis which);

CenteringConstants centering_constants(const DiscreteBivariate& d, Axis which);

// Distribution of (|X - X'|, |Y - Y'|) for an independent copy (X', Y').
// Coinciding value pairs merge, so the atom count reflects the distinct
// distance pairs, not the number of ordered atom pairs.
DiscreteBivariate pairwise_abs_diff_distribution(const DiscreteBivariate& d);

// Distribution of the doubly centered pair (D(X,X'), D(Y,Y')) where
// D(v,v') = |v - v'| - E|v - V| - E|v' - V| + E|V - V'|. Both margins of the
// result have mean 0.
DiscreteBivariate doubly_centered_distribution(const DiscreteBivariate& d);

// Cov(|X - X'|, |Y - Y'|): distances of one shared pair of copies.
double pop_cov_distances(const DiscreteBivariate& d);

// Cov(|X - X'|, |Y - Y''|): the X distance and the Y distance use different
// second copies. The correction term that turns pop_cov_distances into dcov.
double pop_cross_cov(const DiscreteBivariate& d);

// The same dcov computed three ways. All three agree to rounding error;
// pop_dcov asserts that in debug builds, tests enforce it always.
//   definition   mean of D(X,X')*D(Y,Y') over doubly_centered_distribution
//   three_term   E|dX||dY| + E|dX|E|dY| - 2E[|X-X'||Y-Y''|]
//   two_term     pop_cov_distances - 2*pop_cross_cov
struct DcovRoutes {
    double definition = 0.0;
    double three_term = 0.0;
    double two_term = 0.0;
};
DcovRoutes pop_dcov_routes(const DiscreteBivariate& d);

double pop_dcov(const DiscreteBivariate& d);

struct DcorResult {
    double value = 0.0;
    bool degenerate = false;
};

// dcov normalized by the marginal distance variances; (0, true) when either
// margin is within kDegenerateThreshold of constant.
DcorResult pop_dcor(const DiscreteBivariate& d);

// E[D(V,V')^2] of a single margin: the dcov of a variable with itself.
double pop_distance_variance(const DiscreteMarginal& m);

// Plain covariance E[XY] - E[X]E[Y] of the joint distribution.
double pop_cov_xy(const DiscreteBivariate& d);

// Weighted least-squares line of D(Y,Y') on D(X,X'). Both variables have
// mean 0, so the fit passes through the origin and its slope has the sign
// of dcov.
LineFit pop_regression_line(const DiscreteBivariate& d);

// Closed forms for a 2x2 table of Bernoulli cell probabilities. Each equals
// the generic routine applied to contingency_to_bivariate(t).
double contingency_dcov(const ContingencyTable2x2& t);
double contingency_cov_dist(const ContingencyTable2x2& t);

// Population limit of the (scaled) chi-square statistic: the sum of squared
// relative cell deviations ((p_ij - p_i.p_.j) / (p_i.p_.j))^2.
double contingency_chisq_pop(const ContingencyTable2x2& t);

// The table as a distribution on {0,1}^2; zero-mass cells are dropped.
DiscreteBivariate contingency_to_bivariate(const ContingencyTable2x2& t);

DependenceReport pop_report(const DiscreteBivariate& d);
DependenceReport contingency_report(const ContingencyTable2x2& t);

}  // namespace depcov
