#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "depcov/population.hpp"
#include "depcov/types.hpp"

// Sample dcov/dcor. Two interchangeable estimators of the same V-statistic:
//
//   dcov_naive  double-centers the pairwise distances explicitly, O(n^2)
//               time, O(n) memory (the matrices are never materialized).
//   dcov_fast   three-term expansion with sort/prefix-sum row sums and a
//               merge pass for the distance product sum, O(n log n) time.
//
// Both are deterministic for a given input regardless of thread count.

namespace depcov {

// Explicit n-by-n doubly centered distance matrix of one margin. Intended
// for inspection and tests at small n; the estimators below never build it.
struct CenteredDistanceMatrix {
    std::size_t n = 0;
    std::vector<double> values;     // row-major, values[i*n + j]
    std::vector<double> row_means;  // means of |v_i - v_j| over j; by
                                    // symmetry also the column means
    double grand_mean = 0.0;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

CenteredDistanceMatrix centered_distance_matrix(std::span<const double> v);

// Shared pieces of the three-term expansion, all as plain means:
//   mean_prod       E_n[|dx| |dy|] over all ordered index pairs
//   mean_dx/mean_dy E_n|dx|, E_n|dy|
//   mean_cross      E_n over i of (row mean of dx at i)(row mean of dy at i)
struct SampleMoments {
    double mean_prod = 0.0;
    double mean_dx = 0.0;
    double mean_dy = 0.0;
    double mean_cross = 0.0;

    double dcov() const { return mean_prod + mean_dx * mean_dy - 2.0 * mean_cross; }
    double cov_dist() const { return mean_prod - mean_dx * mean_dy; }
    double cross_cov() const { return mean_cross - mean_dx * mean_dy; }
};

// O(n log n) evaluation of the moments above.
SampleMoments sample_moments_fast(std::span<const double> x, std::span<const double> y);

double dcov_naive(const PairedSample& s);
double dcov_fast(const PairedSample& s);

enum class SampleMethod { naive, fast };

DcorResult dcor_sample(const PairedSample& s, SampleMethod method);

// Pairwise differences (x_i - x_j, y_i - y_j): either all n^2 ordered pairs
// (i = j included) or k pairs drawn with replacement from the index grid.
PairedSample difference_sample_all_pairs(const PairedSample& s);
PairedSample difference_sample_subsampled(const PairedSample& s, std::size_t k,
                                          std::uint64_t seed);

double sample_cov_xy(const PairedSample& s);

// Plain Pearson correlation; 0 when either margin is constant.
double pearson(const PairedSample& s);

DependenceReport sample_report(const PairedSample& s, SampleMethod method);

}  // namespace depcov
