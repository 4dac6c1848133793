#pragma once

#include <cstdint>
#include <string>

#include "depcov/types.hpp"

// Permutation test of independence. The observed dcov of the sample is
// compared against the dcov of (xs, permuted ys) for m random permutations;
// p_hat = (#{permuted > observed} + 1) / (m + 1). The count uses strict ">"
// so permuted statistics exactly equal to the observed one do not reject
// (ties_geq switches to ">=").
//
// Determinism contract: permutation t (0-based) is produced by
// random_permutation seeded with derive_seed(cfg.seed, t), so results are
// identical for any thread count.

namespace depcov {

enum class PermStatistic { dcov };

struct PermTestConfig {
    std::uint64_t m = 1000;
    std::uint64_t seed = 0;
    PermStatistic statistic = PermStatistic::dcov;
    bool exhaustive = false;  // all n! permutations instead of sampling; n <= 7
    bool ties_geq = false;
    unsigned threads = 0;  // 0 = DEPCOV_THREADS / hardware
};

struct PermTestResult {
    double observed = 0.0;
    std::uint64_t m = 0;
    std::uint64_t exceed_count = 0;
    double p_hat = 0.0;
    std::uint64_t seed = 0;
};

PermTestResult perm_test(const PairedSample& s, const PermTestConfig& cfg);

// Rejection rate of the test at level alpha over `trials` fresh samples of
// size n from the named generator ("gaussian-pair" draws independent
// margins, making the rate an estimate of the achieved level). Trial t uses
// sample seed derive_seed(seed, 2t) and permutation seed derive_seed(seed,
// 2t + 1).
double level_experiment(const std::string& gen_id, std::size_t n, std::size_t trials,
                        double alpha, std::uint64_t seed, std::uint64_t m = 999);

}  // namespace depcov
