#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depcov/json_io.hpp"
#include "depcov/types.hpp"

// Scripted reproductions of the four worked examples plus the estimator
// scaling benchmark. Each run_* returns the full result as JSON; the emit_*
// wrappers write the canonical output files into a directory. Runs are
// deterministic for a fixed seed, file emission byte-identical across runs.

namespace depcov {

// The 4-atom distribution whose distances are uncorrelated while dcov = 0.1.
DiscreteBivariate example1_distribution();

// Same distribution with the first atom's x moved from -1.0 to -1.5; used
// to show the origin-constrained regression of the centered distances
// missing every support point.
DiscreteBivariate example1_variant_distribution();

// Cell probabilities (10, 5, 14, 11)/40: dependent Bernoulli pair whose
// distance covariance of same-pair distances vanishes.
ContingencyTable2x2 example2_table();

struct Example3Config {
    std::size_t n = 100000;
    bool grid = true;
    std::uint64_t seed = 0;  // unused when grid
};

struct Example4Config {
    double nu_from = 2.0;
    double nu_to = 20.0;
    double nu_step = 1.0;
    std::size_t n = 100000;
    std::uint64_t seed = 0;
};

struct BenchConfig {
    std::vector<std::size_t> fast_sizes;   // default 2^14 .. 2^20
    std::vector<std::size_t> naive_sizes;  // default 2^9 .. 2^13
    int reps = 3;                          // wall time taken as min over reps
    std::uint64_t seed = 1;

    static BenchConfig defaults();
};

Json run_example1();
Json run_example2();
Json run_example3(const Example3Config& cfg);
Json run_example4(const Example4Config& cfg);
Json run_bench(const BenchConfig& cfg);

// File emitters; dir must exist. Written names:
//   example1_tables.json, example2_report.json, example3_report.json,
//   example4_curve.csv, bench.json
void emit_example1(const std::string& dir);
void emit_example2(const std::string& dir);
void emit_example3(const std::string& dir, const Example3Config& cfg);
void emit_example4(const std::string& dir, const Example4Config& cfg);
void emit_bench(const std::string& dir, const BenchConfig& cfg);

}  // namespace depcov
