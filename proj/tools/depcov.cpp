// depcov: distance-covariance toolkit command line.
//
// Subcommands: exact (population report for a distribution CSV), sample
// (estimator report for a sample CSV), permtest (permutation independence
// test), generate (seeded sample generators), examples run {1|2|3|4|all},
// bench. JSON goes to stdout; errors go to stderr as one "Code: message"
// line and flip the exit status. DEPCOV_THREADS caps worker threads
// (0 = auto).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "depcov/csv.hpp"
#include "depcov/errors.hpp"
#include "depcov/experiments.hpp"
#include "depcov/generators.hpp"
#include "depcov/json_io.hpp"
#include "depcov/perm_test.hpp"
#include "depcov/population.hpp"
#include "depcov/sample_stats.hpp"

namespace {

using depcov::Json;

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

// Resolves --seed: an explicit value is used as-is; otherwise entropy is
// drawn and announced on stderr so the run can be replayed.
std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t seed_opt) {
    if (cmd->count("--seed") > 0) return seed_opt;
    const std::uint64_t seed = entropy_seed();
    std::cerr << "seed: " << seed << "\n";
    return seed;
}

Json with_schema(const Json& body) {
    Json out;
    out["schema_version"] = depcov::kSchemaVersion;
    for (const auto& [key, value] : body.items()) out[key] = value;
    return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json panels_json(const depcov::DiscreteBivariate& d) {
    Json panels;
    panels["abs_diff"] = depcov::distribution_to_json(depcov::pairwise_abs_diff_distribution(d));
    panels["doubly_centered"] =
        depcov::distribution_to_json(depcov::doubly_centered_distribution(d));
    return panels;
}

struct ExactArgs {
    std::string path;
    bool panels = false;
    bool sqrt = false;
};

struct SampleArgs {
    std::string path;
    std::string method = "fast";
    bool sqrt = false;
};

struct PermArgs {
    std::string path;
    std::uint64_t m = 1000;
    std::uint64_t seed = 0;
    double alpha = -1.0;
    bool exhaustive = false;
    bool ties_geq = false;
};

struct GenerateArgs {
    std::string kind;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double nu = 5.0;
    double rho = 0.0;
    double noise_sd = 0.0;
    bool grid = false;
    std::string dist_path;
    std::string out;
};

struct ExamplesArgs {
    std::string which;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool quick = false;
};

struct BenchArgs {
    std::string out;
    int reps = 3;
    std::uint64_t seed = 1;
    bool quick = false;
};

int cmd_exact(const ExactArgs& args) {
    const depcov::DiscreteBivariate d = depcov::read_distribution_csv(args.path);
    Json body = depcov::report_to_json(depcov::pop_report(d), args.sqrt);
    body["cov_xy"] = depcov::pop_cov_xy(d);
    if (args.panels) body["panels"] = panels_json(d);
    print_json(with_schema(body));
    return 0;
}

int cmd_sample(const SampleArgs& args) {
    const depcov::PairedSample s = depcov::read_sample_csv(args.path);

    if (args.method == "naive" || args.method == "fast") {
        const auto method = args.method == "naive" ? depcov::SampleMethod::naive
                                                   : depcov::SampleMethod::fast;
        print_json(with_schema(depcov::report_to_json(depcov::sample_report(s, method), args.sqrt)));
        return 0;
    }
    if (args.method != "both")
        depcov::fail(depcov::ErrorCode::invalid_parameter,
                     "--method must be naive, fast, or both");

    const auto t0 = std::chrono::steady_clock::now();
    const double fast = depcov::dcov_fast(s);
    const auto t1 = std::chrono::steady_clock::now();
    const double naive = depcov::dcov_naive(s);
    const auto t2 = std::chrono::steady_clock::now();

    const auto [xmin, xmax] = std::minmax_element(s.x.begin(), s.x.end());
    const auto [ymin, ymax] = std::minmax_element(s.y.begin(), s.y.end());
    const double tolerance = std::max(1e-10, 1e-12 * (*xmax - *xmin) * (*ymax - *ymin));
    const double diff = std::abs(fast - naive);
    if (diff > tolerance)
        depcov::fail(depcov::ErrorCode::internal_error,
                     "fast and naive estimates differ by " + depcov::format_double(diff));

    Json body = depcov::report_to_json(depcov::sample_report(s, depcov::SampleMethod::fast),
                                       args.sqrt);
    body["naive_dcov"] = naive;
    body["fast_naive_abs_diff"] = diff;
    body["tolerance"] = tolerance;
    body["fast_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    body["naive_seconds"] = std::chrono::duration<double>(t2 - t1).count();
    print_json(with_schema(body));
    return 0;
}

int cmd_permtest(const PermArgs& args, const CLI::App* cmd) {
    const depcov::PairedSample s = depcov::read_sample_csv(args.path);

    depcov::PermTestConfig cfg;
    cfg.m = args.m;
    cfg.seed = resolve_seed(cmd, args.seed);
    cfg.exhaustive = args.exhaustive;
    cfg.ties_geq = args.ties_geq;
    const depcov::PermTestResult r = depcov::perm_test(s, cfg);

    Json body = depcov::perm_result_to_json(r);
    body["exhaustive"] = args.exhaustive;
    body["ties_geq"] = args.ties_geq;
    if (args.alpha >= 0.0) {
        body["alpha"] = args.alpha;
        body["reject"] = r.p_hat < args.alpha;
    }
    print_json(with_schema(body));
    return 0;
}

int cmd_generate(const GenerateArgs& args, const CLI::App* cmd) {
    depcov::GeneratorSpec spec;
    spec.kind = depcov::parse_generator_kind(args.kind);
    if (args.grid && spec.kind == depcov::GeneratorKind::uniform_parabola)
        spec.kind = depcov::GeneratorKind::uniform_parabola_grid;
    spec.n = args.n;
    spec.seed = resolve_seed(cmd, args.seed);
    spec.nu = args.nu;
    spec.rho = args.rho;
    spec.noise_sd = args.noise_sd;
    if (spec.kind == depcov::GeneratorKind::discrete) {
        if (args.dist_path.empty())
            depcov::fail(depcov::ErrorCode::invalid_parameter,
                         "--dist FILE is required for the discrete generator");
        spec.dist = depcov::read_distribution_csv(args.dist_path);
    }

    const depcov::PairedSample s = depcov::generate(spec);
    if (args.out.empty()) {
        std::cout << "x,y\n";
        for (std::size_t i = 0; i < s.size(); ++i)
            std::cout << depcov::format_double(s.x[i]) << ','
                      << depcov::format_double(s.y[i]) << '\n';
    } else {
        depcov::write_sample_csv(args.out, s);
    }
    return 0;
}

int cmd_examples(const ExamplesArgs& args) {
    depcov::Example3Config e3;
    e3.seed = args.seed;
    depcov::Example4Config e4;
    e4.seed = args.seed;
    if (args.quick) {
        e3.n = 20001;
        e4.n = 20000;
    }

    const bool all = args.which == "all";
    if (all || args.which == "1") depcov::emit_example1(args.out);
    if (all || args.which == "2") depcov::emit_example2(args.out);
    if (all || args.which == "3") depcov::emit_example3(args.out, e3);
    if (all || args.which == "4") depcov::emit_example4(args.out, e4);
    return 0;
}

int cmd_bench(const BenchArgs& args) {
    depcov::BenchConfig cfg = depcov::BenchConfig::defaults();
    cfg.reps = args.reps;
    cfg.seed = args.seed;
    if (args.quick) {
        cfg.fast_sizes = {1u << 12, 1u << 13, 1u << 14};
        cfg.naive_sizes = {1u << 8, 1u << 9, 1u << 10};
    }
    if (args.out.empty()) {
        print_json(depcov::run_bench(cfg));
    } else {
        depcov::emit_bench(args.out, cfg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance covariance / distance correlation toolkit"};
    app.require_subcommand(1);

    ExactArgs exact_args;
    CLI::App* exact = app.add_subcommand("exact", "population report for an x,y,p CSV");
    exact->add_option("dist", exact_args.path, "distribution CSV (header x,y,p)")->required();
    exact->add_flag("--panels", exact_args.panels, "include the derived distributions");
    exact->add_flag("--sqrt", exact_args.sqrt, "also report square-rooted dcov/dcor");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "estimator report for an x,y CSV");
    sample->add_option("sample", sample_args.path, "sample CSV (header x,y)")->required();
    sample->add_option("--method", sample_args.method, "naive | fast | both")
        ->default_val("fast");
    sample->add_flag("--sqrt", sample_args.sqrt, "also report square-rooted dcov/dcor");

    PermArgs perm_args;
    CLI::App* permtest =
        app.add_subcommand("permtest", "permutation independence test on an x,y CSV");
    permtest->add_option("sample", perm_args.path, "sample CSV (header x,y)")->required();
    permtest->add_option("--m", perm_args.m, "number of permutations")->default_val(1000);
    permtest->add_option("--seed", perm_args.seed, "RNG seed (omit for entropy)");
    permtest->add_option("--alpha", perm_args.alpha, "report reject = (p_hat < alpha)");
    permtest->add_flag("--exhaustive", perm_args.exhaustive,
                       "enumerate all n! permutations (n <= 7)");
    permtest->add_flag("--ties-geq", perm_args.ties_geq,
                       "count permuted == observed as exceedance");

    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "write a seeded sample CSV");
    generate
        ->add_option("--kind", gen_args.kind,
                     "uniform-parabola | uniform-parabola-grid | bivariate-t | "
                     "gaussian-pair | discrete")
        ->required();
    generate->add_option("--n", gen_args.n, "sample size")->required();
    generate->add_option("--seed", gen_args.seed, "RNG seed (omit for entropy)");
    generate->add_option("--nu", gen_args.nu, "bivariate-t degrees of freedom")
        ->default_val(5.0);
    generate->add_option("--rho", gen_args.rho, "gaussian-pair correlation")->default_val(0.0);
    generate->add_option("--noise-sd", gen_args.noise_sd,
                         "sd of Gaussian noise added to Y (parabola kinds)");
    generate->add_flag("--grid", gen_args.grid, "equispaced X for uniform-parabola");
    generate->add_option("--dist", gen_args.dist_path, "distribution CSV for --kind discrete");
    generate->add_option("--out", gen_args.out, "output CSV path (default stdout)");

    ExamplesArgs ex_args;
    CLI::App* examples = app.add_subcommand("examples", "reproduce the worked examples");
    CLI::App* run = examples->add_subcommand("run", "run one example or all");
    run->add_option("which", ex_args.which, "1 | 2 | 3 | 4 | all")
        ->required()
        ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
    run->add_option("--out", ex_args.out, "output directory")->default_val(".");
    run->add_option("--seed", ex_args.seed, "seed for the sampled examples")->default_val(0);
    run->add_flag("--quick", ex_args.quick, "smaller n for smoke runs");
    examples->require_subcommand(1);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "time the estimators and fit slopes");
    bench->add_option("--out", bench_args.out, "output directory (default: JSON to stdout)");
    bench->add_option("--reps", bench_args.reps, "repetitions per size (min is kept)")
        ->default_val(3);
    bench->add_option("--seed", bench_args.seed, "seed for the benchmark samples")
        ->default_val(1);
    bench->add_flag("--quick", bench_args.quick, "small sizes for smoke runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (exact->parsed()) return cmd_exact(exact_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (permtest->parsed()) return cmd_permtest(perm_args, permtest);
        if (generate->parsed()) return cmd_generate(gen_args, generate);
        if (examples->parsed()) return cmd_examples(ex_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const depcov::Error& e) {
        std::cerr << e.one_line() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
