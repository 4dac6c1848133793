#include "depcov/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "depcov/csv.hpp"
#include "depcov/generators.hpp"
#include "depcov/numeric.hpp"
#include "depcov/population.hpp"
#include "depcov/rng.hpp"
#include "depcov/sample_stats.hpp"

namespace depcov {

namespace {

Json atoms_json(const DiscreteBivariate& d) {
    Json arr = Json::array();
    for (const Atom& a : d.atoms) {
        Json row;
        row["x"] = a.x;
        row["y"] = a.y;
        row["p"] = a.p;
        arr.push_back(std::move(row));
    }
    return arr;
}

Json centering_json(const CenteringConstants& c) {
    Json j;
    j["support"] = c.support;
    j["row_mean"] = c.row_mean;
    j["grand_mean"] = c.grand_mean;
    return j;
}

Json line_json(const LineFit& f) {
    Json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    return j;
}

// One example panel set: report, centered-distance line fit, and the line's
// residual at every atom of the doubly centered distribution.
Json distribution_study(const DiscreteBivariate& d) {
    Json j;
    j["atoms"] = atoms_json(d);
    j["abs_diff"] = atoms_json(pairwise_abs_diff_distribution(d));
    const DiscreteBivariate centered = doubly_centered_distribution(d);
    j["doubly_centered"] = atoms_json(centered);
    j["centering"] = Json{{"x", centering_json(centering_constants(d, Axis::x))},
                          {"y", centering_json(centering_constants(d, Axis::y))}};
    j["report"] = report_to_json(pop_report(d));
    j["cov_xy"] = pop_cov_xy(d);

    const LineFit line = pop_regression_line(d);
    j["regression_line"] = line_json(line);
    Json residuals = Json::array();
    double min_abs = std::numeric_limits<double>::infinity();
    for (const Atom& a : centered.atoms) {
        const double r = a.y - line.slope * a.x;
        residuals.push_back(r);
        min_abs = std::min(min_abs, std::abs(r));
    }
    j["residuals"] = std::move(residuals);
    j["min_abs_residual"] = min_abs;
    return j;
}

double time_call(int reps, const std::function<void()>& fn) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

double loglog_slope(const std::vector<std::size_t>& sizes, const std::vector<double>& secs) {
    std::vector<double> lx(sizes.size()), ly(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        lx[i] = std::log2(static_cast<double>(sizes[i]));
        ly[i] = std::log2(secs[i]);
    }
    return fit_line(lx, ly).slope;
}

double agreement_tolerance(const PairedSample& s) {
    const auto [xmin, xmax] = std::minmax_element(s.x.begin(), s.x.end());
    const auto [ymin, ymax] = std::minmax_element(s.y.begin(), s.y.end());
    const double scale = (*xmax - *xmin) * (*ymax - *ymin);
    return std::max(1e-10, 1e-12 * scale);
}

}  // namespace

DiscreteBivariate example1_distribution() {
    DiscreteBivariate d;
    d.atoms = {Atom{-1.0, 1.0, 0.25}, Atom{1.0, 1.0, 0.25}, Atom{0.0, 0.6, 0.25},
               Atom{0.0, -1.0, 0.25}};
    d.validate();
    return d;
}

DiscreteBivariate example1_variant_distribution() {
    DiscreteBivariate d;
    d.atoms = {Atom{-1.5, 1.0, 0.25}, Atom{1.0, 1.0, 0.25}, Atom{0.0, 0.6, 0.25},
               Atom{0.0, -1.0, 0.25}};
    d.validate();
    return d;
}

ContingencyTable2x2 example2_table() {
    return ContingencyTable2x2::from_counts(10.0, 5.0, 14.0, 11.0);
}

BenchConfig BenchConfig::defaults() {
    BenchConfig cfg;
    for (std::size_t p = 14; p <= 20; ++p) cfg.fast_sizes.push_back(std::size_t{1} << p);
    for (std::size_t p = 9; p <= 13; ++p) cfg.naive_sizes.push_back(std::size_t{1} << p);
    return cfg;
}

Json run_example1() {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["main"] = distribution_study(example1_distribution());
    j["variant_first_x_to_minus_1_5"] = distribution_study(example1_variant_distribution());
    return j;
}

Json run_example2() {
    const ContingencyTable2x2 t = example2_table();
    t.validate();

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["cells"] = Json{{"p00", t.p00}, {"p01", t.p01}, {"p10", t.p10}, {"p11", t.p11}};

    const double dcov = contingency_dcov(t);
    const double cov_dist = contingency_cov_dist(t);
    const double cov_xy = t.p11 - t.row1() * t.col1();
    Json computed;
    computed["cov_dist"] = cov_dist;
    computed["dcov"] = dcov;
    computed["chisq_pop"] = contingency_chisq_pop(t);
    computed["cov_xy"] = cov_xy;
    computed["report"] = report_to_json(contingency_report(t));
    j["computed"] = std::move(computed);

    const DiscreteBivariate atoms = contingency_to_bivariate(t);
    const double atom_dcov = pop_dcov(atoms);
    const double atom_cov_dist = pop_cov_distances(atoms);
    Json cross;
    cross["atom_dcov"] = atom_dcov;
    cross["atom_cov_dist"] = atom_cov_dist;
    cross["max_abs_difference"] =
        std::max(std::abs(atom_dcov - dcov), std::abs(atom_cov_dist - cov_dist));
    j["cross_check"] = std::move(cross);

    j["quoted"] = Json{{"cov_dist", 0.0}, {"dcov", 0.025}, {"cov_xy_nonzero", true}};
    j["notes"] = Json::array(
        {"the quoted dcov of 0.025 equals the common per-cell deviation |p_ij - "
         "p_i.p_.j|; the sum of squared deviations is 4 * 0.025^2 = 0.0025, and the "
         "generic atom-based routine gives the same 0.0025, so 0.0025 is reported"});
    return j;
}

Json run_example3(const Example3Config& cfg) {
    GeneratorSpec spec;
    spec.kind =
        cfg.grid ? GeneratorKind::uniform_parabola_grid : GeneratorKind::uniform_parabola;
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    const PairedSample s = generate(spec);

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["generator"] = generator_kind_name(spec.kind);
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    const DependenceReport rep = sample_report(s, SampleMethod::fast);
    j["dcor"] = rep.dcor;
    j["pearson"] = pearson(s);
    j["report"] = report_to_json(rep);
    return j;
}

Json run_example4(const Example4Config& cfg) {
    std::vector<double> nus;
    for (double nu = cfg.nu_from; nu <= cfg.nu_to + 1e-9; nu += cfg.nu_step)
        nus.push_back(nu);

    std::vector<double> dcors(nus.size());
    for (std::size_t i = 0; i < nus.size(); ++i) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::bivariate_t;
        spec.n = cfg.n;
        spec.nu = nus[i];
        spec.seed = derive_seed(cfg.seed, i);
        dcors[i] = dcor_sample(generate(spec), SampleMethod::fast).value;
    }

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    j["nu"] = nus;
    j["dcor"] = dcors;
    return j;
}

Json run_bench(const BenchConfig& cfg) {
    const auto sample_of = [&](std::size_t n, std::uint64_t salt) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::gaussian_pair;
        spec.n = n;
        spec.seed = derive_seed(cfg.seed, salt);
        return generate(spec);
    };

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = cfg.seed;
    j["reps"] = cfg.reps;

    std::vector<double> fast_secs;
    for (std::size_t i = 0; i < cfg.fast_sizes.size(); ++i) {
        const PairedSample s = sample_of(cfg.fast_sizes[i], i);
        volatile double sink = 0.0;
        fast_secs.push_back(time_call(cfg.reps, [&] { sink = dcov_fast(s); }));
        (void)sink;
    }
    j["fast"] = Json{{"n", cfg.fast_sizes},
                     {"seconds", fast_secs},
                     {"loglog_slope", loglog_slope(cfg.fast_sizes, fast_secs)}};

    std::vector<double> naive_secs;
    std::vector<double> abs_diff, tol;
    bool agree = true;
    for (std::size_t i = 0; i < cfg.naive_sizes.size(); ++i) {
        const PairedSample s = sample_of(cfg.naive_sizes[i], 1000 + i);
        volatile double sink = 0.0;
        naive_secs.push_back(time_call(cfg.reps, [&] { sink = dcov_naive(s); }));
        (void)sink;
        const double diff = std::abs(dcov_fast(s) - dcov_naive(s));
        const double t = agreement_tolerance(s);
        abs_diff.push_back(diff);
        tol.push_back(t);
        agree = agree && diff <= t;
    }
    j["naive"] = Json{{"n", cfg.naive_sizes},
                      {"seconds", naive_secs},
                      {"loglog_slope", loglog_slope(cfg.naive_sizes, naive_secs)}};
    j["agreement"] =
        Json{{"n", cfg.naive_sizes}, {"abs_diff", abs_diff}, {"tolerance", tol}, {"ok", agree}};
    return j;
}

void emit_example1(const std::string& dir) {
    write_json_file(dir + "/example1_tables.json", run_example1());
}

void emit_example2(const std::string& dir) {
    write_json_file(dir + "/example2_report.json", run_example2());
}

void emit_example3(const std::string& dir, const Example3Config& cfg) {
    write_json_file(dir + "/example3_report.json", run_example3(cfg));
}

void emit_example4(const std::string& dir, const Example4Config& cfg) {
    const Json j = run_example4(cfg);
    std::vector<std::vector<double>> rows;
    const auto& nus = j["nu"];
    const auto& dcors = j["dcor"];
    for (std::size_t i = 0; i < nus.size(); ++i)
        rows.push_back({nus[i].get<double>(), dcors[i].get<double>()});
    write_table_csv(dir + "/example4_curve.csv", {"nu", "dcor"}, rows);
}

void emit_bench(const std::string& dir, const BenchConfig& cfg) {
    write_json_file(dir + "/bench.json", run_bench(cfg));
}

}  // namespace depcov
