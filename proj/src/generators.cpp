#include "depcov/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "depcov/errors.hpp"
#include "depcov/numeric.hpp"
#include "depcov/rng.hpp"

namespace depcov {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::invalid_parameter, what);
}

PairedSample gen_uniform_parabola(const GeneratorSpec& spec) {
    Rng rng = make_rng(spec.seed);
    PairedSample s;
    s.x.resize(spec.n);
    s.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        s.x[i] = 2.0 * uniform_unit(rng) - 1.0;
        s.y[i] = s.x[i] * s.x[i];
    }
    if (spec.noise_sd > 0.0)
        for (double& y : s.y) y += spec.noise_sd * normal(rng);
    return s;
}

PairedSample gen_uniform_parabola_grid(const GeneratorSpec& spec) {
    require(spec.n >= 2, "grid generator needs n >= 2 to define the step 2/(n-1)");
    const double step = 2.0 / static_cast<double>(spec.n - 1);
    PairedSample s;
    s.x.resize(spec.n);
    s.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        s.x[i] = -1.0 + step * static_cast<double>(i);
        s.y[i] = s.x[i] * s.x[i];
    }
    if (spec.noise_sd > 0.0) {
        Rng rng = make_rng(spec.seed);
        for (double& y : s.y) y += spec.noise_sd * normal(rng);
    }
    return s;
}

PairedSample gen_bivariate_t(const GeneratorSpec& spec) {
    require(spec.nu > 0.0, "bivariate-t needs nu > 0");
    Rng rng = make_rng(spec.seed);
    PairedSample s;
    s.x.resize(spec.n);
    s.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        const double scale = std::sqrt(chi_square(rng, spec.nu) / spec.nu);
        s.x[i] = z1 / scale;
        s.y[i] = z2 / scale;
    }
    return s;
}

PairedSample gen_gaussian_pair(const GeneratorSpec& spec) {
    require(spec.rho >= -1.0 && spec.rho <= 1.0, "gaussian-pair needs rho in [-1, 1]");
    const double ortho = std::sqrt(1.0 - spec.rho * spec.rho);
    Rng rng = make_rng(spec.seed);
    PairedSample s;
    s.x.resize(spec.n);
    s.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        s.x[i] = z1;
        s.y[i] = spec.rho * z1 + ortho * z2;
    }
    return s;
}

PairedSample gen_discrete(const GeneratorSpec& spec) {
    DiscreteBivariate dist = spec.dist;
    dist.validate();

    std::vector<double> cum(dist.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        acc += dist.atoms[k].p;
        cum[k] = acc;
    }
    cum.back() = 1.0;

    Rng rng = make_rng(spec.seed);
    PairedSample s;
    s.x.resize(spec.n);
    s.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = uniform_unit(rng);
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        s.x[i] = dist.atoms[k].x;
        s.y[i] = dist.atoms[k].y;
    }
    return s;
}

}  // namespace

PairedSample generate(const GeneratorSpec& spec) {
    require(spec.n >= 1, "sample size n must be >= 1");
    require(spec.noise_sd >= 0.0, "noise_sd must be >= 0");
    switch (spec.kind) {
        case GeneratorKind::uniform_parabola: return gen_uniform_parabola(spec);
        case GeneratorKind::uniform_parabola_grid: return gen_uniform_parabola_grid(spec);
        case GeneratorKind::bivariate_t: return gen_bivariate_t(spec);
        case GeneratorKind::gaussian_pair: return gen_gaussian_pair(spec);
        case GeneratorKind::discrete: return gen_discrete(spec);
    }
    fail(ErrorCode::internal_error, "unhandled generator kind");
}

GeneratorKind parse_generator_kind(const std::string& id) {
    if (id == "uniform-parabola") return GeneratorKind::uniform_parabola;
    if (id == "uniform-parabola-grid") return GeneratorKind::uniform_parabola_grid;
    if (id == "bivariate-t") return GeneratorKind::bivariate_t;
    if (id == "gaussian-pair") return GeneratorKind::gaussian_pair;
    if (id == "discrete") return GeneratorKind::discrete;
    fail(ErrorCode::unknown_generator, "no generator named '" + id + "'");
}

std::string generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::uniform_parabola: return "uniform-parabola";
        case GeneratorKind::uniform_parabola_grid: return "uniform-parabola-grid";
        case GeneratorKind::bivariate_t: return "bivariate-t";
        case GeneratorKind::gaussian_pair: return "gaussian-pair";
        case GeneratorKind::discrete: return "discrete";
    }
    fail(ErrorCode::internal_error, "unhandled generator kind");
}

double univariate_t_density(double y, double s, double nu) {
    if (!(s > 0.0)) fail(ErrorCode::invalid_parameter, "scale s must be > 0");
    if (!(nu > 0.0)) fail(ErrorCode::invalid_parameter, "nu must be > 0");
    const double c = std::exp(std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)) /
                     std::sqrt(nu * std::numbers::pi);
    const double z = y / s;
    return (c / s) * std::pow(1.0 + z * z / nu, -(nu + 1.0) / 2.0);
}

double conditional_t_density(double y, double x, double nu) {
    if (!(nu > 0.0)) fail(ErrorCode::invalid_parameter, "nu must be > 0");
    const double s = std::sqrt((nu + x * x) / (nu + 1.0));
    return univariate_t_density(y, s, nu + 1.0);
}

double bivariate_t_density(double x, double y, double nu) {
    if (!(nu > 0.0)) fail(ErrorCode::invalid_parameter, "nu must be > 0");
    const double q = 1.0 + (x * x + y * y) / nu;
    return std::pow(q, -(nu + 2.0) / 2.0) / (2.0 * std::numbers::pi);
}

}  // namespace depcov
