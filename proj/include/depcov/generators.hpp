#pragma once

#include <cstdint>
#include <string>

#include "depcov/types.hpp"

// Seeded sample generators and the t-distribution densities used to verify
// them. Streams are deterministic per (kind, parameters, seed) for this
// version of the library.

namespace depcov {

enum class GeneratorKind {
    uniform_parabola,       // X ~ U[-1, 1], Y = X^2 (+ optional noise)
    uniform_parabola_grid,  // X equispaced on [-1, 1], Y = X^2 (+ noise)
    bivariate_t,            // (X, Y) = (Z1, Z2) / sqrt(W / nu), W ~ chi^2(nu)
    gaussian_pair,          // standard normal margins with correlation rho
    discrete,               // i.i.d. draws from a DiscreteBivariate
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::gaussian_pair;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double nu = 5.0;         // bivariate_t degrees of freedom
    double rho = 0.0;        // gaussian_pair correlation
    double noise_sd = 0.0;   // sd of Gaussian noise added to Y (parabola kinds)
    DiscreteBivariate dist;  // discrete payload
};

PairedSample generate(const GeneratorSpec& spec);

// Maps the CLI names (uniform-parabola, uniform-parabola-grid, bivariate-t,
// gaussian-pair, discrete) to kinds; throws UnknownGenerator otherwise.
GeneratorKind parse_generator_kind(const std::string& id);
std::string generator_kind_name(GeneratorKind k);

// Density of the t distribution with `nu` degrees of freedom, center 0 and
// scale s: (c(nu)/s) (1 + (y/s)^2/nu)^(-(nu+1)/2).
double univariate_t_density(double y, double s, double nu);

// Density of Y given X = x under the standard bivariate t: a t density with
// nu + 1 degrees of freedom and scale sqrt((nu + x^2)/(nu + 1)).
double conditional_t_density(double y, double x, double nu);

// Joint density of the standard bivariate t:
// (1/2pi) (1 + (x^2 + y^2)/nu)^(-(nu+2)/2).
double bivariate_t_density(double x, double y, double nu);

}  // namespace depcov
