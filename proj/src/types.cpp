#include "depcov/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depcov/errors.hpp"
#include "depcov/numeric.hpp"

namespace depcov {

void DiscreteBivariate::validate() {
    if (atoms.empty())
        fail(ErrorCode::length_too_small, "distribution has no atoms");

    KahanSum total;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            fail(ErrorCode::non_finite_coordinate,
                 "atom " + std::to_string(i) + " has a non-finite coordinate");
        if (!(a.p > 0.0) || !std::isfinite(a.p))
            fail(ErrorCode::non_positive_mass,
                 "atom " + std::to_string(i) + " has mass " + std::to_string(a.p));
        total.add(a.p);
    }
    const double s = total.value();
    if (std::abs(s - 1.0) > kMassTolerance)
        fail(ErrorCode::mass_not_unit,
             "atom masses sum to " + std::to_string(s) + ", expected 1");

    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (out > 0 && atoms[out - 1].x == atoms[i].x && atoms[out - 1].y == atoms[i].y) {
            atoms[out - 1].p += atoms[i].p;
        } else {
            atoms[out++] = atoms[i];
        }
    }
    atoms.resize(out);
}

void PairedSample::validate() const {
    if (x.size() != y.size())
        fail(ErrorCode::length_mismatch,
             "x has " + std::to_string(x.size()) + " entries, y has " +
                 std::to_string(y.size()));
    if (x.size() < 2)
        fail(ErrorCode::length_too_small,
             "need at least 2 paired observations, got " + std::to_string(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            fail(ErrorCode::non_finite_coordinate,
                 "row " + std::to_string(i) + " has a non-finite value");
    }
}

void ContingencyTable2x2::validate() const {
    const double cells[4] = {p00, p01, p10, p11};
    for (double c : cells) {
        if (!std::isfinite(c) || c < 0.0)
            fail(ErrorCode::non_positive_mass,
                 "cell probability " + std::to_string(c) + " is not in [0, 1]");
    }
    const double s = p00 + p01 + p10 + p11;
    if (std::abs(s - 1.0) > kMassTolerance)
        fail(ErrorCode::mass_not_unit,
             "cell probabilities sum to " + std::to_string(s) + ", expected 1");
}

ContingencyTable2x2 ContingencyTable2x2::from_counts(double n00, double n01,
                                                     double n10, double n11) {
    const double counts[4] = {n00, n01, n10, n11};
    for (double c : counts) {
        if (!std::isfinite(c) || c < 0.0)
            fail(ErrorCode::invalid_parameter, "counts must be finite and >= 0");
    }
    const double total = n00 + n01 + n10 + n11;
    if (!(total > 0.0))
        fail(ErrorCode::invalid_parameter, "counts must not all be zero");
    return ContingencyTable2x2{n00 / total, n01 / total, n10 / total, n11 / total};
}

std::string method_name(Method m) {
    switch (m) {
        case Method::population_exact: return "population-exact";
        case Method::sample_naive: return "sample-naive";
        case Method::sample_fast: return "sample-fast";
        case Method::contingency_closed_form: return "contingency-closed-form";
    }
    fail(ErrorCode::internal_error, "unhandled method enum value");
}

}  // namespace depcov
