#pragma once

#include <string>
#include <string_view>

#include "rhn/types.hpp"

namespace rhn {

// Activation families of the hidden nodes. Sine shares all interval
// formulas with Cosine (it is a shifted cosine); everything else is
// derived per family.
enum class Activation { Sigmoid, Gaussian, Softplus, Sine, Cosine };

// Lowercase wire names used in CLI flags and model files.
std::string to_string(Activation kind);
Activation activation_from_string(std::string_view name);

// Characteristic output at zero argument: the most nonlinear point of the
// function, which the generator places inside the data hypercube.
// Sigmoid 0.5, Gaussian 1, Softplus ln 2, Cosine 1, Sine 0 (sin 0 = 0; the
// zero-argument condition is what the bias rule enforces).
double anchor_value(Activation kind);

// Valid interval for the flatness parameter r.
struct RDomain {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double r) const {
        const bool above = lo_closed ? r >= lo : r > lo;
        const bool below = hi_closed ? r <= hi : r < hi;
        return above && below;
    }
    // e.g. "(0, 0.5)" or "[-1, 1)"; used in error messages.
    std::string describe() const;
};

RDomain r_domain(Activation kind);

// Scalar activation h(z) at preactivation z = a^T x + b.
double evaluate(Activation kind, double z);

// Full form h(x) with dimension and finiteness checks.
// Throws ContractError on mismatched lengths or non-finite values.
double evaluate(Activation kind, const Vector& a, double b, const Vector& x);

// Magnitudes of the flattest/steepest admissible sums of input weights.
struct SigmaInterval {
    double lo; // |flattest|
    double hi; // |steepest| = s * lo
};

// Magnitude of the flattest admissible weight sum for flatness r.
// Throws DomainError when r is outside r_domain(kind).
double sigma_lim1(Activation kind, double r);

// [sigma_lim1, s * sigma_lim1]. Requires s > 1 (throws DomainError).
SigmaInterval sigma_interval(Activation kind, double r, double s);

} // namespace rhn
