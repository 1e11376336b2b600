#include "rhn/activation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rhn/errors.hpp"

namespace rhn {

std::string to_string(Activation kind) {
    switch (kind) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Gaussian: return "gaussian";
    case Activation::Softplus: return "softplus";
    case Activation::Sine: return "sine";
    case Activation::Cosine: return "cosine";
    }
    throw ContractError("unknown activation kind");
}

Activation activation_from_string(std::string_view name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "gaussian") return Activation::Gaussian;
    if (name == "softplus") return Activation::Softplus;
    if (name == "sine") return Activation::Sine;
    if (name == "cosine") return Activation::Cosine;
    throw ConfigError("unknown activation '" + std::string(name) +
                      "' (expected sigmoid|gaussian|softplus|sine|cosine)");
}

double anchor_value(Activation kind) {
    switch (kind) {
    case Activation::Sigmoid: return 0.5;
    case Activation::Gaussian: return 1.0;
    case Activation::Softplus: return std::numbers::ln2;
    case Activation::Sine: return 0.0;
    case Activation::Cosine: return 1.0;
    }
    throw ContractError("unknown activation kind");
}

std::string RDomain::describe() const {
    std::ostringstream os;
    os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
    return os.str();
}

RDomain r_domain(Activation kind) {
    switch (kind) {
    case Activation::Sigmoid: return {0.0, 0.5, false, false};
    case Activation::Gaussian: return {0.0, 1.0, false, false};
    case Activation::Softplus: return {0.0, std::numbers::ln2, false, false};
    case Activation::Sine:
    case Activation::Cosine:
        // r = 1 would give a zero-width weight interval (arccos 1 = 0).
        return {-1.0, 1.0, true, false};
    }
    throw ContractError("unknown activation kind");
}

double evaluate(Activation kind, double z) {
    switch (kind) {
    case Activation::Sigmoid:
        if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
        {
            const double e = std::exp(z);
            return e / (1.0 + e);
        }
    case Activation::Gaussian:
        return std::exp(-z * z);
    case Activation::Softplus:
        // log(1 + e^z) without overflow for large |z|
        return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    case Activation::Sine:
        return std::sin(z);
    case Activation::Cosine:
        return std::cos(z);
    }
    throw ContractError("unknown activation kind");
}

double evaluate(Activation kind, const Vector& a, double b, const Vector& x) {
    if (a.size() != x.size())
        throw ContractError("evaluate: weight and input lengths differ (" +
                            std::to_string(a.size()) + " vs " + std::to_string(x.size()) + ")");
    if (a.size() < 1)
        throw ContractError("evaluate: empty weight/input vectors");
    if (!a.allFinite() || !x.allFinite() || !std::isfinite(b))
        throw ContractError("evaluate: non-finite weight, bias, or input");
    return evaluate(kind, a.dot(x) + b);
}

double sigma_lim1(Activation kind, double r) {
    const RDomain dom = r_domain(kind);
    if (!dom.contains(r))
        throw DomainError("flatness r = " + std::to_string(r) + " outside valid interval " +
                          dom.describe() + " for " + to_string(kind));
    switch (kind) {
    case Activation::Sigmoid:
        return std::log((1.0 - r) / r);
    case Activation::Gaussian:
        return std::sqrt(-std::log(r));
    case Activation::Softplus:
        // ln(e^r - 1) is negative on (0, ln 2); the magnitude is stored and
        // the sign is resampled with the rest of the symmetric union.
        return -std::log(std::expm1(r));
    case Activation::Sine:
    case Activation::Cosine:
        return std::acos(r);
    }
    throw ContractError("unknown activation kind");
}

SigmaInterval sigma_interval(Activation kind, double r, double s) {
    if (!(s > 1.0))
        throw DomainError("steepness s = " + std::to_string(s) +
                          " invalid: s > 1 defines the steepest admissible function");
    const double lim1 = sigma_lim1(kind, r);
    return {lim1, s * lim1};
}

} // namespace rhn
