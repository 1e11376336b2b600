#pragma once

#include <stdexcept>

namespace rhn {

// Caller broke a call contract: mismatched dimensions, non-finite values.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A parameter lies outside its mathematical domain (r, s, lambda, tolerances).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inconsistent or incomplete configuration (missing data, impossible sizes).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed at runtime (non-convergence, degeneracy).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File was readable but malformed, or carries an unsupported version.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rhn
