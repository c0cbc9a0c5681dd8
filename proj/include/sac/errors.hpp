#pragma once

#include <stdexcept>
#include <string>

namespace sac {

// Input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative routine failed to reach its tolerance within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix shapes do not match.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Spectral disposition does not match the requested analysis.
class DispositionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A constructed extremal matrix failed to attain its bound; indicates a bug.
class TightnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed serialized input (structure, not values).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sac
