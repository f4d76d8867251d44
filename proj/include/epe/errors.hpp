#pragma once

#include <stdexcept>
#include <string>

namespace epe {

// Input violates the Hermitian / unit-trace / positivity contract of a state.
struct InvalidState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Covariance matrix is asymmetric, unphysical, or has an invalid spectrum.
struct InvalidCovariance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the domain of a closed-form family or curve.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Fock truncation too small for the requested input field.
struct TruncationError : std::runtime_error {
  TruncationError(const std::string& what, int required)
      : std::runtime_error(what), required_n_max(required) {}
  int required_n_max;
};

// Sampler or scan configuration cannot be satisfied.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace epe
