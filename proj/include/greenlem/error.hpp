#pragma once

#include <stdexcept>
#include <string>

namespace greenlem {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Map or lift violates non-degeneracy (common root, zero denominator, low degree).
class DegenerateMap : public Error {
  public:
    using Error::Error;
};

/// Backward sampling requested from a point with finite backward orbit.
class ExceptionalPoint : public Error {
  public:
    using Error::Error;
};

class CapExceeded : public Error {
  public:
    using Error::Error;
};

class NonConvergence : public Error {
  public:
    NonConvergence(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

  private:
    double best_residual_;
};

}  // namespace greenlem
