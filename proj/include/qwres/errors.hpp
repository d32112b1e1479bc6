#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qwres {

// Invalid input: inadmissible coin, bad interval, malformed input.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation at (or numerically on top of) a pole of a meromorphic quantity.
class PoleError : public std::runtime_error {
  public:
    PoleError(const std::string& what, std::complex<double> at)
        : std::runtime_error(what), where_(at) {}
    std::complex<double> where() const { return where_; }

  private:
    std::complex<double> where_;
};

// Iterative method failed to converge, or a verification residual is too large.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qwres
