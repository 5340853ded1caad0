#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spectralpath {

  // Base class for everything this library throws.
  class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  class DimensionError : public Error {
  public:
    using Error::Error;
  };

  class SingularMatrixError : public Error {
  public:
    SingularMatrixError(std::size_t pivot, double magnitude)
      : Error("singular matrix: pivot " + std::to_string(pivot) +
              " has magnitude " + std::to_string(magnitude)),
        pivot_index(pivot) {}
    std::size_t pivot_index;
  };

  class NotSymmetricError : public Error {
  public:
    using Error::Error;
  };

  class ConvergenceError : public Error {
  public:
    using Error::Error;
  };

  // An algebraic identity that must hold by construction failed numerically.
  class IdentityViolation : public Error {
  public:
    IdentityViolation(std::string const& what, double worst)
      : Error(what + " (worst residual " + std::to_string(worst) + ")"),
        worst_residual(worst) {}
    double worst_residual;
  };

  class PreconditionError : public Error {
  public:
    using Error::Error;
  };

  class NegativeEntryError : public Error {
  public:
    NegativeEntryError(std::size_t i, std::size_t j, double value)
      : Error("negative entry " + std::to_string(value) + " at (" +
              std::to_string(i) + "," + std::to_string(j) + ")"),
        row(i), col(j) {}
    std::size_t row;
    std::size_t col;
  };

  class ParseError : public Error {
  public:
    ParseError(std::size_t line_no, std::string const& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    std::size_t line;
  };

  // Association scheme axiom or parameter-identity failure. axiom is one
  // of "i", "ii", "iii", "iv" or "parameters"; witness names the offending
  // indices in the order the message describes them.
  class SchemeViolation : public Error {
  public:
    SchemeViolation(std::string axiom_name, std::string const& msg,
                    std::vector<std::size_t> witness_indices = {})
      : Error("axiom (" + axiom_name + "): " + msg),
        axiom(std::move(axiom_name)), witness(std::move(witness_indices)) {}
    std::string axiom;
    std::vector<std::size_t> witness;
  };

  // Random combination failed to separate eigenspaces after all retries.
  class EigenvalueCollisionError : public Error {
  public:
    using Error::Error;
  };

} // namespace spectralpath
