#pragma once

#include <stdexcept>
#include <string>

namespace spraywork {

/// Base class for all spraywork errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. Carries 1-based line/column and the
/// expected-token set.
struct SyntaxError : Error {
  int line;
  int column;
  std::string expected;
  SyntaxError(const std::string& msg, int line_, int column_,
              std::string expected_ = {})
      : Error(msg + " at " + std::to_string(line_) + ":" +
              std::to_string(column_) +
              (expected_.empty() ? "" : " (expected " + expected_ + ")")),
        line(line_), column(column_), expected(std::move(expected_)) {}
};

/// Variable index outside 1..n for the declared dimension.
struct UnknownVariable : Error {
  using Error::Error;
};

/// `a^b` with non-integer exponent.
struct NonIntegerExponent : Error {
  using Error::Error;
};

/// log/sqrt/division evaluated at a singular point.
struct DomainError : Error {
  using Error::Error;
};

/// Jet division by a jet with zero constant term.
struct DivisionByZeroJet : Error {
  using Error::Error;
};

/// Multi-index order exceeds the jet's truncation order.
struct OrderExceeded : Error {
  using Error::Error;
};

/// Jacobi eigenvalues closer than the separation tolerance; the generic
/// distinct-eigenvalue hypothesis fails at this point.
struct EigenvalueCollision : Error {
  using Error::Error;
};

/// Jacobi endomorphism has a non-real eigenvalue pair.
struct ComplexEigenvalues : Error {
  using Error::Error;
};

/// beta/gamma vanishing test and eigen-distribution involutivity test
/// disagree beyond tolerance.
struct InconsistentReducibility : Error {
  using Error::Error;
};

/// eta_1 or eta_2 below tolerance in the reduced compatibility relation.
struct EtaZero : Error {
  using Error::Error;
};

/// Exact-matrix dimension guardrail exceeded.
struct ResourceLimit : Error {
  using Error::Error;
};

/// Catalog lookup for a name that is not shipped.
struct UnknownCatalogEntry : Error {
  using Error::Error;
};

/// Bad analysis configuration or spray file.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace spraywork
