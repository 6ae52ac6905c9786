#ifndef QSEMI_ERRORS_HPP
#define QSEMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsemi {

// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension or block-structure mismatch between operands.
struct StructureError : Error {
  using Error::Error;
};

// Input rejected on mathematical grounds (non-state density, non-associative
// table, non-Hermitian matrix where one is required, ...).
struct InvalidInput : Error {
  using Error::Error;
};

// A comultiplication candidate failed the algebraic axioms.
struct AxiomError : Error {
  using Error::Error;
};

// The compressed comultiplication escaped the span it has to live in.
// This cannot happen for a genuine idempotent state, so it is a hard error.
struct RangeContainmentError : Error {
  using Error::Error;
};

// Which hypothesis of the universal factorization failed.
enum class Hypothesis {
  CompletelyPositive,
  Surjective,
  Unital,
  Intertwining,
  StateFactorization,
  FaithfulHaar,
  KernelInclusion,
};

const char* hypothesis_name(Hypothesis h);

// Thrown by factor_through when one of its hypotheses does not hold.
struct HypothesisError : Error {
  Hypothesis which;
  double residual;
  HypothesisError(Hypothesis h, double r, const std::string& msg)
      : Error(msg), which(h), residual(r) {}
};

// Malformed or unreadable workbench file.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace qsemi

#endif
