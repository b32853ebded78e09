#pragma once

#include <stdexcept>
#include <string>

namespace massey {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed word or presentation text.
struct SyntaxError : Error {
  using Error::Error;
};

// Generator index out of range for the ambient free group.
struct IndexError : Error {
  using Error::Error;
};

// Operands live over different generator counts or moduli.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Word has a nonzero degree-1 Magnus part, so it is outside S_(2).
struct NotInS2 : Error {
  using Error::Error;
};

// The degree-3 coefficient solve came out inconsistent. This cannot happen
// for valid input; it signals a bug in the decomposition machinery.
struct InternalBasisError : Error {
  using Error::Error;
};

// The defining-representation search space exceeds the configured budget.
struct FoldTooLarge : Error {
  using Error::Error;
};

// An exhaustive homomorphism search exceeds the configured budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// norm_solve was called although b is not a norm from Q(sqrt(a)).
struct NotANorm : Error {
  using Error::Error;
};

// The conic search hit its height cap. Solvability is guaranteed before the
// search starts, so this signals a solver bug or an unreasonable cap.
struct HeightCapExceeded : Error {
  using Error::Error;
};

// A Massey product precondition (cup-product vanishing) fails.
struct NotDefinedError : Error {
  using Error::Error;
};

}  // namespace massey
