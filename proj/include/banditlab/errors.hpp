#pragma once

#include <stdexcept>
#include <string>

namespace banditlab {

/// Base class for all domain errors raised by the library.
struct BanditError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooFewArms : BanditError {
  using BanditError::BanditError;
};

struct OutOfRange : BanditError {
  using BanditError::BanditError;
};

struct NonUniqueBest : BanditError {
  using BanditError::BanditError;
};

struct InvalidInstance : BanditError {
  using BanditError::BanditError;
};

struct HorizonTooShort : BanditError {
  using BanditError::BanditError;
};

struct InvalidU : BanditError {
  using BanditError::BanditError;
};

/// Adversary proposed a corruption vector the ledger cannot afford. Shipped
/// adversaries self-limit, so reaching this is a programming error, not a
/// recoverable condition.
struct BudgetExceeded : BanditError {
  using BanditError::BanditError;
};

/// A corrupted reward left [0,1] or a corruption left [-1,1].
struct RangeViolation : BanditError {
  using BanditError::BanditError;
};

struct PreconditionViolated : BanditError {
  using BanditError::BanditError;
};

struct ConfigError : BanditError {
  using BanditError::BanditError;
};

}  // namespace banditlab
