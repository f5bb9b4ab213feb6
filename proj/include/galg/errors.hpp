#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace galg {

/// Base class of every exception raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GALG_DEFINE_ERROR(Name)                 \
  class Name : public error {                   \
   public:                                      \
    using error::error;                         \
  }

GALG_DEFINE_ERROR(DivisionByZero);
GALG_DEFINE_ERROR(FieldMismatch);
GALG_DEFINE_ERROR(DimensionMismatch);
GALG_DEFINE_ERROR(NotSquare);
GALG_DEFINE_ERROR(NotInvertible);
GALG_DEFINE_ERROR(NotDirectSum);
GALG_DEFINE_ERROR(NotUnital);
GALG_DEFINE_ERROR(NotHermitianSlices);
GALG_DEFINE_ERROR(InconsistentDims);
GALG_DEFINE_ERROR(NotStabilizing);
GALG_DEFINE_ERROR(BudgetExceeded);
GALG_DEFINE_ERROR(BadParameters);
GALG_DEFINE_ERROR(BadPartition);
GALG_DEFINE_ERROR(InvalidInput);

#undef GALG_DEFINE_ERROR

/// The search group G in an isotopism search exceeds the configured budget.
class GTooLarge : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

/// Raised when a graded algebra is not generated in its declared degrees.
class NotGenerated : public error {
 public:
  using error::error;
};

/// Raised by homotopism extension; carries the degree where the kernel test
/// failed.
class NoExtension : public error {
 public:
  NoExtension(std::string degree, const std::string& what)
      : error(what), degree_(std::move(degree)) {}
  const std::string& degree() const noexcept { return degree_; }

 private:
  std::string degree_;
};

}  // namespace galg
