#pragma once

#include <stdexcept>
#include <string>

namespace koszulkit {

/// Base of every domain error. `name()` is the stable identifier printed by the
/// CLI on standard error.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define KOSZULKIT_DEFINE_ERROR(Type, tag)                                   \
  class Type : public Error {                                               \
   public:                                                                  \
    explicit Type(const std::string& what) : Error(tag, what) {}            \
  }

KOSZULKIT_DEFINE_ERROR(InvalidArgument, "invalid-argument");
KOSZULKIT_DEFINE_ERROR(DimensionMismatch, "dimension-mismatch");
KOSZULKIT_DEFINE_ERROR(FieldMismatch, "field-mismatch");
KOSZULKIT_DEFINE_ERROR(IndexOutOfRange, "index-out-of-range");
KOSZULKIT_DEFINE_ERROR(InsufficientPrecision, "insufficient-precision");
KOSZULKIT_DEFINE_ERROR(PrecisionMismatch, "precision-mismatch");
KOSZULKIT_DEFINE_ERROR(NotInD2, "not-in-D2");
KOSZULKIT_DEFINE_ERROR(ResourceLimit, "resource-limit");
KOSZULKIT_DEFINE_ERROR(ModelOutOfScope, "model-out-of-scope");
KOSZULKIT_DEFINE_ERROR(DegenerateRelationSpan, "degenerate-relation-span");
KOSZULKIT_DEFINE_ERROR(NonMonic, "non-monic");
KOSZULKIT_DEFINE_ERROR(InvalidSpec, "invalid-spec");
KOSZULKIT_DEFINE_ERROR(Unsupported, "unsupported");
KOSZULKIT_DEFINE_ERROR(ParseError, "parse-error");

#undef KOSZULKIT_DEFINE_ERROR

}  // namespace koszulkit
