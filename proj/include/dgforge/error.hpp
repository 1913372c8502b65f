#pragma once

#include <stdexcept>
#include <string>

namespace dgforge {

enum class Errc {
  dimension_mismatch,
  not_a_complex,
  field_too_small,
  non_graded_radical,
  invalid_input,
  precondition_failed,
  invariant_violation,
  too_large,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_a_complex: return "NotAComplex";
    case Errc::field_too_small: return "FieldTooSmall";
    case Errc::non_graded_radical: return "NonGradedRadical";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::too_large: return "TooLarge";
  }
  return "Error";
}

}  // namespace dgforge
