#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

enum class errc {
  negative_order,
  exact_mode_unsupported,
  order_out_of_range,
  mode_mismatch,
  weight_too_short,
  zero_lambda,
  equal_parameters,
  not_summable,
  zero_point,
  index_out_of_range,
  not_identity_at_zero,
  horizon_too_short,
  not_convergent,
  dimension_too_small,
  dimension_mismatch,
  singular_matrix,
  non_positive_weight,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::negative_order: return "NegativeOrder";
    case errc::exact_mode_unsupported: return "ExactModeUnsupported";
    case errc::order_out_of_range: return "OrderOutOfRange";
    case errc::mode_mismatch: return "ModeMismatch";
    case errc::weight_too_short: return "WeightTooShort";
    case errc::zero_lambda: return "ZeroLambda";
    case errc::equal_parameters: return "EqualParameters";
    case errc::not_summable: return "NotSummable";
    case errc::zero_point: return "ZeroPoint";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::not_identity_at_zero: return "NotIdentityAtZero";
    case errc::horizon_too_short: return "HorizonTooShort";
    case errc::not_convergent: return "NotConvergent";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace cesaro
