#ifndef MINRANK_ERRORS_HPP
#define MINRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace minrank {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  field_mismatch,
  non_square,
  singular_matrix,
  invalid_params,
  enumeration_cap_exceeded,
  state_consumed,
  not_enough_responses,
  response_invalid,
  binding_violation,
  // serialization
  bad_magic,
  bad_version,
  unknown_hash_algorithm,
  unknown_frame_type,
  truncated_input,
  length_mismatch,
  invariant_violation,
  io_failure,
  // wire sessions
  parameter_mismatch,
  frame_order_violation,
  timeout,
  transport_closed,
  remote_abort,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minrank

#endif
