#include "minrank/field.hpp"

namespace minrank {

bool is_prime_u32(uint32_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (uint32_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(uint32_t q) : q_(q) {
  if (q >= (1u << 16))
    throw Error(ErrorCode::invalid_params, "field modulus must be < 2^16");
  if (!is_prime_u32(q))
    throw Error(ErrorCode::invalid_params, "field modulus must be prime");
}

uint16_t FieldSpec::inv(uint16_t a) const {
  if (a == 0) throw Error(ErrorCode::invalid_argument, "inverse of zero");
  uint32_t base = a % q_, result = 1, e = q_ - 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % q_;
    base = (base * base) % q_;
    e >>= 1;
  }
  return uint16_t(result);
}

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::field_mismatch: return "field mismatch";
    case ErrorCode::non_square: return "non-square matrix";
    case ErrorCode::singular_matrix: return "singular matrix";
    case ErrorCode::invalid_params: return "invalid parameters";
    case ErrorCode::enumeration_cap_exceeded: return "enumeration cap exceeded";
    case ErrorCode::state_consumed: return "round state already consumed";
    case ErrorCode::not_enough_responses: return "not enough responses";
    case ErrorCode::response_invalid: return "response fails verification";
    case ErrorCode::binding_violation: return "commitment binding violation";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::bad_version: return "unsupported version";
    case ErrorCode::unknown_hash_algorithm: return "unknown hash algorithm";
    case ErrorCode::unknown_frame_type: return "unknown frame type";
    case ErrorCode::truncated_input: return "truncated input";
    case ErrorCode::length_mismatch: return "length mismatch";
    case ErrorCode::invariant_violation: return "invariant violation";
    case ErrorCode::io_failure: return "i/o failure";
    case ErrorCode::parameter_mismatch: return "session parameter mismatch";
    case ErrorCode::frame_order_violation: return "frame order violation";
    case ErrorCode::timeout: return "timeout";
    case ErrorCode::transport_closed: return "transport closed";
    case ErrorCode::remote_abort: return "remote abort";
  }
  return "unknown error";
}

}  // namespace minrank
