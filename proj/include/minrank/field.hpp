#ifndef MINRANK_FIELD_HPP
#define MINRANK_FIELD_HPP

#include <cstdint>

#include "minrank/errors.hpp"

namespace minrank {

// Prime field F_q, q < 2^16. Elements are stored reduced to [0, q).
class FieldSpec {
 public:
  explicit FieldSpec(uint32_t q);

  uint32_t q() const { return q_; }

  uint16_t add(uint16_t a, uint16_t b) const {
    uint32_t s = uint32_t(a) + b;
    return uint16_t(s >= q_ ? s - q_ : s);
  }
  uint16_t sub(uint16_t a, uint16_t b) const {
    return uint16_t(a >= b ? a - b : a + q_ - b);
  }
  uint16_t neg(uint16_t a) const { return a == 0 ? 0 : uint16_t(q_ - a); }
  uint16_t mul(uint16_t a, uint16_t b) const {
    return uint16_t((uint32_t(a) * b) % q_);
  }
  // Multiplicative inverse via Fermat: a^(q-2). a must be nonzero.
  uint16_t inv(uint16_t a) const;

  bool operator==(const FieldSpec& o) const { return q_ == o.q_; }
  bool operator!=(const FieldSpec& o) const { return q_ != o.q_; }

 private:
  uint32_t q_;
};

bool is_prime_u32(uint32_t v);

}  // namespace minrank

#endif
