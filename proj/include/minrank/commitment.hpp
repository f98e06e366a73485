#ifndef MINRANK_COMMITMENT_HPP
#define MINRANK_COMMITMENT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "minrank/matrix.hpp"
#include "minrank/random.hpp"

namespace minrank {

struct Digest {
  std::array<uint8_t, 32> bytes{};
  bool operator==(const Digest&) const = default;
};

// Seed length is a session parameter: ceil(security bits / 8).
using Seed = std::vector<uint8_t>;

// 256-bit hash behind the commitments and the seed expander. The algorithm id
// byte is recorded in key and transcript file headers (0x01 = SHA-256).
class HashFunction {
 public:
  virtual ~HashFunction() = default;
  virtual uint8_t id() const = 0;
  virtual Digest digest(std::span<const uint8_t> data) const = 0;
};

const HashFunction& sha256();

// H(tag || len(tag) || payload) with len(tag) encoded as a single byte.
// The tag separates the six commitment slots (U00, U01, R0, U10, U11, R1).
Digest commit(const HashFunction& hash, std::string_view tag,
              std::span<const uint8_t> payload);

// Counter-mode expander: block i is H(tag || seed || i as 4-byte LE).
class ExpandStream final : public ByteStream {
 public:
  ExpandStream(const HashFunction& hash, Seed seed, std::string_view tag);
  void fill(std::span<uint8_t> out) override;

 private:
  const HashFunction* hash_;
  std::vector<uint8_t> prefix_;  // tag || seed
  uint32_t counter_ = 0;
  Digest block_;
  unsigned used_ = 32;
};

// (S, T, X) and beta re-derived identically by prover and verifier; response
// payloads carry the seeds instead of the objects.
struct SideOpening {
  Matrix s;
  Matrix t;
  Matrix x;
};

SideOpening derive_stx(const HashFunction& hash, const Seed& seed_stx,
                       FieldSpec field, size_t n);
CoeffVector derive_beta(const HashFunction& hash, const Seed& seed_beta,
                        FieldSpec field, size_t m);

struct DerivedSide {
  SideOpening stx;
  CoeffVector beta;
};

DerivedSide derive_side(const HashFunction& hash, const Seed& seed_stx,
                        const Seed& seed_beta, FieldSpec field, size_t n, size_t m);

}  // namespace minrank

#endif
