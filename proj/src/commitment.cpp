#include "minrank/commitment.hpp"

#include <openssl/evp.h>

namespace minrank {

namespace {

class Sha256 final : public HashFunction {
 public:
  uint8_t id() const override { return 0x01; }
  Digest digest(std::span<const uint8_t> data) const override {
    Digest d;
    unsigned int len = 32;
    if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(),
                   nullptr) != 1 ||
        len != 32)
      throw Error(ErrorCode::io_failure, "SHA-256 digest failed");
    return d;
  }
};

}  // namespace

const HashFunction& sha256() {
  static const Sha256 instance;
  return instance;
}

Digest commit(const HashFunction& hash, std::string_view tag,
              std::span<const uint8_t> payload) {
  if (tag.size() > 255)
    throw Error(ErrorCode::invalid_argument, "commitment tag too long");
  std::vector<uint8_t> buf;
  buf.reserve(tag.size() + 1 + payload.size());
  buf.insert(buf.end(), tag.begin(), tag.end());
  buf.push_back(uint8_t(tag.size()));
  buf.insert(buf.end(), payload.begin(), payload.end());
  return hash.digest(buf);
}

ExpandStream::ExpandStream(const HashFunction& hash, Seed seed, std::string_view tag)
    : hash_(&hash) {
  prefix_.insert(prefix_.end(), tag.begin(), tag.end());
  prefix_.insert(prefix_.end(), seed.begin(), seed.end());
}

void ExpandStream::fill(std::span<uint8_t> out) {
  size_t i = 0;
  while (i < out.size()) {
    if (used_ == 32) {
      std::vector<uint8_t> input = prefix_;
      for (int b = 0; b < 4; ++b) input.push_back(uint8_t(counter_ >> (8 * b)));
      block_ = hash_->digest(input);
      ++counter_;
      used_ = 0;
    }
    const size_t take = std::min(out.size() - i, size_t(32 - used_));
    std::copy_n(block_.bytes.begin() + used_, take, out.begin() + i);
    used_ += unsigned(take);
    i += take;
  }
}

SideOpening derive_stx(const HashFunction& hash, const Seed& seed_stx,
                       FieldSpec field, size_t n) {
  RandomSource s_rng(std::make_unique<ExpandStream>(hash, seed_stx, "S"));
  RandomSource t_rng(std::make_unique<ExpandStream>(hash, seed_stx, "T"));
  RandomSource x_rng(std::make_unique<ExpandStream>(hash, seed_stx, "X"));
  return SideOpening{random_invertible(s_rng, field, n),
                     random_invertible(t_rng, field, n),
                     random_matrix(x_rng, field, n, n)};
}

CoeffVector derive_beta(const HashFunction& hash, const Seed& seed_beta,
                        FieldSpec field, size_t m) {
  RandomSource rng(std::make_unique<ExpandStream>(hash, seed_beta, "B"));
  return random_coeffs(rng, field, m - 1);
}

DerivedSide derive_side(const HashFunction& hash, const Seed& seed_stx,
                        const Seed& seed_beta, FieldSpec field, size_t n, size_t m) {
  return DerivedSide{derive_stx(hash, seed_stx, field, n),
                     derive_beta(hash, seed_beta, field, m)};
}

}  // namespace minrank
