#include "minrank/random.hpp"

#include <random>

namespace minrank {

void SystemEntropyStream::fill(std::span<uint8_t> out) {
  static thread_local std::random_device dev;
  size_t i = 0;
  while (i < out.size()) {
    unsigned int v = dev();
    for (unsigned b = 0; b < sizeof(v) && i < out.size(); ++b, ++i)
      out[i] = uint8_t(v >> (8 * b));
  }
}

FixedStream::FixedStream(std::vector<uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty())
    throw Error(ErrorCode::invalid_argument, "fixed stream needs at least one byte");
}

void FixedStream::fill(std::span<uint8_t> out) {
  for (auto& b : out) {
    b = bytes_[pos_];
    pos_ = (pos_ + 1) % bytes_.size();
  }
}

std::vector<uint8_t> RandomSource::bytes(size_t count) {
  std::vector<uint8_t> out(count);
  stream_->fill(out);
  return out;
}

uint8_t RandomSource::byte() {
  uint8_t b;
  stream_->fill({&b, 1});
  return b;
}

uint32_t RandomSource::bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = byte();
    bits_left_ = 8;
  }
  uint32_t b = bit_buffer_ & 1;
  bit_buffer_ >>= 1;
  --bits_left_;
  return b;
}

uint32_t RandomSource::bits(unsigned count) {
  uint32_t v = 0;
  for (unsigned i = 0; i < count; ++i) v |= bit() << i;
  return v;
}

uint16_t RandomSource::field_element(const FieldSpec& field) {
  const uint32_t q = field.q();
  if (q == 2) return uint16_t(bit());
  if (q <= 256) {
    const uint32_t limit = 256 - (256 % q);
    for (;;) {
      uint32_t v = byte();
      if (v < limit) return uint16_t(v % q);
    }
  }
  const uint32_t range = 1u << 16;
  const uint32_t limit = range - (range % q);
  for (;;) {
    uint8_t raw[2];
    stream_->fill(raw);
    uint32_t v = uint32_t(raw[0]) | (uint32_t(raw[1]) << 8);
    if (v < limit) return uint16_t(v % q);
  }
}

}  // namespace minrank
