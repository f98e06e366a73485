#ifndef MINRANK_RANDOM_HPP
#define MINRANK_RANDOM_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "minrank/field.hpp"

namespace minrank {

// Unbounded source of bytes. Deterministic implementations (counter-mode
// expansion of a seed) make every sampling operation a pure function of the
// stream; see commitment.hpp for the seed-based one.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  virtual void fill(std::span<uint8_t> out) = 0;
};

// OS entropy (getrandom / /dev/urandom).
class SystemEntropyStream final : public ByteStream {
 public:
  void fill(std::span<uint8_t> out) override;
};

// Replays a fixed buffer, then repeats it. Test helper.
class FixedStream final : public ByteStream {
 public:
  explicit FixedStream(std::vector<uint8_t> bytes);
  void fill(std::span<uint8_t> out) override;

 private:
  std::vector<uint8_t> bytes_;
  size_t pos_ = 0;
};

// Sampling adapter over a ByteStream. Conventions, fixed for reproducibility:
//  - bytes are drawn directly from the stream, independent of the bit buffer;
//  - bits are drawn LSB-first from dedicated buffer bytes;
//  - F_2 elements cost one bit; other F_q elements use rejection sampling on
//    the smallest power-of-256 range >= q (little-endian candidate value,
//    accepted below the largest multiple of q).
class RandomSource {
 public:
  explicit RandomSource(ByteStream& stream) : stream_(&stream) {}
  explicit RandomSource(std::unique_ptr<ByteStream> stream)
      : owned_(std::move(stream)), stream_(owned_.get()) {}

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  void fill(std::span<uint8_t> out) { stream_->fill(out); }
  std::vector<uint8_t> bytes(size_t count);
  uint8_t byte();
  uint32_t bit();
  uint32_t bits(unsigned count);  // count <= 32, LSB-first composition
  uint16_t field_element(const FieldSpec& field);

 private:
  std::unique_ptr<ByteStream> owned_;
  ByteStream* stream_;
  uint8_t bit_buffer_ = 0;
  unsigned bits_left_ = 0;
};

}  // namespace minrank

#endif
