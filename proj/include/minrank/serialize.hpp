#ifndef MINRANK_SERIALIZE_HPP
#define MINRANK_SERIALIZE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "minrank/instance.hpp"
#include "minrank/matrix.hpp"

namespace minrank {

// Canonical byte encodings, little-endian throughout.
//
// Matrix body: row-major. q = 2 packs each row LSB-first, padded to whole
// bytes (ceil(cols/8) per row, padding bits zero). 2 < q < 256 uses one byte
// per entry; larger q two bytes LE. Entries must be < q; decoding rejects
// out-of-range entries and nonzero padding.
size_t element_width(const FieldSpec& field);
size_t matrix_body_size(const FieldSpec& field, size_t rows, size_t cols);
void append_matrix(std::vector<uint8_t>& out, const Matrix& m);
std::vector<uint8_t> matrix_bytes(const Matrix& m);

// Coefficient vector body: same element packing as one matrix row.
size_t coeff_body_size(const FieldSpec& field, size_t len);
void append_coeffs(std::vector<uint8_t>& out, const CoeffVector& v);
std::vector<uint8_t> coeff_bytes(const CoeffVector& v);

// Bounds-checked reader used by every decoder.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}
  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  uint64_t u64();
  std::span<const uint8_t> take(size_t count);
  void expect_end() const;

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

Matrix read_matrix(ByteReader& in, const FieldSpec& field, size_t rows, size_t cols);
CoeffVector read_coeffs(ByteReader& in, const FieldSpec& field, size_t len);

void append_u16(std::vector<uint8_t>& out, uint16_t v);
void append_u32(std::vector<uint8_t>& out, uint32_t v);
void append_u64(std::vector<uint8_t>& out, uint64_t v);

// Key files.
//   header: magic "MRPK"/"MRSK" | version 0x01 | hash id | q:2 | n:2 | m:2 | r:2
//   pk body: M_0..M_{m-1} matrix bodies
//   sk body: alpha (m-1 elements)
inline constexpr uint8_t kFormatVersion = 0x01;

std::vector<uint8_t> serialize_public_key(const PublicKey& pk, uint8_t hash_id);
PublicKey deserialize_public_key(std::span<const uint8_t> data, uint8_t* hash_id_out = nullptr);
std::vector<uint8_t> serialize_secret_key(const Params& params, const SecretKey& sk,
                                          uint8_t hash_id);
// Returns the alpha plus the params recorded in the header.
std::pair<Params, SecretKey> deserialize_secret_key(std::span<const uint8_t> data,
                                                    uint8_t* hash_id_out = nullptr);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const uint8_t> data);

}  // namespace minrank

#endif
