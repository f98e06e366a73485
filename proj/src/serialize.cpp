#include "minrank/serialize.hpp"

#include <cstdio>
#include <memory>

namespace minrank {

size_t element_width(const FieldSpec& field) { return field.q() < 256 ? 1 : 2; }

size_t matrix_body_size(const FieldSpec& field, size_t rows, size_t cols) {
  if (field.q() == 2) return rows * ((cols + 7) / 8);
  return rows * cols * element_width(field);
}

namespace {

void append_packed_row(std::vector<uint8_t>& out, const Matrix& m, size_t r) {
  const size_t row_bytes = (m.cols() + 7) / 8;
  auto words = m.row_words(r);
  for (size_t b = 0; b < row_bytes; ++b)
    out.push_back(uint8_t(words[b / 8] >> (8 * (b % 8))));
}

void append_element(std::vector<uint8_t>& out, const FieldSpec& f, uint16_t v) {
  out.push_back(uint8_t(v));
  if (element_width(f) == 2) out.push_back(uint8_t(v >> 8));
}

uint16_t read_element(ByteReader& in, const FieldSpec& f) {
  uint16_t v = in.u8();
  if (element_width(f) == 2) v = uint16_t(v | (uint16_t(in.u8()) << 8));
  if (v >= f.q())
    throw Error(ErrorCode::invariant_violation, "element not reduced mod q");
  return v;
}

}  // namespace

void append_matrix(std::vector<uint8_t>& out, const Matrix& m) {
  if (m.packed()) {
    for (size_t r = 0; r < m.rows(); ++r) append_packed_row(out, m, r);
  } else {
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) append_element(out, m.field(), m.at(r, c));
  }
}

std::vector<uint8_t> matrix_bytes(const Matrix& m) {
  std::vector<uint8_t> out;
  out.reserve(matrix_body_size(m.field(), m.rows(), m.cols()));
  append_matrix(out, m);
  return out;
}

size_t coeff_body_size(const FieldSpec& field, size_t len) {
  if (field.q() == 2) return (len + 7) / 8;
  return len * element_width(field);
}

void append_coeffs(std::vector<uint8_t>& out, const CoeffVector& v) {
  if (v.field.q() == 2) {
    uint8_t acc = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      acc |= uint8_t(v.values[i] << (i % 8));
      if (i % 8 == 7) {
        out.push_back(acc);
        acc = 0;
      }
    }
    if (v.size() % 8 != 0) out.push_back(acc);
  } else {
    for (auto e : v.values) append_element(out, v.field, e);
  }
}

std::vector<uint8_t> coeff_bytes(const CoeffVector& v) {
  std::vector<uint8_t> out;
  out.reserve(coeff_body_size(v.field, v.size()));
  append_coeffs(out, v);
  return out;
}

uint8_t ByteReader::u8() {
  if (remaining() < 1) throw Error(ErrorCode::truncated_input, "need 1 byte");
  return data_[pos_++];
}

uint16_t ByteReader::u16() {
  uint16_t lo = u8();
  return uint16_t(lo | (uint16_t(u8()) << 8));
}

uint32_t ByteReader::u32() {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(u8()) << (8 * i);
  return v;
}

uint64_t ByteReader::u64() {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(u8()) << (8 * i);
  return v;
}

std::span<const uint8_t> ByteReader::take(size_t count) {
  if (remaining() < count) throw Error(ErrorCode::truncated_input, "short read");
  auto out = data_.subspan(pos_, count);
  pos_ += count;
  return out;
}

void ByteReader::expect_end() const {
  if (!done()) throw Error(ErrorCode::length_mismatch, "trailing bytes");
}

Matrix read_matrix(ByteReader& in, const FieldSpec& field, size_t rows, size_t cols) {
  // bound the allocation by the input that is actually present
  if (in.remaining() < matrix_body_size(field, rows, cols))
    throw Error(ErrorCode::truncated_input, "matrix body short");
  Matrix m(field, rows, cols);
  if (field.q() == 2) {
    const size_t row_bytes = (cols + 7) / 8;
    for (size_t r = 0; r < rows; ++r) {
      auto raw = in.take(row_bytes);
      auto words = m.row_words(r);
      for (size_t b = 0; b < row_bytes; ++b)
        words[b / 8] |= uint64_t(raw[b]) << (8 * (b % 8));
      if (cols % 8 != 0) {
        const uint8_t pad = uint8_t(raw[row_bytes - 1] >> (cols % 8));
        if (pad != 0)
          throw Error(ErrorCode::invariant_violation, "nonzero row padding bits");
      }
    }
  } else {
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) m.set(r, c, read_element(in, field));
  }
  return m;
}

CoeffVector read_coeffs(ByteReader& in, const FieldSpec& field, size_t len) {
  std::vector<uint16_t> v(len);
  if (field.q() == 2) {
    auto raw = in.take((len + 7) / 8);
    for (size_t i = 0; i < len; ++i) v[i] = (raw[i / 8] >> (i % 8)) & 1;
    if (len % 8 != 0 && (raw[len / 8] >> (len % 8)) != 0)
      throw Error(ErrorCode::invariant_violation, "nonzero coefficient padding bits");
  } else {
    for (size_t i = 0; i < len; ++i) v[i] = read_element(in, field);
  }
  return CoeffVector(field, std::move(v));
}

void append_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

void append_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

namespace {

void append_key_header(std::vector<uint8_t>& out, const char* magic,
                       const Params& p, uint8_t hash_id) {
  out.insert(out.end(), magic, magic + 4);
  out.push_back(kFormatVersion);
  out.push_back(hash_id);
  append_u16(out, uint16_t(p.field.q()));
  append_u16(out, uint16_t(p.n));
  append_u16(out, uint16_t(p.m));
  append_u16(out, uint16_t(p.r));
}

Params read_key_header(ByteReader& in, const char* magic, uint8_t* hash_id_out) {
  auto got = in.take(4);
  for (int i = 0; i < 4; ++i)
    if (got[i] != uint8_t(magic[i])) throw Error(ErrorCode::bad_magic, "key file magic");
  if (in.u8() != kFormatVersion)
    throw Error(ErrorCode::bad_version, "key file version");
  const uint8_t hash_id = in.u8();
  if (hash_id != 0x01)
    throw Error(ErrorCode::unknown_hash_algorithm, "only SHA-256 (0x01) supported");
  if (hash_id_out) *hash_id_out = hash_id;
  const uint16_t q = in.u16();
  const uint16_t n = in.u16();
  const uint16_t m = in.u16();
  const uint16_t r = in.u16();
  Params p{FieldSpec(q), n, m, r};
  p.validate();
  return p;
}

}  // namespace

std::vector<uint8_t> serialize_public_key(const PublicKey& pk, uint8_t hash_id) {
  pk.check_invariants();
  std::vector<uint8_t> out;
  append_key_header(out, "MRPK", pk.params, hash_id);
  for (const auto& m : pk.matrices) append_matrix(out, m);
  return out;
}

PublicKey deserialize_public_key(std::span<const uint8_t> data, uint8_t* hash_id_out) {
  ByteReader in(data);
  Params p = read_key_header(in, "MRPK", hash_id_out);
  std::vector<Matrix> mats;
  mats.reserve(p.m);
  for (size_t i = 0; i < p.m; ++i) mats.push_back(read_matrix(in, p.field, p.n, p.n));
  in.expect_end();
  PublicKey pk{p, std::move(mats)};
  pk.check_invariants();
  return pk;
}

std::vector<uint8_t> serialize_secret_key(const Params& params, const SecretKey& sk,
                                          uint8_t hash_id) {
  if (sk.alpha.size() + 1 != params.m)
    throw Error(ErrorCode::invariant_violation, "alpha length must be m-1");
  std::vector<uint8_t> out;
  append_key_header(out, "MRSK", params, hash_id);
  append_coeffs(out, sk.alpha);
  return out;
}

std::pair<Params, SecretKey> deserialize_secret_key(std::span<const uint8_t> data,
                                                    uint8_t* hash_id_out) {
  ByteReader in(data);
  Params p = read_key_header(in, "MRSK", hash_id_out);
  CoeffVector alpha = read_coeffs(in, p.field, p.m - 1);
  in.expect_end();
  return {p, SecretKey{std::move(alpha)}};
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw Error(ErrorCode::io_failure, "cannot open " + path);
  std::vector<uint8_t> data;
  uint8_t buf[65536];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f.get())) > 0)
    data.insert(data.end(), buf, buf + got);
  if (std::ferror(f.get())) throw Error(ErrorCode::io_failure, "read failed: " + path);
  return data;
}

void write_file(const std::string& path, std::span<const uint8_t> data) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw Error(ErrorCode::io_failure, "cannot open " + path);
  if (std::fwrite(data.data(), 1, data.size(), f.get()) != data.size())
    throw Error(ErrorCode::io_failure, "write failed: " + path);
}

}  // namespace minrank
