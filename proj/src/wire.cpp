#include "minrank/wire.hpp"

namespace minrank {

namespace {

constexpr char kFrameMagic[4] = {'M', 'R', 'I', 'D'};

void append_digest(std::vector<uint8_t>& out, const Digest& d) {
  out.insert(out.end(), d.bytes.begin(), d.bytes.end());
}

Digest read_digest(ByteReader& in) {
  Digest d;
  auto raw = in.take(32);
  std::copy(raw.begin(), raw.end(), d.bytes.begin());
  return d;
}

void append_seed(std::vector<uint8_t>& out, const Seed& s) {
  out.insert(out.end(), s.begin(), s.end());
}

Seed read_seed(ByteReader& in, size_t seed_bytes) {
  auto raw = in.take(seed_bytes);
  return Seed(raw.begin(), raw.end());
}

bool valid_frame_type(uint8_t t) {
  return t >= uint8_t(FrameType::commit) && t <= uint8_t(FrameType::error);
}

}  // namespace

std::vector<uint8_t> encode_frame(const WireFrame& f) {
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderSize + f.payload.size());
  out.insert(out.end(), kFrameMagic, kFrameMagic + 4);
  out.push_back(kFormatVersion);
  out.push_back(uint8_t(f.type));
  append_u32(out, uint32_t(f.payload.size()));
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  return out;
}

std::pair<FrameType, uint32_t> parse_frame_header(std::span<const uint8_t> header) {
  if (header.size() != kFrameHeaderSize)
    throw Error(ErrorCode::truncated_input, "frame header is 10 bytes");
  ByteReader in(header);
  auto magic = in.take(4);
  for (int i = 0; i < 4; ++i)
    if (magic[i] != uint8_t(kFrameMagic[i]))
      throw Error(ErrorCode::bad_magic, "frame magic");
  if (in.u8() != kFormatVersion) throw Error(ErrorCode::bad_version, "frame version");
  const uint8_t type = in.u8();
  if (!valid_frame_type(type))
    throw Error(ErrorCode::unknown_frame_type, "frame type " + std::to_string(type));
  const uint32_t len = in.u32();
  return {FrameType(type), len};
}

std::vector<uint8_t> session_header_payload(const SessionHeader& h) {
  std::vector<uint8_t> out;
  append_u16(out, uint16_t(h.params.field.q()));
  append_u16(out, uint16_t(h.params.n));
  append_u16(out, uint16_t(h.params.m));
  append_u16(out, uint16_t(h.params.r));
  append_u32(out, h.rounds);
  out.push_back(h.hash_id);
  out.push_back(h.seed_bytes);
  return out;
}

SessionHeader parse_session_header(std::span<const uint8_t> payload) {
  ByteReader in(payload);
  const uint16_t q = in.u16();
  const uint16_t n = in.u16();
  const uint16_t m = in.u16();
  const uint16_t r = in.u16();
  Params p{FieldSpec(q), n, m, r};
  p.validate();
  SessionHeader h{p, in.u32(), in.u8(), in.u8()};
  in.expect_end();
  if (h.rounds == 0) throw Error(ErrorCode::invariant_violation, "zero rounds");
  if (h.seed_bytes == 0) throw Error(ErrorCode::invariant_violation, "zero seed length");
  return h;
}

std::vector<uint8_t> commitment_payload(const CommitmentBundle& y) {
  std::vector<uint8_t> out;
  out.reserve(192);
  for (const auto& d : y.y0) append_digest(out, d);
  for (const auto& d : y.y1) append_digest(out, d);
  return out;
}

CommitmentBundle parse_commitment(std::span<const uint8_t> payload) {
  ByteReader in(payload);
  CommitmentBundle y;
  for (auto& d : y.y0) d = read_digest(in);
  for (auto& d : y.y1) d = read_digest(in);
  in.expect_end();
  return y;
}

std::vector<uint8_t> challenge_payload(Challenge c) {
  return {uint8_t(c)};
}

Challenge parse_challenge(std::span<const uint8_t> payload) {
  ByteReader in(payload);
  const uint8_t c = in.u8();
  in.expect_end();
  if (c > 3) throw Error(ErrorCode::invariant_violation, "challenge out of range");
  return Challenge(c);
}

std::vector<uint8_t> response_payload(const Response& z) {
  std::vector<uint8_t> out;
  out.push_back(uint8_t(z.challenge()));
  switch (z.challenge()) {
    case Challenge::c0: {
      const auto& r = std::get<ResponseC0>(z.body);
      append_matrix(out, r.u00);
      append_matrix(out, r.u01);
      append_seed(out, r.seed_stx1);
      append_seed(out, r.seed_beta1);
      break;
    }
    case Challenge::c1: {
      const auto& r = std::get<ResponseC1>(z.body);
      append_seed(out, r.seed_stx0);
      append_seed(out, r.seed_beta0);
      append_seed(out, r.seed_stx1);
      append_coeffs(out, r.mu1);
      break;
    }
    case Challenge::c2: {
      const auto& r = std::get<ResponseC2>(z.body);
      append_seed(out, r.seed_stx0);
      append_coeffs(out, r.mu0);
      append_seed(out, r.seed_stx1);
      append_seed(out, r.seed_beta1);
      break;
    }
    case Challenge::c3: {
      const auto& r = std::get<ResponseC3>(z.body);
      append_seed(out, r.seed_stx0);
      append_seed(out, r.seed_beta0);
      append_matrix(out, r.u10);
      append_matrix(out, r.u11);
      break;
    }
  }
  return out;
}

size_t response_body_size(const Params& params, size_t seed_bytes, Challenge c) {
  const size_t mat = matrix_body_size(params.field, params.n, params.n);
  const size_t vec = coeff_body_size(params.field, params.m - 1);
  switch (c) {
    case Challenge::c0:
    case Challenge::c3: return 2 * mat + 2 * seed_bytes;
    case Challenge::c1:
    case Challenge::c2: return 3 * seed_bytes + vec;
  }
  throw Error(ErrorCode::invalid_argument, "challenge out of range");
}

Response parse_response(std::span<const uint8_t> payload, const Params& params,
                        size_t seed_bytes) {
  ByteReader in(payload);
  const uint8_t tag = in.u8();
  if (tag > 3) throw Error(ErrorCode::invariant_violation, "response tag out of range");
  const FieldSpec f = params.field;
  const size_t n = params.n;
  auto finish = [&in](Response z) {
    in.expect_end();
    return z;
  };
  switch (Challenge(tag)) {
    case Challenge::c0: {
      Matrix u00 = read_matrix(in, f, n, n);
      Matrix u01 = read_matrix(in, f, n, n);
      Seed s1 = read_seed(in, seed_bytes);
      Seed b1 = read_seed(in, seed_bytes);
      return finish(Response{
          ResponseC0{std::move(u00), std::move(u01), std::move(s1), std::move(b1)}});
    }
    case Challenge::c1: {
      Seed s0 = read_seed(in, seed_bytes);
      Seed b0 = read_seed(in, seed_bytes);
      Seed s1 = read_seed(in, seed_bytes);
      CoeffVector mu = read_coeffs(in, f, params.m - 1);
      return finish(Response{
          ResponseC1{std::move(s0), std::move(b0), std::move(s1), std::move(mu)}});
    }
    case Challenge::c2: {
      Seed s0 = read_seed(in, seed_bytes);
      CoeffVector mu = read_coeffs(in, f, params.m - 1);
      Seed s1 = read_seed(in, seed_bytes);
      Seed b1 = read_seed(in, seed_bytes);
      return finish(Response{
          ResponseC2{std::move(s0), std::move(mu), std::move(s1), std::move(b1)}});
    }
    case Challenge::c3: {
      Seed s0 = read_seed(in, seed_bytes);
      Seed b0 = read_seed(in, seed_bytes);
      Matrix u10 = read_matrix(in, f, n, n);
      Matrix u11 = read_matrix(in, f, n, n);
      return finish(Response{
          ResponseC3{std::move(s0), std::move(b0), std::move(u10), std::move(u11)}});
    }
  }
  throw Error(ErrorCode::invariant_violation, "response tag out of range");
}

std::vector<uint8_t> verdict_payload(const Verdict& v) {
  return {uint8_t(v.accepted ? 1 : 0), uint8_t(v.reason)};
}

Verdict parse_verdict(std::span<const uint8_t> payload) {
  ByteReader in(payload);
  const uint8_t ok = in.u8();
  const uint8_t reason = in.u8();
  in.expect_end();
  if (ok > 1) throw Error(ErrorCode::invariant_violation, "verdict flag out of range");
  if (reason > uint8_t(RejectReason::t1_not_invertible))
    throw Error(ErrorCode::invariant_violation, "unknown reject reason");
  return Verdict{ok == 1, RejectReason(reason)};
}

namespace {

void append_params_header(std::vector<uint8_t>& out, const char* magic,
                          const Params& p, uint8_t hash_id) {
  out.insert(out.end(), magic, magic + 4);
  out.push_back(kFormatVersion);
  out.push_back(hash_id);
  append_u16(out, uint16_t(p.field.q()));
  append_u16(out, uint16_t(p.n));
  append_u16(out, uint16_t(p.m));
  append_u16(out, uint16_t(p.r));
}

std::pair<Params, uint8_t> read_params_header(ByteReader& in, const char* magic) {
  auto got = in.take(4);
  for (int i = 0; i < 4; ++i)
    if (got[i] != uint8_t(magic[i])) throw Error(ErrorCode::bad_magic, "file magic");
  if (in.u8() != kFormatVersion) throw Error(ErrorCode::bad_version, "file version");
  const uint8_t hash_id = in.u8();
  if (hash_id != 0x01)
    throw Error(ErrorCode::unknown_hash_algorithm, "only SHA-256 (0x01) supported");
  const uint16_t q = in.u16();
  const uint16_t n = in.u16();
  const uint16_t m = in.u16();
  const uint16_t r = in.u16();
  Params p{FieldSpec(q), n, m, r};
  p.validate();
  return {p, hash_id};
}

}  // namespace

std::vector<uint8_t> serialize_response_record(const ResponseRecord& rec) {
  std::vector<uint8_t> out;
  append_params_header(out, "MRRS", rec.params, rec.hash_id);
  out.push_back(rec.seed_bytes);
  auto y = commitment_payload(rec.y);
  out.insert(out.end(), y.begin(), y.end());
  out.push_back(uint8_t(rec.c));
  auto z = response_payload(rec.z);
  append_u32(out, uint32_t(z.size()));
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

ResponseRecord parse_response_record(std::span<const uint8_t> data) {
  ByteReader in(data);
  auto [params, hash_id] = read_params_header(in, "MRRS");
  const uint8_t seed_bytes = in.u8();
  if (seed_bytes == 0) throw Error(ErrorCode::invariant_violation, "zero seed length");
  CommitmentBundle y = parse_commitment(in.take(192));
  const uint8_t c = in.u8();
  if (c > 3) throw Error(ErrorCode::invariant_violation, "challenge out of range");
  const uint32_t zlen = in.u32();
  Response z = parse_response(in.take(zlen), params, seed_bytes);
  in.expect_end();
  if (z.challenge() != Challenge(c))
    throw Error(ErrorCode::invariant_violation, "record challenge != response tag");
  return ResponseRecord{params, hash_id, seed_bytes, y, Challenge(c), std::move(z)};
}

std::vector<uint8_t> serialize_transcript(const Transcript& t) {
  std::vector<uint8_t> out;
  append_params_header(out, "MRTS", t.params, t.hash_id);
  append_u32(out, uint32_t(t.rounds));
  out.push_back(uint8_t(t.seed_bytes));
  append_u64(out, t.started_at);
  append_u64(out, t.finished_at);
  for (const auto& rec : t.records) {
    auto y = commitment_payload(rec.y);
    out.insert(out.end(), y.begin(), y.end());
    out.push_back(uint8_t(rec.c));
    auto z = response_payload(rec.z);
    append_u32(out, uint32_t(z.size()));
    out.insert(out.end(), z.begin(), z.end());
    out.push_back(uint8_t(rec.verdict.accepted ? 1 : 0));
    out.push_back(uint8_t(rec.verdict.reason));
  }
  return out;
}

Transcript parse_transcript(std::span<const uint8_t> data) {
  ByteReader in(data);
  auto [params, hash_id] = read_params_header(in, "MRTS");
  Transcript t{params, in.u32(), hash_id, in.u8(), in.u64(), in.u64(), {}};
  if (t.rounds == 0) throw Error(ErrorCode::invariant_violation, "zero rounds");
  if (t.seed_bytes == 0) throw Error(ErrorCode::invariant_violation, "zero seed length");
  while (!in.done()) {
    CommitmentBundle y = parse_commitment(in.take(192));
    const uint8_t c = in.u8();
    if (c > 3) throw Error(ErrorCode::invariant_violation, "challenge out of range");
    const uint32_t zlen = in.u32();
    Response z = parse_response(in.take(zlen), params, t.seed_bytes);
    const uint8_t ok = in.u8();
    const uint8_t reason = in.u8();
    if (ok > 1) throw Error(ErrorCode::invariant_violation, "verdict flag out of range");
    if (reason > uint8_t(RejectReason::t1_not_invertible))
      throw Error(ErrorCode::invariant_violation, "unknown reject reason");
    if (z.challenge() != Challenge(c))
      throw Error(ErrorCode::invariant_violation, "round challenge != response tag");
    t.records.push_back(RoundRecord{y, Challenge(c), std::move(z),
                                    Verdict{ok == 1, RejectReason(reason)}});
  }
  if (t.records.size() > t.rounds)
    throw Error(ErrorCode::invariant_violation, "more records than session rounds");
  return t;
}

}  // namespace minrank
