#include <doctest.h>

#include "minrank/wire.hpp"
#include "support/util.hpp"

using namespace minrank;

namespace {

const ProtocolOptions kOpts{};

KeyPair test_keypair(const std::string& label) {
  auto rng = testutil::seeded_rng(label);
  return keygen(Params{FieldSpec(2), 4, 5, 2}, rng);
}

}  // namespace

TEST_CASE("matrix bodies round-trip and reject junk") {
  auto rng = testutil::seeded_rng("wire-matrix");
  for (uint32_t q : {2u, 3u, 5u, 257u}) {
    FieldSpec f(q);
    for (int t = 0; t < 200; ++t) {
      Matrix m = random_matrix(rng, f, 3, 5);
      auto bytes = matrix_bytes(m);
      CHECK(bytes.size() == matrix_body_size(f, 3, 5));
      ByteReader in(bytes);
      Matrix back = read_matrix(in, f, 3, 5);
      CHECK(back == m);
      CHECK(in.done());
    }
  }
  // F_2 identity packs LSB-first: rows 0x01, 0x02
  FieldSpec f2(2);
  CHECK(matrix_bytes(Matrix::identity(f2, 2)) == std::vector<uint8_t>{0x01, 0x02});
  // nonzero padding bits rejected
  {
    std::vector<uint8_t> bad{0x01, 0x04};  // bit 2 set in a 2-column row
    ByteReader in(bad);
    CHECK_THROWS_AS(read_matrix(in, f2, 2, 2), Error);
  }
  // out-of-range entry rejected for q > 2
  {
    std::vector<uint8_t> bad{0x03};
    ByteReader in(bad);
    CHECK_THROWS_AS(read_matrix(in, FieldSpec(3), 1, 1), Error);
  }
  // truncation rejected
  {
    std::vector<uint8_t> bad{0x01};
    ByteReader in(bad);
    CHECK_THROWS_AS(read_matrix(in, f2, 2, 2), Error);
  }
}

TEST_CASE("coefficient vectors round-trip") {
  auto rng = testutil::seeded_rng("wire-coeffs");
  for (uint32_t q : {2u, 3u, 257u}) {
    FieldSpec f(q);
    for (int t = 0; t < 100; ++t) {
      CoeffVector v = random_coeffs(rng, f, 7);
      auto bytes = coeff_bytes(v);
      CHECK(bytes.size() == coeff_body_size(f, 7));
      ByteReader in(bytes);
      CHECK(read_coeffs(in, f, 7) == v);
    }
  }
}

TEST_CASE("key files round-trip") {
  KeyPair kp = test_keypair("wire-keys");
  auto pk_bytes = serialize_public_key(kp.pk, 0x01);
  PublicKey pk2 = deserialize_public_key(pk_bytes);
  CHECK(pk2.params == kp.pk.params);
  for (size_t i = 0; i < kp.pk.matrices.size(); ++i)
    CHECK(pk2.matrices[i] == kp.pk.matrices[i]);

  auto sk_bytes = serialize_secret_key(kp.pk.params, kp.sk, 0x01);
  auto [params, sk2] = deserialize_secret_key(sk_bytes);
  CHECK(params == kp.pk.params);
  CHECK(sk2.alpha == kp.sk.alpha);

  // magic corruption is a distinct error
  auto bad = pk_bytes;
  bad[0] ^= 0xff;
  try {
    (void)deserialize_public_key(bad);
    FAIL("expected bad magic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_magic);
  }
}

TEST_CASE("frames encode and decode") {
  WireFrame f{FrameType::challenge, {2}};
  auto bytes = encode_frame(f);
  CHECK(bytes.size() == kFrameHeaderSize + 1);
  auto [type, len] = parse_frame_header(std::span(bytes).first(kFrameHeaderSize));
  CHECK(type == FrameType::challenge);
  CHECK(len == 1);

  auto bad = bytes;
  bad[5] = 0x09;  // unknown frame type
  CHECK_THROWS_AS(parse_frame_header(std::span(bad).first(kFrameHeaderSize)), Error);
  bad = bytes;
  bad[4] = 0x02;  // unsupported version
  CHECK_THROWS_AS(parse_frame_header(std::span(bad).first(kFrameHeaderSize)), Error);
}

TEST_CASE("responses round-trip for all four challenges") {
  KeyPair kp = test_keypair("wire-resp");
  auto rng = testutil::seeded_rng("wire-resp-rng");
  for (uint32_t c = 0; c < 4; ++c) {
    auto [state, y] = prover_commit(kp, rng, kOpts);
    Response z = state.respond(Challenge(c));
    auto payload = response_payload(z);
    CHECK(payload.size() ==
          1 + response_body_size(kp.pk.params, kOpts.seed_bytes, Challenge(c)));
    Response back = parse_response(payload, kp.pk.params, kOpts.seed_bytes);
    CHECK(back.challenge() == Challenge(c));
    CHECK(verify_round(kp.pk, y, Challenge(c), back, kOpts).accepted);
  }
}

TEST_CASE("response payload sizes match the seed-encoding size model") {
  // |Z0| = |Z3| ~ 2 n^2 log2 q + 2 seed bits, |Z1| = |Z2| ~ 3 seed bits +
  // (m-1) log2 q; padding only widens matrix rows, by at most n bytes each
  const Params rec{FieldSpec(2), 26, 209, 13};
  const size_t seed_bytes = 16;
  for (Challenge c : {Challenge::c0, Challenge::c3}) {
    const size_t actual = response_body_size(rec, seed_bytes, c);
    const size_t model_bits = 2 * 26 * 26 + 2 * 128;
    CHECK(actual >= (model_bits + 7) / 8);
    CHECK(actual <= model_bits / 8 + 2 * 26 + 1);
    CHECK(actual == 2 * 26 * 4 + 2 * 16);  // documented exact layout: 240
  }
  for (Challenge c : {Challenge::c1, Challenge::c2}) {
    const size_t actual = response_body_size(rec, seed_bytes, c);
    const size_t model_bits = 3 * 128 + 208;
    CHECK(actual == model_bits / 8);  // exactly 74: no matrix, no padding
  }
}

TEST_CASE("response records round-trip") {
  KeyPair kp = test_keypair("wire-record");
  auto rng = testutil::seeded_rng("wire-record-rng");
  auto [state, y] = prover_commit(kp, rng, kOpts);
  Response z = state.respond(Challenge::c2);
  ResponseRecord rec{kp.pk.params, 0x01, 16, y, Challenge::c2, std::move(z)};
  auto bytes = serialize_response_record(rec);
  ResponseRecord back = parse_response_record(bytes);
  CHECK(back.params == rec.params);
  CHECK(back.y == rec.y);
  CHECK(back.c == rec.c);
  CHECK(verify_round(kp.pk, back.y, back.c, back.z, kOpts).accepted);
}

TEST_CASE("transcripts round-trip and replay") {
  KeyPair kp = test_keypair("wire-transcript");
  auto prng = testutil::seeded_rng("wire-transcript-p");
  auto vrng = testutil::seeded_rng("wire-transcript-v");
  Transcript t = run_session(kp, 16, prng, vrng, kOpts);
  auto bytes = serialize_transcript(t);
  Transcript back = parse_transcript(bytes);
  CHECK(back.accepted());
  CHECK(back.rounds == 16);
  CHECK(back.records.size() == 16);
  CHECK(back.started_at == t.started_at);
  CHECK(replay_transcript(kp.pk, back));
  for (size_t i = 0; i < 16; ++i) {
    CHECK(back.records[i].c == t.records[i].c);
    CHECK(back.records[i].y == t.records[i].y);
  }
}

TEST_CASE("deserializers survive a mutation fuzz corpus") {
  KeyPair kp = test_keypair("wire-fuzz");
  auto rng = testutil::seeded_rng("wire-fuzz-rng");
  auto prng = testutil::seeded_rng("wire-fuzz-p");
  auto vrng = testutil::seeded_rng("wire-fuzz-v");

  const auto pk_bytes = serialize_public_key(kp.pk, 0x01);
  const auto sk_bytes = serialize_secret_key(kp.pk.params, kp.sk, 0x01);
  auto [state, y] = prover_commit(kp, prng, kOpts);
  ResponseRecord rec{kp.pk.params, 0x01, 16, y, Challenge::c1,
                     state.respond(Challenge::c1)};
  const auto rec_bytes = serialize_response_record(rec);
  const auto transcript_bytes =
      serialize_transcript(run_session(kp, 4, prng, vrng, kOpts));

  size_t parsed_ok = 0;
  auto fuzz_one = [&](const std::vector<uint8_t>& base, auto&& parse) {
    std::vector<uint8_t> corrupt = base;
    const uint32_t mode = rng.bits(2);
    if (mode == 0 && !corrupt.empty()) {
      corrupt[rng.bits(16) % corrupt.size()] ^= uint8_t(1 + (rng.bits(8) & 0xfe));
    } else if (mode == 1 && !corrupt.empty()) {
      corrupt.resize(rng.bits(16) % corrupt.size());
    } else if (mode == 2) {
      const size_t extra = 1 + rng.bits(4);
      for (size_t i = 0; i < extra; ++i) corrupt.push_back(rng.byte());
    } else if (!corrupt.empty()) {
      corrupt[rng.bits(16) % corrupt.size()] = rng.byte();
    }
    if (corrupt == base) return;
    try {
      parse(corrupt);
      ++parsed_ok;  // a mutation may land on another valid encoding
    } catch (const Error&) {
      // typed failure is the expected outcome
    }
  };

  for (int i = 0; i < 2500; ++i) {
    fuzz_one(pk_bytes, [](const std::vector<uint8_t>& b) {
      (void)deserialize_public_key(b);
    });
    fuzz_one(sk_bytes, [](const std::vector<uint8_t>& b) {
      (void)deserialize_secret_key(b);
    });
    fuzz_one(rec_bytes, [](const std::vector<uint8_t>& b) {
      (void)parse_response_record(b);
    });
    fuzz_one(transcript_bytes, [](const std::vector<uint8_t>& b) {
      (void)parse_transcript(b);
    });
  }
  // mutated payload bytes (not headers) often still parse; the point of the
  // corpus is that nothing escapes as a crash or a non-Error exception
  CHECK(parsed_ok < 4 * 2500);
}
