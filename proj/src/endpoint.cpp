#include "minrank/endpoint.hpp"

#include <ctime>

namespace minrank {

namespace {

constexpr uint32_t kMaxFramePayload = 1u << 26;
constexpr uint32_t kMaxRounds = 1u << 20;

void send_error(Transport& t, int timeout_ms, const std::string& message) noexcept {
  try {
    WireFrame f{FrameType::error, std::vector<uint8_t>(message.begin(), message.end())};
    write_frame(t, f, timeout_ms);
  } catch (...) {
    // the session is already failing; nothing to add
  }
}

[[noreturn]] void raise_remote(const WireFrame& f) {
  throw Error(ErrorCode::remote_abort,
              std::string(f.payload.begin(), f.payload.end()));
}

WireFrame expect_frame(Transport& t, FrameType want, int timeout_ms) {
  WireFrame f = read_frame(t, timeout_ms);
  if (f.type == FrameType::error) raise_remote(f);
  if (f.type != want)
    throw Error(ErrorCode::frame_order_violation,
                "expected frame type " + std::to_string(int(want)) + ", got " +
                    std::to_string(int(f.type)));
  return f;
}

}  // namespace

WireFrame read_frame(Transport& t, int timeout_ms) {
  uint8_t header[kFrameHeaderSize];
  t.read_exact(header, timeout_ms);
  auto [type, len] = parse_frame_header(header);
  if (len > kMaxFramePayload)
    throw Error(ErrorCode::invariant_violation, "frame payload too large");
  WireFrame f{type, std::vector<uint8_t>(len)};
  if (len > 0) t.read_exact(f.payload, timeout_ms);
  return f;
}

void write_frame(Transport& t, const WireFrame& f, int timeout_ms) {
  t.write_all(encode_frame(f), timeout_ms);
}

ProverOutcome prover_endpoint(const KeyPair& kp, Transport& transport,
                              RandomSource& rng, const EndpointOptions& opts) {
  kp.pk.check_invariants();
  const int tmo = opts.timeout_ms;
  try {
    WireFrame hf = expect_frame(transport, FrameType::session_header, tmo);
    SessionHeader header = parse_session_header(hf.payload);
    if (!(header.params == kp.pk.params)) {
      send_error(transport, tmo, "session parameters do not match this key");
      throw Error(ErrorCode::parameter_mismatch,
                  "verifier parameters do not match this key");
    }
    if (header.hash_id != opts.protocol.hash->id()) {
      send_error(transport, tmo, "hash algorithm mismatch");
      throw Error(ErrorCode::parameter_mismatch, "hash algorithm mismatch");
    }
    if (header.rounds > kMaxRounds) {
      send_error(transport, tmo, "round count too large");
      throw Error(ErrorCode::parameter_mismatch, "round count too large");
    }
    ProtocolOptions proto = opts.protocol;
    proto.seed_bytes = header.seed_bytes;

    ProverOutcome outcome;
    outcome.rounds = header.rounds;
    bool all_accepted = true;
    for (uint32_t i = 0; i < header.rounds; ++i) {
      auto [state, y] = prover_commit(kp, rng, proto);
      write_frame(transport, WireFrame{FrameType::commit, commitment_payload(y)}, tmo);
      WireFrame cf = expect_frame(transport, FrameType::challenge, tmo);
      Challenge c = parse_challenge(cf.payload);
      Response z = state.respond(c);
      write_frame(transport, WireFrame{FrameType::response, response_payload(z)}, tmo);
      WireFrame vf = expect_frame(transport, FrameType::verdict, tmo);
      Verdict v = parse_verdict(vf.payload);
      ++outcome.rounds_run;
      if (!v.accepted) {
        all_accepted = false;
        break;  // verifier aborts after a reject
      }
    }
    outcome.accepted = all_accepted && outcome.rounds_run == outcome.rounds;
    return outcome;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::remote_abort && e.code() != ErrorCode::parameter_mismatch)
      send_error(transport, tmo, e.what());
    throw;
  }
}

Transcript verifier_endpoint(const PublicKey& pk, Transport& transport, size_t rounds,
                             RandomSource& rng, const EndpointOptions& opts) {
  pk.check_invariants();
  if (rounds == 0 || rounds > kMaxRounds)
    throw Error(ErrorCode::invalid_argument, "round count out of range");
  const int tmo = opts.timeout_ms;
  const ProtocolOptions& proto = opts.protocol;
  Transcript t{pk.params, rounds, proto.hash->id(), proto.seed_bytes,
               uint64_t(std::time(nullptr)), 0, {}};
  try {
    SessionHeader header{pk.params, uint32_t(rounds), proto.hash->id(),
                         uint8_t(proto.seed_bytes)};
    write_frame(transport,
                WireFrame{FrameType::session_header, session_header_payload(header)},
                tmo);
    for (size_t i = 0; i < rounds; ++i) {
      WireFrame yf = expect_frame(transport, FrameType::commit, tmo);
      CommitmentBundle y = parse_commitment(yf.payload);
      Challenge c = verifier_challenge(rng);
      write_frame(transport, WireFrame{FrameType::challenge, challenge_payload(c)}, tmo);
      WireFrame zf = expect_frame(transport, FrameType::response, tmo);
      std::optional<Response> z;
      try {
        z = parse_response(zf.payload, pk.params, proto.seed_bytes);
      } catch (const Error&) {
        // malformed response bytes reject the round instead of killing the
        // session uncleanly
      }
      if (!z) {
        const Verdict v = Verdict::reject(RejectReason::structural);
        write_frame(transport, WireFrame{FrameType::verdict, verdict_payload(v)}, tmo);
        break;
      }
      Verdict v = verify_round(pk, y, c, *z, proto);
      write_frame(transport, WireFrame{FrameType::verdict, verdict_payload(v)}, tmo);
      t.records.push_back(RoundRecord{y, c, std::move(*z), v});
      if (!v.accepted) break;
    }
    t.finished_at = uint64_t(std::time(nullptr));
    return t;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::remote_abort) send_error(transport, tmo, e.what());
    throw;
  }
}

}  // namespace minrank
