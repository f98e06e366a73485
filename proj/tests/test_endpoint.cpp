#include <doctest.h>

#include <array>
#include <thread>
#include <vector>

#include "minrank/endpoint.hpp"
#include "support/util.hpp"

using namespace minrank;

namespace {

KeyPair test_keypair(const std::string& label, uint32_t q = 2, size_t n = 4,
                     size_t m = 5, size_t r = 2) {
  auto rng = testutil::seeded_rng(label);
  return keygen(Params{FieldSpec(q), n, m, r}, rng);
}

// Records outbound frame types; used for the frame-order property.
class TapTransport final : public Transport {
 public:
  TapTransport(Transport& inner, std::vector<uint8_t>& log)
      : inner_(inner), log_(log) {}
  void read_exact(std::span<uint8_t> out, int timeout_ms) override {
    inner_.read_exact(out, timeout_ms);
  }
  void write_all(std::span<const uint8_t> data, int timeout_ms) override {
    if (data.size() >= kFrameHeaderSize) log_.push_back(data[5]);  // frame type
    inner_.write_all(data, timeout_ms);
  }
  void shutdown() override { inner_.shutdown(); }

 private:
  Transport& inner_;
  std::vector<uint8_t>& log_;
};

}  // namespace

TEST_CASE("loopback session accepts and produces a replayable transcript") {
  KeyPair kp = test_keypair("ep-loopback");
  auto [prover_side, verifier_side] = transport_pair();

  ProverOutcome outcome;
  std::thread prover([&] {
    auto rng = testutil::seeded_rng("ep-loopback-p");
    outcome = prover_endpoint(kp, *prover_side, rng);
  });
  auto vrng = testutil::seeded_rng("ep-loopback-v");
  Transcript t = verifier_endpoint(kp.pk, *verifier_side, 32, vrng);
  prover.join();

  CHECK(t.accepted());
  CHECK(t.records.size() == 32);
  CHECK(outcome.accepted);
  CHECK(outcome.rounds == 32);
  CHECK(replay_transcript(kp.pk, t));
}

TEST_CASE("frame order is 0x05 then (0x01 0x02 0x03 0x04) per round") {
  KeyPair kp = test_keypair("ep-order");
  auto [prover_side, verifier_side] = transport_pair();
  std::vector<uint8_t> prover_sent, verifier_sent;
  TapTransport tapped_p(*prover_side, prover_sent);
  TapTransport tapped_v(*verifier_side, verifier_sent);

  std::thread prover([&] {
    auto rng = testutil::seeded_rng("ep-order-p");
    (void)prover_endpoint(kp, tapped_p, rng);
  });
  auto vrng = testutil::seeded_rng("ep-order-v");
  const size_t rounds = 5;
  Transcript t = verifier_endpoint(kp.pk, tapped_v, rounds, vrng);
  prover.join();
  REQUIRE(t.accepted());

  // interleave the two outbound logs into the session order
  std::vector<uint8_t> expected_verifier{0x05}, expected_prover;
  for (size_t i = 0; i < rounds; ++i) {
    expected_prover.push_back(0x01);
    expected_verifier.push_back(0x02);
    expected_prover.push_back(0x03);
    expected_verifier.push_back(0x04);
  }
  CHECK(prover_sent == expected_prover);
  CHECK(verifier_sent == expected_verifier);
}

TEST_CASE("parameter mismatch aborts at the session header") {
  KeyPair kp = test_keypair("ep-mismatch");
  auto vrng = testutil::seeded_rng("ep-mismatch-k");
  KeyPair other = keygen(Params{FieldSpec(2), 5, 5, 2}, vrng);  // different n

  auto [prover_side, verifier_side] = transport_pair();
  std::exception_ptr prover_error;
  std::thread prover([&] {
    try {
      auto rng = testutil::seeded_rng("ep-mismatch-p");
      (void)prover_endpoint(kp, *prover_side, rng);
    } catch (...) {
      prover_error = std::current_exception();
    }
  });
  auto rng = testutil::seeded_rng("ep-mismatch-v");
  bool verifier_failed = false;
  try {
    (void)verifier_endpoint(other.pk, *verifier_side, 4, rng);
  } catch (const Error& e) {
    verifier_failed = true;
    CHECK(e.code() == ErrorCode::remote_abort);
  }
  prover.join();
  CHECK(verifier_failed);
  REQUIRE(prover_error != nullptr);
  try {
    std::rethrow_exception(prover_error);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parameter_mismatch);
  }
}

TEST_CASE("a silent peer times out") {
  KeyPair kp = test_keypair("ep-timeout");
  auto [prover_side, verifier_side] = transport_pair();
  EndpointOptions opts;
  opts.timeout_ms = 150;
  auto rng = testutil::seeded_rng("ep-timeout-p");
  try {
    (void)prover_endpoint(kp, *prover_side, rng, opts);
    FAIL("expected a timeout");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::timeout);
  }
  (void)verifier_side;
}

TEST_CASE("a mid-session disconnect raises transport_closed") {
  KeyPair kp = test_keypair("ep-close");
  auto [prover_side, verifier_side] = transport_pair();
  std::thread verifier([&] {
    // send the header, read the first commit, then vanish
    auto rng = testutil::seeded_rng("ep-close-v");
    SessionHeader h{kp.pk.params, 8, 0x01, 16};
    write_frame(*verifier_side, {FrameType::session_header, session_header_payload(h)},
                1000);
    (void)read_frame(*verifier_side, 1000);
    verifier_side.reset();  // closes the socket
  });
  auto rng = testutil::seeded_rng("ep-close-p");
  try {
    (void)prover_endpoint(kp, *prover_side, rng);
    FAIL("expected transport_closed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::transport_closed);
  }
  verifier.join();
}

TEST_CASE("concurrent sessions share one key pair safely") {
  KeyPair kp = test_keypair("ep-concurrent");
  const int sessions = 4;
  std::vector<std::thread> threads;
  std::array<bool, sessions> accepted{};
  for (int s = 0; s < sessions; ++s) {
    threads.emplace_back([&, s] {
      auto [prover_side, verifier_side] = transport_pair();
      std::thread prover([&] {
        auto rng = testutil::seeded_rng("ep-conc-p" + std::to_string(s));
        (void)prover_endpoint(kp, *prover_side, rng);
      });
      auto vrng = testutil::seeded_rng("ep-conc-v" + std::to_string(s));
      Transcript t = verifier_endpoint(kp.pk, *verifier_side, 12, vrng);
      prover.join();
      accepted[size_t(s)] = t.accepted();
    });
  }
  for (auto& t : threads) t.join();
  for (bool ok : accepted) CHECK(ok);
}

TEST_CASE("tcp endpoints run a session over localhost") {
  KeyPair kp = test_keypair("ep-tcp");
  TcpListener listener("127.0.0.1:0");
  REQUIRE(listener.bound_port() != 0);

  std::thread prover([&] {
    auto transport = listener.accept_one(5000);
    auto rng = testutil::seeded_rng("ep-tcp-p");
    (void)prover_endpoint(kp, *transport, rng);
  });
  auto transport =
      tcp_connect("127.0.0.1:" + std::to_string(listener.bound_port()), 5000);
  auto rng = testutil::seeded_rng("ep-tcp-v");
  Transcript t = verifier_endpoint(kp.pk, *transport, 8, rng);
  prover.join();
  CHECK(t.accepted());
}
