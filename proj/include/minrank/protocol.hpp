#ifndef MINRANK_PROTOCOL_HPP
#define MINRANK_PROTOCOL_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "minrank/commitment.hpp"
#include "minrank/instance.hpp"

namespace minrank {

// Session-level knobs shared by prover and verifier. Seed length follows the
// target security level (ceil(bits/8)); 16 bytes by default.
struct ProtocolOptions {
  size_t seed_bytes = 16;
  const HashFunction* hash = &sha256();
};

// Y = (Y_0, Y_1), three digests per side: the two U slots and the R slot.
struct CommitmentBundle {
  std::array<Digest, 3> y0;
  std::array<Digest, 3> y1;
  bool operator==(const CommitmentBundle&) const = default;
};

enum class Challenge : uint8_t { c0 = 0, c1 = 1, c2 = 2, c3 = 3 };

// Pass-3 payloads. U matrices travel explicitly; (S,T,X) and beta travel as
// the seeds they were expanded from; beta+alpha sums travel explicitly.
struct ResponseC0 {
  Matrix u00, u01;
  Seed seed_stx1, seed_beta1;
};
struct ResponseC1 {
  Seed seed_stx0, seed_beta0, seed_stx1;
  CoeffVector mu1;  // beta_1 + alpha
};
struct ResponseC2 {
  Seed seed_stx0;
  CoeffVector mu0;  // beta_0 + alpha
  Seed seed_stx1, seed_beta1;
};
struct ResponseC3 {
  Seed seed_stx0, seed_beta0;
  Matrix u10, u11;
};

struct Response {
  std::variant<ResponseC0, ResponseC1, ResponseC2, ResponseC3> body;
  Challenge challenge() const { return Challenge(uint8_t(body.index())); }
};

enum class RejectReason : uint8_t {
  none = 0,
  variant_mismatch,
  structural,
  y00_commit,
  y01_commit,
  y02_commit,
  y10_commit,
  y11_commit,
  y12_commit,
  rank_side0,
  rank_side1,
  s0_not_invertible,
  t0_not_invertible,
  s1_not_invertible,
  t1_not_invertible,
};

const char* reject_reason_name(RejectReason r);

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::none;
  static Verdict accept() { return {true, RejectReason::none}; }
  static Verdict reject(RejectReason r) { return {false, r}; }
  bool operator==(const Verdict&) const = default;
};

// Per-round prover state. Single-use: answering two challenges from one
// commitment leaks alpha, so respond() consumes the state. The extractor
// tests clone explicitly via clone_for_analysis().
class ProverRoundState {
 public:
  const CommitmentBundle& commitment() const { return y_; }
  Response respond(Challenge c);
  bool consumed() const { return consumed_; }
  ProverRoundState clone_for_analysis() const;

 private:
  friend std::pair<ProverRoundState, CommitmentBundle> prover_commit(
      const KeyPair&, RandomSource&, const ProtocolOptions&);

  ProverRoundState() = default;

  Seed seed_stx_[2], seed_beta_[2];
  std::optional<DerivedSide> side_[2];
  std::optional<Matrix> u_lo_[2], u_hi_[2];  // U_{b,0}, U_{b,1}
  std::optional<CoeffVector> alpha_;
  CommitmentBundle y_;
  bool consumed_ = false;
};

std::pair<ProverRoundState, CommitmentBundle> prover_commit(
    const KeyPair& kp, RandomSource& rng, const ProtocolOptions& opts = {});

Challenge verifier_challenge(RandomSource& rng);

Verdict verify_round(const PublicKey& pk, const CommitmentBundle& y, Challenge c,
                     const Response& z, const ProtocolOptions& opts = {});

struct RoundRecord {
  CommitmentBundle y;
  Challenge c;
  Response z;
  Verdict verdict;
};

struct Transcript {
  Params params;
  size_t rounds;
  uint8_t hash_id;
  size_t seed_bytes;
  uint64_t started_at = 0;  // unix seconds
  uint64_t finished_at = 0;
  std::vector<RoundRecord> records;

  bool accepted() const;
};

Transcript run_session(const KeyPair& kp, size_t rounds, RandomSource& prover_rng,
                       RandomSource& verifier_rng, const ProtocolOptions& opts = {});

// Re-verifies every recorded round; true when all verdicts reproduce.
bool replay_transcript(const PublicKey& pk, const Transcript& t);

// Knowledge extractor: any three valid responses to distinct challenges on
// one commitment yield alpha. Throws on missing/invalid responses; disagreeing
// openings of one slot surface as binding_violation.
CoeffVector extract_secret(const PublicKey& pk, const CommitmentBundle& y,
                           const std::map<Challenge, Response>& responses,
                           const ProtocolOptions& opts = {});

// Per-challenge transcript simulator: accepts without the secret key, with
// opened values distributed as an honest prover's conditioned on c.
std::pair<CommitmentBundle, Response> simulate_transcript(
    const PublicKey& pk, Challenge c, RandomSource& rng,
    const ProtocolOptions& opts = {});

// Unknown-challenge completion: guess, run the challenger on Y, retry on
// mismatch. Expected four attempts per transcript.
struct SimulatedRound {
  CommitmentBundle y;
  Challenge c;
  Response z;
  size_t attempts;
};
SimulatedRound simulate_with_rewinding(
    const PublicKey& pk, const std::function<Challenge(const CommitmentBundle&)>& challenger,
    RandomSource& rng, const ProtocolOptions& opts = {});

// Keyless prover committed to exactly two of the four challenges; witnesses
// tightness of the 1/2 per-round cheating bound.
class CheatingProver {
 public:
  CheatingProver(const PublicKey& pk, std::pair<Challenge, Challenge> prepared,
                 RandomSource& rng, const ProtocolOptions& opts = {});

  const CommitmentBundle& commitment() const { return y_; }
  std::optional<Response> respond(Challenge c) const;

 private:
  struct Side {
    Seed seed_stx, seed_beta;
    std::optional<CoeffVector> mu;
    std::optional<Matrix> raw_lo, raw_hi;  // explicit openings of the U slots
  };

  std::pair<Challenge, Challenge> prepared_;
  Side side_[2];
  CommitmentBundle y_;
};

}  // namespace minrank

#endif
