#include "protocol_detail.hpp"

namespace minrank {

using namespace detail;

namespace {

struct SimSide {
  Seed seed_stx, seed_beta;
  DerivedSide derived;
};

SimSide draw_side(const PublicKey& pk, RandomSource& rng, const ProtocolOptions& opts) {
  Seed stx = rng.bytes(opts.seed_bytes);
  Seed beta = rng.bytes(opts.seed_bytes);
  DerivedSide d = derive_side(*opts.hash, stx, beta, pk.params.field, pk.params.n,
                              pk.params.m);
  return SimSide{std::move(stx), std::move(beta), std::move(d)};
}

Digest commit_random_matrix(const PublicKey& pk, RandomSource& rng,
                            const ProtocolOptions& opts, const char* tag) {
  return commit_matrix(*opts.hash,  tag,
                       random_matrix(rng, pk.params.field, pk.params.n, pk.params.n));
}

}  // namespace

std::pair<CommitmentBundle, Response> simulate_transcript(const PublicKey& pk,
                                                          Challenge c,
                                                          RandomSource& rng,
                                                          const ProtocolOptions& opts) {
  pk.check_invariants();
  pk.params.validate();
  const HashFunction& h = *opts.hash;
  const size_t n = pk.params.n;
  const size_t r = pk.params.r;

  // Both sides drawn exactly as an honest prover would.
  SimSide sides[2] = {draw_side(pk, rng, opts), draw_side(pk, rng, opts)};
  const SideOpening& o0 = sides[0].derived.stx;
  const SideOpening& o1 = sides[1].derived.stx;

  CommitmentBundle y;
  switch (c) {
    case Challenge::c0: {
      // Side 0 opens its U pair raw: honest U_{0,0} plus a planted rank-r jump.
      Matrix u00 = recompute_u_gamma(pk, o0, sides[0].derived.beta);
      Matrix u01 = u00 + random_rank_r(rng, pk.params.field, n, r);
      Matrix u10 = recompute_u_gamma(pk, o1, sides[1].derived.beta);
      y.y0 = {commit_matrix(h, kUTag[0][0], u00), commit_matrix(h, kUTag[0][1], u01),
              commit_stx(h, kRTag[0], o0)};
      y.y1 = {commit_matrix(h, kUTag[1][0], u10),
              commit_random_matrix(pk, rng, opts, kUTag[1][1]),
              commit_stx(h, kRTag[1], o1)};
      return {y, Response{ResponseC0{std::move(u00), std::move(u01),
                                     sides[1].seed_stx, sides[1].seed_beta}}};
    }
    case Challenge::c1: {
      // Side 1's mu plays beta_1 + alpha; both are uniform.
      Matrix u00 = recompute_u_gamma(pk, o0, sides[0].derived.beta);
      CoeffVector mu = random_coeffs(rng, pk.params.field, pk.params.m - 1);
      Matrix u11 = recompute_u_mu(pk, o1, mu);
      y.y0 = {commit_matrix(h, kUTag[0][0], u00),
              commit_random_matrix(pk, rng, opts, kUTag[0][1]),
              commit_stx(h, kRTag[0], o0)};
      y.y1 = {commit_random_matrix(pk, rng, opts, kUTag[1][0]),
              commit_matrix(h, kUTag[1][1], u11), commit_stx(h, kRTag[1], o1)};
      return {y, Response{ResponseC1{sides[0].seed_stx, sides[0].seed_beta,
                                     sides[1].seed_stx, std::move(mu)}}};
    }
    case Challenge::c2: {
      CoeffVector mu = random_coeffs(rng, pk.params.field, pk.params.m - 1);
      Matrix u01 = recompute_u_mu(pk, o0, mu);
      Matrix u10 = recompute_u_gamma(pk, o1, sides[1].derived.beta);
      y.y0 = {commit_random_matrix(pk, rng, opts, kUTag[0][0]),
              commit_matrix(h, kUTag[0][1], u01), commit_stx(h, kRTag[0], o0)};
      y.y1 = {commit_matrix(h, kUTag[1][0], u10),
              commit_random_matrix(pk, rng, opts, kUTag[1][1]),
              commit_stx(h, kRTag[1], o1)};
      return {y, Response{ResponseC2{sides[0].seed_stx, std::move(mu),
                                     sides[1].seed_stx, sides[1].seed_beta}}};
    }
    case Challenge::c3: {
      Matrix u00 = recompute_u_gamma(pk, o0, sides[0].derived.beta);
      Matrix u10 = recompute_u_gamma(pk, o1, sides[1].derived.beta);
      Matrix u11 = u10 + random_rank_r(rng, pk.params.field, n, r);
      y.y0 = {commit_matrix(h, kUTag[0][0], u00),
              commit_random_matrix(pk, rng, opts, kUTag[0][1]),
              commit_stx(h, kRTag[0], o0)};
      y.y1 = {commit_matrix(h, kUTag[1][0], u10), commit_matrix(h, kUTag[1][1], u11),
              commit_stx(h, kRTag[1], o1)};
      return {y, Response{ResponseC3{sides[0].seed_stx, sides[0].seed_beta,
                                     std::move(u10), std::move(u11)}}};
    }
  }
  throw Error(ErrorCode::invalid_argument, "challenge out of range");
}

SimulatedRound simulate_with_rewinding(
    const PublicKey& pk,
    const std::function<Challenge(const CommitmentBundle&)>& challenger,
    RandomSource& rng, const ProtocolOptions& opts) {
  for (size_t attempt = 1;; ++attempt) {
    Challenge guess = verifier_challenge(rng);
    auto [y, z] = simulate_transcript(pk, guess, rng, opts);
    Challenge c = challenger(y);
    if (c == guess) return SimulatedRound{y, c, std::move(z), attempt};
  }
}

}  // namespace minrank
