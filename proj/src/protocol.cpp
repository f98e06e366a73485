#include "minrank/protocol.hpp"

#include <ctime>

#include "protocol_detail.hpp"

namespace minrank {

using namespace detail;

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::variant_mismatch: return "response variant does not match challenge";
    case RejectReason::structural: return "malformed response structure";
    case RejectReason::y00_commit: return "Y[0,0] commitment mismatch";
    case RejectReason::y01_commit: return "Y[0,1] commitment mismatch";
    case RejectReason::y02_commit: return "Y[0,2] commitment mismatch";
    case RejectReason::y10_commit: return "Y[1,0] commitment mismatch";
    case RejectReason::y11_commit: return "Y[1,1] commitment mismatch";
    case RejectReason::y12_commit: return "Y[1,2] commitment mismatch";
    case RejectReason::rank_side0: return "rank of opened side-0 difference != r";
    case RejectReason::rank_side1: return "rank of opened side-1 difference != r";
    case RejectReason::s0_not_invertible: return "opened S_0 not invertible";
    case RejectReason::t0_not_invertible: return "opened T_0 not invertible";
    case RejectReason::s1_not_invertible: return "opened S_1 not invertible";
    case RejectReason::t1_not_invertible: return "opened T_1 not invertible";
  }
  return "unknown";
}

std::pair<ProverRoundState, CommitmentBundle> prover_commit(
    const KeyPair& kp, RandomSource& rng, const ProtocolOptions& opts) {
  kp.pk.check_invariants();
  const Params& p = kp.pk.params;
  p.validate();
  if (opts.seed_bytes == 0)
    throw Error(ErrorCode::invalid_params, "seed length must be positive");
  if (kp.sk.alpha.size() + 1 != p.m)
    throw Error(ErrorCode::invariant_violation, "secret key length mismatch");

  ProverRoundState st;
  st.alpha_ = kp.sk.alpha;
  Matrix m = linear_combination(kp.sk.alpha, rest(kp.pk), &kp.pk.matrices[0]);

  const HashFunction& h = *opts.hash;
  for (int b = 0; b < 2; ++b) {
    st.seed_stx_[b] = rng.bytes(opts.seed_bytes);
    st.seed_beta_[b] = rng.bytes(opts.seed_bytes);
    st.side_[b] = derive_side(h, st.seed_stx_[b], st.seed_beta_[b], p.field, p.n, p.m);
    const SideOpening& o = st.side_[b]->stx;
    Matrix u_lo = recompute_u_gamma(kp.pk, o, st.side_[b]->beta);
    Matrix u_hi = o.t * m * o.s + u_lo;
    auto& y = b == 0 ? st.y_.y0 : st.y_.y1;
    y[0] = commit_matrix(h, kUTag[b][0], u_lo);
    y[1] = commit_matrix(h, kUTag[b][1], u_hi);
    y[2] = commit_stx(h, kRTag[b], o);
    st.u_lo_[b] = std::move(u_lo);
    st.u_hi_[b] = std::move(u_hi);
  }
  CommitmentBundle y = st.y_;
  return {std::move(st), y};
}

Response ProverRoundState::respond(Challenge c) {
  if (consumed_)
    throw Error(ErrorCode::state_consumed,
                "a commitment may answer exactly one challenge");
  consumed_ = true;
  switch (c) {
    case Challenge::c0:
      return Response{ResponseC0{*u_lo_[0], *u_hi_[0], seed_stx_[1], seed_beta_[1]}};
    case Challenge::c1:
      return Response{ResponseC1{seed_stx_[0], seed_beta_[0], seed_stx_[1],
                                 coeff_add(side_[1]->beta, *alpha_)}};
    case Challenge::c2:
      return Response{ResponseC2{seed_stx_[0], coeff_add(side_[0]->beta, *alpha_),
                                 seed_stx_[1], seed_beta_[1]}};
    case Challenge::c3:
      return Response{ResponseC3{seed_stx_[0], seed_beta_[0], *u_lo_[1], *u_hi_[1]}};
  }
  throw Error(ErrorCode::invalid_argument, "challenge out of range");
}

ProverRoundState ProverRoundState::clone_for_analysis() const {
  ProverRoundState copy;
  for (int b = 0; b < 2; ++b) {
    copy.seed_stx_[b] = seed_stx_[b];
    copy.seed_beta_[b] = seed_beta_[b];
    copy.side_[b] = side_[b];
    copy.u_lo_[b] = u_lo_[b];
    copy.u_hi_[b] = u_hi_[b];
  }
  copy.alpha_ = alpha_;
  copy.y_ = y_;
  copy.consumed_ = false;
  return copy;
}

Challenge verifier_challenge(RandomSource& rng) {
  return Challenge(rng.bits(2));
}

namespace {

struct Checker {
  const PublicKey& pk;
  const CommitmentBundle& y;
  const ProtocolOptions& opts;

  const Digest& slot(int side, int idx) const {
    return side == 0 ? y.y0[idx] : y.y1[idx];
  }

  bool matrix_ok(const Matrix& m) const {
    return m.field() == pk.params.field && m.rows() == pk.params.n &&
           m.cols() == pk.params.n;
  }
  bool coeffs_ok(const CoeffVector& v) const {
    return v.field == pk.params.field && v.size() == pk.params.m - 1;
  }
  bool seed_ok(const Seed& s) const { return s.size() == opts.seed_bytes; }

  // Verifier checking blocks. Each returns accept or the first failing check.
  std::optional<RejectReason> open_u_pair(int side, const Matrix& lo, const Matrix& hi) const {
    const HashFunction& h = *opts.hash;
    if (!(commit_matrix(h, kUTag[side][0], lo) == slot(side, 0)))
      return side == 0 ? RejectReason::y00_commit : RejectReason::y10_commit;
    if (!(commit_matrix(h, kUTag[side][1], hi) == slot(side, 1)))
      return side == 0 ? RejectReason::y01_commit : RejectReason::y11_commit;
    if (rank(hi - lo) != pk.params.r)
      return side == 0 ? RejectReason::rank_side0 : RejectReason::rank_side1;
    return std::nullopt;
  }

  std::optional<RejectReason> check_stx(int side, const SideOpening& o) const {
    if (!is_invertible(o.s))
      return side == 0 ? RejectReason::s0_not_invertible : RejectReason::s1_not_invertible;
    if (!is_invertible(o.t))
      return side == 0 ? RejectReason::t0_not_invertible : RejectReason::t1_not_invertible;
    if (!(commit_stx(*opts.hash, kRTag[side], o) == slot(side, 2)))
      return side == 0 ? RejectReason::y02_commit : RejectReason::y12_commit;
    return std::nullopt;
  }

  // gamma route: recompute U_{side,0} and match the first slot.
  std::optional<RejectReason> open_gamma(int side, const SideOpening& o,
                                         const CoeffVector& gamma) const {
    if (auto rej = check_stx(side, o)) return rej;
    if (!(commit_matrix(*opts.hash, kUTag[side][0], recompute_u_gamma(pk, o, gamma)) ==
          slot(side, 0)))
      return side == 0 ? RejectReason::y00_commit : RejectReason::y10_commit;
    return std::nullopt;
  }

  // mu route: recompute W - T M_0 S and match the second slot.
  std::optional<RejectReason> open_mu(int side, const SideOpening& o,
                                      const CoeffVector& mu) const {
    if (auto rej = check_stx(side, o)) return rej;
    if (!(commit_matrix(*opts.hash, kUTag[side][1], recompute_u_mu(pk, o, mu)) ==
          slot(side, 1)))
      return side == 0 ? RejectReason::y01_commit : RejectReason::y11_commit;
    return std::nullopt;
  }
};

}  // namespace

Verdict verify_round(const PublicKey& pk, const CommitmentBundle& y, Challenge c,
                     const Response& z, const ProtocolOptions& opts) {
  pk.check_invariants();
  if (z.challenge() != c) return Verdict::reject(RejectReason::variant_mismatch);
  const Checker k{pk, y, opts};
  const HashFunction& h = *opts.hash;
  const FieldSpec f = pk.params.field;
  const size_t n = pk.params.n;
  const size_t m = pk.params.m;

  switch (c) {
    case Challenge::c0: {
      const auto& r0 = std::get<ResponseC0>(z.body);
      if (!k.matrix_ok(r0.u00) || !k.matrix_ok(r0.u01) || !k.seed_ok(r0.seed_stx1) ||
          !k.seed_ok(r0.seed_beta1))
        return Verdict::reject(RejectReason::structural);
      if (auto rej = k.open_u_pair(0, r0.u00, r0.u01)) return Verdict::reject(*rej);
      DerivedSide side1 = derive_side(h, r0.seed_stx1, r0.seed_beta1, f, n, m);
      if (auto rej = k.open_gamma(1, side1.stx, side1.beta)) return Verdict::reject(*rej);
      return Verdict::accept();
    }
    case Challenge::c1: {
      const auto& r1 = std::get<ResponseC1>(z.body);
      if (!k.seed_ok(r1.seed_stx0) || !k.seed_ok(r1.seed_beta0) ||
          !k.seed_ok(r1.seed_stx1) || !k.coeffs_ok(r1.mu1))
        return Verdict::reject(RejectReason::structural);
      DerivedSide side0 = derive_side(h, r1.seed_stx0, r1.seed_beta0, f, n, m);
      if (auto rej = k.open_gamma(0, side0.stx, side0.beta)) return Verdict::reject(*rej);
      SideOpening stx1 = derive_stx(h, r1.seed_stx1, f, n);
      if (auto rej = k.open_mu(1, stx1, r1.mu1)) return Verdict::reject(*rej);
      return Verdict::accept();
    }
    case Challenge::c2: {
      const auto& r2 = std::get<ResponseC2>(z.body);
      if (!k.seed_ok(r2.seed_stx0) || !k.coeffs_ok(r2.mu0) || !k.seed_ok(r2.seed_stx1) ||
          !k.seed_ok(r2.seed_beta1))
        return Verdict::reject(RejectReason::structural);
      SideOpening stx0 = derive_stx(h, r2.seed_stx0, f, n);
      if (auto rej = k.open_mu(0, stx0, r2.mu0)) return Verdict::reject(*rej);
      DerivedSide side1 = derive_side(h, r2.seed_stx1, r2.seed_beta1, f, n, m);
      if (auto rej = k.open_gamma(1, side1.stx, side1.beta)) return Verdict::reject(*rej);
      return Verdict::accept();
    }
    case Challenge::c3: {
      const auto& r3 = std::get<ResponseC3>(z.body);
      if (!k.seed_ok(r3.seed_stx0) || !k.seed_ok(r3.seed_beta0) || !k.matrix_ok(r3.u10) ||
          !k.matrix_ok(r3.u11))
        return Verdict::reject(RejectReason::structural);
      DerivedSide side0 = derive_side(h, r3.seed_stx0, r3.seed_beta0, f, n, m);
      if (auto rej = k.open_gamma(0, side0.stx, side0.beta)) return Verdict::reject(*rej);
      if (auto rej = k.open_u_pair(1, r3.u10, r3.u11)) return Verdict::reject(*rej);
      return Verdict::accept();
    }
  }
  return Verdict::reject(RejectReason::structural);
}

bool Transcript::accepted() const {
  if (records.size() != rounds) return false;
  for (const auto& r : records)
    if (!r.verdict.accepted) return false;
  return true;
}

Transcript run_session(const KeyPair& kp, size_t rounds, RandomSource& prover_rng,
                       RandomSource& verifier_rng, const ProtocolOptions& opts) {
  if (rounds == 0) throw Error(ErrorCode::invalid_argument, "need at least one round");
  Transcript t{kp.pk.params, rounds, opts.hash->id(), opts.seed_bytes,
               uint64_t(std::time(nullptr)), 0, {}};
  t.records.reserve(rounds);
  for (size_t i = 0; i < rounds; ++i) {
    auto [state, y] = prover_commit(kp, prover_rng, opts);
    Challenge c = verifier_challenge(verifier_rng);
    Response z = state.respond(c);
    Verdict v = verify_round(kp.pk, y, c, z, opts);
    t.records.push_back(RoundRecord{y, c, std::move(z), v});
  }
  t.finished_at = uint64_t(std::time(nullptr));
  return t;
}

bool replay_transcript(const PublicKey& pk, const Transcript& t) {
  ProtocolOptions opts{t.seed_bytes, &sha256()};
  if (t.hash_id != opts.hash->id()) return false;
  for (const auto& rec : t.records) {
    if (!(verify_round(pk, rec.y, rec.c, rec.z, opts) == rec.verdict)) return false;
  }
  return true;
}

}  // namespace minrank
