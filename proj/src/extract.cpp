#include "protocol_detail.hpp"

namespace minrank {

using namespace detail;

namespace {

// Everything the verifier opens from one response, per side.
struct Openings {
  std::optional<SideOpening> stx[2];
  std::optional<CoeffVector> gamma[2];  // beta opening
  std::optional<CoeffVector> mu[2];     // beta + alpha opening
  std::optional<Matrix> u_lo[2], u_hi[2];
};

Openings open_response(const PublicKey& pk, const Response& z,
                       const ProtocolOptions& opts) {
  const HashFunction& h = *opts.hash;
  const FieldSpec f = pk.params.field;
  const size_t n = pk.params.n, m = pk.params.m;
  Openings o;
  switch (z.challenge()) {
    case Challenge::c0: {
      const auto& r = std::get<ResponseC0>(z.body);
      o.u_lo[0] = r.u00;
      o.u_hi[0] = r.u01;
      DerivedSide s1 = derive_side(h, r.seed_stx1, r.seed_beta1, f, n, m);
      o.u_lo[1] = recompute_u_gamma(pk, s1.stx, s1.beta);
      o.stx[1] = std::move(s1.stx);
      o.gamma[1] = std::move(s1.beta);
      break;
    }
    case Challenge::c1: {
      const auto& r = std::get<ResponseC1>(z.body);
      DerivedSide s0 = derive_side(h, r.seed_stx0, r.seed_beta0, f, n, m);
      o.u_lo[0] = recompute_u_gamma(pk, s0.stx, s0.beta);
      o.stx[0] = std::move(s0.stx);
      o.gamma[0] = std::move(s0.beta);
      SideOpening stx1 = derive_stx(h, r.seed_stx1, f, n);
      o.u_hi[1] = recompute_u_mu(pk, stx1, r.mu1);
      o.stx[1] = std::move(stx1);
      o.mu[1] = r.mu1;
      break;
    }
    case Challenge::c2: {
      const auto& r = std::get<ResponseC2>(z.body);
      SideOpening stx0 = derive_stx(h, r.seed_stx0, f, n);
      o.u_hi[0] = recompute_u_mu(pk, stx0, r.mu0);
      o.stx[0] = std::move(stx0);
      o.mu[0] = r.mu0;
      DerivedSide s1 = derive_side(h, r.seed_stx1, r.seed_beta1, f, n, m);
      o.u_lo[1] = recompute_u_gamma(pk, s1.stx, s1.beta);
      o.stx[1] = std::move(s1.stx);
      o.gamma[1] = std::move(s1.beta);
      break;
    }
    case Challenge::c3: {
      const auto& r = std::get<ResponseC3>(z.body);
      DerivedSide s0 = derive_side(h, r.seed_stx0, r.seed_beta0, f, n, m);
      o.u_lo[0] = recompute_u_gamma(pk, s0.stx, s0.beta);
      o.stx[0] = std::move(s0.stx);
      o.gamma[0] = std::move(s0.beta);
      o.u_lo[1] = r.u10;
      o.u_hi[1] = r.u11;
      break;
    }
  }
  return o;
}

bool same_stx(const SideOpening& a, const SideOpening& b) {
  return a.s == b.s && a.t == b.t && a.x == b.x;
}

// Matrix-valued openings of one commitment slot must agree across responses;
// a disagreement means two preimages of one digest.
template <typename T, typename Eq>
void merge_slot(std::optional<T>& acc, const std::optional<T>& next, Eq eq,
                const char* slot) {
  if (!next) return;
  if (acc && !eq(*acc, *next))
    throw Error(ErrorCode::binding_violation,
                std::string("openings of slot ") + slot + " disagree");
  if (!acc) acc = *next;
}

}  // namespace

CoeffVector extract_secret(const PublicKey& pk, const CommitmentBundle& y,
                           const std::map<Challenge, Response>& responses,
                           const ProtocolOptions& opts) {
  pk.check_invariants();
  if (responses.size() < 3)
    throw Error(ErrorCode::not_enough_responses,
                "extraction needs three distinct challenges");
  for (const auto& [c, z] : responses) {
    Verdict v = verify_round(pk, y, c, z, opts);
    if (!v.accepted)
      throw Error(ErrorCode::response_invalid,
                  std::string("response for challenge ") + std::to_string(int(c)) +
                      " rejected: " + reject_reason_name(v.reason));
  }

  std::map<Challenge, Openings> opened;
  for (const auto& [c, z] : responses) opened.emplace(c, open_response(pk, z, opts));

  Openings merged;
  static const char* kSlotNames[2][3] = {{"Y00", "Y01", "Y02"}, {"Y10", "Y11", "Y12"}};
  auto mat_eq = [](const Matrix& a, const Matrix& b) { return a == b; };
  for (const auto& [c, o] : opened) {
    for (int b = 0; b < 2; ++b) {
      merge_slot(merged.stx[b], o.stx[b], same_stx, kSlotNames[b][2]);
      merge_slot(merged.u_lo[b], o.u_lo[b], mat_eq, kSlotNames[b][0]);
      merge_slot(merged.u_hi[b], o.u_hi[b], mat_eq, kSlotNames[b][1]);
    }
  }

  auto has = [&](Challenge c) { return opened.count(c) != 0; };
  std::optional<CoeffVector> alpha;
  if (has(Challenge::c0) && has(Challenge::c1) && has(Challenge::c2)) {
    // side-0 openings: beta_0 from c=1, beta_0 + alpha from c=2
    alpha = coeff_sub(*opened.at(Challenge::c2).mu[0], *opened.at(Challenge::c1).gamma[0]);
  } else if (has(Challenge::c0) && has(Challenge::c2) && has(Challenge::c3)) {
    // beta_0 from c=3 instead
    alpha = coeff_sub(*opened.at(Challenge::c2).mu[0], *opened.at(Challenge::c3).gamma[0]);
  } else if (has(Challenge::c1) && has(Challenge::c2) && has(Challenge::c3)) {
    // side-1 openings: beta_1 + alpha from c=1, beta_1 from c=2
    alpha = coeff_sub(*opened.at(Challenge::c1).mu[1], *opened.at(Challenge::c2).gamma[1]);
  } else if (has(Challenge::c0) && has(Challenge::c1) && has(Challenge::c3)) {
    // beta_1 from c=0 instead
    alpha = coeff_sub(*opened.at(Challenge::c1).mu[1], *opened.at(Challenge::c0).gamma[1]);
  } else {
    throw Error(ErrorCode::not_enough_responses,
                "challenges must cover three distinct values");
  }
  if (!check_solution(pk, *alpha))
    throw Error(ErrorCode::invariant_violation,
                "extracted coefficients fail the rank condition");
  return *alpha;
}

}  // namespace minrank
