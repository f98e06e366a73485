#include "protocol_detail.hpp"

namespace minrank {

using namespace detail;

namespace {

// Which opening each challenge demands from each side.
enum Need : unsigned { kGamma = 1, kMu = 2, kRaw = 4 };

unsigned needs_for(Challenge c, int side) {
  switch (c) {
    case Challenge::c0: return side == 0 ? kRaw : kGamma;
    case Challenge::c1: return side == 0 ? kGamma : kMu;
    case Challenge::c2: return side == 0 ? kMu : kGamma;
    case Challenge::c3: return side == 0 ? kGamma : kRaw;
  }
  return 0;
}

}  // namespace

// The six pairs are all coverable without the secret: a side asked for both
// beta and mu openings commits to each independently; a side asked for a raw
// U pair plants its own rank-r difference next to whichever value the other
// challenge recomputes.
CheatingProver::CheatingProver(const PublicKey& pk,
                               std::pair<Challenge, Challenge> prepared,
                               RandomSource& rng, const ProtocolOptions& opts)
    : prepared_(prepared) {
  pk.check_invariants();
  pk.params.validate();
  if (prepared.first == prepared.second)
    throw Error(ErrorCode::invalid_argument, "prepared challenges must differ");
  const HashFunction& h = *opts.hash;
  const FieldSpec f = pk.params.field;
  const size_t n = pk.params.n;

  for (int b = 0; b < 2; ++b) {
    const unsigned needs =
        needs_for(prepared.first, b) | needs_for(prepared.second, b);
    Side& side = side_[b];
    side.seed_stx = rng.bytes(opts.seed_bytes);
    side.seed_beta = rng.bytes(opts.seed_bytes);
    DerivedSide d = derive_side(h, side.seed_stx, side.seed_beta, f, n, pk.params.m);

    std::optional<Matrix> slot_lo, slot_hi;  // committed values of the U slots
    if (needs & kGamma) slot_lo = recompute_u_gamma(pk, d.stx, d.beta);
    if (needs & kMu) {
      side.mu = random_coeffs(rng, f, pk.params.m - 1);
      slot_hi = recompute_u_mu(pk, d.stx, *side.mu);
    }
    if (needs & kRaw) {
      Matrix jump = random_rank_r(rng, f, n, pk.params.r);
      if (slot_lo) {
        slot_hi = *slot_lo + jump;  // pair (U, U + E)
      } else {
        slot_lo = *slot_hi - jump;  // pair (V - E, V)
      }
      side.raw_lo = slot_lo;
      side.raw_hi = slot_hi;
    }
    if (!slot_lo) slot_lo = random_matrix(rng, f, n, n);  // never opened
    if (!slot_hi) slot_hi = random_matrix(rng, f, n, n);

    auto& y = b == 0 ? y_.y0 : y_.y1;
    y[0] = commit_matrix(h, kUTag[b][0], *slot_lo);
    y[1] = commit_matrix(h, kUTag[b][1], *slot_hi);
    y[2] = commit_stx(h, kRTag[b], d.stx);
  }
}

std::optional<Response> CheatingProver::respond(Challenge c) const {
  if (c != prepared_.first && c != prepared_.second) return std::nullopt;
  switch (c) {
    case Challenge::c0:
      return Response{ResponseC0{*side_[0].raw_lo, *side_[0].raw_hi,
                                 side_[1].seed_stx, side_[1].seed_beta}};
    case Challenge::c1:
      return Response{ResponseC1{side_[0].seed_stx, side_[0].seed_beta,
                                 side_[1].seed_stx, *side_[1].mu}};
    case Challenge::c2:
      return Response{ResponseC2{side_[0].seed_stx, *side_[0].mu,
                                 side_[1].seed_stx, side_[1].seed_beta}};
    case Challenge::c3:
      return Response{ResponseC3{side_[0].seed_stx, side_[0].seed_beta,
                                 *side_[1].raw_lo, *side_[1].raw_hi}};
  }
  return std::nullopt;
}

}  // namespace minrank
