#ifndef MINRANK_PROTOCOL_DETAIL_HPP
#define MINRANK_PROTOCOL_DETAIL_HPP

#include "minrank/protocol.hpp"
#include "minrank/serialize.hpp"

namespace minrank::detail {

inline constexpr const char* kUTag[2][2] = {{"U00", "U01"}, {"U10", "U11"}};
inline constexpr const char* kRTag[2] = {"R0", "R1"};

inline Digest commit_matrix(const HashFunction& h, const char* tag, const Matrix& m) {
  return commit(h, tag, matrix_bytes(m));
}

inline Digest commit_stx(const HashFunction& h, const char* tag, const SideOpening& o) {
  std::vector<uint8_t> buf;
  append_matrix(buf, o.s);
  append_matrix(buf, o.t);
  append_matrix(buf, o.x);
  return commit(h, tag, buf);
}

inline std::span<const Matrix> rest(const PublicKey& pk) {
  return {pk.matrices.data() + 1, pk.matrices.size() - 1};
}

// T (sum gamma_i M_i) S + X: the honest U_{b,0} reconstruction.
inline Matrix recompute_u_gamma(const PublicKey& pk, const SideOpening& o,
                                const CoeffVector& gamma) {
  Matrix n = linear_combination(gamma, rest(pk));
  return o.t * n * o.s + o.x;
}

// T (sum mu_i M_i) S + X - T M_0 S: the honest U_{b,1} reconstruction.
inline Matrix recompute_u_mu(const PublicKey& pk, const SideOpening& o,
                             const CoeffVector& mu) {
  Matrix w = linear_combination(mu, rest(pk)) - pk.matrices[0];
  return o.t * w * o.s + o.x;
}

}  // namespace minrank::detail

#endif
