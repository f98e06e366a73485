#include "minrank/instance.hpp"

namespace minrank {

void Params::validate() const {
  if (n == 0 || r == 0 || r >= n)
    throw Error(ErrorCode::invalid_params, "need 1 <= r < n");
  if (m < 2) throw Error(ErrorCode::invalid_params, "need m >= 2");
}

void PublicKey::check_invariants() const {
  if (matrices.size() != params.m)
    throw Error(ErrorCode::invariant_violation, "public key matrix count != m");
  for (const auto& mat : matrices) {
    if (mat.field() != params.field)
      throw Error(ErrorCode::invariant_violation, "public key matrix field mismatch");
    if (mat.rows() != params.n || mat.cols() != params.n)
      throw Error(ErrorCode::invariant_violation, "public key matrix is not n x n");
  }
}

bool check_solution(const PublicKey& pk, const CoeffVector& alpha) {
  if (alpha.size() + 1 != pk.params.m)
    throw Error(ErrorCode::dimension_mismatch, "alpha length must be m-1");
  std::span<const Matrix> rest(pk.matrices.data() + 1, pk.matrices.size() - 1);
  Matrix m = linear_combination(alpha, rest, &pk.matrices[0]);
  return rank(m) == pk.params.r;
}

KeyPair keygen(const Params& params, RandomSource& rng) {
  params.validate();
  const FieldSpec f = params.field;
  std::vector<Matrix> mats;
  mats.reserve(params.m);
  mats.emplace_back(f, params.n, params.n);  // M_0 placeholder
  for (size_t i = 1; i < params.m; ++i)
    mats.push_back(random_matrix(rng, f, params.n, params.n));
  CoeffVector alpha = random_coeffs(rng, f, params.m - 1);
  Matrix e = random_rank_r(rng, f, params.n, params.r);
  std::span<const Matrix> rest(mats.data() + 1, mats.size() - 1);
  mats[0] = linear_combination(alpha, rest, &e);  // sum alpha_i M_i - E
  KeyPair kp{PublicKey{params, std::move(mats)}, SecretKey{std::move(alpha)}};
  kp.pk.check_invariants();
  return kp;
}

PublicKey lossy_gen(const Params& params, RandomSource& rng) {
  params.validate();
  std::vector<Matrix> mats;
  mats.reserve(params.m);
  for (size_t i = 0; i < params.m; ++i)
    mats.push_back(random_matrix(rng, params.field, params.n, params.n));
  return PublicKey{params, std::move(mats)};
}

std::vector<CoeffVector> brute_force_solve(const PublicKey& pk, uint64_t cap) {
  pk.check_invariants();
  const FieldSpec f = pk.params.field;
  const size_t len = pk.params.m - 1;
  uint64_t total = 1;
  for (size_t i = 0; i < len; ++i) {
    if (total > cap / f.q())
      throw Error(ErrorCode::enumeration_cap_exceeded, "q^(m-1) exceeds the cap");
    total *= f.q();
  }

  std::vector<CoeffVector> hits;
  std::vector<uint16_t> coeffs(len, 0);
  std::span<const Matrix> rest(pk.matrices.data() + 1, pk.matrices.size() - 1);
  for (;;) {
    CoeffVector alpha(f, coeffs);
    Matrix m = linear_combination(alpha, rest, &pk.matrices[0]);
    if (rank(m) == pk.params.r) hits.push_back(std::move(alpha));
    // lexicographic successor, last coordinate fastest
    size_t i = len;
    while (i > 0) {
      --i;
      if (++coeffs[i] < f.q()) break;
      coeffs[i] = 0;
      if (i == 0) return hits;
    }
    if (len == 0) return hits;
  }
}

double decisional_experiment(const Distinguisher& d, const Params& params,
                             GeneratorChoice oracle, size_t trials,
                             RandomSource& rng) {
  size_t ones = 0;
  for (size_t t = 0; t < trials; ++t) {
    PublicKey pk = oracle == GeneratorChoice::igen ? keygen(params, rng).pk
                                                   : lossy_gen(params, rng);
    if (d(pk)) ++ones;
  }
  return trials == 0 ? 0.0 : double(ones) / double(trials);
}

}  // namespace minrank
