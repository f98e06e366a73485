#ifndef MINRANK_INSTANCE_HPP
#define MINRANK_INSTANCE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "minrank/matrix.hpp"
#include "minrank/random.hpp"

namespace minrank {

// Instance shape: m matrices of size n x n over F_q, target rank r.
struct Params {
  FieldSpec field;
  size_t n;
  size_t m;
  size_t r;

  // Key generation and the protocol require 1 <= r < n and m >= 2. The
  // brute-force oracle also accepts the degenerate m = 1 (empty alpha).
  void validate() const;
  bool operator==(const Params& o) const {
    return field == o.field && n == o.n && m == o.m && r == o.r;
  }
};

struct PublicKey {
  Params params;
  std::vector<Matrix> matrices;  // M_0 .. M_{m-1}

  void check_invariants() const;
};

struct SecretKey {
  CoeffVector alpha;  // length m-1
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

// true iff rank(sum_i alpha_i M_i - M_0) == r.
bool check_solution(const PublicKey& pk, const CoeffVector& alpha);

// Plants alpha: draw M_1..M_{m-1} and alpha uniformly, draw E of rank exactly
// r, and set M_0 = sum_i alpha_i M_i - E.
KeyPair keygen(const Params& params, RandomSource& rng);

// All m matrices uniform; no planted solution.
PublicKey lossy_gen(const Params& params, RandomSource& rng);

// Exhaustive search over all q^(m-1) coefficient vectors, in lexicographic
// order with the last coordinate varying fastest. Errors out above the cap.
std::vector<CoeffVector> brute_force_solve(const PublicKey& pk,
                                           uint64_t cap = uint64_t(1) << 24);

enum class GeneratorChoice { igen, lossy_gen };

using Distinguisher = std::function<bool(const PublicKey&)>;

// Runs the chosen generator `trials` times and returns the fraction of
// 1-outputs; the caller differences two runs to measure advantage.
double decisional_experiment(const Distinguisher& d, const Params& params,
                             GeneratorChoice oracle, size_t trials,
                             RandomSource& rng);

}  // namespace minrank

#endif
