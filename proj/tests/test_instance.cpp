#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

#include "minrank/instance.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"
#include "support/util.hpp"

using namespace minrank;

namespace {

// Second, independent enumeration: walk coefficient vectors by odometer and
// rank-check with the minors oracle.
std::vector<CoeffVector> enumerate_solutions(const PublicKey& pk) {
  const FieldSpec f = pk.params.field;
  std::vector<uint16_t> digits(pk.params.m - 1, 0);
  std::vector<CoeffVector> hits;
  for (;;) {
    Matrix acc(f, pk.params.n, pk.params.n);
    for (size_t i = 0; i < digits.size(); ++i)
      for (size_t r = 0; r < pk.params.n; ++r)
        for (size_t c = 0; c < pk.params.n; ++c)
          acc.set(r, c,
                  f.add(acc.at(r, c), f.mul(digits[i], pk.matrices[i + 1].at(r, c))));
    Matrix diff(f, pk.params.n, pk.params.n);
    for (size_t r = 0; r < pk.params.n; ++r)
      for (size_t c = 0; c < pk.params.n; ++c)
        diff.set(r, c, f.sub(acc.at(r, c), pk.matrices[0].at(r, c)));
    if (testoracles::rank_by_minors(diff) == pk.params.r)
      hits.emplace_back(f, digits);
    size_t i = digits.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++digits[i] < f.q()) {
        done = false;
        break;
      }
      digits[i] = 0;
    }
    if (done) return hits;
  }
}

}  // namespace

TEST_CASE("params validation") {
  FieldSpec f(2);
  CHECK_NOTHROW(Params({f, 4, 5, 2}).validate());
  CHECK_THROWS_AS(Params({f, 4, 5, 4}).validate(), Error);  // r = n
  CHECK_THROWS_AS(Params({f, 4, 5, 0}).validate(), Error);
  CHECK_THROWS_AS(Params({f, 4, 1, 2}).validate(), Error);  // m < 2
}

TEST_CASE("keygen plants a valid solution") {
  // 10^4 trials over the grid q in {2,3}, n <= 6, m <= 8, r < n
  auto rng = testutil::seeded_rng("keygen");
  size_t failures = 0, trials = 0;
  while (trials < 10000) {
    for (uint32_t q : {2u, 3u}) {
      for (size_t n = 2; n <= 6; ++n) {
        for (size_t m = 2; m <= 8; m += 3) {
          const size_t r = 1 + trials % (n - 1);
          Params p{FieldSpec(q), n, m, r};
          KeyPair kp = keygen(p, rng);
          if (!check_solution(kp.pk, kp.sk.alpha)) ++failures;
          ++trials;
        }
      }
    }
  }
  CHECK(failures == 0);
  Params bad{FieldSpec(2), 4, 5, 4};
  CHECK_THROWS_AS(keygen(bad, rng), Error);
}

TEST_CASE("keygen is deterministic in the stream") {
  Params p{FieldSpec(2), 4, 5, 2};
  auto r1 = testutil::seeded_rng("kg-det");
  auto r2 = testutil::seeded_rng("kg-det");
  KeyPair a = keygen(p, r1);
  KeyPair b = keygen(p, r2);
  CHECK(a.sk.alpha == b.sk.alpha);
  for (size_t i = 0; i < p.m; ++i) CHECK(a.pk.matrices[i] == b.pk.matrices[i]);
}

TEST_CASE("brute force finds the planted alpha at (q=2, n=4, m=5, r=2)") {
  auto rng = testutil::seeded_rng("bf-planted");
  Params p{FieldSpec(2), 4, 5, 2};
  for (int t = 0; t < 10; ++t) {
    KeyPair kp = keygen(p, rng);
    auto hits = brute_force_solve(kp.pk);
    bool found = false;
    for (const auto& h : hits) found |= (h == kp.sk.alpha);
    CHECK(found);
  }
}

TEST_CASE("brute force handles the m=1 edge") {
  // result is [()] iff rank(-M_0) == r
  auto rng = testutil::seeded_rng("bf-m1");
  FieldSpec f(2);
  Matrix m0 = random_rank_r(rng, f, 3, 1);
  PublicKey pk{Params{f, 3, 1, 1}, {m0}};
  auto hits = brute_force_solve(pk);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].size() == 0);

  PublicKey pk2{Params{f, 3, 1, 2}, {m0}};  // rank(-M_0) = 1 != 2
  CHECK(brute_force_solve(pk2).empty());
}

TEST_CASE("brute force respects the enumeration cap") {
  auto rng = testutil::seeded_rng("bf-cap");
  Params p{FieldSpec(2), 2, 17, 1};
  PublicKey pk = lossy_gen(p, rng);
  CHECK_THROWS_AS(brute_force_solve(pk, uint64_t(1) << 10), Error);  // 2^16 > 2^10
  CHECK_NOTHROW(brute_force_solve(pk, uint64_t(1) << 16));

  Params big{FieldSpec(2), 2, 30, 1};
  CHECK_THROWS_AS(brute_force_solve(lossy_gen(big, rng)), Error);  // 2^29 > default
}

TEST_CASE("brute force agrees with an independent enumeration") {
  auto rng = testutil::seeded_rng("bf-oracle");
  Params p{FieldSpec(2), 3, 3, 1};
  for (int t = 0; t < 20; ++t) {
    PublicKey pk = lossy_gen(p, rng);
    auto got = brute_force_solve(pk);
    auto expect = enumerate_solutions(pk);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
  }
}

TEST_CASE("brute force output is lexicographically ordered") {
  auto rng = testutil::seeded_rng("bf-lex");
  Params p{FieldSpec(3), 2, 3, 1};
  for (int t = 0; t < 10; ++t) {
    PublicKey pk = lossy_gen(p, rng);
    auto hits = brute_force_solve(pk);
    for (size_t i = 1; i < hits.size(); ++i)
      CHECK(hits[i - 1].values < hits[i].values);
  }
}

TEST_CASE("check_solution length precondition") {
  auto rng = testutil::seeded_rng("cs-len");
  Params p{FieldSpec(2), 4, 5, 2};
  KeyPair kp = keygen(p, rng);
  CHECK_THROWS_AS(check_solution(kp.pk, CoeffVector(p.field, {1})), Error);
}

TEST_CASE("zero alpha fails on a full-rank -M_0") {
  FieldSpec f(2);
  auto rng = testutil::seeded_rng("cs-zero");
  Matrix m0 = random_invertible(rng, f, 4);
  PublicKey pk{Params{f, 4, 3, 2}, {m0, Matrix(f, 4, 4), Matrix(f, 4, 4)}};
  CHECK_FALSE(check_solution(pk, CoeffVector(f, {0, 0})));
}

TEST_CASE("check_solution agrees with brute-force membership") {
  auto rng = testutil::seeded_rng("cs-bf");
  Params p{FieldSpec(2), 3, 3, 1};
  for (int t = 0; t < 100; ++t) {
    PublicKey pk = lossy_gen(p, rng);
    auto hits = brute_force_solve(pk);
    std::set<std::vector<uint16_t>> hit_set;
    for (const auto& h : hits) hit_set.insert(h.values);
    std::vector<uint16_t> digits(p.m - 1, 0);
    for (int v = 0; v < 4; ++v) {
      digits[0] = uint16_t(v & 1);
      digits[1] = uint16_t(v >> 1);
      CoeffVector alpha(p.field, digits);
      CHECK(check_solution(pk, alpha) == (hit_set.count(digits) != 0));
    }
  }
}

TEST_CASE("lossy_gen shape and determinism") {
  Params p{FieldSpec(2), 4, 3, 1};
  auto r1 = testutil::seeded_rng("lossy-det");
  auto r2 = testutil::seeded_rng("lossy-det");
  PublicKey a = lossy_gen(p, r1);
  PublicKey b = lossy_gen(p, r2);
  REQUIRE(a.matrices.size() == 3);
  for (const auto& m : a.matrices) {
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 4);
  }
  for (size_t i = 0; i < 3; ++i) CHECK(a.matrices[i] == b.matrices[i]);
}

TEST_CASE("decisional experiment") {
  Params p{FieldSpec(2), 4, 3, 1};
  auto rng = testutil::seeded_rng("decisional");

  auto const_one = [](const PublicKey&) { return true; };
  CHECK(decisional_experiment(const_one, p, GeneratorChoice::igen, 50, rng) == 1.0);
  CHECK(decisional_experiment(const_one, p, GeneratorChoice::lossy_gen, 50, rng) == 1.0);

  auto solvable = [](const PublicKey& pk) { return !brute_force_solve(pk).empty(); };
  CHECK(decisional_experiment(solvable, p, GeneratorChoice::igen, 300, rng) == 1.0);

  // lossy rate matches an independently seeded brute-force measurement
  const double rate =
      decisional_experiment(solvable, p, GeneratorChoice::lossy_gen, 1000, rng);
  auto rng2 = testutil::seeded_rng("decisional-independent");
  size_t solvable_count = 0;
  const size_t trials = 1000;
  for (size_t i = 0; i < trials; ++i)
    if (!brute_force_solve(lossy_gen(p, rng2)).empty()) ++solvable_count;
  const double base = double(solvable_count) / double(trials);
  const double pooled = (rate + base) / 2.0;
  const double sigma = std::sqrt(pooled * (1.0 - pooled) * 2.0 / double(trials));
  CHECK(std::fabs(rate - base) <= 3.0 * sigma + 1e-12);
}

TEST_CASE("lossy keys look uniform entrywise") {
  // chi-square on entry values at q=3 over many draws
  Params p{FieldSpec(3), 2, 2, 1};
  auto rng = testutil::seeded_rng("lossy-uniform");
  std::array<size_t, 3> counts{};
  const size_t draws = 2000;
  for (size_t i = 0; i < draws; ++i) {
    PublicKey pk = lossy_gen(p, rng);
    for (const auto& m : pk.matrices)
      for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 2; ++c) ++counts[m.at(r, c)];
  }
  const double total = double(draws) * 2 * 2 * 2;
  std::vector<double> obs{double(counts[0]), double(counts[1]), double(counts[2])};
  std::vector<double> exp(3, total / 3.0);
  const double stat = teststats::chi2_stat(obs, exp);
  CHECK(teststats::chi2_sf(stat, 2.0) > 0.001);
}
