#include "minrank/estimator.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "minrank/errors.hpp"

namespace minrank {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt binom(int64_t n, int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int64_t i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;
  }
  return acc;
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw Error(ErrorCode::invalid_argument, "log2 of non-positive value");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits < 63) return std::log2(v.convert_to<double>());
  const BigInt top = v >> (bits - 52);
  return std::log2(top.convert_to<double>()) + double(bits - 52);
}

BigInt pow_big(uint64_t base, uint64_t e) {
  BigInt acc = 1, b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

BigRat prob_rank_exact(unsigned n, unsigned ell, uint32_t q) {
  if (ell > n) throw Error(ErrorCode::invalid_argument, "rank exceeds matrix size");
  const BigInt qn = pow_big(q, n);
  const BigInt ql = pow_big(q, ell);
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < ell; ++i) {
    const BigInt qi = pow_big(q, i);
    num *= (qn - qi) * (qn - qi);
    den *= ql - qi;
  }
  den *= pow_big(q, uint64_t(n) * n);
  return BigRat(num, den);
}

// log2 P(n, ell): the exact-rational route normalizes million-bit gcds at
// n ~ 1000, so the rank-variant estimate works in log space instead.
double log2_prob_rank(unsigned n, unsigned ell, uint32_t q) {
  const double lq = std::log2(double(q));
  auto log2_qk_minus_1 = [&](unsigned k) {  // log2(q^k - 1)
    return double(k) * lq +
           std::log1p(-std::pow(double(q), -double(k))) / std::log(2.0);
  };
  double num = 0.0, den = 0.0;
  for (unsigned i = 0; i < ell; ++i) {
    num += 2.0 * (double(i) * lq + log2_qk_minus_1(n - i));
    den += double(i) * lq + log2_qk_minus_1(ell - i);
  }
  den += double(n) * double(n) * lq;
  return num - den;
}

// log2 of sum_{ell=1}^{r} P(n, ell) via log-sum-exp.
double log2_sum_rank_prob(unsigned n, unsigned r, uint32_t q) {
  double acc = -std::numeric_limits<double>::infinity();
  for (unsigned ell = 1; ell <= r; ++ell) {
    const double v = log2_prob_rank(n, ell, q);
    const double hi = std::max(acc, v), lo = std::min(acc, v);
    acc = std::isinf(hi) && hi < 0
              ? lo
              : hi + std::log1p(std::exp2(lo - hi)) / std::log(2.0);
  }
  return acc;
}

}  // namespace

void EstimatorParams::validate() const {
  if (q < 2) throw Error(ErrorCode::invalid_params, "need q >= 2");
  if (n == 0 || m == 0) throw Error(ErrorCode::invalid_params, "need n, m >= 1");
  if (r > n) throw Error(ErrorCode::invalid_params, "need r <= n");
  if (!(omega > 2.0 && omega <= 3.0))
    throw Error(ErrorCode::invalid_params, "need 2 < omega <= 3");
}

const char* attack_name(AttackId id) {
  switch (id) {
    case AttackId::exhaustive_direct: return "exhaustive_direct";
    case AttackId::exhaustive_rank: return "exhaustive_rank";
    case AttackId::kernel: return "kernel";
    case AttackId::big_m: return "big_m";
    case AttackId::syndrome: return "syndrome";
    case AttackId::ks_flp: return "ks_flp";
    case AttackId::ks_verbel: return "ks_verbel";
    case AttackId::ks_nakamura: return "ks_nakamura";
    case AttackId::minors: return "minors";
    case AttackId::support_minors: return "support_minors";
  }
  return "unknown";
}

std::optional<double> AttackReport::min_log2() const {
  std::optional<double> best;
  for (const auto& e : entries)
    if (e.determined && (!best || e.log2_cost < *best)) best = e.log2_cost;
  return best;
}

double prob_rank(unsigned n, unsigned ell, uint32_t q) {
  if (q < 2) throw Error(ErrorCode::invalid_params, "need q >= 2");
  return prob_rank_exact(n, ell, q).convert_to<double>();
}

std::pair<double, double> exhaustive_cx(const EstimatorParams& p) {
  p.validate();
  const double direct =
      double(p.m - 1) * std::log2(double(p.q)) + p.omega * std::log2(double(p.r + 1));
  const double rank_variant =
      -log2_sum_rank_prob(p.n, p.r, p.q) + p.omega * std::log2(double(p.r + 1));
  return {direct, rank_variant};
}

double kernel_cx(const EstimatorParams& p) {
  p.validate();
  const uint64_t e1 = uint64_t((p.m + p.n - 1) / p.n) * p.r;
  const uint64_t e2 = uint64_t(p.m / p.n) * p.r + (p.m % p.n);
  return double(std::min(e1, e2)) * std::log2(double(p.q)) +
         p.omega * std::log2(double(p.m));
}

double bigm_cx(const EstimatorParams& p) {
  p.validate();
  const double nn = double(p.n) * double(p.n - p.r);
  const double expo = std::max(0.0, nn - double(p.m));
  return expo * std::log2(double(p.q)) + p.omega * std::log2(nn);
}

double syndrome_cx(const EstimatorParams& p) {
  p.validate();
  const double e1 = (double(p.n) * p.n - p.m - 1) / 2.0;
  const double e2 = double(p.n) * p.r - double(p.m) - double(p.r) * p.r / 4.0;
  return std::max(e1, e2) * std::log2(double(p.q)) +
         std::log2(double(p.n) * p.n * p.r);
}

std::optional<unsigned> d_ks(const EstimatorParams& p) {
  p.validate();
  for (unsigned d = 1; d <= p.r; ++d) {
    if (binom(p.r, d) * p.n > binom(p.r, d + 1) * p.m) return d + 2;
  }
  return std::nullopt;
}

double ks_flp_cx(const EstimatorParams& p) {
  p.validate();
  // log2 of log2(q) * C(n,r)^(omega (n-r)); the first term vanishes at q = 2.
  return std::log2(std::log2(double(p.q))) +
         p.omega * double(p.n - p.r) * log2_big(binom(p.n, p.r));
}

namespace {

struct CRange {
  unsigned lo, hi;
  bool empty() const { return lo > hi; }
};

CRange c_range(const EstimatorParams& p) {
  if (p.r >= p.n) return {1, 0};
  const unsigned nr = p.n - p.r;
  return {(p.m + nr - 1) / nr, nr};
}

}  // namespace

AttackEstimate ks_verbel_cx(const EstimatorParams& p) {
  p.validate();
  const CRange cs = c_range(p);
  if (cs.empty())
    return {0.0, false, "c-range empty (m > (n-r)^2)"};
  const auto dks = d_ks(p);
  if (!dks) return {0.0, false, "D_KS undefined (no d in [1, r] satisfies the bound)"};
  double best = 0.0;
  bool first = true;
  for (unsigned c = cs.lo; c <= cs.hi; ++c) {
    const BigInt b = binom(int64_t(c) * p.r + *dks - 1, *dks);
    if (b <= 0) continue;
    const double v = p.omega * (std::log2(double(p.m)) + log2_big(b));
    if (first || v < best) best = v, first = false;
  }
  if (first) return {0.0, false, "no admissible c"};
  return {best, true, {}};
}

std::optional<unsigned> d_mgd(const EstimatorParams& p, unsigned c, unsigned degree_cap) {
  p.validate();
  if (degree_cap < 1)
    throw Error(ErrorCode::invalid_argument, "degree cap must be at least 1");
  if (c < 1) throw Error(ErrorCode::invalid_argument, "need c >= 1");

  // Coefficient of t0^e0 t1^e1 .. tc^ec in
  //   prod_i (1 - t0 ti)^n / ((1 - t0)^m prod_i (1 - ti)^r).
  // Per variable i with exponent e_i the factor contributes
  //   P_i(z) = sum_k (-1)^k C(n,k) C(r-1+e_i-k, e_i-k) z^k
  // in the shared t0-degree z; the remaining t0 budget comes from 1/(1-t0)^m.
  // The coefficient is symmetric in t1..tc, so partitions of s = sum e_i
  // suffice. Scan s upward and report the first negative.
  std::vector<std::vector<unsigned>> partitions;
  std::vector<unsigned> cur;
  for (unsigned s = 0; s <= degree_cap; ++s) {
    partitions.clear();
    cur.clear();
    // partitions of s into at most c parts, each part <= degree_cap
    auto gen = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
      if (remaining == 0) {
        partitions.push_back(cur);
        return;
      }
      if (cur.size() == c) return;
      for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        self(self, remaining - part, part);
        cur.pop_back();
      }
    };
    gen(gen, s, std::min(s == 0 ? 1u : s, degree_cap));

    for (const auto& parts : partitions) {
      // bracket[K]: summed products of the per-part polynomials at t0-degree K
      std::vector<BigInt> bracket{1};
      for (unsigned e : parts) {
        std::vector<BigInt> poly(e + 1);
        for (unsigned k = 0; k <= e; ++k) {
          BigInt term = binom(p.n, k) * binom(int64_t(p.r) - 1 + (e - k), e - k);
          poly[k] = (k % 2 == 0) ? term : -term;
        }
        std::vector<BigInt> next(bracket.size() + e, 0);
        for (size_t i = 0; i < bracket.size(); ++i)
          for (unsigned k = 0; k <= e; ++k) next[i + k] += bracket[i] * poly[k];
        bracket = std::move(next);
      }
      for (unsigned e0 = 0; e0 <= degree_cap; ++e0) {
        BigInt a = 0;
        const unsigned kmax = std::min<unsigned>(e0, unsigned(bracket.size()) - 1);
        for (unsigned k = 0; k <= kmax; ++k)
          a += bracket[k] * binom(int64_t(p.m) - 1 + (e0 - k), e0 - k);
        if (a < 0) return s;
      }
    }
  }
  return std::nullopt;
}

AttackEstimate ks_nakamura_cx(const EstimatorParams& p, unsigned degree_cap) {
  p.validate();
  const CRange cs = c_range(p);
  if (cs.empty())
    return {0.0, false, "c-range empty (m > (n-r)^2)"};
  double best = 0.0;
  bool first = true;
  for (unsigned c = cs.lo; c <= cs.hi; ++c) {
    const auto d = d_mgd(p, c, degree_cap);
    if (!d)
      return {0.0, false,
              "D_mgd undetermined at degree cap " + std::to_string(degree_cap) +
                  " for c = " + std::to_string(c)};
    const double v = p.omega * log2_big(binom(int64_t(p.m) + int64_t(c) * p.r + *d, *d));
    if (first || v < best) best = v, first = false;
  }
  return {best, true, {}};
}

double minors_cx(const EstimatorParams& p) {
  p.validate();
  return p.omega * log2_big(binom(int64_t(p.m) + p.r, p.r));
}

std::optional<unsigned> d_spp(const EstimatorParams& p, unsigned cap) {
  p.validate();
  const BigInt cnr = binom(p.n, p.r);
  for (unsigned b = 1; b <= cap; ++b) {
    BigInt rv = 0;
    for (unsigned i = 1; i <= b; ++i) {
      BigInt term = binom(p.n, int64_t(p.r) + i) * binom(int64_t(p.n) + i - 1, i) *
                    binom(int64_t(p.m) + b - i - 1, int64_t(b) - i);
      rv += (i % 2 == 1) ? term : -term;
    }
    const BigInt mb = binom(int64_t(p.m) + b, b) * cnr;
    if (rv > mb - 1) return b;
  }
  return std::nullopt;
}

AttackEstimate support_minors_cx(const EstimatorParams& p, unsigned cap) {
  const auto d = d_spp(p, cap);
  if (!d)
    return {0.0, false, "D_Spp undetermined at cap " + std::to_string(cap)};
  const double v = std::log2(3.0) + 2.0 * log2_big(binom(int64_t(p.m) + *d, *d)) +
                   2.0 * log2_big(binom(p.n, p.r)) + std::log2(double(p.r + 1)) +
                   std::log2(double(p.m));
  return {v, true, {}};
}

AttackReport attack_report(const EstimatorParams& p, const EstimatorCaps& caps) {
  p.validate();
  AttackReport rep;
  rep.params = p;
  auto& e = rep.entries;
  const auto [direct, rank_variant] = exhaustive_cx(p);
  e[unsigned(AttackId::exhaustive_direct)] = {direct, true, {}};
  e[unsigned(AttackId::exhaustive_rank)] = {rank_variant, true, {}};
  e[unsigned(AttackId::kernel)] = {kernel_cx(p), true, {}};
  e[unsigned(AttackId::big_m)] = {bigm_cx(p), true, {}};
  e[unsigned(AttackId::syndrome)] = {syndrome_cx(p), true, {}};
  e[unsigned(AttackId::ks_flp)] = {ks_flp_cx(p), true, {}};
  e[unsigned(AttackId::ks_verbel)] = ks_verbel_cx(p);
  e[unsigned(AttackId::ks_nakamura)] = ks_nakamura_cx(p, caps.mgd_degree_cap);
  e[unsigned(AttackId::minors)] = {minors_cx(p), true, {}};
  e[unsigned(AttackId::support_minors)] = support_minors_cx(p, caps.spp_cap);
  return rep;
}

double rounds_needed(unsigned ell, Scheme scheme) {
  if (ell < 1) throw Error(ErrorCode::invalid_argument, "need ell >= 1");
  if (scheme == Scheme::half) return double(ell);
  const double k = std::ceil(double(ell) / (std::log2(3.0) - 1.0));
  return 2.0 * k / 3.0;
}

namespace {

bool power_of_two(uint32_t q) { return (q & (q - 1)) == 0; }

}  // namespace

CostReport comm_cost(unsigned ell, uint32_t q, unsigned n, unsigned m, Scheme scheme) {
  if (ell < 1) throw Error(ErrorCode::invalid_argument, "need ell >= 1");
  if (q < 2) throw Error(ErrorCode::invalid_params, "need q >= 2");
  const double rounds = rounds_needed(ell, scheme);
  if (power_of_two(q)) {
    // exact integer path: bytes = floor(rounds * (A + f*ell) / 8) with
    // A = (n^2 + m - 1) log2 q and f = 5/2 (half) or 3/2 (two-thirds)
    const uint64_t lg = uint64_t(std::lround(std::log2(double(q))));
    const uint64_t a = (uint64_t(n) * n + (m - 1)) * lg;
    if (scheme == Scheme::half) {
      const uint64_t twice_bits = uint64_t(ell) * (2 * a + 5 * uint64_t(ell));
      return CostReport{scheme, rounds, double(twice_bits) / 2.0, twice_bits / 16};
    }
    const uint64_t k = uint64_t(std::llround(rounds * 3.0 / 2.0));
    const uint64_t six_bits = 2 * k * (2 * a + 3 * uint64_t(ell));
    return CostReport{scheme, rounds, double(six_bits) / 6.0, six_bits / 48};
  }
  const double per_round =
      (double(n) * n + (m - 1)) * std::log2(double(q)) +
      (scheme == Scheme::half ? 5.0 * ell / 2.0 : 3.0 * ell / 2.0);
  const double bits = rounds * per_round;
  return CostReport{scheme, rounds, bits, uint64_t(std::floor(bits / 8.0))};
}

std::vector<ParamCandidate> param_search(unsigned target_bits, uint32_t q, double omega,
                                         const EstimatorCaps& caps,
                                         const SearchOptions& opts) {
  if (target_bits < 1) throw Error(ErrorCode::invalid_argument, "need target >= 1");
  std::vector<ParamCandidate> out;
  for (unsigned n = opts.n_min; n <= opts.n_max; ++n) {
    std::vector<unsigned> ranks{n / 2};
    if ((n + 1) / 2 != n / 2) ranks.push_back((n + 1) / 2);
    for (unsigned r : ranks) {
      if (r < 1 || r >= n) continue;
      EstimatorParams p{q, n, 2, r, omega};
      // cheap feasibility band for m: exhaustive_direct from below, big_m
      // from above
      const double lq = std::log2(double(q));
      const unsigned m_lo = std::max<unsigned>(
          2, unsigned((double(target_bits) - omega * std::log2(double(r + 1))) / lq) + 1);
      const double nn = double(n) * double(n - r);
      const double m_hi_f = nn - (double(target_bits) - omega * std::log2(nn)) / lq;
      if (m_hi_f < double(m_lo)) continue;
      const unsigned m_hi = unsigned(std::min(m_hi_f, 2048.0));
      for (unsigned m = m_lo; m <= m_hi; ++m) {
        p.m = m;
        // cheap screens first; the solving-degree scans only run on survivors
        if (kernel_cx(p) < target_bits) continue;
        if (bigm_cx(p) < target_bits) break;  // decreasing in m
        if (syndrome_cx(p) < target_bits) continue;
        if (exhaustive_cx(p).second < target_bits) continue;
        if (ks_flp_cx(p) < target_bits) continue;
        if (minors_cx(p) < target_bits) continue;
        const AttackEstimate verbel = ks_verbel_cx(p);
        if (verbel.determined && verbel.log2_cost < target_bits) continue;
        const AttackEstimate spp = support_minors_cx(p, caps.spp_cap);
        if (spp.determined && spp.log2_cost < target_bits) continue;
        const AttackEstimate nak = ks_nakamura_cx(p, caps.mgd_degree_cap);
        if (nak.determined && nak.log2_cost < target_bits) continue;
        AttackReport rep = attack_report(p, caps);
        const auto mn = rep.min_log2();
        if (!mn || *mn < double(target_bits)) continue;
        const auto cost = comm_cost(target_bits, q, n, m, Scheme::half);
        out.push_back(ParamCandidate{p, std::move(rep), cost.total_bytes});
        break;  // smallest feasible m is the cheapest for this (n, r)
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ParamCandidate& a, const ParamCandidate& b) {
    return a.bytes_half < b.bytes_half;
  });
  if (out.size() > opts.max_results) out.resize(opts.max_results);
  return out;
}

std::string format_attack_table(const AttackReport& report) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "attack complexity estimates (q=%u n=%u m=%u r=%u omega=%.3g)\n",
                report.params.q, report.params.n, report.params.m, report.params.r,
                report.params.omega);
  os << buf;
  os << "  attack              log2(cost)\n";
  for (unsigned i = 0; i < kAttackCount; ++i) {
    const auto& e = report.entries[i];
    if (e.determined)
      std::snprintf(buf, sizeof buf, "  %-18s  %10.2f\n", attack_name(AttackId(i)),
                    e.log2_cost);
    else
      std::snprintf(buf, sizeof buf, "  %-18s  undetermined (%s)\n",
                    attack_name(AttackId(i)), e.note.c_str());
    os << buf;
  }
  const auto mn = report.min_log2();
  if (mn)
    std::snprintf(buf, sizeof buf, "  minimum             %10.2f\n", *mn);
  else
    std::snprintf(buf, sizeof buf, "  minimum             undetermined\n");
  os << buf;
  return os.str();
}

std::string format_attack_records(const AttackReport& report) {
  std::ostringstream os;
  char buf[160];
  for (unsigned i = 0; i < kAttackCount; ++i) {
    const auto& e = report.entries[i];
    std::snprintf(buf, sizeof buf, "attack=%s log2=%.6f determined=%d\n",
                  attack_name(AttackId(i)), e.determined ? e.log2_cost : 0.0,
                  e.determined ? 1 : 0);
    os << buf;
  }
  return os.str();
}

std::string format_cost_table(unsigned ell, uint32_t q, unsigned n, unsigned m) {
  const CostReport half = comm_cost(ell, q, n, m, Scheme::half);
  const CostReport thirds = comm_cost(ell, q, n, m, Scheme::two_thirds);
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "communication costs for %u-bit security (q=%u n=%u m=%u)\n",
                ell, q, n, m);
  os << buf;
  os << "  scheme      rounds  total\n";
  std::snprintf(buf, sizeof buf, "  half        %6.0f  %llu B\n", std::ceil(half.rounds),
                (unsigned long long)half.total_bytes);
  os << buf;
  std::snprintf(buf, sizeof buf, "  two-thirds  %6.0f  %llu B\n",
                std::ceil(thirds.rounds), (unsigned long long)thirds.total_bytes);
  os << buf;
  return os.str();
}

}  // namespace minrank
