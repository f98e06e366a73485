#ifndef MINRANK_TESTS_STATS_HPP
#define MINRANK_TESTS_STATS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

// Small statistics kit for the randomized tests: chi-square statistics and
// the regularized incomplete gamma needed for their p-values.

namespace teststats {

// Regularized upper incomplete gamma Q(a, x) via series / continued fraction
// (Lentz). Good to ~1e-12 for the ranges used here.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, Q = 1 - P
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // continued fraction for Q directly
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// Survival function of the chi-square distribution with k dof.
inline double chi2_sf(double x, double k) { return gamma_q(k / 2.0, x / 2.0); }

// One-sample statistic against expected counts.
inline double chi2_stat(std::span<const double> observed,
                        std::span<const double> expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi2_stat length mismatch");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("expected count <= 0");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

// Two-sample homogeneity test; returns the p-value. Cells where both samples
// are empty are dropped from the dof count.
inline double chi2_two_sample_pvalue(std::span<const size_t> a,
                                     std::span<const size_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("bin count mismatch");
  double na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    na += double(a[i]);
    nb += double(b[i]);
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("empty sample");
  double stat = 0.0;
  size_t cells = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double total = double(a[i]) + double(b[i]);
    if (total == 0) continue;
    ++cells;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    const double da = double(a[i]) - ea;
    const double db = double(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  if (cells < 2) throw std::invalid_argument("need at least two occupied cells");
  return chi2_sf(stat, double(cells - 1));
}

}  // namespace teststats

#endif
