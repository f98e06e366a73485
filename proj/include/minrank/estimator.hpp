#ifndef MINRANK_ESTIMATOR_HPP
#define MINRANK_ESTIMATOR_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minrank {

// Attack-cost model inputs. omega is the linear-algebra exponent, 2 < omega <= 3.
struct EstimatorParams {
  uint32_t q;
  unsigned n;
  unsigned m;
  unsigned r;
  double omega = 3.0;

  void validate() const;
};

enum class AttackId : unsigned {
  exhaustive_direct = 0,
  exhaustive_rank,
  kernel,
  big_m,
  syndrome,
  ks_flp,
  ks_verbel,
  ks_nakamura,
  minors,
  support_minors,
};
inline constexpr unsigned kAttackCount = 10;
const char* attack_name(AttackId id);

struct AttackEstimate {
  double log2_cost = 0.0;
  bool determined = false;
  std::string note;  // set when undetermined
};

struct AttackReport {
  EstimatorParams params;
  std::array<AttackEstimate, kAttackCount> entries;

  const AttackEstimate& operator[](AttackId id) const {
    return entries[unsigned(id)];
  }
  // Least log2 cost over the determined entries.
  std::optional<double> min_log2() const;
};

// Truncation bounds for the solving-degree searches; scans that exhaust a cap
// report "undetermined" rather than a number.
struct EstimatorCaps {
  unsigned mgd_degree_cap = 40;
  unsigned spp_cap = 64;
};

// P(n, ell): probability that a uniform n x n matrix over F_q has rank ell.
double prob_rank(unsigned n, unsigned ell, uint32_t q);

// Individual estimates, as log2 values.
std::pair<double, double> exhaustive_cx(const EstimatorParams& p);  // direct, rank
double kernel_cx(const EstimatorParams& p);
double bigm_cx(const EstimatorParams& p);
double syndrome_cx(const EstimatorParams& p);  // up to the O(n^2 r) constant

// D_KS = min{1<=d<=r : C(r,d) n > C(r,d+1) m} + 2; nullopt when no d works.
std::optional<unsigned> d_ks(const EstimatorParams& p);
double ks_flp_cx(const EstimatorParams& p);
AttackEstimate ks_verbel_cx(const EstimatorParams& p);

// Least sum e_1+..+e_c over monomials with negative coefficient in
//   prod_i (1 - t0 ti)^n / ((1 - t0)^m (1 - t1)^r ... (1 - tc)^r),
// searching degrees up to degree_cap in every variable.
std::optional<unsigned> d_mgd(const EstimatorParams& p, unsigned c, unsigned degree_cap);
AttackEstimate ks_nakamura_cx(const EstimatorParams& p, unsigned degree_cap);

double minors_cx(const EstimatorParams& p);
std::optional<unsigned> d_spp(const EstimatorParams& p, unsigned cap);
AttackEstimate support_minors_cx(const EstimatorParams& p, unsigned cap);

AttackReport attack_report(const EstimatorParams& p, const EstimatorCaps& caps = {});

enum class Scheme { half, two_thirds };

struct CostReport {
  Scheme scheme;
  double rounds;        // real-valued; presented rounded up
  double bits;
  uint64_t total_bytes; // floor(bits / 8), exact integer path for q = 2^k
};

double rounds_needed(unsigned ell, Scheme scheme);
CostReport comm_cost(unsigned ell, uint32_t q, unsigned n, unsigned m, Scheme scheme);

struct ParamCandidate {
  EstimatorParams params;
  AttackReport report;
  uint64_t bytes_half;
};

struct SearchOptions {
  unsigned n_min = 8;
  unsigned n_max = 48;
  size_t max_results = 16;
};

// Scans (n, m, r) with r near n/2, keeping candidates whose weakest attack
// still costs at least 2^target_bits; ordered by half-scheme bandwidth.
std::vector<ParamCandidate> param_search(unsigned target_bits, uint32_t q, double omega,
                                         const EstimatorCaps& caps = {},
                                         const SearchOptions& opts = {});

std::string format_attack_table(const AttackReport& report);
std::string format_attack_records(const AttackReport& report);
std::string format_cost_table(unsigned ell, uint32_t q, unsigned n, unsigned m);

}  // namespace minrank

#endif
