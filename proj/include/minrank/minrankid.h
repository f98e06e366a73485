/*
 * C API of the MinRank identification library. The core is C++; this surface
 * is the stable boundary: opaque handles, integer status codes, caller-owned
 * strings released with mrid_string_free().
 *
 * Status codes are MRID_OK (0) or a negative mrid_status. Boolean results
 * (accept/reject, solution checks) come back through out-parameters so that
 * a reject is distinguishable from a failure.
 */
#ifndef MINRANK_MINRANKID_H
#define MINRANK_MINRANKID_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t mrid_status;

enum {
  MRID_OK = 0,
  MRID_ERR_ARGUMENT = -1,   /* bad arguments / parameters */
  MRID_ERR_IO = -2,         /* file or socket failure */
  MRID_ERR_FORMAT = -3,     /* malformed key / record / frame bytes */
  MRID_ERR_PROTOCOL = -4,   /* session-level failure (mismatch, timeout, order) */
  MRID_ERR_CRYPTO = -5,     /* extraction / verification precondition failed */
  MRID_ERR_INTERNAL = -6
};

const char* mrid_version(void);

/* Thread-local message for the most recent failing call. */
const char* mrid_last_error(void);

void mrid_string_free(char* s);

/* ---- keys ------------------------------------------------------------- */

typedef struct mrid_keypair mrid_keypair;
typedef struct mrid_public_key mrid_public_key;

/* seed: optional null-terminated string; a given seed makes the call
 * deterministic. NULL draws from the OS. */
mrid_status mrid_keygen(uint16_t q, uint16_t n, uint16_t m, uint16_t r,
                        const char* seed, mrid_keypair** out);
void mrid_keypair_free(mrid_keypair* kp);
mrid_status mrid_keypair_save(const mrid_keypair* kp, const char* pk_path,
                              const char* sk_path);
mrid_status mrid_keypair_load(const char* pk_path, const char* sk_path,
                              mrid_keypair** out);

mrid_status mrid_public_key_load(const char* pk_path, mrid_public_key** out);
void mrid_public_key_free(mrid_public_key* pk);

/* ---- sessions ---------------------------------------------------------- */

/* In-process prover/verifier session. dump_dir, when non-NULL, receives
 * pk.bin plus response_c0..c3.bin: four answers to one commitment, the
 * extractor's inputs. *accepted is 1 on full acceptance. */
mrid_status mrid_run_local(const mrid_keypair* kp, uint32_t rounds, const char* seed,
                           const char* dump_dir, int* accepted);

/* TCP listener for the prover side; created separately so the bound port
 * (ephemeral when the address ends in :0) is known before serving blocks. */
typedef struct mrid_listener mrid_listener;
mrid_status mrid_listener_create(const char* address, mrid_listener** out,
                                 uint16_t* bound_port);
void mrid_listener_free(mrid_listener* l);

/* Serves a single session: accepts one connection on the listener, or speaks
 * on stdio when listener is NULL. The verifier dictates round count and seed
 * length through its session header. */
mrid_status mrid_prove(const mrid_keypair* kp, mrid_listener* listener,
                       uint32_t timeout_ms, const char* seed,
                       int* verifier_accepted);

/* Connects and runs `rounds` rounds; writes the transcript file when
 * transcript_path is non-NULL. */
mrid_status mrid_verify(const mrid_public_key* pk, const char* address,
                        uint32_t rounds, uint32_t timeout_ms, const char* seed,
                        const char* transcript_path, int* accepted);

/* Replays a transcript file against the key; *verdicts_reproduced is 1 when
 * every recorded verdict matches re-verification. */
mrid_status mrid_transcript_replay(const mrid_public_key* pk, const char* path,
                                   int* verdicts_reproduced, int* accepted);

/* ---- extractor / simulator / cheating prover --------------------------- */

/* response_paths: >= 3 response records sharing one commitment. On success
 * *alpha_hex gets the recovered coefficients as a hex string of packed
 * little-endian elements and *solution_ok is 1 iff the rank condition holds. */
mrid_status mrid_extract(const mrid_public_key* pk, const char* const* response_paths,
                         size_t count, char** alpha_hex, int* solution_ok);

/* Simulates one accepting transcript for a known challenge; writes the
 * record to out_path when non-NULL. *verified reports verify_round. */
mrid_status mrid_simulate(const mrid_public_key* pk, uint32_t challenge,
                          const char* seed, const char* out_path, int* verified);

/* Runs the two-challenge cheating prover. Per commitment, all four
 * challenges are enumerated; per_commitment_ok confirms exactly the prepared
 * two are accepted. Over `sessions` simulated sessions of `rounds` uniform
 * challenges each, *sessions_accepted counts full acceptances. */
mrid_status mrid_cheat(const mrid_public_key* pk, uint32_t challenge_a,
                       uint32_t challenge_b, uint32_t rounds, uint64_t sessions,
                       const char* seed, int* per_commitment_ok,
                       uint64_t* sessions_accepted);

/* ---- estimator ---------------------------------------------------------- */

enum {
  MRID_ATTACK_EXHAUSTIVE_DIRECT = 0,
  MRID_ATTACK_EXHAUSTIVE_RANK = 1,
  MRID_ATTACK_KERNEL = 2,
  MRID_ATTACK_BIG_M = 3,
  MRID_ATTACK_SYNDROME = 4,
  MRID_ATTACK_KS_FLP = 5,
  MRID_ATTACK_KS_VERBEL = 6,
  MRID_ATTACK_KS_NAKAMURA = 7,
  MRID_ATTACK_MINORS = 8,
  MRID_ATTACK_SUPPORT_MINORS = 9,
  MRID_ATTACK_COUNT = 10
};

const char* mrid_attack_name(int attack_id);

typedef struct {
  double log2_cost[MRID_ATTACK_COUNT];
  int determined[MRID_ATTACK_COUNT];
  double min_log2;      /* over determined entries */
  int min_determined;   /* 0 when every entry is undetermined */
} mrid_attack_report;

mrid_status mrid_estimate_attacks(uint16_t q, uint16_t n, uint16_t m, uint16_t r,
                                  double omega, uint32_t mgd_degree_cap,
                                  uint32_t spp_cap, mrid_attack_report* out,
                                  char** table_text);

typedef struct {
  double rounds;        /* real-valued round count */
  uint32_t rounds_up;   /* presented round count */
  uint64_t total_bytes;
} mrid_cost_line;

mrid_status mrid_estimate_costs(uint32_t bits, uint16_t q, uint16_t n, uint16_t m,
                                mrid_cost_line* half, mrid_cost_line* two_thirds,
                                char** table_text);

typedef struct {
  uint16_t n, m, r;
  double min_log2;
  uint64_t bytes_half;
} mrid_param_candidate;

mrid_status mrid_param_search(uint32_t bits, uint16_t q, double omega,
                              uint16_t n_min, uint16_t n_max,
                              uint32_t mgd_degree_cap, uint32_t spp_cap,
                              mrid_param_candidate* out, size_t capacity,
                              size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINRANK_MINRANKID_H */
