#include "minrank/minrankid.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "minrank/endpoint.hpp"
#include "minrank/estimator.hpp"
#include "minrank/wire.hpp"

using namespace minrank;

extern "C" {
struct mrid_keypair {
  KeyPair kp;
};
struct mrid_public_key {
  PublicKey pk;
};
struct mrid_listener {
  TcpListener listener;
};
}

namespace {

thread_local std::string g_last_error;

mrid_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_params:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::field_mismatch:
    case ErrorCode::non_square:
    case ErrorCode::singular_matrix:
    case ErrorCode::state_consumed:
    case ErrorCode::enumeration_cap_exceeded:
      return MRID_ERR_ARGUMENT;
    case ErrorCode::io_failure:
      return MRID_ERR_IO;
    case ErrorCode::bad_magic:
    case ErrorCode::bad_version:
    case ErrorCode::unknown_hash_algorithm:
    case ErrorCode::unknown_frame_type:
    case ErrorCode::truncated_input:
    case ErrorCode::length_mismatch:
    case ErrorCode::invariant_violation:
      return MRID_ERR_FORMAT;
    case ErrorCode::parameter_mismatch:
    case ErrorCode::frame_order_violation:
    case ErrorCode::timeout:
    case ErrorCode::transport_closed:
    case ErrorCode::remote_abort:
      return MRID_ERR_PROTOCOL;
    case ErrorCode::not_enough_responses:
    case ErrorCode::response_invalid:
    case ErrorCode::binding_violation:
      return MRID_ERR_CRYPTO;
  }
  return MRID_ERR_INTERNAL;
}

template <typename Fn>
mrid_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MRID_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MRID_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MRID_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

// NULL seed: OS entropy. Otherwise the UTF-8 seed string is hashed and
// expanded, making every output a pure function of the string.
RandomSource make_rng(const char* seed) {
  if (seed == nullptr)
    return RandomSource(std::make_unique<SystemEntropyStream>());
  const std::string s(seed);
  Digest d = sha256().digest(
      {reinterpret_cast<const uint8_t*>(s.data()), s.size()});
  Seed root(d.bytes.begin(), d.bytes.end());
  return RandomSource(std::make_unique<ExpandStream>(sha256(), root, "ROOT"));
}

size_t seed_bytes_for_rounds(uint32_t rounds) {
  const size_t b = (size_t(rounds) + 7) / 8;
  return std::min<size_t>(std::max<size_t>(b, 1), 255);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string hex_of(std::span<const uint8_t> data) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(2 * data.size());
  for (uint8_t b : data) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

mrid_cost_line cost_line(const CostReport& c) {
  return {c.rounds, uint32_t(std::ceil(c.rounds)), c.total_bytes};
}

}  // namespace

extern "C" {

const char* mrid_version(void) { return "1.0.0"; }

const char* mrid_last_error(void) { return g_last_error.c_str(); }

void mrid_string_free(char* s) { std::free(s); }

mrid_status mrid_keygen(uint16_t q, uint16_t n, uint16_t m, uint16_t r,
                        const char* seed, mrid_keypair** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    Params params{FieldSpec(q), n, m, r};
    params.validate();
    RandomSource rng = make_rng(seed);
    *out = new mrid_keypair{keygen(params, rng)};
  });
}

void mrid_keypair_free(mrid_keypair* kp) { delete kp; }

mrid_status mrid_keypair_save(const mrid_keypair* kp, const char* pk_path,
                              const char* sk_path) {
  return guarded([&] {
    require(kp && pk_path && sk_path, "NULL argument");
    write_file(pk_path, serialize_public_key(kp->kp.pk, sha256().id()));
    write_file(sk_path,
               serialize_secret_key(kp->kp.pk.params, kp->kp.sk, sha256().id()));
  });
}

mrid_status mrid_keypair_load(const char* pk_path, const char* sk_path,
                              mrid_keypair** out) {
  return guarded([&] {
    require(pk_path && sk_path && out, "NULL argument");
    PublicKey pk = deserialize_public_key(read_file(pk_path));
    auto [params, sk] = deserialize_secret_key(read_file(sk_path));
    if (!(params == pk.params))
      throw Error(ErrorCode::parameter_mismatch, "secret key header differs from pk");
    if (!check_solution(pk, sk.alpha))
      throw Error(ErrorCode::invariant_violation,
                  "secret key does not solve the public instance");
    *out = new mrid_keypair{KeyPair{std::move(pk), std::move(sk)}};
  });
}

mrid_status mrid_public_key_load(const char* pk_path, mrid_public_key** out) {
  return guarded([&] {
    require(pk_path && out, "NULL argument");
    *out = new mrid_public_key{deserialize_public_key(read_file(pk_path))};
  });
}

void mrid_public_key_free(mrid_public_key* pk) { delete pk; }

mrid_status mrid_run_local(const mrid_keypair* kp, uint32_t rounds, const char* seed,
                           const char* dump_dir, int* accepted) {
  return guarded([&] {
    require(kp && accepted, "NULL argument");
    require(rounds >= 1, "need at least one round");
    RandomSource rng = make_rng(seed);
    ProtocolOptions proto;
    proto.seed_bytes = seed_bytes_for_rounds(rounds);

    if (dump_dir != nullptr) {
      std::filesystem::create_directories(dump_dir);
      write_file(std::string(dump_dir) + "/pk.bin",
                 serialize_public_key(kp->kp.pk, proto.hash->id()));
      auto [state, y] = prover_commit(kp->kp, rng, proto);
      for (uint32_t c = 0; c < 4; ++c) {
        Response z = state.clone_for_analysis().respond(Challenge(c));
        ResponseRecord rec{kp->kp.pk.params, proto.hash->id(),
                           uint8_t(proto.seed_bytes), y, Challenge(c), std::move(z)};
        const std::string path =
            std::string(dump_dir) + "/response_c" + std::to_string(c) + ".bin";
        write_file(path, serialize_response_record(rec));
      }
    }

    Transcript t = run_session(kp->kp, rounds, rng, rng, proto);
    *accepted = t.accepted() ? 1 : 0;
  });
}

mrid_status mrid_listener_create(const char* address, mrid_listener** out,
                                 uint16_t* bound_port) {
  return guarded([&] {
    require(address && out, "NULL argument");
    *out = new mrid_listener{TcpListener(address)};
    if (bound_port) *bound_port = (*out)->listener.bound_port();
  });
}

void mrid_listener_free(mrid_listener* l) { delete l; }

mrid_status mrid_prove(const mrid_keypair* kp, mrid_listener* listener,
                       uint32_t timeout_ms, const char* seed,
                       int* verifier_accepted) {
  return guarded([&] {
    require(kp != nullptr, "NULL argument");
    RandomSource rng = make_rng(seed);
    EndpointOptions opts;
    opts.timeout_ms = int(timeout_ms);
    std::unique_ptr<Transport> transport =
        listener ? listener->listener.accept_one(opts.timeout_ms)
                 : stdio_transport();
    ProverOutcome outcome = prover_endpoint(kp->kp, *transport, rng, opts);
    if (verifier_accepted) *verifier_accepted = outcome.accepted ? 1 : 0;
  });
}

mrid_status mrid_verify(const mrid_public_key* pk, const char* address,
                        uint32_t rounds, uint32_t timeout_ms, const char* seed,
                        const char* transcript_path, int* accepted) {
  return guarded([&] {
    require(pk && address && accepted, "NULL argument");
    require(rounds >= 1, "need at least one round");
    RandomSource rng = make_rng(seed);
    EndpointOptions opts;
    opts.timeout_ms = int(timeout_ms);
    opts.protocol.seed_bytes = seed_bytes_for_rounds(rounds);
    std::unique_ptr<Transport> transport = std::string(address) == "-"
                                               ? stdio_transport()
                                               : tcp_connect(address, opts.timeout_ms);
    Transcript t = verifier_endpoint(pk->pk, *transport, rounds, rng, opts);
    if (transcript_path) write_file(transcript_path, serialize_transcript(t));
    *accepted = t.accepted() ? 1 : 0;
  });
}

mrid_status mrid_transcript_replay(const mrid_public_key* pk, const char* path,
                                   int* verdicts_reproduced, int* accepted) {
  return guarded([&] {
    require(pk && path && verdicts_reproduced, "NULL argument");
    Transcript t = parse_transcript(read_file(path));
    *verdicts_reproduced = replay_transcript(pk->pk, t) ? 1 : 0;
    if (accepted) *accepted = t.accepted() ? 1 : 0;
  });
}

mrid_status mrid_extract(const mrid_public_key* pk, const char* const* response_paths,
                         size_t count, char** alpha_hex, int* solution_ok) {
  return guarded([&] {
    require(pk && response_paths && alpha_hex && solution_ok, "NULL argument");
    require(count >= 3, "extraction needs at least three response records");
    std::map<Challenge, Response> responses;
    std::optional<CommitmentBundle> y;
    std::optional<uint8_t> seed_bytes;
    for (size_t i = 0; i < count; ++i) {
      ResponseRecord rec = parse_response_record(read_file(response_paths[i]));
      if (!(rec.params == pk->pk.params))
        throw Error(ErrorCode::parameter_mismatch, "record params differ from pk");
      if (y && !(rec.y == *y))
        throw Error(ErrorCode::invalid_argument,
                    "records come from different commitments");
      if (seed_bytes && rec.seed_bytes != *seed_bytes)
        throw Error(ErrorCode::invalid_argument, "records disagree on seed length");
      y = rec.y;
      seed_bytes = rec.seed_bytes;
      if (!responses.emplace(rec.c, std::move(rec.z)).second)
        throw Error(ErrorCode::invalid_argument,
                    "two records answer the same challenge");
    }
    ProtocolOptions proto;
    proto.seed_bytes = *seed_bytes;
    CoeffVector alpha = extract_secret(pk->pk, *y, responses, proto);
    *solution_ok = check_solution(pk->pk, alpha) ? 1 : 0;
    *alpha_hex = dup_string(hex_of(coeff_bytes(alpha)));
  });
}

mrid_status mrid_simulate(const mrid_public_key* pk, uint32_t challenge,
                          const char* seed, const char* out_path, int* verified) {
  return guarded([&] {
    require(pk && verified, "NULL argument");
    require(challenge < 4, "challenge must be in {0,1,2,3}");
    RandomSource rng = make_rng(seed);
    ProtocolOptions proto;
    auto [y, z] = simulate_transcript(pk->pk, Challenge(challenge), rng, proto);
    Verdict v = verify_round(pk->pk, y, Challenge(challenge), z, proto);
    *verified = v.accepted ? 1 : 0;
    if (out_path) {
      ResponseRecord rec{pk->pk.params, proto.hash->id(), uint8_t(proto.seed_bytes),
                         y, Challenge(challenge), std::move(z)};
      write_file(out_path, serialize_response_record(rec));
    }
  });
}

mrid_status mrid_cheat(const mrid_public_key* pk, uint32_t challenge_a,
                       uint32_t challenge_b, uint32_t rounds, uint64_t sessions,
                       const char* seed, int* per_commitment_ok,
                       uint64_t* sessions_accepted) {
  return guarded([&] {
    require(pk && per_commitment_ok && sessions_accepted, "NULL argument");
    require(challenge_a < 4 && challenge_b < 4, "challenges must be in {0,1,2,3}");
    require(challenge_a != challenge_b, "prepared challenges must differ");
    require(rounds >= 1, "need at least one round");
    RandomSource rng = make_rng(seed);
    ProtocolOptions proto;
    proto.seed_bytes = seed_bytes_for_rounds(rounds);
    const std::pair<Challenge, Challenge> pair{Challenge(challenge_a),
                                               Challenge(challenge_b)};

    // Exactly the two prepared challenges must be answerable.
    *per_commitment_ok = 1;
    for (int trial = 0; trial < 4; ++trial) {
      CheatingProver cheat(pk->pk, pair, rng, proto);
      for (uint32_t c = 0; c < 4; ++c) {
        auto z = cheat.respond(Challenge(c));
        const bool prepared = c == challenge_a || c == challenge_b;
        bool ok;
        if (!z) {
          ok = !prepared;
        } else {
          ok = prepared &&
               verify_round(pk->pk, cheat.commitment(), Challenge(c), *z, proto)
                   .accepted;
        }
        if (!ok) *per_commitment_ok = 0;
      }
    }

    uint64_t won = 0;
    for (uint64_t s = 0; s < sessions; ++s) {
      bool all = true;
      for (uint32_t i = 0; i < rounds; ++i) {
        CheatingProver cheat(pk->pk, pair, rng, proto);
        Challenge c = verifier_challenge(rng);
        auto z = cheat.respond(c);
        if (!z ||
            !verify_round(pk->pk, cheat.commitment(), c, *z, proto).accepted) {
          all = false;
          break;
        }
      }
      if (all) ++won;
    }
    *sessions_accepted = won;
  });
}

const char* mrid_attack_name(int attack_id) {
  if (attack_id < 0 || attack_id >= MRID_ATTACK_COUNT) return "unknown";
  return attack_name(AttackId(attack_id));
}

mrid_status mrid_estimate_attacks(uint16_t q, uint16_t n, uint16_t m, uint16_t r,
                                  double omega, uint32_t mgd_degree_cap,
                                  uint32_t spp_cap, mrid_attack_report* out,
                                  char** table_text) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    EstimatorParams p{q, n, m, r, omega == 0.0 ? 3.0 : omega};
    EstimatorCaps caps;
    if (mgd_degree_cap) caps.mgd_degree_cap = mgd_degree_cap;
    if (spp_cap) caps.spp_cap = spp_cap;
    AttackReport rep = attack_report(p, caps);
    for (unsigned i = 0; i < kAttackCount; ++i) {
      out->log2_cost[i] = rep.entries[i].determined ? rep.entries[i].log2_cost : 0.0;
      out->determined[i] = rep.entries[i].determined ? 1 : 0;
    }
    const auto mn = rep.min_log2();
    out->min_determined = mn ? 1 : 0;
    out->min_log2 = mn ? *mn : 0.0;
    if (table_text) *table_text = dup_string(format_attack_table(rep));
  });
}

mrid_status mrid_estimate_costs(uint32_t bits, uint16_t q, uint16_t n, uint16_t m,
                                mrid_cost_line* half, mrid_cost_line* two_thirds,
                                char** table_text) {
  return guarded([&] {
    require(bits >= 1, "need target bits >= 1");
    if (half) *half = cost_line(comm_cost(bits, q, n, m, Scheme::half));
    if (two_thirds)
      *two_thirds = cost_line(comm_cost(bits, q, n, m, Scheme::two_thirds));
    if (table_text) *table_text = dup_string(format_cost_table(bits, q, n, m));
  });
}

mrid_status mrid_param_search(uint32_t bits, uint16_t q, double omega,
                              uint16_t n_min, uint16_t n_max,
                              uint32_t mgd_degree_cap, uint32_t spp_cap,
                              mrid_param_candidate* out, size_t capacity,
                              size_t* count) {
  return guarded([&] {
    require(out && count, "NULL argument");
    EstimatorCaps caps;
    if (mgd_degree_cap) caps.mgd_degree_cap = mgd_degree_cap;
    if (spp_cap) caps.spp_cap = spp_cap;
    SearchOptions sopts;
    if (n_min) sopts.n_min = n_min;
    if (n_max) sopts.n_max = n_max;
    sopts.max_results = capacity;
    auto found = param_search(bits, q, omega == 0.0 ? 3.0 : omega, caps, sopts);
    *count = std::min(found.size(), capacity);
    for (size_t i = 0; i < *count; ++i) {
      const auto& c = found[i];
      out[i] = {uint16_t(c.params.n), uint16_t(c.params.m), uint16_t(c.params.r),
                c.report.min_log2().value_or(0.0), c.bytes_half};
    }
  });
}

}  // extern "C"
