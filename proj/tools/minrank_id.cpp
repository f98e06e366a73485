// Command-line front end. Links the C API only (minrank/minrankid.h); exit
// codes: 0 accept/success, 1 reject, 2 usage error, 3 protocol/runtime error.

#include <CLI11.hpp>

#include <cmath>
#include <csignal>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "minrank/minrankid.h"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitProtocol = 3;

int fail(mrid_status st) {
  std::fprintf(stderr, "error: %s\n", mrid_last_error());
  switch (st) {
    case MRID_ERR_ARGUMENT: return kExitUsage;
    default: return kExitProtocol;
  }
}

const char* seed_or_null(const std::string& seed) {
  return seed.empty() ? nullptr : seed.c_str();
}

struct StringHolder {
  char* s = nullptr;
  ~StringHolder() { mrid_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGPIPE, SIG_IGN);  // dead peers surface as transport errors

  CLI::App app{"MinRank three-pass zero-knowledge identification"};
  app.require_subcommand(1);

  uint16_t q = 2, n = 26, m = 209, r = 13;
  std::string seed;
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--q", q, "field size (prime)")->capture_default_str();
    cmd->add_option("--n", n, "matrix size")->capture_default_str();
    cmd->add_option("--m", m, "matrix count")->capture_default_str();
    cmd->add_option("--r", r, "target rank")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "deterministic seed string");
  };

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  std::string out_pk = "pk.bin", out_sk = "sk.bin";
  add_params(keygen);
  add_seed(keygen);
  keygen->add_option("--out-pk", out_pk, "public key file")->capture_default_str();
  keygen->add_option("--out-sk", out_sk, "secret key file")->capture_default_str();

  // prove
  auto* prove = app.add_subcommand("prove", "serve one identification session");
  std::string sk_path, pk_path, listen_addr = "127.0.0.1:0";
  uint32_t timeout_ms = 30000;
  prove->add_option("--sk", sk_path, "secret key file")->required();
  prove->add_option("--pk", pk_path, "public key file")->required();
  prove->add_option("--listen", listen_addr, "host:port (port 0 = ephemeral) or '-' for stdio")
      ->capture_default_str();
  prove->add_option("--timeout-ms", timeout_ms, "per-read deadline")->capture_default_str();
  add_seed(prove);

  // verify
  auto* verify = app.add_subcommand("verify", "run a session against a prover");
  std::string connect_addr, transcript_path;
  uint32_t rounds = 128;
  verify->add_option("--pk", pk_path, "public key file")->required();
  verify->add_option("--connect", connect_addr, "host:port or '-' for stdio")->required();
  verify->add_option("--rounds", rounds, "round count")->capture_default_str();
  verify->add_option("--transcript", transcript_path, "transcript output file");
  verify->add_option("--timeout-ms", timeout_ms, "per-read deadline")->capture_default_str();
  add_seed(verify);

  // run-local
  auto* run_local = app.add_subcommand("run-local", "in-process prover/verifier session");
  std::string dump_dir;
  add_params(run_local);
  add_seed(run_local);
  run_local->add_option("--rounds", rounds, "round count")->capture_default_str();
  run_local->add_option("--dump-responses", dump_dir,
                        "write response_c0..c3.bin for the first commitment");

  // extract
  auto* extract = app.add_subcommand("extract", "recover the secret from responses");
  std::vector<std::string> response_files;
  extract->add_option("--pk", pk_path, "public key file")->required();
  extract->add_option("--transcript-set", response_files,
                      "three or more response record files for one commitment")
      ->required()
      ->expected(3, 4);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "zero-knowledge transcript simulator");
  uint32_t challenge = 0;
  std::string sim_out;
  simulate->add_option("--pk", pk_path, "public key file")->required();
  simulate->add_option("--challenge", challenge, "challenge in {0,1,2,3}")->required();
  simulate->add_option("--out", sim_out, "write the simulated response record");
  add_seed(simulate);

  // cheat
  auto* cheat = app.add_subcommand("cheat", "two-of-four cheating prover trials");
  std::pair<uint32_t, uint32_t> pair{0, 3};
  uint64_t trials = 10000;
  cheat->add_option("--pk", pk_path, "public key file")->required();
  cheat->add_option("--pair", pair, "two prepared challenges, e.g. --pair 0 3")
      ->delimiter(',');
  cheat->add_option("--rounds", rounds, "rounds per session")->capture_default_str();
  cheat->add_option("--trials", trials, "session count")->capture_default_str();
  add_seed(cheat);

  // estimate-attacks
  auto* attacks = app.add_subcommand("estimate-attacks", "attack cost estimates");
  double omega = 3.0;
  uint32_t mgd_cap = 0, spp_cap = 0;
  bool records = false;
  add_params(attacks);
  attacks->add_option("--omega", omega, "linear-algebra exponent")->capture_default_str();
  attacks->add_option("--mgd-cap", mgd_cap, "degree cap for the multi-graded series");
  attacks->add_option("--spp-cap", spp_cap, "cap for the support-minors degree scan");
  attacks->add_flag("--records", records, "line-delimited records instead of a table");

  // estimate-costs
  auto* costs = app.add_subcommand("estimate-costs", "round and bandwidth model");
  uint32_t bits = 128;
  costs->add_option("--bits", bits, "security level")->capture_default_str();
  costs->add_option("--q", q, "field size")->capture_default_str();
  costs->add_option("--n", n, "matrix size")->capture_default_str();
  costs->add_option("--m", m, "matrix count")->capture_default_str();

  // param-search
  auto* search = app.add_subcommand("param-search", "search parameters for a target level");
  uint16_t n_min = 0, n_max = 0;
  uint32_t search_mgd_cap = 12, search_spp_cap = 48;
  search->add_option("--bits", bits, "security level")->capture_default_str();
  search->add_option("--q", q, "field size")->capture_default_str();
  search->add_option("--omega", omega, "linear-algebra exponent")->capture_default_str();
  search->add_option("--n-min", n_min, "smallest n to scan");
  search->add_option("--n-max", n_max, "largest n to scan");
  search->add_option("--mgd-cap", search_mgd_cap, "degree cap for the multi-graded series")
      ->capture_default_str();
  search->add_option("--spp-cap", search_spp_cap, "cap for the support-minors degree scan")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // --help is a success
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (keygen->parsed()) {
    mrid_keypair* kp = nullptr;
    mrid_status st = mrid_keygen(q, n, m, r, seed_or_null(seed), &kp);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_keypair, void (*)(mrid_keypair*)> holder(kp, mrid_keypair_free);
    st = mrid_keypair_save(kp, out_pk.c_str(), out_sk.c_str());
    if (st != MRID_OK) return fail(st);
    std::printf("wrote %s and %s (q=%u n=%u m=%u r=%u)\n", out_pk.c_str(),
                out_sk.c_str(), q, n, m, r);
    return kExitAccept;
  }

  if (prove->parsed()) {
    mrid_keypair* kp = nullptr;
    mrid_status st = mrid_keypair_load(pk_path.c_str(), sk_path.c_str(), &kp);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_keypair, void (*)(mrid_keypair*)> holder(kp, mrid_keypair_free);
    mrid_listener* listener = nullptr;
    if (listen_addr != "-") {
      uint16_t port = 0;
      st = mrid_listener_create(listen_addr.c_str(), &listener, &port);
      if (st != MRID_OK) return fail(st);
      std::printf("listening on port %u\n", port);
      std::fflush(stdout);
    }
    int accepted = 0;
    st = mrid_prove(kp, listener, timeout_ms, seed_or_null(seed), &accepted);
    mrid_listener_free(listener);
    if (st != MRID_OK) return fail(st);
    std::fprintf(stderr, "session complete; verifier %s\n",
                 accepted ? "accepted" : "rejected");
    return accepted ? kExitAccept : kExitReject;
  }

  if (verify->parsed()) {
    mrid_public_key* pk = nullptr;
    mrid_status st = mrid_public_key_load(pk_path.c_str(), &pk);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_public_key, void (*)(mrid_public_key*)> holder(
        pk, mrid_public_key_free);
    int accepted = 0;
    st = mrid_verify(pk, connect_addr.c_str(), rounds, timeout_ms,
                     seed_or_null(seed),
                     transcript_path.empty() ? nullptr : transcript_path.c_str(),
                     &accepted);
    if (st != MRID_OK) return fail(st);
    // stdio transport owns stdout, so report on stderr in that mode
    std::fprintf(connect_addr == "-" ? stderr : stdout, "%s after %u rounds\n",
                 accepted ? "accept" : "reject", rounds);
    return accepted ? kExitAccept : kExitReject;
  }

  if (run_local->parsed()) {
    mrid_keypair* kp = nullptr;
    mrid_status st = mrid_keygen(q, n, m, r, seed_or_null(seed), &kp);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_keypair, void (*)(mrid_keypair*)> holder(kp, mrid_keypair_free);
    int accepted = 0;
    st = mrid_run_local(kp, rounds, seed_or_null(seed),
                        dump_dir.empty() ? nullptr : dump_dir.c_str(), &accepted);
    if (st != MRID_OK) return fail(st);
    std::printf("%s after %u rounds (q=%u n=%u m=%u r=%u)\n",
                accepted ? "accept" : "reject", rounds, q, n, m, r);
    return accepted ? kExitAccept : kExitReject;
  }

  if (extract->parsed()) {
    mrid_public_key* pk = nullptr;
    mrid_status st = mrid_public_key_load(pk_path.c_str(), &pk);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_public_key, void (*)(mrid_public_key*)> holder(
        pk, mrid_public_key_free);
    std::vector<const char*> paths;
    for (const auto& p : response_files) paths.push_back(p.c_str());
    StringHolder alpha;
    int ok = 0;
    st = mrid_extract(pk, paths.data(), paths.size(), &alpha.s, &ok);
    if (st != MRID_OK) return fail(st);
    std::printf("alpha=%s solution=%s\n", alpha.s, ok ? "valid" : "invalid");
    return ok ? kExitAccept : kExitReject;
  }

  if (simulate->parsed()) {
    mrid_public_key* pk = nullptr;
    mrid_status st = mrid_public_key_load(pk_path.c_str(), &pk);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_public_key, void (*)(mrid_public_key*)> holder(
        pk, mrid_public_key_free);
    int verified = 0;
    st = mrid_simulate(pk, challenge, seed_or_null(seed),
                       sim_out.empty() ? nullptr : sim_out.c_str(), &verified);
    if (st != MRID_OK) return fail(st);
    std::printf("simulated transcript for challenge %u: %s\n", challenge,
                verified ? "verifies" : "does not verify");
    return verified ? kExitAccept : kExitReject;
  }

  if (cheat->parsed()) {
    mrid_public_key* pk = nullptr;
    mrid_status st = mrid_public_key_load(pk_path.c_str(), &pk);
    if (st != MRID_OK) return fail(st);
    std::unique_ptr<mrid_public_key, void (*)(mrid_public_key*)> holder(
        pk, mrid_public_key_free);
    int per_commit = 0;
    uint64_t won = 0;
    st = mrid_cheat(pk, pair.first, pair.second, rounds, trials,
                    seed_or_null(seed), &per_commit, &won);
    if (st != MRID_OK) return fail(st);
    const double rate = trials ? double(won) / double(trials) : 0.0;
    std::printf("prepared {%u,%u}: per-commitment two-of-four %s\n", pair.first,
                pair.second, per_commit ? "holds" : "VIOLATED");
    std::printf("sessions accepted: %llu / %llu (rate %.3e, bound 2^-%u = %.3e)\n",
                (unsigned long long)won, (unsigned long long)trials, rate, rounds,
                std::pow(2.0, -double(rounds)));
    return per_commit ? kExitAccept : kExitReject;
  }

  if (attacks->parsed()) {
    mrid_attack_report rep;
    StringHolder table;
    mrid_status st = mrid_estimate_attacks(q, n, m, r, omega, mgd_cap, spp_cap,
                                           &rep, &table.s);
    if (st != MRID_OK) return fail(st);
    if (records) {
      for (int i = 0; i < MRID_ATTACK_COUNT; ++i)
        std::printf("attack=%s log2=%.6f determined=%d\n", mrid_attack_name(i),
                    rep.determined[i] ? rep.log2_cost[i] : 0.0, rep.determined[i]);
    } else {
      std::fputs(table.s, stdout);
    }
    return kExitAccept;
  }

  if (costs->parsed()) {
    mrid_cost_line half, thirds;
    StringHolder table;
    mrid_status st = mrid_estimate_costs(bits, q, n, m, &half, &thirds, &table.s);
    if (st != MRID_OK) return fail(st);
    std::fputs(table.s, stdout);
    return kExitAccept;
  }

  if (search->parsed()) {
    std::vector<mrid_param_candidate> found(32);
    size_t count = 0;
    mrid_status st = mrid_param_search(bits, q, omega, n_min, n_max, search_mgd_cap,
                                       search_spp_cap, found.data(), found.size(), &count);
    if (st != MRID_OK) return fail(st);
    std::printf("candidates for %u-bit security (q=%u, omega=%.3g)\n", bits, q, omega);
    std::printf("  %4s %5s %4s %12s %12s\n", "n", "m", "r", "min log2", "bytes(1/2)");
    for (size_t i = 0; i < count; ++i)
      std::printf("  %4u %5u %4u %12.2f %12llu\n", found[i].n, found[i].m, found[i].r,
                  found[i].min_log2, (unsigned long long)found[i].bytes_half);
    if (count == 0) std::printf("  (none in the scanned range)\n");
    return kExitAccept;
  }

  return kExitUsage;
}
