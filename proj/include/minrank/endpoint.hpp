#ifndef MINRANK_ENDPOINT_HPP
#define MINRANK_ENDPOINT_HPP

#include "minrank/transport.hpp"
#include "minrank/wire.hpp"

namespace minrank {

// Frame flow per session: verifier opens with 0x05, then each round runs
// 0x01 commit -> 0x02 challenge -> 0x03 response -> 0x04 verdict. A rejected
// round aborts the session. Either side raises 0x06 on protocol failure.
struct EndpointOptions {
  int timeout_ms = 30000;
  ProtocolOptions protocol;
};

struct ProverOutcome {
  size_t rounds = 0;        // rounds the verifier requested
  size_t rounds_run = 0;
  bool accepted = false;    // all verdicts accepted
};

// Serves one session; the verifier's session header dictates round count and
// seed length. Throws minrank::Error on parameter mismatch, frame violations,
// timeouts, and transport failures.
ProverOutcome prover_endpoint(const KeyPair& kp, Transport& transport,
                              RandomSource& rng, const EndpointOptions& opts = {});

// Drives one session of `rounds` rounds and records the transcript.
Transcript verifier_endpoint(const PublicKey& pk, Transport& transport, size_t rounds,
                             RandomSource& rng, const EndpointOptions& opts = {});

// Shared frame helpers (also used by the CLI and tests).
WireFrame read_frame(Transport& t, int timeout_ms);
void write_frame(Transport& t, const WireFrame& f, int timeout_ms);

}  // namespace minrank

#endif
