#ifndef MINRANK_WIRE_HPP
#define MINRANK_WIRE_HPP

#include "minrank/protocol.hpp"
#include "minrank/serialize.hpp"

namespace minrank {

// Frame layout: magic "MRID" | version 0x01 | type | length u32 LE | payload.
enum class FrameType : uint8_t {
  commit = 0x01,
  challenge = 0x02,
  response = 0x03,
  verdict = 0x04,
  session_header = 0x05,
  error = 0x06,
};

struct WireFrame {
  FrameType type;
  std::vector<uint8_t> payload;
};

inline constexpr size_t kFrameHeaderSize = 10;  // magic 4 + version + type + length

std::vector<uint8_t> encode_frame(const WireFrame& f);
// Header-then-payload split used by the streaming endpoints.
std::pair<FrameType, uint32_t> parse_frame_header(std::span<const uint8_t> header);

struct SessionHeader {
  Params params;
  uint32_t rounds;
  uint8_t hash_id;
  uint8_t seed_bytes;

  bool operator==(const SessionHeader&) const = default;
};

std::vector<uint8_t> session_header_payload(const SessionHeader& h);
SessionHeader parse_session_header(std::span<const uint8_t> payload);

std::vector<uint8_t> commitment_payload(const CommitmentBundle& y);
CommitmentBundle parse_commitment(std::span<const uint8_t> payload);

std::vector<uint8_t> challenge_payload(Challenge c);
Challenge parse_challenge(std::span<const uint8_t> payload);

// Response payload: challenge tag byte, then the variant body. Matrices and
// coefficient vectors use the canonical packing; seeds are raw seed_bytes.
std::vector<uint8_t> response_payload(const Response& z);
Response parse_response(std::span<const uint8_t> payload, const Params& params,
                        size_t seed_bytes);
// Body size excluding the tag byte; matches the seed-encoding size model up
// to row padding.
size_t response_body_size(const Params& params, size_t seed_bytes, Challenge c);

std::vector<uint8_t> verdict_payload(const Verdict& v);
Verdict parse_verdict(std::span<const uint8_t> payload);

// Self-contained (Y, c, Z) record: magic "MRRS" | version | hash id |
// q,n,m,r u16 | seed_bytes | Y | c | z-length u32 | z payload.
struct ResponseRecord {
  Params params;
  uint8_t hash_id;
  uint8_t seed_bytes;
  CommitmentBundle y;
  Challenge c;
  Response z;
};

std::vector<uint8_t> serialize_response_record(const ResponseRecord& rec);
ResponseRecord parse_response_record(std::span<const uint8_t> data);

// Transcript file: magic "MRTS" | version | hash id | q,n,m,r u16 |
// rounds u32 | seed_bytes | started u64 | finished u64 | per-round records
// (Y | c | z-length u32 | z | accepted byte | reason byte).
std::vector<uint8_t> serialize_transcript(const Transcript& t);
Transcript parse_transcript(std::span<const uint8_t> data);

}  // namespace minrank

#endif
