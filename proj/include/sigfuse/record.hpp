#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace sigfuse {

using json = nlohmann::json;

enum class Protocol { ss7, diameter, gtp };

std::string_view protocol_name(Protocol p);
Protocol protocol_from_name(std::string_view name);

// A decoded signalling message as ingested from JSONL. The payload keeps
// the full original object; unknown fields pass through untouched.
struct Fragment {
  Protocol protocol = Protocol::ss7;
  std::string imsi;
  std::int64_t ts_epoch = 0;
  json payload;
};

struct MutationMetadata {
  std::string family;
  std::string partner_hash;
  std::string seed_hash;
  std::string swap_batch_id;
};

enum class OriginKind { background, synthetic };

struct RecordOrigin {
  OriginKind kind = OriginKind::background;
  std::optional<MutationMetadata> mutation;

  json to_json() const;
  static RecordOrigin from_json(const json& j);
};

// All fragments for one (IMSI, UTC minute). Protocol lists hold the raw
// fragment objects; diameter entries are wrapped as {imsi, timestamp,
// req:{avps:...}}. The origin is a side channel and is never part of the
// canonical serialization.
struct FusedRecord {
  std::int64_t minute_epoch = 0;
  std::string imsi;
  json ss7 = json::array();
  json diameter = json::array();
  json gtp = json::array();
  RecordOrigin origin;

  int protocol_count() const {
    return int(!ss7.empty()) + int(!diameter.empty()) + int(!gtp.empty());
  }
};

bool is_valid_imsi(std::string_view s);
bool is_valid_ipv4(std::string_view s);

// Parses and validates one JSONL line. Errors:
//   ParseError      malformed JSON (message carries the byte offset)
//   SchemaError     missing imsi/timestamp or wrong field shape
//   ValidationError declared invariant violated
Fragment parse_fragment(std::string_view line, Protocol protocol);

// Validates a fragment payload. `at_ingestion` additionally enforces the
// invariants that may legitimately diverge after mutation (top-level
// global titles repeated inside operations). Diameter payloads are
// accepted in both raw ({avps:...}) and fused ({req:{avps:...}}) shape.
void validate_fragment_payload(const json& payload, Protocol protocol,
                               bool at_ingestion);

// Checks the fused-record anchors: every fragment's imsi equals the
// record's and every timestamp truncates to minute_epoch. Fragment
// payloads are re-validated with at_ingestion=false.
void validate_fused(const FusedRecord& record);

// Deterministic single-line JSON: minute_ts, imsi, ss7, diameter, gtp in
// that order at the top level; lexicographic keys below.
std::string canonical_text(const FusedRecord& record);

// Lowercase hex SHA-256 of canonical_text.
std::string record_hash(const FusedRecord& record);

std::string sha256_hex(std::string_view bytes);

// Rebuilds a record from one canonical_text line (origin defaults to
// background; callers attach origins from the side channel).
FusedRecord record_from_canonical(std::string_view line);

json origin_entry(const std::string& hash, const RecordOrigin& origin);

}  // namespace sigfuse
