#pragma once

#include <map>
#include <string>
#include <vector>

#include "sigfuse/record.hpp"

namespace sigfuse {

// The seven cross-protocol expectations a healthy corpus satisfies.
namespace expectation {
inline constexpr const char* kIdentityCoherence = "identity_coherence";
inline constexpr const char* kPlmnCompatibility = "plmn_compatibility";
inline constexpr const char* kSessionTunnelUniqueness = "session_tunnel_uniqueness";
inline constexpr const char* kAddressAllocation = "address_allocation";
inline constexpr const char* kRoutingPlausibility = "routing_plausibility";
inline constexpr const char* kSemanticConsistency = "semantic_consistency";
inline constexpr const char* kAccessProfile = "access_profile";
}  // namespace expectation

struct ConsistencyFinding {
  std::string expectation;
  std::string detail;
  std::string imsi;
  std::string minute;  // empty for corpus-level findings
};

struct ConsistencyReport {
  std::vector<ConsistencyFinding> findings;
  std::map<std::string, std::size_t> counts;

  bool clean() const { return findings.empty(); }
  json to_json() const;
};

// Re-verifies the cross-protocol expectations over a set of fused
// records: subscriber identity coherent across protocols, visited-PLMN
// indicators agreeing per subscriber-minute, session/tunnel/PDN
// identifiers not colliding across subscribers, stable global-title
// attributes and point codes, application contexts matching the invoked
// operations, and GTP APNs drawn from the subscribed profile.
ConsistencyReport check_consistency(const std::vector<FusedRecord>& records);

}  // namespace sigfuse
