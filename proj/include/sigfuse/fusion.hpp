#pragma once

#include <cstdint>
#include <vector>

#include "sigfuse/record.hpp"

namespace sigfuse {

struct FuseStats {
  std::size_t ss7_fragments = 0;
  std::size_t diameter_fragments = 0;
  std::size_t gtp_fragments = 0;
  std::size_t fused_candidates = 0;
  std::size_t fused_kept = 0;
  std::size_t fused_two_protocols = 0;
  std::size_t fused_three_protocols = 0;

  json to_json() const;
};

// Groups fragments by (imsi, minute). One record per key with >= 1
// fragment; per-protocol lists sorted by event time with input order
// breaking ties; message contents untouched (diameter avps get the
// {req:{avps}} wrap). Output ordered by (minute, imsi).
std::vector<FusedRecord> fuse(const std::vector<Fragment>& ss7,
                              const std::vector<Fragment>& diameter,
                              const std::vector<Fragment>& gtp,
                              FuseStats* stats = nullptr);

// Keeps records with >= 2 non-empty protocol lists and counts both
// populations.
std::vector<FusedRecord> filter_multiprotocol(std::vector<FusedRecord> records,
                                              FuseStats* stats = nullptr);

// Wraps a raw diameter fragment payload as stored inside fused records:
// the avps move under "req", everything else stays at the entry top level.
json wrap_diameter_entry(const json& payload);

}  // namespace sigfuse
