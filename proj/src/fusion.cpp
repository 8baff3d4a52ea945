#include "sigfuse/fusion.hpp"

#include <algorithm>
#include <map>

#include "sigfuse/timeutil.hpp"

namespace sigfuse {

json FuseStats::to_json() const {
  return json{{"ss7_fragments", ss7_fragments},
              {"diameter_fragments", diameter_fragments},
              {"gtp_fragments", gtp_fragments},
              {"fused_candidates", fused_candidates},
              {"fused_kept", fused_kept},
              {"fused_two_protocols", fused_two_protocols},
              {"fused_three_protocols", fused_three_protocols}};
}

json wrap_diameter_entry(const json& payload) {
  json entry = payload;
  if (auto it = entry.find("avps"); it != entry.end()) {
    json avps = std::move(*it);
    entry.erase(it);
    entry["req"] = json{{"avps", std::move(avps)}};
  }
  return entry;
}

std::vector<FusedRecord> fuse(const std::vector<Fragment>& ss7,
                              const std::vector<Fragment>& diameter,
                              const std::vector<Fragment>& gtp,
                              FuseStats* stats) {
  struct Entry {
    std::int64_t ts;
    std::size_t order;
    json payload;
  };
  struct Bucket {
    std::vector<Entry> ss7, diameter, gtp;
  };
  // std::map keeps the final (minute, imsi) ordering deterministic.
  std::map<std::pair<std::int64_t, std::string>, Bucket> buckets;

  auto add = [&](const std::vector<Fragment>& frags, Protocol proto) {
    std::size_t order = 0;
    for (const auto& f : frags) {
      auto& bucket = buckets[{minute_bucket(f.ts_epoch), f.imsi}];
      json payload =
          proto == Protocol::diameter ? wrap_diameter_entry(f.payload) : f.payload;
      Entry e{f.ts_epoch, order++, std::move(payload)};
      switch (proto) {
        case Protocol::ss7: bucket.ss7.push_back(std::move(e)); break;
        case Protocol::diameter: bucket.diameter.push_back(std::move(e)); break;
        case Protocol::gtp: bucket.gtp.push_back(std::move(e)); break;
      }
    }
  };
  add(ss7, Protocol::ss7);
  add(diameter, Protocol::diameter);
  add(gtp, Protocol::gtp);

  if (stats) {
    stats->ss7_fragments = ss7.size();
    stats->diameter_fragments = diameter.size();
    stats->gtp_fragments = gtp.size();
    stats->fused_candidates = buckets.size();
  }

  auto drain = [](std::vector<Entry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.ts != b.ts ? a.ts < b.ts : a.order < b.order;
    });
    json list = json::array();
    for (auto& e : entries) list.push_back(std::move(e.payload));
    return list;
  };

  std::vector<FusedRecord> records;
  records.reserve(buckets.size());
  for (auto& [key, bucket] : buckets) {
    FusedRecord r;
    r.minute_epoch = key.first;
    r.imsi = key.second;
    r.ss7 = drain(bucket.ss7);
    r.diameter = drain(bucket.diameter);
    r.gtp = drain(bucket.gtp);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<FusedRecord> filter_multiprotocol(std::vector<FusedRecord> records,
                                              FuseStats* stats) {
  std::vector<FusedRecord> kept;
  kept.reserve(records.size());
  std::size_t two = 0, three = 0;
  for (auto& r : records) {
    int protocols = r.protocol_count();
    if (protocols < 2) continue;
    (protocols == 2 ? two : three) += 1;
    kept.push_back(std::move(r));
  }
  if (stats) {
    stats->fused_kept = kept.size();
    stats->fused_two_protocols = two;
    stats->fused_three_protocols = three;
  }
  return kept;
}

}  // namespace sigfuse
