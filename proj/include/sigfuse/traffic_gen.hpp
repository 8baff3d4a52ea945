#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigfuse/record.hpp"

namespace sigfuse {

struct GeneratorConfig {
  std::int64_t n_subscribers = 0;
  std::int64_t minutes = 0;
  double activity_rate = 0.35;  // per protocol per minute
  std::uint64_t rng_seed = 0;
  std::int64_t target_mean_tokens = 600;  // soft knob for record size
};

struct SubscriberProfile {
  std::string imsi;
  int home_plmn = 0;
  int serving_plmn = 0;
  std::string serving_origin_host;
  std::vector<std::string> subscribed_apns;
  std::vector<int> gt_pool;  // serving-node indices
  int hlr_node = 0;
  std::string pdn_ipv4;
  std::string session_id;
  std::int64_t teid = 0;
  std::int64_t teid_cp = 0;
};

struct GeneratedCorpus {
  std::vector<Fragment> ss7;
  std::vector<Fragment> diameter;
  std::vector<Fragment> gtp;
  json stats;
};

// Emits an internally consistent background corpus: one IMSI per
// subscriber across protocols, agreeing PLMN indicators per
// subscriber-minute, unique session/tunnel/PDN identifiers, GTP APNs
// drawn from the subscribed profile. Deterministic under rng_seed.
GeneratedCorpus generate(const GeneratorConfig& config);

}  // namespace sigfuse
