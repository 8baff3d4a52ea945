#include "sigfuse/traffic_gen.hpp"

#include <algorithm>
#include <cstdio>

#include "sigfuse/errors.hpp"
#include "sigfuse/flatten.hpp"
#include "sigfuse/fusion.hpp"
#include "sigfuse/rng.hpp"
#include "sigfuse/timeutil.hpp"

namespace sigfuse {

namespace {

constexpr std::int64_t kCorpusStartEpoch = 1761634800;  // 2025-10-28T07:00:00Z

struct Plmn {
  const char* mcc;
  const char* mnc;
  const char* country;
  const char* tadig;
  bool uli_has_tac_rac;
  std::string mccmnc() const { return std::string(mcc) + mnc; }
};

// Test-range PLMNs in the style of anonymized interconnect captures.
const std::vector<Plmn>& plmn_pool() {
  static const std::vector<Plmn> pool = {
      {"001", "01", "zz", "TSTZZ", false},
      {"001", "02", "zy", "TSTZY", true},
      {"001", "10", "zx", "TSTZX", false},
      {"999", "99", "zw", "TSTZW", true},
  };
  return pool;
}

struct GtNode {
  std::string gt;
  int pc = 0;
  int plmn = 0;
};

struct NodeRegistry {
  std::vector<GtNode> nodes;                     // global, pc = 1000 + index
  std::vector<std::vector<int>> serving_by_plmn; // MSC/VLR side
  std::vector<std::vector<int>> hlr_by_plmn;
  std::vector<std::vector<std::string>> mme_by_plmn;
};

std::string pad3(const std::string& s) {
  std::string out = s;
  while (out.size() < 3) out.insert(out.begin(), '0');
  return out;
}

NodeRegistry build_registry() {
  NodeRegistry reg;
  const auto& plmns = plmn_pool();
  reg.serving_by_plmn.resize(plmns.size());
  reg.hlr_by_plmn.resize(plmns.size());
  reg.mme_by_plmn.resize(plmns.size());
  auto add_node = [&](int plmn, const std::string& gt) {
    int idx = static_cast<int>(reg.nodes.size());
    reg.nodes.push_back({gt, 1000 + idx, plmn});
    return idx;
  };
  for (std::size_t p = 0; p < plmns.size(); ++p) {
    const std::string mccmnc = plmns[p].mccmnc();
    for (int k = 0; k < 3; ++k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "0012%s%03d", mccmnc.c_str(), 100 + k);
      reg.serving_by_plmn[p].push_back(add_node(static_cast<int>(p), buf));
    }
    for (int k = 0; k < 2; ++k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "0019%s%03d", mccmnc.c_str(), 200 + k);
      reg.hlr_by_plmn[p].push_back(add_node(static_cast<int>(p), buf));
    }
    for (int k = 0; k < 2; ++k) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "mme%02d.epc.mnc%s.mcc%s.3gppnetwork.org",
                    k + 1, pad3(plmns[p].mnc).c_str(), pad3(plmns[p].mcc).c_str());
      reg.mme_by_plmn[p].push_back(buf);
    }
  }
  return reg;
}

const std::vector<std::string>& acn_pool() {
  static const std::vector<std::string> pool = {
      "4.0.0.1.0.1.3", "4.0.0.1.0.14.3", "4.0.0.1.0.19.2", "4.0.0.1.0.20.3"};
  return pool;
}

const std::vector<std::string>& apn_pool() {
  static const std::vector<std::string> pool = {"internet", "ims", "mms",
                                                "iot.example"};
  return pool;
}

// Application context negotiated per node pair; stable across the corpus.
const std::string& acn_for(int opc, int dpc) {
  const auto& pool = acn_pool();
  return pool[static_cast<std::size_t>(opc * 31 + dpc) % pool.size()];
}

// Unique per-subscriber PDN address from documentation/test IPv4 ranges,
// spilling into 198.18.0.0/15 for large corpora.
std::string ipv4_for_index(std::int64_t i) {
  char buf[20];
  if (i < 254) {
    std::snprintf(buf, sizeof(buf), "198.51.100.%lld", static_cast<long long>(i + 1));
  } else if (i < 508) {
    std::snprintf(buf, sizeof(buf), "203.0.113.%lld", static_cast<long long>(i - 254 + 1));
  } else if (i < 762) {
    std::snprintf(buf, sizeof(buf), "192.0.2.%lld", static_cast<long long>(i - 508 + 1));
  } else {
    std::int64_t j = i - 762;
    std::int64_t c = j % 254 + 1;
    std::int64_t j2 = j / 254;
    std::snprintf(buf, sizeof(buf), "198.%lld.%lld.%lld",
                  static_cast<long long>(18 + j2 / 256),
                  static_cast<long long>(j2 % 256), static_cast<long long>(c));
  }
  return buf;
}

struct Cell {
  int lac;
  int ci;
  int tac;
  int rac;
};

Cell cell_for(int plmn, int k) {
  return Cell{1000 + plmn * 100 + k, 2000 + plmn * 100 + k, 3000 + plmn * 100 + k,
              10 + k};
}

json uli_for(const Plmn& plmn, const Cell& cell) {
  json uli{{"mcc", plmn.mcc},
           {"mnc", plmn.mnc},
           {"mccmnc", plmn.mccmnc()},
           {"lac", cell.lac},
           {"ci", cell.ci}};
  if (plmn.uli_has_tac_rac) {
    uli["tac"] = cell.tac;
    uli["rac"] = cell.rac;
  }
  return uli;
}

}  // namespace

GeneratedCorpus generate(const GeneratorConfig& config) {
  if (config.n_subscribers <= 0 || config.minutes <= 0)
    throw ConfigError("generator needs n_subscribers > 0 and minutes > 0");
  if (!(config.activity_rate > 0.0) || config.activity_rate > 1.0)
    throw ConfigError("activity_rate must be in (0, 1]");

  const auto& plmns = plmn_pool();
  const NodeRegistry reg = build_registry();
  Rng rng(config.rng_seed);

  const int max_frags = static_cast<int>(
      std::clamp<std::int64_t>(config.target_mean_tokens / 200, 1, 64));

  std::vector<SubscriberProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(config.n_subscribers));
  for (std::int64_t i = 0; i < config.n_subscribers; ++i) {
    SubscriberProfile p;
    p.home_plmn = static_cast<int>(rng.next_below(plmns.size()));
    p.serving_plmn = static_cast<int>(rng.next_below(plmns.size()));
    char msin[16];
    std::snprintf(msin, sizeof(msin), "%010lld",
                  static_cast<long long>(3100000000ll + i));
    p.imsi = plmns[p.home_plmn].mccmnc() + msin;
    const auto& mmes = reg.mme_by_plmn[p.serving_plmn];
    p.serving_origin_host = mmes[rng.next_below(mmes.size())];
    const auto& apns = apn_pool();
    std::size_t first = rng.next_below(apns.size());
    p.subscribed_apns.push_back(apns[first]);
    if (rng.next_real01() < 0.5) {
      std::size_t second = rng.next_below(apns.size() - 1);
      if (second >= first) ++second;
      p.subscribed_apns.push_back(apns[second]);
    }
    const auto& serving = reg.serving_by_plmn[p.serving_plmn];
    p.gt_pool = serving;
    p.hlr_node = reg.hlr_by_plmn[p.home_plmn][rng.next_below(2)];
    p.pdn_ipv4 = ipv4_for_index(i);
    char sess[160];
    std::snprintf(sess, sizeof(sess), "%s;%lld;%lld",
                  p.serving_origin_host.c_str(),
                  static_cast<long long>(10000 + i),
                  static_cast<long long>(50000 + i));
    p.session_id = sess;
    p.teid = 600000000ll + i;
    p.teid_cp = 300000000ll + i;
    profiles.push_back(std::move(p));
  }

  GeneratedCorpus corpus;
  for (std::int64_t m = 0; m < config.minutes; ++m) {
    const std::int64_t minute_epoch = kCorpusStartEpoch + m * 60;
    for (std::int64_t s = 0; s < config.n_subscribers; ++s) {
      const SubscriberProfile& p = profiles[s];
      const Plmn& serving = plmns[p.serving_plmn];
      const bool on_ss7 = rng.next_real01() < config.activity_rate;
      const bool on_dia = rng.next_real01() < config.activity_rate;
      const bool on_gtp = rng.next_real01() < config.activity_rate;
      const Cell cell = cell_for(p.serving_plmn, static_cast<int>(rng.next_below(6)));

      if (on_ss7) {
        const int n = 1 + static_cast<int>(rng.next_below(max_frags));
        for (int f = 0; f < n; ++f) {
          const GtNode& origin = reg.nodes[p.gt_pool[rng.next_below(p.gt_pool.size())]];
          const GtNode& hlr = reg.nodes[p.hlr_node];
          const Plmn& home = plmns[p.home_plmn];
          const std::string& acn = acn_for(origin.pc, hlr.pc);
          json ops = json::array();
          const int n_ops = 1 + static_cast<int>(rng.next_below(3));
          for (int o = 0; o < n_ops; ++o) {
            ops.push_back(json{{"application_context", acn},
                               {"opc", origin.pc},
                               {"dpc", hlr.pc},
                               {"cggt", origin.gt},
                               {"cdgt", hlr.gt}});
          }
          Fragment frag;
          frag.protocol = Protocol::ss7;
          frag.imsi = p.imsi;
          frag.ts_epoch = minute_epoch + static_cast<std::int64_t>(rng.next_below(60));
          frag.payload = json{{"imsi", p.imsi},
                              {"timestamp", format_timestamp_utc(frag.ts_epoch)},
                              {"application_context", acn},
                              {"cggt", origin.gt},
                              {"cggt_country", serving.country},
                              {"cggt_mccmnc", serving.mccmnc()},
                              {"cggt_tadig", serving.tadig},
                              {"cdgt", hlr.gt},
                              {"cdgt_country", home.country},
                              {"cdgt_mccmnc", home.mccmnc()},
                              {"cdgt_tadig", home.tadig},
                              {"operations", std::move(ops)}};
          corpus.ss7.push_back(std::move(frag));
        }
      }
      if (on_dia) {
        const int n = 1 + static_cast<int>(rng.next_below(max_frags));
        for (int f = 0; f < n; ++f) {
          json apn_configs = json::array();
          for (const auto& apn : p.subscribed_apns)
            apn_configs.push_back(json{{"Service-Selection", apn}});
          Fragment frag;
          frag.protocol = Protocol::diameter;
          frag.imsi = p.imsi;
          frag.ts_epoch = minute_epoch + static_cast<std::int64_t>(rng.next_below(60));
          frag.payload =
              json{{"imsi", p.imsi},
                   {"timestamp", format_timestamp_utc(frag.ts_epoch)},
                   {"avps",
                    json{{"User-Name", p.imsi},
                         {"Session-Id", p.session_id},
                         {"Origin-Host", p.serving_origin_host},
                         {"Visited-PLMN-Id", json{{"mcc", serving.mcc},
                                                  {"mnc", serving.mnc},
                                                  {"mccmnc", serving.mccmnc()}}},
                         {"Subscription-Data",
                          json{{"APN-Configuration", std::move(apn_configs)}}}}}};
          corpus.diameter.push_back(std::move(frag));
        }
      }
      if (on_gtp) {
        const int n = 1 + static_cast<int>(rng.next_below(max_frags));
        for (int f = 0; f < n; ++f) {
          json ops = json::array();
          const int n_ops = 1 + static_cast<int>(rng.next_below(3));
          for (int o = 0; o < n_ops; ++o) {
            ops.push_back(json{{"teid", p.teid},
                               {"teid_cp", p.teid_cp},
                               {"apn", p.subscribed_apns.front()},
                               {"user_location_information", uli_for(serving, cell)},
                               {"end_user_addr", json{{"ipv4", p.pdn_ipv4}}}});
          }
          Fragment frag;
          frag.protocol = Protocol::gtp;
          frag.imsi = p.imsi;
          frag.ts_epoch = minute_epoch + static_cast<std::int64_t>(rng.next_below(60));
          frag.payload = json{{"imsi", p.imsi},
                              {"timestamp", format_timestamp_utc(frag.ts_epoch)},
                              {"operations", std::move(ops)}};
          corpus.gtp.push_back(std::move(frag));
        }
      }
    }
  }

  // Soft token-size report over the multi-protocol windows.
  FuseStats fstats;
  auto fused = filter_multiprotocol(
      fuse(corpus.ss7, corpus.diameter, corpus.gtp, &fstats), &fstats);
  double mean_tokens = 0.0;
  for (const auto& r : fused) mean_tokens += static_cast<double>(flatten(r).token_estimate);
  if (!fused.empty()) mean_tokens /= static_cast<double>(fused.size());

  corpus.stats = json{{"subscribers", config.n_subscribers},
                      {"minutes", config.minutes},
                      {"activity_rate", config.activity_rate},
                      {"rng_seed", config.rng_seed},
                      {"target_mean_tokens", config.target_mean_tokens},
                      {"max_fragments_per_burst", max_frags},
                      {"fragments", fstats.to_json()},
                      {"mean_flat_token_estimate", mean_tokens}};
  return corpus;
}

}  // namespace sigfuse
