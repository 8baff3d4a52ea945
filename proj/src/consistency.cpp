#include "sigfuse/consistency.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sigfuse/timeutil.hpp"

namespace sigfuse {

namespace {

std::string pad3(std::string s) {
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

// Normalized PLMN key "mcc-mnc3". MNCs are zero-padded to three digits so
// the 2-digit and FQDN forms compare equal.
std::string plmn_key(const std::string& mcc, const std::string& mnc) {
  return mcc + "-" + pad3(mnc);
}

std::string plmn_key_from_mccmnc(const std::string& mccmnc) {
  if (mccmnc.size() < 5) return "?-" + mccmnc;
  return plmn_key(mccmnc.substr(0, 3), mccmnc.substr(3));
}

// "mme01.epc.mnc001.mcc001.3gppnetwork.org" -> "001-001"; empty when the
// host carries no PLMN labels.
std::string plmn_key_from_fqdn(const std::string& host) {
  std::string mcc, mnc;
  std::stringstream ss(host);
  std::string label;
  while (std::getline(ss, label, '.')) {
    if (label.size() == 6 && label.rfind("mnc", 0) == 0)
      mnc = label.substr(3);
    else if (label.size() == 6 && label.rfind("mcc", 0) == 0)
      mcc = label.substr(3);
  }
  if (mcc.empty() || mnc.empty()) return "";
  return mcc + "-" + mnc;
}

const json* diameter_avps_of(const json& entry) {
  if (auto req = entry.find("req"); req != entry.end() && req->is_object())
    if (auto avps = req->find("avps"); avps != req->end() && avps->is_object())
      return &*avps;
  if (auto avps = entry.find("avps"); avps != entry.end() && avps->is_object())
    return &*avps;
  return nullptr;
}

std::string str_or_empty(const json& obj, const char* key) {
  if (auto it = obj.find(key); it != obj.end() && it->is_string())
    return it->get<std::string>();
  return "";
}

struct Collector {
  ConsistencyReport report;

  // value -> owning imsis
  std::map<std::string, std::set<std::string>> session_owner;
  std::map<std::int64_t, std::set<std::string>> teid_cp_owner;
  std::map<std::int64_t, std::set<std::string>> teid_owner;
  std::map<std::string, std::set<std::string>> ip_owner;
  // (imsi, ip) -> apns bound to that PDN connection
  std::map<std::string, std::set<std::string>> pdn_apn;
  // global title -> attribute bundles / point codes seen
  std::map<std::string, std::set<std::string>> gt_attrs;
  std::map<std::string, std::set<std::int64_t>> gt_pc;
  // (opc, dpc) -> negotiated application contexts
  std::map<std::string, std::set<std::string>> pair_acn;
  // imsi -> subscription profiles seen / union of subscribed apns
  std::map<std::string, std::set<std::string>> imsi_profiles;
  std::map<std::string, std::set<std::string>> imsi_apn_union;
  // gtp apn usages checked once profiles are complete
  std::vector<std::tuple<std::string, std::string, std::string>> apn_usages;

  void add(const std::string& expectation, std::string detail,
           const std::string& imsi, const std::string& minute) {
    report.findings.push_back({expectation, std::move(detail), imsi, minute});
  }
};

void scan_record(const FusedRecord& r, Collector& c) {
  const std::string minute = format_timestamp_utc(r.minute_epoch);
  // Visited-network indicators asserted by this subscriber-minute.
  std::set<std::string> visited;

  for (const auto& frag : r.ss7) {
    const std::string cggt = str_or_empty(frag, "cggt");
    const std::string cdgt = str_or_empty(frag, "cdgt");
    const std::string cggt_mccmnc = str_or_empty(frag, "cggt_mccmnc");
    const std::string cdgt_mccmnc = str_or_empty(frag, "cdgt_mccmnc");
    const std::string top_acn = str_or_empty(frag, "application_context");

    if (!cggt_mccmnc.empty()) visited.insert(plmn_key_from_mccmnc(cggt_mccmnc));
    if (!cggt.empty())
      c.gt_attrs[cggt].insert(str_or_empty(frag, "cggt_country") + "|" +
                              cggt_mccmnc + "|" + str_or_empty(frag, "cggt_tadig"));
    if (!cdgt.empty())
      c.gt_attrs[cdgt].insert(str_or_empty(frag, "cdgt_country") + "|" +
                              cdgt_mccmnc + "|" + str_or_empty(frag, "cdgt_tadig"));

    // The called-party side addresses the subscriber's home network.
    if (!cdgt_mccmnc.empty() && r.imsi.rfind(cdgt_mccmnc, 0) != 0)
      c.add(expectation::kRoutingPlausibility,
            "cdgt_mccmnc " + cdgt_mccmnc + " is not the home PLMN of imsi " + r.imsi,
            r.imsi, minute);

    if (auto ops = frag.find("operations"); ops != frag.end() && ops->is_array()) {
      for (const auto& op : *ops) {
        const std::string op_cggt = str_or_empty(op, "cggt");
        const std::string op_cdgt = str_or_empty(op, "cdgt");
        const std::string op_acn = str_or_empty(op, "application_context");
        std::int64_t opc = op.value("opc", std::int64_t{-1});
        std::int64_t dpc = op.value("dpc", std::int64_t{-1});
        if (!cggt.empty() && !op_cggt.empty() && cggt != op_cggt)
          c.add(expectation::kRoutingPlausibility,
                "fragment cggt " + cggt + " differs from operation cggt " + op_cggt,
                r.imsi, minute);
        if (!cdgt.empty() && !op_cdgt.empty() && cdgt != op_cdgt)
          c.add(expectation::kRoutingPlausibility,
                "fragment cdgt " + cdgt + " differs from operation cdgt " + op_cdgt,
                r.imsi, minute);
        if (!top_acn.empty() && !op_acn.empty() && top_acn != op_acn)
          c.add(expectation::kSemanticConsistency,
                "dialogue application_context " + top_acn +
                    " differs from operation context " + op_acn,
                r.imsi, minute);
        if (opc >= 0 && !op_cggt.empty()) c.gt_pc[op_cggt].insert(opc);
        if (dpc >= 0 && !op_cdgt.empty()) c.gt_pc[op_cdgt].insert(dpc);
        if (opc >= 0 && dpc >= 0 && !op_acn.empty())
          c.pair_acn[std::to_string(opc) + "|" + std::to_string(dpc)].insert(op_acn);
      }
    }
  }

  for (const auto& entry : r.diameter) {
    const json* avps = diameter_avps_of(entry);
    if (!avps) continue;
    const std::string user_name = str_or_empty(*avps, "User-Name");
    if (!user_name.empty() && user_name != r.imsi)
      c.add(expectation::kIdentityCoherence,
            "Diameter User-Name " + user_name + " differs from record imsi " + r.imsi,
            r.imsi, minute);

    const std::string origin_host = str_or_empty(*avps, "Origin-Host");
    if (!origin_host.empty()) {
      if (std::string key = plmn_key_from_fqdn(origin_host); !key.empty())
        visited.insert(key);
    }
    const std::string session = str_or_empty(*avps, "Session-Id");
    if (!session.empty()) {
      c.session_owner[session].insert(r.imsi);
      if (!origin_host.empty()) {
        const std::string host_part = session.substr(0, session.find(';'));
        if (host_part != origin_host)
          c.add(expectation::kRoutingPlausibility,
                "Session-Id host '" + host_part + "' does not match Origin-Host '" +
                    origin_host + "'",
                r.imsi, minute);
      }
    }
    if (auto v = avps->find("Visited-PLMN-Id"); v != avps->end() && v->is_object()) {
      const std::string mcc = str_or_empty(*v, "mcc");
      const std::string mnc = str_or_empty(*v, "mnc");
      if (!mcc.empty() && !mnc.empty()) visited.insert(plmn_key(mcc, mnc));
    }
    if (auto sd = avps->find("Subscription-Data"); sd != avps->end() && sd->is_object()) {
      if (auto apns = sd->find("APN-Configuration");
          apns != sd->end() && apns->is_array()) {
        std::vector<std::string> selections;
        for (const auto& apn : *apns) {
          const std::string sel = str_or_empty(apn, "Service-Selection");
          if (!sel.empty()) {
            selections.push_back(sel);
            c.imsi_apn_union[r.imsi].insert(sel);
          }
        }
        std::sort(selections.begin(), selections.end());
        c.imsi_profiles[r.imsi].insert(json(selections).dump());
      }
    }
  }

  for (const auto& frag : r.gtp) {
    auto ops = frag.find("operations");
    if (ops == frag.end() || !ops->is_array()) continue;
    for (const auto& op : *ops) {
      if (auto uli = op.find("user_location_information");
          uli != op.end() && uli->is_object()) {
        const std::string mcc = str_or_empty(*uli, "mcc");
        const std::string mnc = str_or_empty(*uli, "mnc");
        if (!mcc.empty() && !mnc.empty()) visited.insert(plmn_key(mcc, mnc));
      }
      if (auto t = op.find("teid_cp"); t != op.end() && t->is_number_integer())
        c.teid_cp_owner[t->get<std::int64_t>()].insert(r.imsi);
      if (auto t = op.find("teid"); t != op.end() && t->is_number_integer()) {
        if (std::int64_t v = t->get<std::int64_t>(); v != 0)
          c.teid_owner[v].insert(r.imsi);
      }
      std::string ip;
      if (auto addr = op.find("end_user_addr"); addr != op.end() && addr->is_object())
        ip = str_or_empty(*addr, "ipv4");
      if (!ip.empty()) c.ip_owner[ip].insert(r.imsi);
      const std::string apn = str_or_empty(op, "apn");
      if (!apn.empty()) {
        c.apn_usages.emplace_back(r.imsi, apn, minute);
        if (!ip.empty()) c.pdn_apn[r.imsi + "|" + ip].insert(apn);
      }
    }
  }

  if (visited.size() > 1) {
    std::string detail = "visited-PLMN indicators disagree:";
    for (const auto& v : visited) detail += " " + v;
    c.add(expectation::kPlmnCompatibility, detail, r.imsi, minute);
  }
}

}  // namespace

ConsistencyReport check_consistency(const std::vector<FusedRecord>& records) {
  Collector c;
  for (const auto& r : records) scan_record(r, c);

  auto owners_violation = [&](const auto& owner_map, const std::string& what) {
    for (const auto& [value, imsis] : owner_map) {
      if (imsis.size() > 1) {
        std::ostringstream detail;
        detail << what << " ";
        if constexpr (std::is_same_v<std::decay_t<decltype(value)>, std::string>)
          detail << value;
        else
          detail << std::to_string(value);
        detail << " shared by " << imsis.size() << " subscribers";
        c.add(what == "pdn ipv4" ? expectation::kAddressAllocation
                                 : expectation::kSessionTunnelUniqueness,
              detail.str(), *imsis.begin(), "");
      }
    }
  };
  owners_violation(c.session_owner, "Session-Id");
  owners_violation(c.teid_cp_owner, "teid_cp");
  owners_violation(c.teid_owner, "teid");
  owners_violation(c.ip_owner, "pdn ipv4");

  for (const auto& [key, apns] : c.pdn_apn) {
    if (apns.size() > 1)
      c.add(expectation::kAddressAllocation,
            "PDN connection " + key + " bound to " + std::to_string(apns.size()) +
                " different APNs",
            key.substr(0, key.find('|')), "");
  }
  for (const auto& [gt, attrs] : c.gt_attrs) {
    if (attrs.size() > 1)
      c.add(expectation::kRoutingPlausibility,
            "global title " + gt + " seen with " + std::to_string(attrs.size()) +
                " attribute bundles",
            "", "");
  }
  for (const auto& [gt, pcs] : c.gt_pc) {
    if (pcs.size() > 1)
      c.add(expectation::kRoutingPlausibility,
            "global title " + gt + " seen with " + std::to_string(pcs.size()) +
                " point codes",
            "", "");
  }
  for (const auto& [pair, acns] : c.pair_acn) {
    if (acns.size() > 1)
      c.add(expectation::kSemanticConsistency,
            "point-code pair " + pair + " negotiated " + std::to_string(acns.size()) +
                " application contexts",
            "", "");
  }
  for (const auto& [imsi, profiles] : c.imsi_profiles) {
    if (profiles.size() > 1)
      c.add(expectation::kAccessProfile,
            "subscriber " + imsi + " carries " + std::to_string(profiles.size()) +
                " different APN-Configuration profiles",
            imsi, "");
  }
  for (const auto& [imsi, apn, minute] : c.apn_usages) {
    auto it = c.imsi_apn_union.find(imsi);
    if (it == c.imsi_apn_union.end()) continue;  // no profile to check against
    if (it->second.find(apn) == it->second.end())
      c.add(expectation::kAccessProfile,
            "GTP apn " + apn + " not in subscribed profile of " + imsi, imsi,
            minute);
  }

  for (const auto& f : c.report.findings) ++c.report.counts[f.expectation];
  return c.report;
}

json ConsistencyReport::to_json() const {
  json out;
  out["clean"] = clean();
  out["total_findings"] = findings.size();
  out["counts"] = counts.empty() ? json::object() : json(counts);
  json list = json::array();
  for (const auto& f : findings) {
    list.push_back(json{{"expectation", f.expectation},
                        {"detail", f.detail},
                        {"imsi", f.imsi},
                        {"minute", f.minute}});
  }
  out["findings"] = std::move(list);
  return out;
}

}  // namespace sigfuse
