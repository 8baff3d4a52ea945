#include "sigfuse/record.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "sigfuse/errors.hpp"
#include "sigfuse/timeutil.hpp"

namespace sigfuse {

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::ss7: return "ss7";
    case Protocol::diameter: return "diameter";
    case Protocol::gtp: return "gtp";
  }
  return "?";
}

Protocol protocol_from_name(std::string_view name) {
  if (name == "ss7") return Protocol::ss7;
  if (name == "diameter") return Protocol::diameter;
  if (name == "gtp") return Protocol::gtp;
  throw SchemaError("unknown protocol '" + std::string(name) + "'");
}

bool is_valid_imsi(std::string_view s) {
  if (s.empty() || s.size() > 15) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

bool is_valid_ipv4(std::string_view s) {
  int octets = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (octets == 4) return false;
    std::size_t start = i;
    int v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + (s[i] - '0');
      if (v > 255 || i - start >= 3) return false;
      ++i;
    }
    if (i == start) return false;
    if (i - start > 1 && s[start] == '0') return false;
    ++octets;
    if (i < s.size()) {
      if (s[i] != '.') return false;
      ++i;
      if (i == s.size()) return false;
    }
  }
  return octets == 4;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                  nullptr))
    throw IntegrityError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out(len * 2, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

namespace {

const json& require_field(const json& obj, const char* key,
                          std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(std::string(key) + " missing at " + std::string(where));
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           std::string_view where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_string())
    throw SchemaError(std::string(key) + " not a string at " +
                      std::string(where));
  return v.get<std::string>();
}

void require_nonneg_int(const json& v, const char* key, std::string_view where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ValidationError(std::string(key) + " not a non-negative integer at " +
                          std::string(where));
}

// Accepts both the raw fragment shape ({avps:...}) and the fused wrap
// ({req:{avps:...}}).
const json* diameter_avps(const json& payload) {
  if (auto req = payload.find("req"); req != payload.end() && req->is_object()) {
    if (auto avps = req->find("avps"); avps != req->end() && avps->is_object())
      return &*avps;
    return nullptr;
  }
  if (auto avps = payload.find("avps"); avps != payload.end() && avps->is_object())
    return &*avps;
  return nullptr;
}

void validate_ss7(const json& p, bool at_ingestion) {
  if (auto ops = p.find("operations"); ops != p.end()) {
    if (!ops->is_array()) throw SchemaError("ss7 operations not an array");
    std::size_t i = 0;
    for (const auto& op : *ops) {
      std::string where = "operations." + std::to_string(i);
      if (!op.is_object()) throw SchemaError("ss7 " + where + " not an object");
      if (auto v = op.find("opc"); v != op.end())
        require_nonneg_int(*v, "opc", where);
      if (auto v = op.find("dpc"); v != op.end())
        require_nonneg_int(*v, "dpc", where);
      if (at_ingestion) {
        // Top-level global titles repeat inside operations at ingestion;
        // they may diverge only after mutation.
        for (const char* key : {"cggt", "cdgt"}) {
          auto top = p.find(key);
          auto inner = op.find(key);
          if (top != p.end() && inner != op.end() && *top != *inner)
            throw ValidationError(std::string("ss7 ") + key +
                                  " differs between fragment and " + where);
        }
        if (auto top = p.find("application_context"), inner = op.find("application_context");
            top != p.end() && inner != op.end() && *top != *inner)
          throw ValidationError("ss7 application_context differs between fragment and " +
                                where);
      }
      ++i;
    }
  }
}

void validate_plmn_triple(const json& obj, std::string_view where) {
  auto mcc = obj.find("mcc");
  auto mnc = obj.find("mnc");
  auto mccmnc = obj.find("mccmnc");
  if (mcc != obj.end() && mnc != obj.end() && mccmnc != obj.end()) {
    if (!mcc->is_string() || !mnc->is_string() || !mccmnc->is_string())
      throw SchemaError("mcc/mnc/mccmnc not strings at " + std::string(where));
    if (mcc->get<std::string>() + mnc->get<std::string>() !=
        mccmnc->get<std::string>())
      throw ValidationError("mccmnc != mcc ++ mnc at " + std::string(where));
  }
}

void validate_diameter(const json& p) {
  const json* avps = diameter_avps(p);
  if (avps == nullptr) throw SchemaError("diameter avps missing");
  if (auto v = avps->find("Visited-PLMN-Id"); v != avps->end()) {
    if (!v->is_object()) throw SchemaError("Visited-PLMN-Id not an object");
    validate_plmn_triple(*v, "avps.Visited-PLMN-Id");
  }
  if (auto sd = avps->find("Subscription-Data"); sd != avps->end()) {
    if (!sd->is_object()) throw SchemaError("Subscription-Data not an object");
    const json& apns = require_field(*sd, "APN-Configuration",
                                     "avps.Subscription-Data");
    if (!apns.is_array() || apns.empty())
      throw ValidationError(
          "APN-Configuration empty while Subscription-Data present");
  }
}

void validate_gtp(const json& p) {
  if (auto ops = p.find("operations"); ops != p.end()) {
    if (!ops->is_array()) throw SchemaError("gtp operations not an array");
    std::size_t i = 0;
    for (const auto& op : *ops) {
      std::string where = "operations." + std::to_string(i);
      if (!op.is_object()) throw SchemaError("gtp " + where + " not an object");
      if (auto v = op.find("teid"); v != op.end())
        require_nonneg_int(*v, "teid", where);
      if (auto v = op.find("teid_cp"); v != op.end())
        require_nonneg_int(*v, "teid_cp", where);
      if (auto uli = op.find("user_location_information"); uli != op.end()) {
        if (!uli->is_object())
          throw SchemaError("user_location_information not an object at " + where);
        validate_plmn_triple(*uli, where + ".user_location_information");
      }
      if (auto addr = op.find("end_user_addr"); addr != op.end()) {
        if (!addr->is_object())
          throw SchemaError("end_user_addr not an object at " + where);
        if (auto ip = addr->find("ipv4"); ip != addr->end()) {
          if (!ip->is_string() || !is_valid_ipv4(ip->get<std::string>()))
            throw ValidationError("invalid ipv4 at " + where + ".end_user_addr");
        }
      }
      ++i;
    }
  }
}

}  // namespace

void validate_fragment_payload(const json& payload, Protocol protocol,
                               bool at_ingestion) {
  if (!payload.is_object()) throw SchemaError("fragment not a JSON object");
  switch (protocol) {
    case Protocol::ss7: validate_ss7(payload, at_ingestion); break;
    case Protocol::diameter: validate_diameter(payload); break;
    case Protocol::gtp: validate_gtp(payload); break;
  }
}

Fragment parse_fragment(std::string_view line, Protocol protocol) {
  json payload;
  try {
    payload = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!payload.is_object()) throw SchemaError("fragment line is not an object");

  Fragment frag;
  frag.protocol = protocol;
  frag.imsi = require_string(payload, "imsi", protocol_name(protocol));
  if (!is_valid_imsi(frag.imsi))
    throw ValidationError("imsi '" + frag.imsi +
                          "' not a digit string of length <= 15");
  const std::string ts =
      require_string(payload, "timestamp", protocol_name(protocol));
  frag.ts_epoch = parse_timestamp_utc(ts);
  validate_fragment_payload(payload, protocol, /*at_ingestion=*/true);
  frag.payload = std::move(payload);
  return frag;
}

void validate_fused(const FusedRecord& record) {
  if (!is_valid_imsi(record.imsi))
    throw ValidationError("fused record imsi invalid: '" + record.imsi + "'");
  if (record.minute_epoch % 60 != 0)
    throw ValidationError("minute_ts has non-zero seconds");
  auto check_list = [&](const json& list, Protocol proto) {
    for (const auto& frag : list) {
      if (!frag.is_object()) throw SchemaError("fragment entry not an object");
      if (auto it = frag.find("imsi"); it == frag.end() ||
                                       it->get<std::string>() != record.imsi)
        throw ValidationError("fragment imsi differs from record imsi " +
                              record.imsi);
      if (auto it = frag.find("timestamp"); it == frag.end()) {
        throw SchemaError("fragment timestamp missing");
      } else {
        std::int64_t ts = parse_timestamp_utc(it->get<std::string>());
        if (minute_bucket(ts) != record.minute_epoch)
          throw ValidationError("fragment timestamp outside record minute " +
                                format_timestamp_utc(record.minute_epoch));
      }
      validate_fragment_payload(frag, proto, /*at_ingestion=*/false);
    }
  };
  check_list(record.ss7, Protocol::ss7);
  check_list(record.diameter, Protocol::diameter);
  check_list(record.gtp, Protocol::gtp);
}

std::string canonical_text(const FusedRecord& record) {
  // nlohmann::json orders object keys lexicographically, which covers
  // everything below the top level; the top level is assembled by hand in
  // schema order.
  std::string out = "{\"minute_ts\":";
  out += json(format_timestamp_utc(record.minute_epoch)).dump();
  out += ",\"imsi\":";
  out += json(record.imsi).dump();
  out += ",\"ss7\":";
  out += record.ss7.dump();
  out += ",\"diameter\":";
  out += record.diameter.dump();
  out += ",\"gtp\":";
  out += record.gtp.dump();
  out += "}";
  return out;
}

std::string record_hash(const FusedRecord& record) {
  return sha256_hex(canonical_text(record));
}

FusedRecord record_from_canonical(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed fused record at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
  FusedRecord r;
  r.minute_epoch = parse_timestamp_utc(require_string(j, "minute_ts", "record"));
  r.imsi = require_string(j, "imsi", "record");
  for (const char* key : {"ss7", "diameter", "gtp"}) {
    const json& list = require_field(j, key, "record");
    if (!list.is_array())
      throw SchemaError(std::string(key) + " not an array at record");
  }
  r.ss7 = j["ss7"];
  r.diameter = j["diameter"];
  r.gtp = j["gtp"];
  return r;
}

json RecordOrigin::to_json() const {
  json j;
  j["kind"] = kind == OriginKind::background ? "background" : "synthetic";
  if (mutation) {
    j["mutation"] = {{"family", mutation->family},
                     {"partner_hash", mutation->partner_hash},
                     {"seed_hash", mutation->seed_hash},
                     {"swap_batch_id", mutation->swap_batch_id}};
  }
  return j;
}

RecordOrigin RecordOrigin::from_json(const json& j) {
  RecordOrigin o;
  const std::string kind = require_string(j, "kind", "origin");
  if (kind == "background") {
    o.kind = OriginKind::background;
    if (j.contains("mutation"))
      throw ValidationError("background origin carries mutation metadata");
  } else if (kind == "synthetic") {
    o.kind = OriginKind::synthetic;
    const json& m = require_field(j, "mutation", "origin");
    MutationMetadata meta;
    meta.family = require_string(m, "family", "origin.mutation");
    meta.partner_hash = require_string(m, "partner_hash", "origin.mutation");
    meta.seed_hash = require_string(m, "seed_hash", "origin.mutation");
    meta.swap_batch_id = require_string(m, "swap_batch_id", "origin.mutation");
    o.mutation = std::move(meta);
  } else {
    throw SchemaError("origin kind '" + kind + "' unknown");
  }
  return o;
}

json origin_entry(const std::string& hash, const RecordOrigin& origin) {
  json j = origin.to_json();
  j["hash"] = hash;
  return j;
}

}  // namespace sigfuse
