#include "sigfuse/flatten.hpp"

#include <cmath>

#include "sigfuse/timeutil.hpp"

namespace sigfuse {

namespace {

// Leaf rendering: strings raw, scalars as JSON text, empty containers as
// [] / {} so that distinct shapes stay distinct.
std::string leaf_token(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void collapse_whitespace(std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_ws = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out.push_back(' ');
    in_ws = false;
    out.push_back(c);
  }
  s = std::move(out);
}

void walk(const json& node, std::string& path,
          std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    if (node.empty()) {
      out.emplace_back(path, "{}");
      return;
    }
    const std::size_t base = path.size();
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (!path.empty()) path.push_back('.');
      path += it.key();
      walk(it.value(), path, out);
      path.resize(base);
    }
  } else if (node.is_array()) {
    if (node.empty()) {
      out.emplace_back(path, "[]");
      return;
    }
    const std::size_t base = path.size();
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!path.empty()) path.push_back('.');
      path += std::to_string(i);
      walk(node[i], path, out);
      path.resize(base);
    }
  } else {
    out.emplace_back(path, leaf_token(node));
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten_pairs(
    const FusedRecord& record) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string path;

  out.emplace_back("minute_ts", format_timestamp_utc(record.minute_epoch));
  out.emplace_back("imsi", record.imsi);
  path = "ss7";
  walk(record.ss7, path, out);
  path = "diameter";
  walk(record.diameter, path, out);
  path = "gtp";
  walk(record.gtp, path, out);

  for (auto& [p, v] : out) collapse_whitespace(v);
  return out;
}

FlatText flatten(const FusedRecord& record) {
  FlatText flat;
  for (const auto& [path, value] : flatten_pairs(record)) {
    if (!flat.text.empty()) flat.text.push_back(' ');
    flat.text += path;
    flat.text.push_back('=');
    flat.text += value;
  }
  flat.token_estimate = estimate_tokens(flat.text, kDefaultTokensPerChar);
  return flat;
}

std::int64_t estimate_tokens(std::string_view text, double tokens_per_char) {
  if (text.empty()) return 0;
  return static_cast<std::int64_t>(
      std::ceil(static_cast<double>(text.size()) * tokens_per_char));
}

json FlatRecord::to_json() const {
  return json{{"hash", hash},
              {"text", text},
              {"token_estimate", token_estimate},
              {"eligible_models", eligible_models}};
}

FlatRecord FlatRecord::from_json(const json& j) {
  FlatRecord f;
  f.hash = j.at("hash").get<std::string>();
  f.text = j.at("text").get<std::string>();
  f.token_estimate = j.at("token_estimate").get<std::int64_t>();
  f.eligible_models = j.at("eligible_models").get<std::vector<std::string>>();
  return f;
}

}  // namespace sigfuse
