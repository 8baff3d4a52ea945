#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigfuse/model_config.hpp"
#include "sigfuse/record.hpp"

namespace sigfuse {

inline constexpr double kDefaultTokensPerChar = 0.25;

struct FlatText {
  std::string text;
  std::int64_t token_estimate = 0;  // at kDefaultTokensPerChar
};

// Single-line, space-separated dotted key=value tokens in canonical key
// order (minute_ts, imsi, ss7, diameter, gtp at the top; lexicographic
// below) with array indices in the path. Whitespace inside values is
// collapsed to single spaces; the result never contains a newline or two
// consecutive spaces.
FlatText flatten(const FusedRecord& record);

// Flattened (path, value-token) pairs in emission order; the building
// block for flatten and for diff-based tests.
std::vector<std::pair<std::string, std::string>> flatten_pairs(
    const FusedRecord& record);

// ceil(length-in-characters * tokens_per_char); 0 for empty text.
std::int64_t estimate_tokens(std::string_view text, double tokens_per_char);

inline std::int64_t estimate_tokens(std::string_view text,
                                    const ModelConfig& model) {
  return estimate_tokens(text, model.tokens_per_char);
}

// True iff the flattened record fits the model's context window. Records
// that do not fit are skipped for that model, never truncated.
inline bool eligible(std::string_view flat_text, const ModelConfig& model) {
  return estimate_tokens(flat_text, model) <= model.context_window;
}

inline bool eligible(const FusedRecord& record, const ModelConfig& model) {
  return eligible(flatten(record).text, model);
}

// A flat.jsonl line: one record, its flat text, the default-ratio token
// estimate and the models whose context window it fits.
struct FlatRecord {
  std::string hash;
  std::string text;
  std::int64_t token_estimate = 0;
  std::vector<std::string> eligible_models;

  json to_json() const;
  static FlatRecord from_json(const json& j);
};

}  // namespace sigfuse
