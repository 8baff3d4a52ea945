#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sigfuse {

// Strict "YYYY-MM-DDTHH:MM:SSZ" (UTC, second resolution) to epoch seconds.
// Throws ValidationError naming the value on any deviation.
std::int64_t parse_timestamp_utc(std::string_view text);

// Epoch seconds back to "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp_utc(std::int64_t epoch_seconds);

// Truncates an instant to its minute (seconds and finer dropped).
inline std::int64_t minute_bucket(std::int64_t epoch_seconds) {
  std::int64_t m = epoch_seconds / 60;
  if (epoch_seconds < 0 && epoch_seconds % 60 != 0) --m;
  return m * 60;
}

}  // namespace sigfuse
