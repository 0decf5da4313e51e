#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace stance {

// Timezone-naive wall-clock time at second resolution.
using Timestamp = std::chrono::sys_seconds;

// Accepts exactly "YYYY-MM-DDTHH:MM:SS".
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

}  // namespace stance
