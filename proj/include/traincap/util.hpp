#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace traincap {

/// Shortest decimal string that parses back to exactly the same double.
std::string to_shortest_string(double value);

/// Locale-independent numeric parsing; the whole trimmed token must be
/// consumed. nullopt on any stray character.
std::optional<double> parse_double(std::string_view token);
std::optional<std::int64_t> parse_int(std::string_view token);

std::string_view trim(std::string_view s);

}  // namespace traincap
