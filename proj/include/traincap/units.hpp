#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace traincap {

/// Parses a byte quantity with an explicit suffix: decimal `KB`/`MB`/`GB`/
/// `TB` (powers of 1000), binary `KiB`/`MiB`/`GiB`/`TiB` (powers of 1024),
/// or plain `B`. Throws UnitError on a missing or unknown suffix.
double parse_bytes(std::string_view text);

/// Parses a bandwidth into bytes/second. Accepts bit rates (`bps`, `Kbps`,
/// `Mbps`, `Gbps`, `Tbps`; decimal, divided by 8) and byte rates (any
/// parse_bytes suffix followed by `/s`, e.g. `GB/s`, `MiB/s`).
double parse_bandwidth(std::string_view text);

/// "472.61 MiB"-style rendering for text reports.
std::string human_bytes(double bytes);

}  // namespace traincap
