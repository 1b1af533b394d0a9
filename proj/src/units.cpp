#include "traincap/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "traincap/errors.hpp"
#include "traincap/util.hpp"

namespace traincap {

namespace {

struct Split {
    double value;
    std::string_view suffix;
};

Split split_number(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data())
        throw UnitError("expected a number with a unit suffix, got `" + std::string(text) + "`");
    return {value, trim(text.substr(static_cast<std::size_t>(ptr - text.data())))};
}

double byte_factor(std::string_view suffix) {
    if (suffix == "B") return 1.0;
    if (suffix == "KB") return 1e3;
    if (suffix == "MB") return 1e6;
    if (suffix == "GB") return 1e9;
    if (suffix == "TB") return 1e12;
    if (suffix == "KiB") return 1024.0;
    if (suffix == "MiB") return 1024.0 * 1024;
    if (suffix == "GiB") return 1024.0 * 1024 * 1024;
    if (suffix == "TiB") return 1024.0 * 1024 * 1024 * 1024;
    throw UnitError("unknown byte unit `" + std::string(suffix) +
                    "` (use B, KB, MB, GB, TB or KiB, MiB, GiB, TiB)");
}

}  // namespace

double parse_bytes(std::string_view text) {
    auto [value, suffix] = split_number(text);
    if (suffix.empty())
        throw UnitError("byte quantity `" + std::string(text) +
                        "` needs an explicit unit suffix");
    return value * byte_factor(suffix);
}

double parse_bandwidth(std::string_view text) {
    auto [value, suffix] = split_number(text);
    if (suffix.empty())
        throw UnitError("bandwidth `" + std::string(text) + "` needs an explicit unit suffix");

    if (suffix == "bps") return value / 8.0;
    if (suffix == "Kbps") return value * 1e3 / 8.0;
    if (suffix == "Mbps") return value * 1e6 / 8.0;
    if (suffix == "Gbps") return value * 1e9 / 8.0;
    if (suffix == "Tbps") return value * 1e12 / 8.0;

    if (suffix.size() > 2 && suffix.substr(suffix.size() - 2) == "/s")
        return value * byte_factor(suffix.substr(0, suffix.size() - 2));
    throw UnitError("unknown bandwidth unit `" + std::string(suffix) +
                    "` (use bps/Kbps/Mbps/Gbps/Tbps or a byte unit plus /s, e.g. GB/s)");
}

std::string human_bytes(double bytes) {
    const char* units[] = {"B", "KiB", "MiB", "GiB", "TiB"};
    int scale = 0;
    double v = bytes;
    while (std::fabs(v) >= 1024.0 && scale < 4) {
        v /= 1024.0;
        ++scale;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, scale == 0 ? "%.0f %s" : "%.2f %s", v, units[scale]);
    return buf;
}

}  // namespace traincap
