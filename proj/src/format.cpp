#include "acleggett/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace acleggett {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    // avoid "-0" in otherwise deterministic output
    if (std::string_view(buf) == "-0") return "0";
    return buf;
}

double round_significant(double value) {
    if (!std::isfinite(value)) return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    const double rounded = std::strtod(buf, nullptr);
    return rounded == 0.0 ? 0.0 : rounded;
}

}  // namespace acleggett
