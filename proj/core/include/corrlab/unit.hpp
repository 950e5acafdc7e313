#pragma once

#include <cmath>
#include <string>

#include "corrlab/errors.hpp"

namespace corrlab {

enum class Unit { bits, nats };

// Multiply a value in bits by this to get `unit`.
inline double bits_to(Unit unit) {
    return unit == Unit::bits ? 1.0 : std::log(2.0);
}

// Multiply a value in nats by this to get `unit`.
inline double nats_to(Unit unit) {
    return unit == Unit::nats ? 1.0 : 1.0 / std::log(2.0);
}

inline Unit parse_unit(const std::string& s) {
    if (s == "bits") return Unit::bits;
    if (s == "nats") return Unit::nats;
    throw OutOfRange("unknown unit: " + s + " (expected bits|nats)");
}

inline const char* unit_name(Unit u) {
    return u == Unit::bits ? "bits" : "nats";
}

} // namespace corrlab
