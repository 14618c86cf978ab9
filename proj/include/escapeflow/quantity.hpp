#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace escapeflow {

/// Exact nonnegative resource quantity.  Arbitrary precision so strict
/// inequalities and conservation are checked exactly; cannot overflow.
using Int = boost::multiprecision::cpp_int;

/// Resource value types admitted by the dynamics: exact integers or
/// finite nonnegative floats.
template <class Q>
concept Quantity = std::same_as<Q, Int> || std::same_as<Q, double>;

template <Quantity Q>
constexpr const char* value_mode_name() {
    if constexpr (std::same_as<Q, Int>) return "int";
    else return "float";
}

inline std::string quantity_to_string(const Int& v) { return v.str(); }

/// Shortest exact decimal form for doubles so serialized traces replay
/// byte-identically.
inline std::string quantity_to_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Int parse_int_quantity(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty quantity");
    for (char c : s)
        if (c < '0' || c > '9')
            throw std::invalid_argument("exact mode requires a nonnegative integer literal: " + s);
    return Int(s);
}

inline double parse_float_quantity(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters in quantity: " + s);
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("quantity must be finite and nonnegative: " + s);
    return v;
}

}  // namespace escapeflow
