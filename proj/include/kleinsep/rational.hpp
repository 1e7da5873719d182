#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace kleinsep {

// Exact rational scalar used for every coordinate in the library.
// cpp_rational keeps values normalized (reduced, denominator > 0).
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

// "3/4", "-2", "7" (lowest terms, no denominator when it is 1).
std::string rat_to_string(const Rat& r);

// Accepts the same forms rat_to_string emits plus unreduced fractions.
// Returns false on malformed text or zero denominator.
bool parse_rat(const std::string& text, Rat& out);

// Exact decimal expansion "a.bcd" usable in SVG attributes; the value is
// rounded toward zero after `digits` fractional digits.
std::string rat_to_decimal(const Rat& r, int digits);

} // namespace kleinsep
