#pragma once

#include "kleinsep/drawing.hpp"

#include <string>

namespace kleinsep {

// Line-oriented text format:
//   # comment
//   surface klein|projective|plane
//   part H|K|-          (labels subsequent items; - returns to unlabeled)
//   v <id> <x> <y>
//   e <id> <v1> <v2> : <item> ...
// with items either (x,y) or a gluing token V+ V- H+ H- Z, and rationals
// written n or n/d. Throws parse_error with the offending line number.
Drawing read_drawing(const std::string& text);

// Canonical form: unlabeled section first, then part H, then part K;
// vertices before edges, ids sorted by length then lexicographically;
// rationals in lowest terms. read_drawing(write_drawing(d)) reproduces d
// up to canonical ordering, and write_drawing is idempotent across the
// round trip.
std::string write_drawing(const Drawing& d);

Drawing read_drawing_file(const std::string& path);
void write_drawing_file(const std::string& path, const Drawing& d);

} // namespace kleinsep
