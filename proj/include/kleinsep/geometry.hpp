#pragma once

#include "kleinsep/rational.hpp"

#include <optional>
#include <vector>

namespace kleinsep {

struct Point {
    Rat x;
    Rat y;

    bool operator==(const Point&) const = default;
};

// Lexicographic; exact, so usable as a map key.
bool operator<(const Point& a, const Point& b);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& s, const Point& p);

int sign(const Rat& r);

// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

Rat cross(const Point& o, const Point& a, const Point& b);
Rat dot(const Point& a, const Point& b);

// p lies on the closed segment [a, b] (a == b allowed only when p == a).
bool on_segment(const Point& p, const Point& a, const Point& b);
// Same but excluding the endpoints.
bool strictly_inside_segment(const Point& p, const Point& a, const Point& b);

enum class SegmentRelation {
    Disjoint,
    ProperCrossing, // one transversal interior point
    SharedEndpoint, // exactly one common endpoint, no other contact
    Degenerate,     // tangency, overlap, T-contact, or zero length
};

struct SegmentHit {
    SegmentRelation rel = SegmentRelation::Disjoint;
    Point at; // crossing point or the shared endpoint
};

SegmentHit segment_relation(const Point& a1, const Point& a2, const Point& b1, const Point& b2);

// Exact intersection point of lines a1a2 and b1b2 (must not be parallel).
Point line_intersection(const Point& a1, const Point& a2, const Point& b1, const Point& b2);

// Strictly positive orientation around every edge of a convex ccw polygon.
bool strictly_inside_convex_polygon(const Point& p, const std::vector<Point>& poly);
bool on_convex_polygon_boundary(const Point& p, const std::vector<Point>& poly);

// Twice the signed area of a polygon (ccw positive).
Rat polygon_signed_area2(const std::vector<Point>& poly);

// Strict ccw order on nonzero direction vectors, starting just above the +x axis.
// Collinear same-direction vectors compare equal (returns false both ways).
bool direction_less(const Point& a, const Point& b);

} // namespace kleinsep
