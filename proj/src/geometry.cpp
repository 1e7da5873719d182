#include "kleinsep/geometry.hpp"

#include "kleinsep/errors.hpp"

#include <cctype>
#include <sstream>

namespace kleinsep {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << num(r);
    if (den(r) != 1) os << '/' << den(r);
    return os.str();
}

bool parse_rat(const std::string& text, Rat& out) {
    if (text.empty()) return false;
    size_t slash = text.find('/');
    auto parse_int = [](const std::string& s, Int& v) {
        if (s.empty()) return false;
        size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return false;
        for (size_t i = start; i < s.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = Int(s);
        return true;
    };
    Int n, d = 1;
    if (slash == std::string::npos) {
        if (!parse_int(text, n)) return false;
    } else {
        if (slash + 1 >= text.size()) return false;
        if (!parse_int(text.substr(0, slash), n)) return false;
        if (!parse_int(text.substr(slash + 1), d)) return false;
        if (d == 0) return false;
    }
    out = Rat(n, d);
    return true;
}

std::string rat_to_decimal(const Rat& r, int digits) {
    if (digits < 0) throw precondition_error("negative digit count");
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rat scaled = r * scale;
    Int whole = num(scaled) / den(scaled); // truncates toward zero
    bool neg = whole < 0;
    if (neg) whole = -whole;
    std::ostringstream os;
    os << whole;
    std::string s = os.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out;
    if (neg) out += '-';
    out += s.substr(0, s.size() - digits);
    if (digits > 0) {
        std::string frac = s.substr(s.size() - digits);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += '.' + frac;
    }
    return out;
}

bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

Point operator+(const Point& a, const Point& b) { return Point{a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return Point{a.x - b.x, a.y - b.y}; }
Point operator*(const Rat& s, const Point& p) { return Point{s * p.x, s * p.y}; }

int sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Rat cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rat dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

int orientation(const Point& a, const Point& b, const Point& c) { return sign(cross(a, b, c)); }

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orientation(a, b, p) != 0) return false;
    return dot(p - a, p - b) <= 0;
}

bool strictly_inside_segment(const Point& p, const Point& a, const Point& b) {
    if (p == a || p == b) return false;
    return on_segment(p, a, b);
}

SegmentHit segment_relation(const Point& a1, const Point& a2, const Point& b1, const Point& b2) {
    if (a1 == a2 || b1 == b2) return {SegmentRelation::Degenerate, a1};

    int shared = 0;
    Point shared_pt;
    for (const Point& p : {a1, a2})
        for (const Point& q : {b1, b2})
            if (p == q) {
                ++shared;
                shared_pt = p;
            }
    if (shared >= 2) return {SegmentRelation::Degenerate, a1};
    if (shared == 1) {
        // Any contact beyond the common endpoint makes the pair degenerate.
        const Point& a_other = (shared_pt == a1) ? a2 : a1;
        const Point& b_other = (shared_pt == b1) ? b2 : b1;
        if (on_segment(a_other, b1, b2) || on_segment(b_other, a1, a2))
            return {SegmentRelation::Degenerate, shared_pt};
        return {SegmentRelation::SharedEndpoint, shared_pt};
    }

    int o1 = orientation(a1, a2, b1);
    int o2 = orientation(a1, a2, b2);
    int o3 = orientation(b1, b2, a1);
    int o4 = orientation(b1, b2, a2);
    if (o1 * o2 < 0 && o3 * o4 < 0)
        return {SegmentRelation::ProperCrossing, line_intersection(a1, a2, b1, b2)};
    // No proper crossing and no shared endpoint: any residual contact is a
    // T-touch or collinear overlap.
    if (on_segment(b1, a1, a2)) return {SegmentRelation::Degenerate, b1};
    if (on_segment(b2, a1, a2)) return {SegmentRelation::Degenerate, b2};
    if (on_segment(a1, b1, b2)) return {SegmentRelation::Degenerate, a1};
    if (on_segment(a2, b1, b2)) return {SegmentRelation::Degenerate, a2};
    return {SegmentRelation::Disjoint, a1};
}

Point line_intersection(const Point& a1, const Point& a2, const Point& b1, const Point& b2) {
    Point r = a2 - a1;
    Point s = b2 - b1;
    Rat denom = r.x * s.y - r.y * s.x;
    if (denom == 0) throw degenerate_error("parallel lines have no single intersection");
    Rat t = ((b1.x - a1.x) * s.y - (b1.y - a1.y) * s.x) / denom;
    return Point{a1.x + t * r.x, a1.y + t * r.y};
}

bool strictly_inside_convex_polygon(const Point& p, const std::vector<Point>& poly) {
    size_t n = poly.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i)
        if (orientation(poly[i], poly[(i + 1) % n], p) <= 0) return false;
    return true;
}

bool on_convex_polygon_boundary(const Point& p, const std::vector<Point>& poly) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if (on_segment(p, poly[i], poly[(i + 1) % n])) return true;
    return false;
}

bool direction_less(const Point& a, const Point& b) {
    // Half 0 covers directions strictly above the x axis plus the +x axis itself.
    auto half = [](const Point& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat c = a.x * b.y - a.y * b.x;
    return c > 0;
}

Rat polygon_signed_area2(const std::vector<Point>& poly) {
    Rat acc = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        acc += a.x * b.y - a.y * b.x;
    }
    return acc;
}

} // namespace kleinsep
