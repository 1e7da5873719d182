#pragma once

#include "kleinsep/geometry.hpp"
#include "kleinsep/homotopy.hpp"

#include <string>
#include <vector>

namespace kleinsep {

enum class SurfaceKind { KleinBottle, ProjectivePlane, Plane };

// Fundamental group surface of a drawing surface (Plane has none).
Surface group_surface(SurfaceKind k);

// Boundary identifications of the fundamental polygon. On the Klein bottle
// V glues (0,y)~(1,y) straight and H glues (x,1)~(1-x,0) flipped; the sign
// is the crossing direction (V+ exits right, H+ exits top). On the
// projective plane Z glues antipodal circle points.
enum class GluingToken { VPlus, VMinus, HPlus, HMinus, Z };

struct PathItem {
    bool is_token = false;
    Point pt;
    GluingToken tok = GluingToken::VPlus;

    static PathItem point(Point p) { return PathItem{false, std::move(p), GluingToken::VPlus}; }
    static PathItem token(GluingToken t) { return PathItem{true, Point{}, t}; }

    bool operator==(const PathItem&) const = default;
};

enum class PartLabel { None, H, K };

struct Vertex {
    std::string id;
    Point pos;
    PartLabel part = PartLabel::None;
};

// Edge drawn as straight segments between consecutive points; a token
// splices the path across the gluing, so the points flanking it sit on
// matched boundary positions.
struct PolylineEdge {
    std::string id;
    std::string v1;
    std::string v2;
    std::vector<PathItem> path;
    PartLabel part = PartLabel::None;
};

struct Drawing {
    SurfaceKind surface = SurfaceKind::KleinBottle;
    std::vector<Vertex> vertices;
    std::vector<PolylineEdge> edges;

    const Vertex* find_vertex(const std::string& id) const;
    const PolylineEdge* find_edge(const std::string& id) const;
};

// Cyclic polyline with no endpoints; consecutive points (wrapping around)
// define segments.
struct ClosedCurve {
    SurfaceKind surface = SurfaceKind::KleinBottle;
    std::vector<PathItem> items;
};

// True when p lies on the boundary piece the token exits through.
bool token_exit_matches(SurfaceKind s, GluingToken t, const Point& p);
// Deck image of the exit point: where the path re-enters the polygon.
Point token_enter_point(SurfaceKind s, GluingToken t, const Point& exit_pt);
// Canonical representative of a boundary point under the identifications.
Point boundary_key(SurfaceKind s, const Point& p);

// Chart polygon of a projective-plane drawing: the drawing's circle points,
// their antipodes, and eight fixed circle points, ccw. All non-boundary
// content must sit strictly inside it.
std::vector<Point> projective_chart_polygon(const std::vector<Point>& circle_points);
std::vector<Point> projective_chart_polygon(const Drawing& d);

struct DrawnSegment {
    int edge_index = -1; // -1 for a probe curve
    int seg_index = 0;
    Point a;
    Point b;
};

struct TokenPassage {
    int edge_index = -1;
    int passage_index = 0;
    GluingToken tok = GluingToken::VPlus;
    Point exit;
    Point enter;
    Point key;          // canonical surface point of the passage
    int after_seg = -1; // segment ending at the exit point
};

struct EdgeGeometry {
    std::vector<DrawnSegment> segments;
    std::vector<TokenPassage> passages;
};

// Segments and gluing passages of one edge (vertex endpoints included) or
// of a closed curve; throws degenerate_error on malformed paths.
EdgeGeometry edge_geometry(const Drawing& d, int edge_index);
EdgeGeometry curve_geometry(const ClosedCurve& c);

struct ValidationFinding {
    std::string rule;
    std::string detail;
};

// Full legality report: surface geometry, proper-drawing rules, simplicity,
// crossing multiplicity, triple points. Never throws on bad geometry.
std::vector<ValidationFinding> validate(const Drawing& d);
std::vector<ValidationFinding> validate_curve(const ClosedCurve& c);

struct Crossing {
    std::string edge1; // lexicographically <= edge2 unless curve involved
    std::string edge2; // empty string stands for the probe curve
    Point at;
};

struct CrossingReport {
    long long count = 0;
    std::vector<Crossing> list;
};

// Exact transversal crossing counts; tangency, overlap, or contact at a
// non-vertex point raises degenerate_error. Self-crossings count once.
CrossingReport crossing_count_all(const Drawing& d);
CrossingReport crossing_count_between_parts(const Drawing& d);
CrossingReport crossing_count_with_curve(const Drawing& d, const ClosedCurve& c);

long long curve_self_crossings(const ClosedCurve& c);
long long curve_pair_crossings(const ClosedCurve& a, const ClosedCurve& b);

// Token transcription into fundamental group generators, in path order.
Word edge_word(const PolylineEdge& e, SurfaceKind s);
Word loop_word(const ClosedCurve& c);

// Free homotopy class of a closed curve.
CanonicalClass curve_class(const ClosedCurve& c);

// Built-in representatives of the four essential simple classes on the
// Klein bottle: a = {x=1/2}, b near {x=1/8} with a jog through the straight
// gluing, m = {y=1/2}, e = {x=1/4} u {x=3/4}.
ClosedCurve reference_curve(CurveType t);
// The same curve as a one-vertex loop drawing (vertex placed on the curve).
Drawing reference_drawing(CurveType t);

// Loop drawing tracing an arbitrary closed curve: the vertex is inserted at
// the midpoint of the curve's first segment.
Drawing curve_as_drawing(const ClosedCurve& c, const std::string& vertex_id,
                         const std::string& edge_id, PartLabel part);
// Same, splitting segment seg_index (curve_geometry order) at parameter
// t in (0,1); lets callers steer the vertex clear of other content.
Drawing curve_as_drawing_split(const ClosedCurve& c, int seg_index, const Rat& t,
                               const std::string& vertex_id, const std::string& edge_id,
                               PartLabel part);
// Closed curve traced by a loop edge (v1 == v2).
ClosedCurve edge_as_curve(const Drawing& d, const PolylineEdge& e);

} // namespace kleinsep
