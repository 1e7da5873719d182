#include "kleinsep/drawing.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace kleinsep {

namespace {

std::string pt_str(const Point& p) {
    return "(" + rat_to_string(p.x) + ", " + rat_to_string(p.y) + ")";
}

bool in_open_square(const Point& p) { return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1; }

bool on_unit_circle(const Point& p) { return p.x * p.x + p.y * p.y == 1; }

const std::vector<Point>& projective_anchors() {
    static const std::vector<Point> pts = {
        {1, 0},  {Rat(3, 5), Rat(4, 5)},   {0, 1},  {Rat(-3, 5), Rat(4, 5)},
        {-1, 0}, {Rat(-3, 5), Rat(-4, 5)}, {0, -1}, {Rat(3, 5), Rat(-4, 5)},
    };
    return pts;
}

// Result of walking one path: drawn segments, gluing passages, rule
// violations, and the points that must be strictly interior.
struct PathGeom {
    std::vector<DrawnSegment> segments;
    std::vector<TokenPassage> passages;
    std::vector<std::string> problems;
    std::vector<Point> interior_points;
};

PathGeom analyze_items(SurfaceKind surface, const std::vector<PathItem>& items, bool cyclic,
                       int edge_index) {
    PathGeom g;
    size_t n = items.size();
    if (n < 2) {
        g.problems.push_back("path needs at least two items");
        return g;
    }
    if (!cyclic && (items.front().is_token || items.back().is_token)) {
        g.problems.push_back("token at path end");
        return g;
    }
    size_t pair_count = cyclic ? n : n - 1;
    for (size_t i = 0; i < pair_count; ++i)
        if (items[i].is_token && items[(i + 1) % n].is_token) {
            g.problems.push_back("adjacent gluing tokens");
            return g;
        }
    for (size_t i = 0; i < n; ++i) {
        if (items[i].is_token) continue;
        bool prev_tok = (cyclic || i > 0) && items[(i + n - 1) % n].is_token;
        bool next_tok = (cyclic || i + 1 < n) && items[(i + 1) % n].is_token;
        if (prev_tok && next_tok) {
            g.problems.push_back("point between two gluing tokens at " + pt_str(items[i].pt));
            return g;
        }
        if (!prev_tok && !next_tok) g.interior_points.push_back(items[i].pt);
    }

    std::map<size_t, int> seg_ending_at; // item index of segment end -> seg index
    int seg_idx = 0;
    for (size_t i = 0; i < pair_count; ++i) {
        const PathItem& cur = items[i];
        const PathItem& nxt = items[(i + 1) % n];
        if (cur.is_token || nxt.is_token) continue;
        if (cur.pt == nxt.pt) g.problems.push_back("zero-length segment at " + pt_str(cur.pt));
        if (surface != SurfaceKind::ProjectivePlane) {
            // A segment lying along a gluing line touches the boundary in
            // infinitely many points.
            bool along = (cur.pt.x == 0 && nxt.pt.x == 0) || (cur.pt.x == 1 && nxt.pt.x == 1) ||
                         (cur.pt.y == 0 && nxt.pt.y == 0) || (cur.pt.y == 1 && nxt.pt.y == 1);
            if (along) g.problems.push_back("segment along the boundary at " + pt_str(cur.pt));
        }
        g.segments.push_back(DrawnSegment{edge_index, seg_idx, cur.pt, nxt.pt});
        seg_ending_at[(i + 1) % n] = seg_idx;
        ++seg_idx;
    }

    int pass_idx = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!items[i].is_token) continue;
        const PathItem& prev = items[(i + n - 1) % n];
        const PathItem& nxt = items[(i + 1) % n];
        GluingToken t = items[i].tok;
        bool alphabet_ok = (surface == SurfaceKind::KleinBottle && t != GluingToken::Z) ||
                           (surface == SurfaceKind::ProjectivePlane && t == GluingToken::Z);
        if (!alphabet_ok) {
            g.problems.push_back("gluing token outside the surface alphabet");
            continue;
        }
        if (!token_exit_matches(surface, t, prev.pt)) {
            g.problems.push_back("token exit point " + pt_str(prev.pt) + " off its gluing line");
            continue;
        }
        Point enter = token_enter_point(surface, t, prev.pt);
        if (!(nxt.pt == enter)) {
            g.problems.push_back("token enter point " + pt_str(nxt.pt) + " should be " + pt_str(enter));
            continue;
        }
        TokenPassage p;
        p.edge_index = edge_index;
        p.passage_index = pass_idx++;
        p.tok = t;
        p.exit = prev.pt;
        p.enter = enter;
        p.key = boundary_key(surface, prev.pt);
        size_t prev_item = (i + n - 1) % n;
        auto it = seg_ending_at.find(prev_item);
        p.after_seg = (it == seg_ending_at.end()) ? -1 : it->second;
        g.passages.push_back(p);
    }
    return g;
}

std::vector<PathItem> full_edge_items(const Drawing& d, const PolylineEdge& e, std::string* problem) {
    const Vertex* a = d.find_vertex(e.v1);
    const Vertex* b = d.find_vertex(e.v2);
    if (!a || !b) {
        if (problem) *problem = "edge " + e.id + " references a missing vertex";
        return {};
    }
    std::vector<PathItem> items;
    items.reserve(e.path.size() + 2);
    items.push_back(PathItem::point(a->pos));
    items.insert(items.end(), e.path.begin(), e.path.end());
    items.push_back(PathItem::point(b->pos));
    return items;
}

struct Interaction {
    std::vector<Crossing> crossings;
    std::vector<ValidationFinding> findings;
};

void note(Interaction& out, bool throwing, const std::string& rule, const std::string& detail) {
    if (throwing) throw degenerate_error(rule + ": " + detail);
    out.findings.push_back(ValidationFinding{rule, detail});
}

// Segment-level interaction of a whole drawing, optionally with one probe
// curve. In throwing mode every rule violation except crossing-multiplicity
// and edge-simplicity raises degenerate_error; those two stay countable
// because general drawings legitimately contain them.
Interaction interact(const Drawing& d, const ClosedCurve* probe, bool throwing) {
    Interaction out;

    // Structure: ids unique, vertex refs resolve, parts consistent.
    std::set<std::string> vertex_ids;
    for (const Vertex& v : d.vertices) {
        if (v.id.empty()) note(out, throwing, "structure", "empty vertex id");
        if (!vertex_ids.insert(v.id).second)
            note(out, throwing, "structure", "duplicate vertex id " + v.id);
    }
    std::set<std::string> edge_ids;
    for (const PolylineEdge& e : d.edges) {
        if (e.id.empty()) note(out, throwing, "structure", "empty edge id");
        if (!edge_ids.insert(e.id).second)
            note(out, throwing, "structure", "duplicate edge id " + e.id);
        if (edge_ids.count(e.id) && vertex_ids.count(e.id))
            note(out, throwing, "structure", "id " + e.id + " used for vertex and edge");
    }
    for (size_t i = 0; i < d.vertices.size(); ++i)
        for (size_t j = i + 1; j < d.vertices.size(); ++j)
            if (d.vertices[i].pos == d.vertices[j].pos)
                note(out, throwing, "structure",
                     "vertices " + d.vertices[i].id + " and " + d.vertices[j].id + " coincide");
    for (const PolylineEdge& e : d.edges) {
        const Vertex* a = d.find_vertex(e.v1);
        const Vertex* b = d.find_vertex(e.v2);
        if (!a || !b) {
            note(out, throwing, "structure", "edge " + e.id + " references a missing vertex");
            continue;
        }
        if (e.part != a->part || e.part != b->part)
            note(out, throwing, "partition",
                 "edge " + e.id + " and its endpoints carry different part labels");
    }
    if (probe && probe->surface != d.surface)
        note(out, throwing, "structure", "probe curve on a different surface");

    // Per-path geometry.
    std::vector<PathGeom> geoms(d.edges.size());
    for (size_t i = 0; i < d.edges.size(); ++i) {
        std::string problem;
        std::vector<PathItem> items = full_edge_items(d, d.edges[i], &problem);
        if (items.empty()) continue; // missing vertex, already reported
        geoms[i] = analyze_items(d.surface, items, false, static_cast<int>(i));
        for (const std::string& p : geoms[i].problems)
            note(out, throwing, "surface geometry", "edge " + d.edges[i].id + ": " + p);
    }
    PathGeom probe_geom;
    if (probe) {
        probe_geom = analyze_items(d.surface, probe->items, true, -1);
        for (const std::string& p : probe_geom.problems)
            note(out, throwing, "surface geometry", "curve: " + p);
    }

    // Interior-point rule; the projective chart polygon depends on every
    // circle point in the drawing, so it is assembled first.
    std::vector<Point> interior_ok_region;
    bool projective = d.surface == SurfaceKind::ProjectivePlane;
    if (projective) {
        std::vector<Point> circle;
        for (const PathGeom& g : geoms)
            for (const TokenPassage& p : g.passages) {
                circle.push_back(p.exit);
                circle.push_back(p.enter);
            }
        for (const TokenPassage& p : probe_geom.passages) {
            circle.push_back(p.exit);
            circle.push_back(p.enter);
        }
        interior_ok_region = projective_chart_polygon(circle);
    }
    auto check_interior = [&](const Point& p, const std::string& what) {
        if (projective) {
            if (!strictly_inside_convex_polygon(p, interior_ok_region))
                note(out, throwing, "surface geometry",
                     what + " " + pt_str(p) + " not strictly inside the chart polygon");
        } else if (!in_open_square(p)) {
            note(out, throwing, "surface geometry",
                 what + " " + pt_str(p) + " not strictly inside the unit square");
        }
    };
    for (const Vertex& v : d.vertices) check_interior(v.pos, "vertex " + v.id);
    for (size_t i = 0; i < d.edges.size(); ++i)
        for (const Point& p : geoms[i].interior_points)
            check_interior(p, "edge " + d.edges[i].id + " point");
    for (const Point& p : probe_geom.interior_points) check_interior(p, "curve point");
    if (projective) {
        // A chord joining adjacent chart-polygon vertices runs along the
        // boundary complex; the arrangement cannot split faces with it.
        auto check_chord = [&](const DrawnSegment& s, const std::string& what) {
            if (!on_unit_circle(s.a) || !on_unit_circle(s.b)) return;
            Point mid = Rat(1, 2) * (s.a + s.b);
            if (!strictly_inside_convex_polygon(mid, interior_ok_region))
                note(out, throwing, "surface geometry", what + " chord along the chart boundary");
        };
        for (size_t i = 0; i < d.edges.size(); ++i)
            for (const DrawnSegment& s : geoms[i].segments)
                check_chord(s, "edge " + d.edges[i].id);
        for (const DrawnSegment& s : probe_geom.segments) check_chord(s, "curve");
    }

    // Each gluing passage uses a distinct surface point.
    std::map<Point, std::vector<std::string>> passage_users;
    for (size_t i = 0; i < d.edges.size(); ++i)
        for (const TokenPassage& p : geoms[i].passages)
            passage_users[p.key].push_back("edge " + d.edges[i].id);
    for (const TokenPassage& p : probe_geom.passages) passage_users[p.key].push_back("curve");
    for (const auto& [key, users] : passage_users)
        if (users.size() > 1)
            note(out, throwing, "surface geometry",
                 "gluing point " + pt_str(key) + " used by " + std::to_string(users.size()) +
                     " passages");

    // Vertices must stay clear of edge interiors (and of the probe).
    for (const Vertex& v : d.vertices) {
        for (size_t i = 0; i < d.edges.size(); ++i) {
            const PolylineEdge& e = d.edges[i];
            const auto& segs = geoms[i].segments;
            for (const DrawnSegment& s : segs) {
                if (!on_segment(v.pos, s.a, s.b)) continue;
                bool terminal_a = s.seg_index == 0 && e.v1 == v.id && s.a == v.pos;
                bool terminal_b = s.seg_index == static_cast<int>(segs.size()) - 1 &&
                                  e.v2 == v.id && s.b == v.pos;
                if (!terminal_a && !terminal_b)
                    note(out, throwing, "proper drawing",
                         "vertex " + v.id + " lies on edge " + e.id);
            }
        }
        for (const DrawnSegment& s : probe_geom.segments)
            if (on_segment(v.pos, s.a, s.b))
                note(out, throwing, "proper drawing", "curve passes through vertex " + v.id);
    }

    // Pairwise segment relations.
    auto common_positions = [&](const PolylineEdge& a, const PolylineEdge& b) {
        std::vector<Point> pts;
        for (const std::string& va : {a.v1, a.v2})
            for (const std::string& vb : {b.v1, b.v2})
                if (va == vb)
                    if (const Vertex* v = d.find_vertex(va)) pts.push_back(v->pos);
        return pts;
    };
    auto same_owner_pairs = [&](const std::vector<DrawnSegment>& segs, bool cyclic,
                                const std::string& label) {
        size_t m = segs.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                bool index_adjacent = (j == i + 1) || (cyclic && i == 0 && j == m - 1);
                bool joined = index_adjacent &&
                              ((j == i + 1 && segs[i].b == segs[j].a) ||
                               (i == 0 && j == m - 1 && segs[j].b == segs[i].a));
                SegmentHit hit = segment_relation(segs[i].a, segs[i].b, segs[j].a, segs[j].b);
                if (joined) {
                    if (hit.rel == SegmentRelation::Degenerate)
                        note(out, throwing, "edges simple", label + " doubles back on itself");
                    continue;
                }
                switch (hit.rel) {
                case SegmentRelation::Disjoint: break;
                case SegmentRelation::ProperCrossing:
                    // Self-crossing: countable, not degenerate.
                    out.crossings.push_back(
                        Crossing{label == "curve" ? "" : label, label == "curve" ? "" : label, hit.at});
                    if (!throwing)
                        out.findings.push_back(ValidationFinding{
                            "edges simple", label + " crosses itself at " + pt_str(hit.at)});
                    break;
                case SegmentRelation::SharedEndpoint:
                case SegmentRelation::Degenerate:
                    note(out, throwing, "edges simple",
                         label + " touches itself at " + pt_str(hit.at));
                    break;
                }
            }
    };
    for (size_t i = 0; i < d.edges.size(); ++i) {
        bool loop = d.edges[i].v1 == d.edges[i].v2;
        same_owner_pairs(geoms[i].segments, loop, d.edges[i].id);
    }

    auto cross_owner_pairs = [&](const std::vector<DrawnSegment>& sa,
                                 const std::vector<DrawnSegment>& sb,
                                 const std::vector<Point>& allowed, const std::string& la,
                                 const std::string& lb) {
        for (const DrawnSegment& x : sa)
            for (const DrawnSegment& y : sb) {
                SegmentHit hit = segment_relation(x.a, x.b, y.a, y.b);
                switch (hit.rel) {
                case SegmentRelation::Disjoint: break;
                case SegmentRelation::ProperCrossing: {
                    std::string e1 = la, e2 = lb;
                    if (e2 < e1) std::swap(e1, e2);
                    out.crossings.push_back(Crossing{la == "" ? lb : (lb == "" ? la : e1),
                                                     la == "" || lb == "" ? "" : e2, hit.at});
                    break;
                }
                case SegmentRelation::SharedEndpoint:
                    if (std::find(allowed.begin(), allowed.end(), hit.at) == allowed.end())
                        note(out, throwing, "proper drawing",
                             (la.empty() ? std::string("curve") : "edge " + la) + " touches " +
                                 (lb.empty() ? std::string("curve") : "edge " + lb) + " at " +
                                 pt_str(hit.at));
                    break;
                case SegmentRelation::Degenerate:
                    note(out, throwing, "proper drawing",
                         (la.empty() ? std::string("curve") : "edge " + la) +
                             " degenerately meets " +
                             (lb.empty() ? std::string("curve") : "edge " + lb) + " at " +
                             pt_str(hit.at));
                    break;
                }
            }
    };
    for (size_t i = 0; i < d.edges.size(); ++i)
        for (size_t j = i + 1; j < d.edges.size(); ++j)
            cross_owner_pairs(geoms[i].segments, geoms[j].segments,
                              common_positions(d.edges[i], d.edges[j]), d.edges[i].id,
                              d.edges[j].id);
    if (probe) {
        same_owner_pairs(probe_geom.segments, true, "curve");
        // Probe self-crossings are not part of the drawing-vs-curve count.
        std::erase_if(out.crossings,
                      [](const Crossing& c) { return c.edge1.empty() && c.edge2.empty(); });
        for (size_t i = 0; i < d.edges.size(); ++i)
            cross_owner_pairs(geoms[i].segments, probe_geom.segments, {}, d.edges[i].id, "");
    }

    // Triple points: two crossing records sharing a position, or a crossing
    // at a vertex.
    std::map<Point, int> at_point;
    for (const Crossing& c : out.crossings) ++at_point[c.at];
    for (const auto& [p, cnt] : at_point) {
        if (cnt > 1)
            note(out, throwing, "no triple points",
                 std::to_string(cnt) + " crossings share the point " + pt_str(p));
        for (const Vertex& v : d.vertices)
            if (v.pos == p)
                note(out, throwing, "no triple points", "crossing at vertex " + v.id);
    }

    return out;
}

} // namespace

const Vertex* Drawing::find_vertex(const std::string& id) const {
    for (const Vertex& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

const PolylineEdge* Drawing::find_edge(const std::string& id) const {
    for (const PolylineEdge& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

Surface group_surface(SurfaceKind k) {
    switch (k) {
    case SurfaceKind::KleinBottle: return Surface::KleinBottle;
    case SurfaceKind::ProjectivePlane: return Surface::ProjectivePlane;
    default: throw precondition_error("the plane has no gluing alphabet");
    }
}

bool token_exit_matches(SurfaceKind s, GluingToken t, const Point& p) {
    if (s == SurfaceKind::ProjectivePlane) return t == GluingToken::Z && on_unit_circle(p);
    if (s != SurfaceKind::KleinBottle) return false;
    switch (t) {
    case GluingToken::VPlus: return p.x == 1 && p.y > 0 && p.y < 1;
    case GluingToken::VMinus: return p.x == 0 && p.y > 0 && p.y < 1;
    case GluingToken::HPlus: return p.y == 1 && p.x > 0 && p.x < 1;
    case GluingToken::HMinus: return p.y == 0 && p.x > 0 && p.x < 1;
    case GluingToken::Z: return false;
    }
    return false;
}

Point token_enter_point(SurfaceKind s, GluingToken t, const Point& e) {
    if (s == SurfaceKind::ProjectivePlane) return Point{-e.x, -e.y};
    switch (t) {
    case GluingToken::VPlus: return Point{0, e.y};
    case GluingToken::VMinus: return Point{1, e.y};
    case GluingToken::HPlus: return Point{1 - e.x, 0};
    case GluingToken::HMinus: return Point{1 - e.x, 1};
    default: throw precondition_error("token outside the Klein bottle alphabet");
    }
}

Point boundary_key(SurfaceKind s, const Point& p) {
    if (s == SurfaceKind::ProjectivePlane) {
        Point n{-p.x, -p.y};
        return p < n ? p : n;
    }
    Point r = p;
    if (r.y == 1) r = Point{1 - r.x, 0};
    if (r.x == 1) r = Point{0, r.y};
    return r;
}

std::vector<Point> projective_chart_polygon(const std::vector<Point>& circle_points) {
    std::vector<Point> pts = projective_anchors();
    for (const Point& p : circle_points) {
        pts.push_back(p);
        pts.push_back(Point{-p.x, -p.y});
    }
    std::sort(pts.begin(), pts.end(), direction_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<Point> projective_chart_polygon(const Drawing& d) {
    std::vector<Point> circle;
    for (size_t i = 0; i < d.edges.size(); ++i) {
        EdgeGeometry g = edge_geometry(d, static_cast<int>(i));
        for (const TokenPassage& p : g.passages) {
            circle.push_back(p.exit);
            circle.push_back(p.enter);
        }
    }
    return projective_chart_polygon(circle);
}

EdgeGeometry edge_geometry(const Drawing& d, int edge_index) {
    if (edge_index < 0 || edge_index >= static_cast<int>(d.edges.size()))
        throw precondition_error("edge index out of range");
    std::string problem;
    std::vector<PathItem> items = full_edge_items(d, d.edges[edge_index], &problem);
    if (items.empty()) throw degenerate_error(problem);
    PathGeom g = analyze_items(d.surface, items, false, edge_index);
    if (!g.problems.empty())
        throw degenerate_error("edge " + d.edges[edge_index].id + ": " + g.problems.front());
    return EdgeGeometry{std::move(g.segments), std::move(g.passages)};
}

EdgeGeometry curve_geometry(const ClosedCurve& c) {
    PathGeom g = analyze_items(c.surface, c.items, true, -1);
    if (!g.problems.empty()) throw degenerate_error("curve: " + g.problems.front());
    return EdgeGeometry{std::move(g.segments), std::move(g.passages)};
}

std::vector<ValidationFinding> validate(const Drawing& d) {
    Interaction ia = interact(d, nullptr, false);
    std::vector<ValidationFinding> out = std::move(ia.findings);

    // Crossing multiplicity rules need per-pair totals.
    std::map<std::pair<std::string, std::string>, int> per_pair;
    for (const Crossing& c : ia.crossings)
        if (c.edge1 != c.edge2) ++per_pair[{c.edge1, c.edge2}];
    for (const auto& [pair, cnt] : per_pair) {
        const PolylineEdge* e1 = d.find_edge(pair.first);
        const PolylineEdge* e2 = d.find_edge(pair.second);
        if (!e1 || !e2) continue;
        bool incident = e1->v1 == e2->v1 || e1->v1 == e2->v2 || e1->v2 == e2->v1 ||
                        e1->v2 == e2->v2;
        if (incident)
            out.push_back(ValidationFinding{"incident edges do not cross",
                                            pair.first + " and " + pair.second + " cross"});
        else if (cnt > 1)
            out.push_back(
                ValidationFinding{"non-incident edges cross at most once",
                                  pair.first + " and " + pair.second + " cross " +
                                      std::to_string(cnt) + " times"});
    }
    return out;
}

std::vector<ValidationFinding> validate_curve(const ClosedCurve& c) {
    std::vector<ValidationFinding> out;
    PathGeom g = analyze_items(c.surface, c.items, true, -1);
    for (const std::string& p : g.problems)
        out.push_back(ValidationFinding{"surface geometry", p});
    if (c.surface == SurfaceKind::ProjectivePlane) {
        std::vector<Point> circle;
        for (const TokenPassage& p : g.passages) {
            circle.push_back(p.exit);
            circle.push_back(p.enter);
        }
        std::vector<Point> poly = projective_chart_polygon(circle);
        for (const Point& p : g.interior_points)
            if (!strictly_inside_convex_polygon(p, poly))
                out.push_back(ValidationFinding{
                    "surface geometry", "point " + pt_str(p) + " not strictly inside the chart"});
    } else {
        for (const Point& p : g.interior_points)
            if (!in_open_square(p))
                out.push_back(ValidationFinding{
                    "surface geometry", "point " + pt_str(p) + " not strictly inside the square"});
    }
    std::map<Point, int> keys;
    for (const TokenPassage& p : g.passages) ++keys[p.key];
    for (const auto& [k, cnt] : keys)
        if (cnt > 1)
            out.push_back(ValidationFinding{"surface geometry",
                                            "gluing point " + pt_str(k) + " used twice"});
    return out;
}

CrossingReport crossing_count_all(const Drawing& d) {
    Interaction ia = interact(d, nullptr, true);
    return CrossingReport{static_cast<long long>(ia.crossings.size()), std::move(ia.crossings)};
}

CrossingReport crossing_count_between_parts(const Drawing& d) {
    Interaction ia = interact(d, nullptr, true);
    auto part_of = [&](const std::string& id) {
        const PolylineEdge* e = d.find_edge(id);
        return e ? e->part : PartLabel::None;
    };
    CrossingReport rep;
    for (Crossing& c : ia.crossings) {
        PartLabel p1 = part_of(c.edge1), p2 = part_of(c.edge2);
        bool between = (p1 == PartLabel::H && p2 == PartLabel::K) ||
                       (p1 == PartLabel::K && p2 == PartLabel::H);
        if (between) rep.list.push_back(std::move(c));
    }
    rep.count = static_cast<long long>(rep.list.size());
    return rep;
}

CrossingReport crossing_count_with_curve(const Drawing& d, const ClosedCurve& c) {
    Interaction ia = interact(d, &c, true);
    CrossingReport rep;
    for (Crossing& x : ia.crossings)
        if (x.edge2.empty() && !x.edge1.empty()) rep.list.push_back(std::move(x));
    rep.count = static_cast<long long>(rep.list.size());
    return rep;
}

long long curve_self_crossings(const ClosedCurve& c) {
    EdgeGeometry g = curve_geometry(c);
    long long count = 0;
    size_t m = g.segments.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            const DrawnSegment& x = g.segments[i];
            const DrawnSegment& y = g.segments[j];
            bool joined = (j == i + 1 && x.b == y.a) || (i == 0 && j == m - 1 && y.b == x.a);
            SegmentHit hit = segment_relation(x.a, x.b, y.a, y.b);
            if (joined) {
                if (hit.rel == SegmentRelation::Degenerate)
                    throw degenerate_error("curve doubles back on itself");
                continue;
            }
            switch (hit.rel) {
            case SegmentRelation::Disjoint: break;
            case SegmentRelation::ProperCrossing: ++count; break;
            default: throw degenerate_error("curve touches itself at " + pt_str(hit.at));
            }
        }
    // Distinct gluing passages may not share a surface point.
    std::map<Point, int> keys;
    for (const TokenPassage& p : g.passages)
        if (++keys[p.key] > 1) throw degenerate_error("curve reuses a gluing point");
    return count;
}

long long curve_pair_crossings(const ClosedCurve& a, const ClosedCurve& b) {
    if (a.surface != b.surface) throw precondition_error("curves on different surfaces");
    EdgeGeometry ga = curve_geometry(a);
    EdgeGeometry gb = curve_geometry(b);
    std::map<Point, int> keys;
    for (const TokenPassage& p : ga.passages) ++keys[p.key];
    for (const TokenPassage& p : gb.passages) ++keys[p.key];
    for (const auto& [k, cnt] : keys)
        if (cnt > 1) throw degenerate_error("curves share the gluing point " + pt_str(k));
    long long count = 0;
    for (const DrawnSegment& x : ga.segments)
        for (const DrawnSegment& y : gb.segments) {
            SegmentHit hit = segment_relation(x.a, x.b, y.a, y.b);
            if (hit.rel == SegmentRelation::ProperCrossing) ++count;
            else if (hit.rel != SegmentRelation::Disjoint)
                throw degenerate_error("curves touch at " + pt_str(hit.at));
        }
    return count;
}

namespace {

Letter token_letter(GluingToken t) {
    switch (t) {
    case GluingToken::HPlus: return Letter::X;
    case GluingToken::HMinus: return Letter::Xinv;
    case GluingToken::VPlus: return Letter::Y;
    case GluingToken::VMinus: return Letter::Yinv;
    case GluingToken::Z: return Letter::Z;
    }
    throw precondition_error("bad token");
}

} // namespace

Word edge_word(const PolylineEdge& e, SurfaceKind s) {
    Word w;
    for (const PathItem& it : e.path)
        if (it.is_token) {
            if (s == SurfaceKind::Plane) throw precondition_error("tokens on the plane");
            w.push_back(token_letter(it.tok));
        }
    return w;
}

Word loop_word(const ClosedCurve& c) {
    Word w;
    for (const PathItem& it : c.items)
        if (it.is_token) {
            if (c.surface == SurfaceKind::Plane) throw precondition_error("tokens on the plane");
            w.push_back(token_letter(it.tok));
        }
    return w;
}

CanonicalClass curve_class(const ClosedCurve& c) {
    if (c.surface == SurfaceKind::Plane)
        throw precondition_error("plane curves have no surface class");
    return canonicalize(normalize(loop_word(c), group_surface(c.surface)));
}

ClosedCurve reference_curve(CurveType t) {
    ClosedCurve c;
    c.surface = SurfaceKind::KleinBottle;
    auto P = [](Rat x, Rat y) { return PathItem::point(Point{std::move(x), std::move(y)}); };
    auto T = [](GluingToken g) { return PathItem::token(g); };
    switch (t) {
    case CurveType::A:
        c.items = {P(Rat(1, 2), 1), T(GluingToken::HPlus), P(Rat(1, 2), 0)};
        break;
    case CurveType::B:
        c.items = {P(Rat(1, 8), 1), T(GluingToken::HPlus), P(Rat(7, 8), 0),
                   P(Rat(7, 8), Rat(1, 4)), P(1, Rat(1, 4)), T(GluingToken::VPlus),
                   P(0, Rat(1, 4)), P(Rat(1, 8), Rat(1, 4))};
        break;
    case CurveType::M:
        c.items = {P(1, Rat(1, 2)), T(GluingToken::VPlus), P(0, Rat(1, 2))};
        break;
    case CurveType::E:
        c.items = {P(Rat(1, 4), 1), T(GluingToken::HPlus), P(Rat(3, 4), 0), P(Rat(3, 4), 1),
                   T(GluingToken::HPlus), P(Rat(1, 4), 0)};
        break;
    default: throw precondition_error("reference_curve wants one of A, B, M, E");
    }
    return c;
}

namespace {

// Item indices at which a drawn segment starts, in curve_geometry order.
std::vector<size_t> segment_start_items(const ClosedCurve& c) {
    size_t n = c.items.size();
    std::vector<size_t> starts;
    for (size_t i = 0; i < n; ++i)
        if (!c.items[i].is_token && !c.items[(i + 1) % n].is_token) starts.push_back(i);
    return starts;
}

Drawing curve_as_drawing_at(const ClosedCurve& c, size_t start_item, const Point& split,
                            const std::string& vertex_id, const std::string& edge_id,
                            PartLabel part) {
    size_t n = c.items.size();
    Drawing d;
    d.surface = c.surface;
    d.vertices.push_back(Vertex{vertex_id, split, part});
    PolylineEdge e;
    e.id = edge_id;
    e.v1 = e.v2 = vertex_id;
    e.part = part;
    for (size_t off = 1; off <= n; ++off) e.path.push_back(c.items[(start_item + off) % n]);
    d.edges.push_back(std::move(e));
    return d;
}

} // namespace

Drawing reference_drawing(CurveType t) {
    // Vertices frozen off every other reference curve's trace, so any subset
    // of the four can share one drawing.
    std::string name;
    int seg = 0;
    Rat param;
    switch (t) {
    case CurveType::A: name = "a", seg = 0, param = Rat(1, 4); break;
    case CurveType::B: name = "b", seg = 3, param = Rat(1, 6); break;
    case CurveType::M: name = "m", seg = 0, param = Rat(3, 8); break;
    case CurveType::E: name = "e", seg = 1, param = Rat(5, 8); break;
    default: throw precondition_error("reference_drawing wants one of A, B, M, E");
    }
    return curve_as_drawing_split(reference_curve(t), seg, param, name + "0", name,
                                  PartLabel::None);
}

Drawing curve_as_drawing(const ClosedCurve& c, const std::string& vertex_id,
                         const std::string& edge_id, PartLabel part) {
    return curve_as_drawing_split(c, 0, Rat(1, 2), vertex_id, edge_id, part);
}

Drawing curve_as_drawing_split(const ClosedCurve& c, int seg_index, const Rat& t,
                               const std::string& vertex_id, const std::string& edge_id,
                               PartLabel part) {
    if (!(t > 0 && t < 1)) throw precondition_error("split parameter must be in (0,1)");
    std::vector<size_t> starts = segment_start_items(c);
    if (seg_index < 0 || seg_index >= static_cast<int>(starts.size()))
        throw precondition_error("segment index out of range");
    size_t k = starts[seg_index];
    const Point& a = c.items[k].pt;
    const Point& b = c.items[(k + 1) % c.items.size()].pt;
    Point split = a + t * (b - a);
    return curve_as_drawing_at(c, k, split, vertex_id, edge_id, part);
}

ClosedCurve edge_as_curve(const Drawing& d, const PolylineEdge& e) {
    if (e.v1 != e.v2) throw precondition_error("edge is not a loop");
    const Vertex* v = d.find_vertex(e.v1);
    if (!v) throw precondition_error("loop vertex missing");
    ClosedCurve c;
    c.surface = d.surface;
    c.items.push_back(PathItem::point(v->pos));
    c.items.insert(c.items.end(), e.path.begin(), e.path.end());
    return c;
}

} // namespace kleinsep
