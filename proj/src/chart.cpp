#include "kleinsep/chartcomplex.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace kleinsep {

namespace {

struct GlobalSeg {
    int strand = -1;
    int seg = -1;
    Point a;
    Point b;
    std::vector<Point> cuts; // interior division points
};

// Vertical line x = c meets the segment interior: requires a strict x-span.
bool seg_spans_x(const GlobalSeg& s, const Rat& x) {
    const Rat& lo = s.a.x < s.b.x ? s.a.x : s.b.x;
    const Rat& hi = s.a.x < s.b.x ? s.b.x : s.a.x;
    return lo < x && x < hi;
}

Rat y_at_x(const Point& a, const Point& b, const Rat& x) {
    Rat t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) {
        for (int i = 0; i < n; ++i) up[i] = i;
    }
    int find(int a) {
        while (up[a] != a) a = up[a] = up[up[a]];
        return a;
    }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

std::pair<Point, Point> sorted_pair(const Point& u, const Point& v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

} // namespace

int ChartComplex::vertex_id(const Point& p) const {
    auto it = point_index.find(p);
    return it == point_index.end() ? -1 : it->second;
}

int ChartComplex::he_origin(int he) const {
    const ChartEdge& e = edges[he_edge(he)];
    return (he & 1) ? e.b : e.a;
}

int ChartComplex::he_target(int he) const {
    const ChartEdge& e = edges[he_edge(he)];
    return (he & 1) ? e.a : e.b;
}

int ChartComplex::next_in_face(int he) const {
    int v = he_target(he);
    int opp = he_opposite(he);
    const std::vector<int>& rot = rotation[v];
    int idx = he_rot_index[opp];
    int n = static_cast<int>(rot.size());
    return rot[(idx + n - 1) % n];
}

int ChartComplex::find_face(const Point& p) const {
    for (size_t f = 0; f < faces.size(); ++f) {
        const ChartFace& face = faces[f];
        std::vector<Point> poly;
        poly.reserve(face.vertices.size());
        for (int v : face.vertices) poly.push_back(verts[v]);
        if (strictly_inside_convex_polygon(p, poly)) return static_cast<int>(f);
    }
    return -1;
}

ChartComplex build_chart_complex(const Drawing& d, const std::vector<ClosedCurve>& probes) {
    ChartComplex cc;
    cc.surface = d.surface;
    const bool klein = d.surface == SurfaceKind::KleinBottle;
    const bool projective = d.surface == SurfaceKind::ProjectivePlane;
    const bool plane = d.surface == SurfaceKind::Plane;

    // Strand geometry: drawing edges first, then probes.
    std::vector<EdgeGeometry> strands;
    for (size_t i = 0; i < d.edges.size(); ++i)
        strands.push_back(edge_geometry(d, static_cast<int>(i)));
    cc.n_edge_strands = static_cast<int>(strands.size());
    for (const ClosedCurve& c : probes) {
        if (c.surface != d.surface)
            throw precondition_error("probe curve drawn on a different surface");
        strands.push_back(curve_geometry(c));
    }

    for (const EdgeGeometry& g : strands)
        for (const TokenPassage& p : g.passages) {
            bool corner = (p.exit.x == 0 || p.exit.x == 1) && (p.exit.y == 0 || p.exit.y == 1);
            if (klein && corner) throw degenerate_error("chart: gluing passage at a corner");
        }

    // Chart polygon: the unit square, or the circle-point polygon.
    std::vector<Point> polygon;
    if (projective) {
        std::vector<Point> circle;
        for (const EdgeGeometry& g : strands)
            for (const TokenPassage& p : g.passages) {
                circle.push_back(p.exit);
                circle.push_back(p.enter);
            }
        polygon = projective_chart_polygon(circle);
    } else {
        polygon = {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
    }
    std::set<Point> polygon_verts(polygon.begin(), polygon.end());
    cc.chart_polygon = polygon;

    // Flat segment list.
    std::vector<GlobalSeg> segs;
    std::vector<int> strand_seg_count(strands.size(), 0);
    for (size_t s = 0; s < strands.size(); ++s) {
        strand_seg_count[s] = static_cast<int>(strands[s].segments.size());
        if (strand_seg_count[s] == 0) throw degenerate_error("chart: empty strand");
        for (int k = 0; k < strand_seg_count[s]; ++k) {
            const DrawnSegment& ds = strands[s].segments[k];
            segs.push_back(GlobalSeg{static_cast<int>(s), k, ds.a, ds.b, {}});
        }
    }

    std::set<Point> vertex_positions;
    std::map<Point, int> drawing_vertex_at;
    for (size_t i = 0; i < d.vertices.size(); ++i) {
        if (!vertex_positions.insert(d.vertices[i].pos).second)
            throw degenerate_error("chart: two vertices share a position");
        drawing_vertex_at[d.vertices[i].pos] = static_cast<int>(i);
    }

    // Vertices sitting on foreign segments make the subdivision ambiguous.
    for (const Vertex& v : d.vertices)
        for (const GlobalSeg& s : segs) {
            if (strictly_inside_segment(v.pos, s.a, s.b))
                throw degenerate_error("chart: vertex inside a segment");
            if (v.pos == s.a || v.pos == s.b) {
                if (s.strand >= cc.n_edge_strands)
                    throw degenerate_error("chart: probe through a vertex");
                const PolylineEdge& e = d.edges[s.strand];
                if (e.v1 != v.id && e.v2 != v.id)
                    throw degenerate_error("chart: edge corner at a foreign vertex");
            }
        }

    // Pairwise crossings.
    std::map<Point, int> crossing_at;
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            GlobalSeg& si = segs[i];
            GlobalSeg& sj = segs[j];
            SegmentHit hit = segment_relation(si.a, si.b, sj.a, sj.b);
            if (hit.rel == SegmentRelation::Disjoint) continue;
            if (hit.rel == SegmentRelation::Degenerate)
                throw degenerate_error("chart: tangent or overlapping segments");
            if (hit.rel == SegmentRelation::SharedEndpoint) {
                if (si.strand == sj.strand) {
                    bool adjacent = sj.seg == si.seg + 1;
                    bool wrap = si.seg == 0 && sj.seg == strand_seg_count[si.strand] - 1;
                    bool at_vertex = vertex_positions.count(hit.at) > 0 &&
                                     si.strand < cc.n_edge_strands;
                    if (!adjacent && !wrap && !at_vertex)
                        throw degenerate_error("chart: strand touches itself");
                } else {
                    bool both_edges = si.strand < cc.n_edge_strands &&
                                      sj.strand < cc.n_edge_strands;
                    if (!both_edges || !vertex_positions.count(hit.at))
                        throw degenerate_error("chart: strands touch outside a vertex");
                }
                continue;
            }
            // Proper crossing; a repeat point would be a triple point.
            auto ins = crossing_at.emplace(hit.at, static_cast<int>(cc.crossings.size()));
            if (!ins.second) throw degenerate_error("chart: triple point");
            cc.crossings.push_back(ChartCrossing{si.strand, sj.strand, -1});
            si.cuts.push_back(hit.at);
            sj.cuts.push_back(hit.at);
        }

    // Base vertex set, before walls.
    std::set<Point> pts;
    std::map<Rat, std::set<Rat>> ys_at;
    auto add_pt = [&](const Point& p) {
        if (pts.insert(p).second) ys_at[p.x].insert(p.y);
    };
    for (const Point& p : polygon) add_pt(p);
    for (const GlobalSeg& s : segs) {
        add_pt(s.a);
        add_pt(s.b);
        for (const Point& c : s.cuts) add_pt(c);
    }
    for (const Vertex& v : d.vertices) add_pt(v.pos);

    // Wall shooting from every interior base vertex, both directions. Feet
    // subdivide whatever they land on and are mirrored across the gluing;
    // they never shoot walls themselves.
    std::vector<Point> shooters;
    for (const Point& p : pts) {
        bool interior = projective ? polygon_verts.count(p) == 0
                                   : (p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1);
        if (interior) shooters.push_back(p);
    }

    int n_polygon = static_cast<int>(polygon.size());
    std::map<Point, int> polygon_index;
    for (int k = 0; k < n_polygon; ++k) polygon_index[polygon[k]] = k;
    std::vector<std::vector<Point>> chord_cuts(projective ? n_polygon : 0);
    auto antipodal_chord = [&](int k) {
        auto it = polygon_index.find(Point{-polygon[k].x, -polygon[k].y});
        if (it == polygon_index.end()) throw error("chart: polygon not antipode-closed");
        return it->second;
    };

    std::set<std::pair<Point, Point>> wall_pairs;
    for (const Point& v : shooters) {
        for (int dir : {1, -1}) {
            bool have = false;
            Rat best_y = 0;
            auto consider = [&](const Rat& y) {
                if ((y - v.y) * dir <= 0) return;
                if (!have || (y - best_y) * dir < 0) {
                    best_y = y;
                    have = true;
                }
            };
            // Existing vertices on the vertical line.
            auto git = ys_at.find(v.x);
            if (git != ys_at.end())
                for (const Rat& y : git->second) consider(y);
            // Segment interiors.
            int hit_seg = -1;
            for (size_t s = 0; s < segs.size(); ++s)
                if (seg_spans_x(segs[s], v.x)) {
                    Rat y = y_at_x(segs[s].a, segs[s].b, v.x);
                    Rat before = best_y;
                    bool had = have;
                    consider(y);
                    if (have && (!had || best_y != before)) hit_seg = static_cast<int>(s);
                }
            // Chart boundary.
            int hit_chord = -1;
            if (projective) {
                for (int k = 0; k < n_polygon; ++k) {
                    const Point& a = polygon[k];
                    const Point& b = polygon[(k + 1) % n_polygon];
                    Rat lo = a.x < b.x ? a.x : b.x;
                    Rat hi = a.x < b.x ? b.x : a.x;
                    if (!(lo < v.x && v.x < hi)) continue;
                    Rat y = y_at_x(a, b, v.x);
                    Rat before = best_y;
                    bool had = have;
                    consider(y);
                    if (have && (!had || best_y != before)) {
                        hit_chord = k;
                        hit_seg = -1;
                    }
                }
            } else {
                Rat by = dir > 0 ? 1 : 0;
                Rat before = best_y;
                bool had = have;
                consider(by);
                if (have && (!had || best_y != before)) hit_seg = -1;
            }
            if (!have) throw error("chart: wall ray escaped");
            Point foot{v.x, best_y};
            if (pts.count(foot)) {
                wall_pairs.insert(sorted_pair(v, foot));
                continue;
            }
            if (hit_seg >= 0) {
                segs[hit_seg].cuts.push_back(foot);
                add_pt(foot);
            } else {
                // New boundary point: mirror it across the gluing.
                add_pt(foot);
                if (projective) {
                    if (hit_chord < 0) throw error("chart: boundary foot off the polygon");
                    chord_cuts[hit_chord].push_back(foot);
                    int t = antipodal_chord(hit_chord);
                    Point mirror{-foot.x, -foot.y};
                    if (!pts.count(mirror)) {
                        add_pt(mirror);
                        chord_cuts[t].push_back(mirror);
                    }
                } else if (klein) {
                    Point mirror{1 - foot.x, best_y == 1 ? Rat(0) : Rat(1)};
                    add_pt(mirror);
                }
            }
            wall_pairs.insert(sorted_pair(v, foot));
        }
    }

    // Vertex table.
    int nv = 0;
    for (const Point& p : pts) cc.point_index[p] = nv++;
    cc.verts.resize(nv);
    cc.vert_drawing_vertex.assign(nv, -1);
    cc.vert_on_boundary.assign(nv, false);
    for (const auto& [p, id] : cc.point_index) {
        cc.verts[id] = p;
        auto it = drawing_vertex_at.find(p);
        if (it != drawing_vertex_at.end()) cc.vert_drawing_vertex[id] = it->second;
        if (projective)
            cc.vert_on_boundary[id] = polygon_verts.count(p) > 0 ||
                                      on_convex_polygon_boundary(p, polygon);
        else
            cc.vert_on_boundary[id] = p.x == 0 || p.x == 1 || p.y == 0 || p.y == 1;
    }
    for (auto& cr : cc.crossings) cr.vertex = -1;
    for (const auto& [p, k] : crossing_at) cc.crossings[k].vertex = cc.point_index.at(p);

    // Edges. Content first so that walls duplicating a vertical piece defer.
    std::map<std::pair<Point, Point>, int> edge_at;
    auto add_edge = [&](const Point& u, const Point& w, ChartEdge proto) {
        auto key = sorted_pair(u, w);
        auto it = edge_at.find(key);
        if (it != edge_at.end()) {
            if (proto.kind == ChartEdgeKind::Wall) return it->second;
            throw degenerate_error("chart: coincident edges");
        }
        proto.a = cc.point_index.at(u);
        proto.b = cc.point_index.at(w);
        int id = static_cast<int>(cc.edges.size());
        cc.edges.push_back(proto);
        edge_at[key] = id;
        return id;
    };

    auto along_sorter = [](const Point& a, const Point& b) {
        Point dv = b - a;
        return [a, dv](const Point& u, const Point& w) {
            return dot(u - a, dv) < dot(w - a, dv);
        };
    };

    // Content pieces, recorded per segment for the strand chains.
    std::vector<std::vector<Point>> seg_division(segs.size());
    for (size_t s = 0; s < segs.size(); ++s) {
        GlobalSeg& g = segs[s];
        std::vector<Point>& div = seg_division[s];
        div.push_back(g.a);
        for (const Point& c : g.cuts) div.push_back(c);
        div.push_back(g.b);
        std::sort(div.begin() + 1, div.end() - 1, along_sorter(g.a, g.b));
        div.erase(std::unique(div.begin(), div.end()), div.end());
        ChartEdge proto;
        proto.kind = ChartEdgeKind::Content;
        proto.strand = g.strand;
        for (size_t k = 0; k + 1 < div.size(); ++k) add_edge(div[k], div[k + 1], proto);
    }

    for (const auto& [u, w] : wall_pairs) {
        ChartEdge proto;
        proto.kind = ChartEdgeKind::Wall;
        add_edge(u, w, proto);
    }

    // Boundary edges with gluing twins.
    std::vector<std::pair<int, std::pair<Point, Point>>> twin_wanted;
    if (projective) {
        for (int k = 0; k < n_polygon; ++k) {
            std::vector<Point> div{polygon[k], polygon[(k + 1) % n_polygon]};
            for (const Point& c : chord_cuts[k]) div.insert(div.end() - 1, c);
            std::sort(div.begin() + 1, div.end() - 1, along_sorter(div.front(), div.back()));
            ChartEdge proto;
            proto.kind = ChartEdgeKind::Boundary;
            proto.letter_out = Letter::Z;
            for (size_t i = 0; i + 1 < div.size(); ++i) {
                int id = add_edge(div[i], div[i + 1], proto);
                Point ta{-div[i].x, -div[i].y};
                Point tb{-div[i + 1].x, -div[i + 1].y};
                twin_wanted.push_back({id, sorted_pair(ta, tb)});
            }
        }
    } else {
        std::vector<Rat> bot, top, lef, rig;
        for (const Point& p : pts) {
            if (p.y == 0) bot.push_back(p.x);
            if (p.y == 1) top.push_back(p.x);
            if (p.x == 0) lef.push_back(p.y);
            if (p.x == 1) rig.push_back(p.y);
        }
        for (auto* v : {&bot, &top, &lef, &rig}) std::sort(v->begin(), v->end());
        if (klein) {
            for (const Rat& x : bot)
                if (!pts.count(Point{1 - x, 1})) throw error("chart: gluing not closed");
            for (const Rat& y : lef)
                if (!pts.count(Point{1, y})) throw error("chart: gluing not closed");
        }
        auto side = [&](const std::vector<Rat>& ts, bool horizontal, const Rat& fixed,
                        Letter out) {
            for (size_t i = 0; i + 1 < ts.size(); ++i) {
                Point u = horizontal ? Point{ts[i], fixed} : Point{fixed, ts[i]};
                Point w = horizontal ? Point{ts[i + 1], fixed} : Point{fixed, ts[i + 1]};
                ChartEdge proto;
                proto.kind = ChartEdgeKind::Boundary;
                proto.letter_out = out;
                int id = add_edge(u, w, proto);
                if (klein) {
                    Point tu = horizontal ? Point{1 - u.x, 1 - fixed} : Point{1 - fixed, u.y};
                    Point tw = horizontal ? Point{1 - w.x, 1 - fixed} : Point{1 - fixed, w.y};
                    twin_wanted.push_back({id, sorted_pair(tu, tw)});
                }
            }
        };
        side(bot, true, 0, Letter::Xinv);
        side(top, true, 1, Letter::X);
        side(rig, false, 1, Letter::Y);
        side(lef, false, 0, Letter::Yinv);
    }
    for (const auto& [id, key] : twin_wanted) {
        auto it = edge_at.find(key);
        if (it == edge_at.end()) throw error("chart: missing twin edge");
        cc.edges[id].twin = it->second;
    }
    for (size_t e = 0; e < cc.edges.size(); ++e)
        if (cc.edges[e].twin >= 0 &&
            (cc.edges[cc.edges[e].twin].twin != static_cast<int>(e) ||
             cc.edges[e].twin == static_cast<int>(e)))
            throw error("chart: twin pairing broken");

    // No edge may pass through a vertex of the complex.
    for (const ChartEdge& e : cc.edges)
        for (const auto& [p, id] : cc.point_index)
            if (strictly_inside_segment(p, cc.verts[e.a], cc.verts[e.b]))
                throw error("chart: vertex inside an edge");

    // Rotations, ccw.
    int ne = static_cast<int>(cc.edges.size());
    cc.rotation.assign(nv, {});
    for (int e = 0; e < ne; ++e) {
        cc.rotation[cc.edges[e].a].push_back(2 * e);
        cc.rotation[cc.edges[e].b].push_back(2 * e + 1);
    }
    cc.he_rot_index.assign(2 * ne, -1);
    for (int v = 0; v < nv; ++v) {
        std::vector<int>& rot = cc.rotation[v];
        std::sort(rot.begin(), rot.end(), [&](int h1, int h2) {
            Point d1 = cc.verts[cc.he_target(h1)] - cc.verts[v];
            Point d2 = cc.verts[cc.he_target(h2)] - cc.verts[v];
            return direction_less(d1, d2);
        });
        for (size_t i = 0; i < rot.size(); ++i) {
            if (i > 0) {
                Point d1 = cc.verts[cc.he_target(rot[i - 1])] - cc.verts[v];
                Point d2 = cc.verts[cc.he_target(rot[i])] - cc.verts[v];
                if (!direction_less(d1, d2)) throw error("chart: parallel edges at a vertex");
            }
            cc.he_rot_index[rot[i]] = static_cast<int>(i);
        }
        if (rot.size() == 1) throw error("chart: dangling vertex");
    }

    // Faces: trace ccw cycles, interior on the left.
    cc.he_face.assign(2 * ne, -2);
    int outer_cycles = 0;
    for (int he = 0; he < 2 * ne; ++he) {
        if (cc.he_face[he] != -2) continue;
        std::vector<int> cyc;
        int cur = he;
        do {
            cyc.push_back(cur);
            cc.he_face[cur] = -3;
            cur = cc.next_in_face(cur);
        } while (cur != he);
        Rat area2 = 0;
        for (size_t i = 0; i < cyc.size(); ++i) {
            const Point& p = cc.verts[cc.he_origin(cyc[i])];
            const Point& q = cc.verts[cc.he_origin(cyc[(i + 1) % cyc.size()])];
            area2 += p.x * q.y - p.y * q.x;
        }
        if (area2 < 0) {
            ++outer_cycles;
            for (int h : cyc) cc.he_face[h] = -1;
            continue;
        }
        if (area2 == 0) throw error("chart: flat face");
        ChartFace face;
        face.half_edges = cyc;
        Rat sx = 0, sy = 0;
        for (int h : cyc) {
            face.vertices.push_back(cc.he_origin(h));
            sx += cc.verts[cc.he_origin(h)].x;
            sy += cc.verts[cc.he_origin(h)].y;
        }
        Rat inv = Rat(1) / Rat(static_cast<long long>(cyc.size()));
        face.inside = Point{sx * inv, sy * inv};
        size_t n = face.vertices.size();
        for (size_t i = 0; i < n; ++i) {
            const Point& a = cc.verts[face.vertices[(i + n - 1) % n]];
            const Point& b = cc.verts[face.vertices[i]];
            const Point& c = cc.verts[face.vertices[(i + 1) % n]];
            if (orientation(a, b, c) < 0) throw error("chart: reflex face");
        }
        int fid = static_cast<int>(cc.faces.size());
        for (int h : cyc) cc.he_face[h] = fid;
        cc.faces.push_back(std::move(face));
    }
    if (outer_cycles != 1) throw error("chart: complex not connected");
    for (int e = 0; e < ne; ++e)
        if (cc.he_face[2 * e] == cc.he_face[2 * e + 1]) throw error("chart: bridge edge");

    // Face classes: only content separates regions of the surface.
    int nf = static_cast<int>(cc.faces.size());
    UnionFind face_uf(nf);
    for (int e = 0; e < ne; ++e) {
        const ChartEdge& ce = cc.edges[e];
        int f1 = cc.he_face[2 * e];
        int f2 = cc.he_face[2 * e + 1];
        if (ce.kind == ChartEdgeKind::Wall) {
            if (f1 < 0 || f2 < 0) throw error("chart: wall on the outer face");
            face_uf.unite(f1, f2);
        } else if (ce.kind == ChartEdgeKind::Boundary && ce.twin >= 0) {
            int inner = f1 >= 0 ? f1 : f2;
            int t1 = cc.he_face[2 * ce.twin];
            int t2 = cc.he_face[2 * ce.twin + 1];
            int tinner = t1 >= 0 ? t1 : t2;
            if (inner < 0 || tinner < 0) throw error("chart: boundary without inner face");
            face_uf.unite(inner, tinner);
        }
    }
    cc.face_class.assign(nf, -1);
    std::map<int, int> class_of_root;
    for (int f = 0; f < nf; ++f) {
        int r = face_uf.find(f);
        auto it = class_of_root.find(r);
        if (it == class_of_root.end())
            it = class_of_root.emplace(r, static_cast<int>(class_of_root.size())).first;
        cc.face_class[f] = it->second;
    }
    cc.n_face_classes = static_cast<int>(class_of_root.size());

    // Euler characteristic of the glued complex.
    UnionFind vert_uf(nv);
    if (!plane) {
        std::map<Point, int> by_key;
        for (int v = 0; v < nv; ++v) {
            if (!cc.vert_on_boundary[v]) continue;
            Point key = boundary_key(d.surface, cc.verts[v]);
            auto it = by_key.find(key);
            if (it == by_key.end()) by_key[key] = v;
            else vert_uf.unite(v, it->second);
        }
    }
    std::set<int> vroots;
    for (int v = 0; v < nv; ++v) vroots.insert(vert_uf.find(v));
    long long eorb = 0;
    for (int e = 0; e < ne; ++e) {
        const ChartEdge& ce = cc.edges[e];
        if (ce.kind == ChartEdgeKind::Boundary && ce.twin >= 0 && ce.twin < e) continue;
        ++eorb;
    }
    cc.chi = static_cast<long long>(vroots.size()) - eorb + nf + (plane ? 1 : 0);
    long long want = klein ? 0 : (projective ? 1 : 2);
    if (cc.chi != want) throw error("chart: Euler characteristic mismatch");

    // Strand chains with token markers.
    cc.strands.resize(strands.size());
    int seg_base = 0;
    for (size_t s = 0; s < strands.size(); ++s) {
        const EdgeGeometry& g = strands[s];
        std::vector<StrandStep>& chain = cc.strands[s];
        size_t next_passage = 0;
        for (int k = 0; k < strand_seg_count[s]; ++k) {
            const std::vector<Point>& div = seg_division[seg_base + k];
            for (size_t i = 0; i + 1 < div.size(); ++i) {
                int e = edge_at.at(sorted_pair(div[i], div[i + 1]));
                int dir = cc.edges[e].a == cc.point_index.at(div[i]) ? 0 : 1;
                StrandStep step;
                step.half_edge = 2 * e + dir;
                chain.push_back(step);
            }
            while (next_passage < g.passages.size() &&
                   g.passages[next_passage].after_seg == k) {
                StrandStep step;
                step.is_token = true;
                step.passage = g.passages[next_passage++];
                chain.push_back(step);
            }
        }
        if (next_passage != g.passages.size()) throw error("chart: passage out of order");
        seg_base += strand_seg_count[s];
    }

    return cc;
}

} // namespace kleinsep
