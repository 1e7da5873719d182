#include "kleinsep/arrangement.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

namespace kleinsep {

namespace {

Letter to_letter(GluingToken t) {
    switch (t) {
    case GluingToken::HPlus: return Letter::X;
    case GluingToken::HMinus: return Letter::Xinv;
    case GluingToken::VPlus: return Letter::Y;
    case GluingToken::VMinus: return Letter::Yinv;
    case GluingToken::Z: return Letter::Z;
    }
    throw precondition_error("bad token");
}

GluingToken to_token(Letter l) {
    switch (l) {
    case Letter::X: return GluingToken::HPlus;
    case Letter::Xinv: return GluingToken::HMinus;
    case Letter::Y: return GluingToken::VPlus;
    case Letter::Yinv: return GluingToken::VMinus;
    case Letter::Z: return GluingToken::Z;
    case Letter::Zinv: return GluingToken::Z;
    }
    throw precondition_error("bad letter");
}

int inner_face(const ChartComplex& cc, int edge) {
    int f = cc.he_face[2 * edge];
    return f >= 0 ? f : cc.he_face[2 * edge + 1];
}

// Face entered by crossing he out of he_face[he].
int face_after_crossing(const ChartComplex& cc, int he) {
    const ChartEdge& e = cc.edges[he_edge(he)];
    if (e.kind == ChartEdgeKind::Boundary) return inner_face(cc, e.twin);
    return cc.he_face[he_opposite(he)];
}

std::vector<Point> face_poly(const ChartComplex& cc, int f) {
    std::vector<Point> poly;
    poly.reserve(cc.faces[f].vertices.size());
    for (int v : cc.faces[f].vertices) poly.push_back(cc.verts[v]);
    return poly;
}

// ---------------------------------------------------------------------------
// Shortest homotopy-tracked closed dual walks.

NormalForm nf_pow(NormalForm b, long long k) {
    if (k < 0) {
        b = nf_inverse(b);
        k = -k;
    }
    NormalForm r = nf_identity(b.surface);
    for (; k > 0; --k) r = nf_multiply(r, b);
    return r;
}

// Finitely generated subgroup of the surface group in solved form: the
// x-exponents form dZ with section h0, and the q = 0 slice is eZ in y.
struct WindingGroup {
    long long d = 0;
    long long e = 0;
    NormalForm h0;

    bool contains(const NormalForm& g) const {
        if (d == 0) return g.q == 0 && (e != 0 ? g.p % e == 0 : g.p == 0);
        if (g.q % d != 0) return false;
        NormalForm r = nf_multiply(g, nf_pow(nf_inverse(h0), g.q / d));
        return e != 0 ? r.p % e == 0 : r.p == 0;
    }
};

WindingGroup winding_group(Surface surf, std::vector<NormalForm> work) {
    WindingGroup w;
    w.h0 = nf_identity(surf);
    auto fold_zero = [&w](long long p) { w.e = std::gcd(w.e, p < 0 ? -p : p); };
    while (!work.empty()) {
        NormalForm g = work.back();
        work.pop_back();
        if (g.q == 0) {
            fold_zero(g.p);
            continue;
        }
        if (g.q < 0) g = nf_inverse(g);
        if (w.d == 0) {
            w.d = g.q;
            w.h0 = g;
            continue;
        }
        NormalForm r = nf_multiply(g, nf_pow(nf_inverse(w.h0), g.q / w.d));
        if (r.q == 0) {
            fold_zero(r.p);
        } else {
            work.push_back(w.h0); // gcd of the x-exponents shrinks
            w.d = r.q;
            w.h0 = r;
        }
    }
    return w;
}

struct WalkPlan {
    long long cost = 0;
    int start_face = -1;
    std::vector<int> crossed; // half-edges in order; he_face[he] is the face left
};

struct SearchOutcome {
    std::optional<WalkPlan> plan;
    long long cap_hits = 0;
};

SearchOutcome best_walk(const ChartComplex& cc, const CanonicalClass& target, SearchCaps caps,
                        int probe_required) {
    Surface surf = group_surface(cc.surface);
    if (target.surface != surf) throw precondition_error("class on the wrong surface");
    bool essential = surf == Surface::ProjectivePlane ? target.p != 0
                                                      : (target.p != 0 || target.q != 0);
    if (!essential) throw precondition_error("contractible target class");

    const bool pp = surf == Surface::ProjectivePlane;
    const long long P = caps.p_max, Q = caps.q_max;
    const int nfsz = pp ? 2 : static_cast<int>((2 * P + 1) * (2 * Q + 1));
    std::vector<NormalForm> nfs(nfsz, nf_identity(surf));
    if (pp) {
        nfs[1].p = 1;
    } else {
        for (long long p = -P; p <= P; ++p)
            for (long long q = -Q; q <= Q; ++q)
                nfs[(p + P) * (2 * Q + 1) + (q + Q)] = NormalForm{p, q, surf};
    }
    int id_nf = pp ? 0 : static_cast<int>(P * (2 * Q + 1) + Q);
    std::vector<char> accepts(nfsz, 0);
    for (int i = 0; i < nfsz; ++i) accepts[i] = canonicalize(nfs[i]) == target;

    // letter index: X, Xinv, Y, Yinv (Z uses slot 0 on the projective plane)
    auto letter_slot = [pp](Letter l) {
        if (pp) return 0;
        switch (l) {
        case Letter::X: return 0;
        case Letter::Xinv: return 1;
        case Letter::Y: return 2;
        default: return 3;
        }
    };
    int nlet = pp ? 1 : 4;
    std::vector<NormalForm> letter_nf;
    if (pp) letter_nf = {nf_letter(Letter::Z, surf)};
    else
        letter_nf = {nf_letter(Letter::X, surf), nf_letter(Letter::Xinv, surf),
                     nf_letter(Letter::Y, surf), nf_letter(Letter::Yinv, surf)};
    // transition table: -2 marks a cap overflow
    std::vector<int> trans(static_cast<size_t>(nfsz) * nlet, -2);
    for (int i = 0; i < nfsz; ++i)
        for (int l = 0; l < nlet; ++l) {
            NormalForm r = nf_multiply(nfs[i], letter_nf[l]);
            if (!pp && (r.p < -P || r.p > P || r.q < -Q || r.q > Q)) continue;
            trans[static_cast<size_t>(i) * nlet + l] =
                pp ? static_cast<int>(r.p) : static_cast<int>((r.p + P) * (2 * Q + 1) + (r.q + Q));
        }

    const int prsz = probe_required >= 0 ? probe_required + 1 : 1;
    const int nf_pr = nfsz * prsz;
    const int nfaces = static_cast<int>(cc.faces.size());
    auto encode = [&](int f, int nf, int pr) { return (f * nfsz + nf) * prsz + pr; };

    // Transport classes along a spanning forest of the cost-free moves (walls
    // and gluing teleports) and the winding subgroup of each region; a capped
    // relaxation only counts when no reached state matches it modulo winding.
    std::vector<NormalForm> tau(nfaces, nf_identity(surf));
    std::vector<char> seen_face(nfaces, 0);
    std::map<int, std::vector<NormalForm>> region_gens;
    auto for_zero_arcs = [&](int f, auto&& fn) {
        for (int he : cc.faces[f].half_edges) {
            const ChartEdge& e = cc.edges[he_edge(he)];
            if (e.kind == ChartEdgeKind::Wall) fn(cc.he_face[he_opposite(he)], nf_identity(surf));
            else if (e.kind == ChartEdgeKind::Boundary && e.twin >= 0)
                fn(inner_face(cc, e.twin), nf_letter(e.letter_out, surf));
        }
    };
    for (int fr = 0; fr < nfaces; ++fr) {
        if (seen_face[fr]) continue;
        seen_face[fr] = 1;
        std::deque<int> bfs{fr};
        while (!bfs.empty()) {
            int f = bfs.front();
            bfs.pop_front();
            for_zero_arcs(f, [&](int g, const NormalForm& w) {
                if (!seen_face[g]) {
                    seen_face[g] = 1;
                    tau[g] = nf_multiply(tau[f], w);
                    bfs.push_back(g);
                } else {
                    region_gens[cc.face_class[f]].push_back(
                        nf_multiply(nf_multiply(tau[f], w), nf_inverse(tau[g])));
                }
            });
        }
    }
    std::map<int, WindingGroup> winding;
    for (int r = 0; r < cc.n_face_classes; ++r)
        winding.emplace(r, winding_group(surf, region_gens[r]));

    SearchOutcome out;
    struct CapExit {
        int f2, pr;
        long long d;
        NormalForm gone;
    };
    struct RunData {
        int f0 = -1;
        std::vector<long long> dist;
        std::vector<CapExit> exits;
    };
    std::vector<RunData> runs;
    std::set<int> seen_class;
    for (int f0 = 0; f0 < nfaces; ++f0) {
        if (!seen_class.insert(cc.face_class[f0]).second) continue;
        std::vector<long long> dist(static_cast<size_t>(nfaces) * nf_pr, -1);
        std::vector<int> par_state(dist.size(), -1), par_he(dist.size(), -1);
        std::vector<char> done(dist.size(), 0);
        std::vector<CapExit> exits;
        std::deque<int> dq;
        int s0 = encode(f0, id_nf, 0);
        dist[s0] = 0;
        dq.push_back(s0);
        while (!dq.empty()) {
            int s = dq.front();
            dq.pop_front();
            if (done[s]) continue;
            done[s] = 1;
            int pr = s % prsz;
            int nf = (s / prsz) % nfsz;
            int f = s / prsz / nfsz;
            if (f == f0 && accepts[nf] && (probe_required < 0 || pr == probe_required)) {
                if (!out.plan || dist[s] < out.plan->cost) {
                    WalkPlan plan;
                    plan.cost = dist[s];
                    plan.start_face = f0;
                    for (int c = s; par_he[c] >= 0; c = par_state[c])
                        plan.crossed.push_back(par_he[c]);
                    std::reverse(plan.crossed.begin(), plan.crossed.end());
                    out.plan = std::move(plan);
                }
                break; // first settled acceptance is minimal for this start
            }
            for (int he : cc.faces[f].half_edges) {
                const ChartEdge& e = cc.edges[he_edge(he)];
                int nf2 = nf, pr2 = pr;
                long long w = 0;
                int f2;
                if (e.kind == ChartEdgeKind::Wall) {
                    f2 = cc.he_face[he_opposite(he)];
                } else if (e.kind == ChartEdgeKind::Content) {
                    f2 = cc.he_face[he_opposite(he)];
                    if (e.strand >= cc.n_edge_strands) {
                        if (probe_required < 0) throw error("walk: probe strand unexpected");
                        if (pr + 1 > probe_required) continue;
                        pr2 = pr + 1;
                    } else {
                        w = 1;
                    }
                } else {
                    if (e.twin < 0) continue;
                    f2 = inner_face(cc, e.twin);
                    nf2 = trans[static_cast<size_t>(nf) * nlet + letter_slot(e.letter_out)];
                    if (nf2 == -2) {
                        exits.push_back(
                            {f2, pr, dist[s],
                             nf_multiply(nfs[nf], letter_nf[letter_slot(e.letter_out)])});
                        continue;
                    }
                }
                int s2 = encode(f2, nf2, pr2);
                long long d2 = dist[s] + w;
                if (dist[s2] == -1 || d2 < dist[s2]) {
                    dist[s2] = d2;
                    par_state[s2] = s;
                    par_he[s2] = he;
                    if (w == 0) dq.push_front(s2);
                    else dq.push_back(s2);
                }
            }
        }
        runs.push_back(RunData{f0, std::move(dist), std::move(exits)});
    }

    // Replay each window exit in the unbounded state space with the found
    // cost as budget. States the bounded search reached at no more cost are
    // dropped, exactly or modulo the winding of their region; what remains
    // is a hit only if it reaches a cheaper acceptance, so idle boundary
    // winding never counts against the caps.
    long long budget = out.plan ? out.plan->cost : -1;
    auto exit_is_harmful = [&](const RunData& run, const CapExit& ex) {
        struct Node {
            int f;
            NormalForm nf;
            int pr;
            long long d;
        };
        std::map<std::tuple<int, long long, long long, int>, long long> best;
        std::vector<Node> stack{{ex.f2, ex.gone, ex.pr, ex.d}};
        long long nodes = 0;
        while (!stack.empty()) {
            Node n = stack.back();
            stack.pop_back();
            if (budget >= 0 && n.d >= budget) continue;
            auto key = std::make_tuple(n.f, n.nf.p, n.nf.q, n.pr);
            auto it = best.find(key);
            if (it != best.end() && it->second <= n.d) continue;
            best[key] = n.d;
            if (n.nf.p >= -P && n.nf.p <= P && n.nf.q >= -Q && n.nf.q <= Q) {
                int s = encode(n.f, static_cast<int>((n.nf.p + P) * (2 * Q + 1) + (n.nf.q + Q)),
                               n.pr);
                if (run.dist[s] >= 0 && run.dist[s] <= n.d) continue;
            }
            const WindingGroup& wg = winding.at(cc.face_class[n.f]);
            bool dominated = false;
            for (int alt = 0; alt < nfsz && !dominated; ++alt) {
                int sa = encode(n.f, alt, n.pr);
                if (run.dist[sa] < 0 || run.dist[sa] > n.d) continue;
                NormalForm back = nf_multiply(nf_inverse(nfs[alt]), n.nf);
                dominated = wg.contains(
                    nf_multiply(nf_multiply(tau[n.f], back), nf_inverse(tau[n.f])));
            }
            if (dominated) continue;
            if (n.f == run.f0 && (probe_required < 0 || n.pr == probe_required) &&
                canonicalize(n.nf) == target)
                return true;
            if (++nodes > 20000) return true; // cannot certify, stay honest
            for (int he : cc.faces[n.f].half_edges) {
                const ChartEdge& e = cc.edges[he_edge(he)];
                if (e.kind == ChartEdgeKind::Wall) {
                    stack.push_back({cc.he_face[he_opposite(he)], n.nf, n.pr, n.d});
                } else if (e.kind == ChartEdgeKind::Content) {
                    int g = cc.he_face[he_opposite(he)];
                    if (e.strand >= cc.n_edge_strands) {
                        if (probe_required >= 0 && n.pr + 1 <= probe_required)
                            stack.push_back({g, n.nf, n.pr + 1, n.d});
                    } else {
                        stack.push_back({g, n.nf, n.pr, n.d + 1});
                    }
                } else if (e.twin >= 0) {
                    stack.push_back({inner_face(cc, e.twin),
                                     nf_multiply(n.nf, nf_letter(e.letter_out, surf)), n.pr,
                                     n.d});
                }
            }
        }
        return false;
    };
    for (const RunData& run : runs)
        for (const CapExit& ex : run.exits)
            if (exit_is_harmful(run, ex)) ++out.cap_hits;
    return out;
}

// ---------------------------------------------------------------------------
// Turning a walk into an explicit polyline.

Rat circle_t(const Point& p) {
    if (p.x == -1) throw error("emit: tangent parameter undefined at (-1,0)");
    return p.y / (1 + p.x);
}

Point circle_point(const Rat& t) {
    Rat t2 = t * t;
    return Point{(1 - t2) / (1 + t2), 2 * t / (1 + t2)};
}

struct Stop {
    int he = -1;
    ChartEdgeKind kind = ChartEdgeKind::Wall;
    Point nominal;            // param point on the crossed edge
    std::vector<PathItem> items;
    Point first;              // anchor seen from the face before
    Point last;               // anchor seen from the face after
};

// Distinct interior params for every visit of a paired edge group: visits of
// the lower-indexed edge take even numerators, the partner odd ones, so deck
// images never collide with native picks.
ClosedCurve emit_walk_curve(const ChartComplex& cc, const WalkPlan& plan, int retry,
                            const Rat& delta) {
    const bool pp = cc.surface == SurfaceKind::ProjectivePlane;
    int k = static_cast<int>(plan.crossed.size());
    if (k == 0) throw error("emit: empty walk");

    auto group_of = [&](int e) {
        const ChartEdge& ce = cc.edges[e];
        if (ce.kind == ChartEdgeKind::Boundary && ce.twin >= 0) return std::min(e, ce.twin);
        return e;
    };
    std::map<int, long long> group_count;
    for (int he : plan.crossed) ++group_count[group_of(he_edge(he))];

    std::vector<Stop> stops(k);
    std::map<int, long long> group_seen;
    for (int i = 0; i < k; ++i) {
        int he = plan.crossed[i];
        int e = he_edge(he);
        const ChartEdge& ce = cc.edges[e];
        int g = group_of(e);
        long long n = group_count[g];
        long long j = ++group_seen[g];
        Rat t;
        if (ce.kind == ChartEdgeKind::Boundary && ce.twin >= 0)
            t = (e == g) ? Rat(2 * j, 2 * (n + 1 + retry)) : Rat(2 * j - 1, 2 * (n + 1 + retry));
        else
            t = Rat(j, n + 1 + retry);
        Stop& st = stops[i];
        st.he = he;
        st.kind = ce.kind;
        st.nominal = cc.verts[ce.a] + t * (cc.verts[ce.b] - cc.verts[ce.a]);
        if (ce.kind == ChartEdgeKind::Boundary) {
            if (!pp) {
                GluingToken tok = to_token(ce.letter_out);
                Point enter = token_enter_point(cc.surface, tok, st.nominal);
                st.items = {PathItem::point(st.nominal), PathItem::token(tok),
                            PathItem::point(enter)};
                st.first = st.nominal;
                st.last = enter;
            }
            // projective items are filled after circle points are assigned
        } else {
            st.first = st.last = st.nominal;
        }
    }

    if (pp) {
        // Group lens legs per polygon chord pair and nest them by matching
        // chord order with arc order from the same chord end.
        const std::vector<Point>& poly = cc.chart_polygon;
        int np = static_cast<int>(poly.size());
        auto chord_of = [&](const Point& a, const Point& b) {
            for (int c = 0; c < np; ++c) {
                const Point& p = poly[c];
                const Point& q = poly[(c + 1) % np];
                if (on_segment(a, p, q) && on_segment(b, p, q)) return c;
            }
            throw error("emit: boundary edge off the polygon");
        };
        std::map<int, int> chord_pair_rep; // chord -> canonical chord of its pair
        std::map<int, std::vector<std::pair<Rat, int>>> legs; // rep -> (param, stop)
        for (int i = 0; i < k; ++i) {
            if (stops[i].kind != ChartEdgeKind::Boundary) continue;
            const ChartEdge& ce = cc.edges[he_edge(stops[i].he)];
            int c = chord_of(cc.verts[ce.a], cc.verts[ce.b]);
            auto rit = chord_pair_rep.find(c);
            if (rit == chord_pair_rep.end()) {
                const Point& p = poly[c];
                int cm = chord_of(Point{-p.x, -p.y},
                                  Point{-poly[(c + 1) % np].x, -poly[(c + 1) % np].y});
                int rep = std::min(c, cm);
                chord_pair_rep[c] = rep;
                chord_pair_rep[cm] = rep;
                rit = chord_pair_rep.find(c);
            }
            int rep = rit->second;
            const Point& P = poly[rep];
            const Point& Q = poly[(rep + 1) % np];
            Point on_rep = (c == rep) ? stops[i].nominal
                                      : Point{-stops[i].nominal.x, -stops[i].nominal.y};
            legs[rep].push_back({dot(on_rep - P, Q - P), i});
        }
        for (auto& [rep, vec] : legs) {
            std::sort(vec.begin(), vec.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            const Point& P = poly[rep];
            const Point& Q = poly[(rep + 1) % np];
            long long n = static_cast<long long>(vec.size());
            bool p_inf = P.x == -1, q_inf = Q.x == -1;
            Rat tP = p_inf ? Rat(0) : circle_t(P);
            Rat tQ = q_inf ? Rat(0) : circle_t(Q);
            Point origin{0, 0};
            auto arc_point = [&](long long rank) {
                Rat t;
                if (!p_inf && !q_inf) t = tP + Rat(rank, n + 1) * (tQ - tP);
                else if (p_inf) t = tQ + Rat(n + 1 - rank);
                else t = tP + Rat(rank);
                Point c1 = circle_point(t);
                if (orientation(P, Q, c1) != -orientation(P, Q, origin)) {
                    t = p_inf ? tQ - Rat(n + 1 - rank) : (q_inf ? tP - Rat(rank) : t);
                    c1 = circle_point(t);
                    if (orientation(P, Q, c1) != -orientation(P, Q, origin))
                        throw error("emit: arc side lost");
                }
                return c1;
            };
            for (long long r = 0; r < n; ++r) {
                Stop& st = stops[vec[r].second];
                const ChartEdge& ce = cc.edges[he_edge(st.he)];
                int c = chord_of(cc.verts[ce.a], cc.verts[ce.b]);
                Point X = arc_point(r + 1);
                if (c != rep) X = Point{-X.x, -X.y};
                Point nX{-X.x, -X.y};
                Point nN{-st.nominal.x, -st.nominal.y};
                st.items = {PathItem::point(st.nominal), PathItem::point(X),
                            PathItem::token(GluingToken::Z), PathItem::point(nX),
                            PathItem::point(nN)};
                st.first = st.nominal;
                st.last = nN;
            }
        }
    }

    // Gap waypoints keep every chord strictly inside its face.
    std::vector<int> gap_face(k);
    for (int i = 0; i < k; ++i) {
        int f = face_after_crossing(cc, plan.crossed[i]);
        if (cc.he_face[plan.crossed[(i + 1) % k]] != f) throw error("emit: face chain broken");
        gap_face[i] = f;
    }
    std::map<int, int> centroid_use;
    std::vector<std::optional<Point>> waypoint(k);
    auto face_detour = [&](int f) {
        const ChartFace& face = cc.faces[f];
        int& used = centroid_use[f];
        Point c = face.inside;
        if (used > 0) {
            Point v0 = cc.verts[face.vertices[0]];
            c = c + Rat(used, 4 * (used + 1)) * (v0 - c);
        }
        ++used;
        return c;
    };
    for (int i = 0; i < k; ++i) {
        const Point& a = stops[i].last;
        const Point& b = stops[(i + 1) % k].first;
        if (a == b) throw error("emit: coincident anchors");
        Point mid = Rat(1, 2) * (a + b);
        if (!strictly_inside_convex_polygon(mid, face_poly(cc, gap_face[i])))
            waypoint[i] = face_detour(gap_face[i]);
    }

    // Content crossings straddle their edge so the crossing is transversal
    // inside both segment interiors.
    for (int i = 0; i < k; ++i) {
        Stop& st = stops[i];
        if (st.kind != ChartEdgeKind::Content && st.kind != ChartEdgeKind::Wall) continue;
        if (st.kind == ChartEdgeKind::Wall) {
            st.items = {PathItem::point(st.nominal)};
            continue;
        }
        int prev = (i + k - 1) % k;
        Point pa = waypoint[prev] ? *waypoint[prev] : stops[prev].last;
        Point pb = waypoint[i] ? *waypoint[i] : stops[(i + 1) % k].first;
        Point qm = st.nominal + delta * (pa - st.nominal);
        Point qp = st.nominal + delta * (pb - st.nominal);
        const ChartEdge& ce = cc.edges[he_edge(st.he)];
        SegmentHit hit = segment_relation(qm, qp, cc.verts[ce.a], cc.verts[ce.b]);
        if (hit.rel != SegmentRelation::ProperCrossing)
            throw degenerate_error("emit: straddle misses its edge");
        st.items = {PathItem::point(qm), PathItem::point(qp)};
        st.first = qm;
        st.last = qp;
    }

    ClosedCurve curve;
    curve.surface = cc.surface;
    for (int i = 0; i < k; ++i) {
        for (const PathItem& it : stops[i].items) curve.items.push_back(it);
        if (waypoint[i]) curve.items.push_back(PathItem::point(*waypoint[i]));
    }
    return curve;
}

ClosedCurve realize_plan(const Drawing& d, const ChartComplex& cc, const WalkPlan& plan,
                         const CanonicalClass& target, const ClosedCurve* probe,
                         int probe_required) {
    for (int retry = 0; retry < 4; ++retry)
        for (const Rat& delta : {Rat(1, 8), Rat(1, 32), Rat(1, 128)}) {
            ClosedCurve c;
            try {
                c = emit_walk_curve(cc, plan, retry, delta);
                if (crossing_count_with_curve(d, c).count != plan.cost) continue;
                if (probe && curve_pair_crossings(*probe, c) != probe_required) continue;
                if (d.surface == SurfaceKind::KleinBottle && !validate_curve(c).empty())
                    continue;
            } catch (const degenerate_error&) {
                continue;
            }
            if (!(curve_class(c) == target)) throw error("realize: class drifted");
            return c;
        }
    throw search_limit_error("realize: no clean perturbation found");
}

} // namespace

// ---------------------------------------------------------------------------

WalkSearch min_class_crossing(const Drawing& d, const CanonicalClass& cls, SearchCaps caps) {
    ChartComplex cc = build_chart_complex(d);
    SearchOutcome out = best_walk(cc, cls, caps, -1);
    if (!out.plan)
        throw search_limit_error("class walk search exhausted; raise the p/q caps");
    return WalkSearch{out.plan->cost, out.cap_hits};
}

WalkSearch min_class_crossing(const Drawing& d, CurveType t, SearchCaps caps) {
    if (t != CurveType::A && t != CurveType::B && t != CurveType::M)
        throw precondition_error("search targets are a, b, and m classes");
    return min_class_crossing(d, reference_class(t), caps);
}

ClosedCurve realize_curve_class(const Drawing& d, const CanonicalClass& cls, SearchCaps caps) {
    ChartComplex cc = build_chart_complex(d);
    SearchOutcome out = best_walk(cc, cls, caps, -1);
    if (!out.plan)
        throw search_limit_error("class walk search exhausted; raise the p/q caps");
    return realize_plan(d, cc, *out.plan, cls, nullptr, 0);
}

ClosedCurve realize_curve(const Drawing& d, CurveType t, SearchCaps caps) {
    if (t != CurveType::A && t != CurveType::B && t != CurveType::M)
        throw precondition_error("search targets are a, b, and m classes");
    return realize_curve_class(d, reference_class(t), caps);
}

ClosedCurve realize_curve_crossing_probe_once(const Drawing& d, const ClosedCurve& probe,
                                              CurveType t, SearchCaps caps) {
    if (t != CurveType::A && t != CurveType::B && t != CurveType::M)
        throw precondition_error("search targets are a, b, and m classes");
    CanonicalClass cls = reference_class(t);
    ChartComplex cc = build_chart_complex(d, {probe});
    SearchOutcome out = best_walk(cc, cls, caps, 1);
    if (!out.plan)
        throw search_limit_error("class walk search exhausted; raise the p/q caps");
    return realize_plan(d, cc, *out.plan, cls, &probe, 1);
}

// ---------------------------------------------------------------------------

Arrangement planarize(const Drawing& d) {
    ChartComplex cc = build_chart_complex(d);
    Arrangement arr;
    std::map<int, int> node_of_vert; // complex vertex -> node index
    for (size_t i = 0; i < d.vertices.size(); ++i) {
        const Vertex& v = d.vertices[i];
        node_of_vert[cc.vertex_id(v.pos)] = static_cast<int>(arr.nodes.size());
        arr.nodes.push_back(ArrangementNode{v.id, v.pos, false});
    }
    for (size_t i = 0; i < cc.crossings.size(); ++i) {
        int cv = cc.crossings[i].vertex;
        node_of_vert[cv] = static_cast<int>(arr.nodes.size());
        arr.nodes.push_back(
            ArrangementNode{"x" + std::to_string(i + 1), cc.verts[cv], true});
    }
    std::set<int> crossing_verts;
    for (const ChartCrossing& c : cc.crossings) crossing_verts.insert(c.vertex);

    for (int s = 0; s < cc.n_edge_strands; ++s) {
        const std::vector<StrandStep>& chain = cc.strands[s];
        int arc_index = 0;
        int from_vert = -1;
        Word letters;
        int first_he = -1;
        for (const StrandStep& step : chain) {
            if (step.is_token) {
                letters.push_back(to_letter(step.passage.tok));
                continue;
            }
            if (from_vert < 0) from_vert = cc.he_origin(step.half_edge);
            if (first_he < 0) first_he = step.half_edge;
            int tail = cc.he_target(step.half_edge);
            bool at_crossing = crossing_verts.count(tail) > 0;
            bool at_end = &step == &chain.back();
            if (at_crossing || at_end) {
                ArrangementArc arc;
                arc.edge_id = d.edges[s].id;
                arc.index = arc_index++;
                arc.from = node_of_vert.at(from_vert);
                arc.to = node_of_vert.at(tail);
                arr.arcs.push_back(arc);
                DualLink link;
                link.face1 = cc.face_class[cc.he_face[first_he]];
                link.face2 = cc.face_class[cc.he_face[he_opposite(first_he)]];
                link.letters = letters;
                arr.dual_links.push_back(link);
                from_vert = tail;
                letters.clear();
                first_he = -1;
            }
        }
    }
    arr.face_count = cc.n_face_classes;
    arr.chi = cc.chi;
    arr.euler_total = static_cast<long long>(arr.nodes.size()) -
                      static_cast<long long>(arr.arcs.size()) + arr.face_count;
    return arr;
}

// ---------------------------------------------------------------------------

namespace {

struct EdgeSplit {
    int seg = 0;
    Rat along = 0; // squared-length scaled position within the segment
    Point at;
    std::string dummy_id;
};

std::string fresh_id(const std::set<std::string>& used, const std::string& base) {
    std::string id = base;
    while (used.count(id)) id += '\'';
    return id;
}

// Splits one edge's path at the given interior points, producing sub-edges
// joined by the recorded dummy vertex ids.
std::vector<PolylineEdge> split_edge(const Drawing& d, const PolylineEdge& e,
                                     std::vector<EdgeSplit> splits,
                                     const std::set<std::string>& used_edge_ids) {
    std::sort(splits.begin(), splits.end(), [](const EdgeSplit& a, const EdgeSplit& b) {
        if (a.seg != b.seg) return a.seg < b.seg;
        return a.along < b.along;
    });
    const Vertex* v1 = d.find_vertex(e.v1);
    const Vertex* v2 = d.find_vertex(e.v2);
    if (!v1 || !v2) throw precondition_error("promote: edge " + e.id + " has a missing endpoint");
    std::vector<PathItem> items;
    items.push_back(PathItem::point(v1->pos));
    items.insert(items.end(), e.path.begin(), e.path.end());
    items.push_back(PathItem::point(v2->pos));

    std::vector<PolylineEdge> out;
    std::string cur_v1 = e.v1;
    std::vector<PathItem> cur; // includes the leading endpoint position
    cur.push_back(items[0]);
    int seg = 0;
    size_t next_split = 0;
    auto close_sub = [&](const std::string& to, bool strip_tail) {
        PolylineEdge sub;
        sub.id = fresh_id(used_edge_ids, e.id + "." + std::to_string(out.size() + 1));
        sub.v1 = cur_v1;
        sub.v2 = to;
        sub.path.assign(cur.begin() + 1, strip_tail ? cur.end() - 1 : cur.end());
        sub.part = e.part;
        out.push_back(std::move(sub));
    };
    for (size_t i = 1; i < items.size(); ++i) {
        const PathItem& it = items[i];
        if (it.is_token || items[i - 1].is_token) {
            cur.push_back(it);
            continue;
        }
        while (next_split < splits.size() && splits[next_split].seg == seg) {
            const EdgeSplit& sp = splits[next_split++];
            close_sub(sp.dummy_id, false);
            cur_v1 = sp.dummy_id;
            cur.clear();
            cur.push_back(PathItem::point(sp.at));
        }
        cur.push_back(it);
        ++seg;
    }
    if (next_split != splits.size()) throw error("promote: split off its segment");
    close_sub(e.v2, true);
    return out;
}

Drawing promote_impl(const Drawing& d, const std::string& prefix, bool same_part_only,
                     std::vector<std::string>* dummy_ids) {
    CrossingReport rep = crossing_count_all(d);
    std::map<std::string, int> edge_index;
    for (size_t i = 0; i < d.edges.size(); ++i) edge_index[d.edges[i].id] = static_cast<int>(i);

    std::set<std::string> used_vertex_ids, used_edge_ids;
    for (const Vertex& v : d.vertices) used_vertex_ids.insert(v.id);
    for (const PolylineEdge& e : d.edges) used_edge_ids.insert(e.id);

    // Per-segment geometry for locating crossing points along each edge.
    std::vector<EdgeGeometry> geoms;
    for (size_t i = 0; i < d.edges.size(); ++i) geoms.push_back(edge_geometry(d, static_cast<int>(i)));

    std::map<int, std::vector<EdgeSplit>> splits;
    Drawing out;
    out.surface = d.surface;
    out.vertices = d.vertices;

    long long counter = 0;
    for (const Crossing& cr : rep.list) {
        int e1 = edge_index.at(cr.edge1);
        int e2 = edge_index.at(cr.edge2);
        if (same_part_only && d.edges[e1].part != d.edges[e2].part) continue;
        std::string id;
        do {
            id = prefix + std::to_string(++counter);
        } while (used_vertex_ids.count(id));
        used_vertex_ids.insert(id);
        PartLabel part = d.edges[e1].part == d.edges[e2].part ? d.edges[e1].part
                                                              : PartLabel::None;
        out.vertices.push_back(Vertex{id, cr.at, part});
        if (dummy_ids) dummy_ids->push_back(id);
        std::set<int> edges_done;
        for (int e : {e1, e2}) {
            if (!edges_done.insert(e).second) continue; // self-crossing: both hits in one pass
            bool found = false;
            for (const DrawnSegment& s : geoms[e].segments)
                if (strictly_inside_segment(cr.at, s.a, s.b)) {
                    splits[e].push_back(
                        EdgeSplit{s.seg_index, dot(cr.at - s.a, s.b - s.a), cr.at, id});
                    found = true;
                }
            if (!found) throw degenerate_error("promote: crossing off the edge interior");
        }
    }

    for (size_t i = 0; i < d.edges.size(); ++i) {
        auto it = splits.find(static_cast<int>(i));
        if (it == splits.end()) {
            out.edges.push_back(d.edges[i]);
            continue;
        }
        for (PolylineEdge& sub : split_edge(d, d.edges[i], it->second, used_edge_ids)) {
            used_edge_ids.insert(sub.id);
            out.edges.push_back(std::move(sub));
        }
    }
    return out;
}

std::vector<PathItem> reversed_path(const std::vector<PathItem>& path) {
    std::vector<PathItem> out(path.rbegin(), path.rend());
    for (PathItem& it : out)
        if (it.is_token) {
            switch (it.tok) {
            case GluingToken::HPlus: it.tok = GluingToken::HMinus; break;
            case GluingToken::HMinus: it.tok = GluingToken::HPlus; break;
            case GluingToken::VPlus: it.tok = GluingToken::VMinus; break;
            case GluingToken::VMinus: it.tok = GluingToken::VPlus; break;
            case GluingToken::Z: break;
            }
        }
    return out;
}

struct DummyEnd {
    int edge = -1;
    bool at_v2 = false;
    Point dir; // first step away from the dummy
};

// Joins the two edges of the ends into one path through x; straight keeps the
// corner as a bend, otherwise the strand detours around x through a sideways
// point, crossing the straight strand exactly once.
void merge_ends(Drawing& d, const Vertex& x, const DummyEnd& in, const DummyEnd& outend,
                bool straight, const Rat& eps, int wsel) {
    PolylineEdge ein = d.edges[in.edge];
    PolylineEdge eout = d.edges[outend.edge];
    // orient ein into x and eout out of x
    if (!in.at_v2) {
        std::swap(ein.v1, ein.v2);
        ein.path = reversed_path(ein.path);
    }
    if (outend.at_v2) {
        std::swap(eout.v1, eout.v2);
        eout.path = reversed_path(eout.path);
    }
    PolylineEdge merged;
    merged.id = ein.id;
    merged.v1 = ein.v1;
    merged.v2 = eout.v2;
    merged.part = ein.part;
    merged.path = ein.path;
    if (straight) {
        merged.path.push_back(PathItem::point(x.pos));
    } else {
        const Point& u = outend.dir;
        Point w{-u.y, u.x};
        if (wsel == 1) w = w + u;
        if (wsel == 2) w = w - u;
        merged.path.push_back(PathItem::point(x.pos + eps * in.dir));
        merged.path.push_back(PathItem::point(x.pos + eps * w));
        merged.path.push_back(PathItem::point(x.pos + eps * outend.dir));
    }
    merged.path.insert(merged.path.end(), eout.path.begin(), eout.path.end());
    int lo = std::min(in.edge, outend.edge);
    int hi = std::max(in.edge, outend.edge);
    if (lo == hi) throw degenerate_error("demote: strand loops back to its dummy");
    d.edges.erase(d.edges.begin() + hi);
    d.edges.erase(d.edges.begin() + lo);
    d.edges.push_back(std::move(merged));
}

std::vector<DummyEnd> ends_at(const Drawing& d, const Vertex& x) {
    std::vector<DummyEnd> ends;
    for (size_t i = 0; i < d.edges.size(); ++i) {
        const PolylineEdge& e = d.edges[i];
        for (bool at_v2 : {false, true}) {
            if ((at_v2 ? e.v2 : e.v1) != x.id) continue;
            Point step;
            if (at_v2) {
                if (e.path.empty()) step = d.find_vertex(e.v1)->pos;
                else if (!e.path.back().is_token) step = e.path.back().pt;
                else throw degenerate_error("demote: token against the dummy");
            } else {
                if (e.path.empty()) step = d.find_vertex(e.v2)->pos;
                else if (!e.path.front().is_token) step = e.path.front().pt;
                else throw degenerate_error("demote: token against the dummy");
            }
            if (step == x.pos) throw degenerate_error("demote: zero step at the dummy");
            ends.push_back(DummyEnd{static_cast<int>(i), at_v2, step - x.pos});
        }
    }
    return ends;
}

Drawing demote_attempt(const Drawing& d, const std::vector<std::string>& dummy_ids,
                       const Rat& eps, int wsel) {
    Drawing out = d;
    for (const std::string& id : dummy_ids) {
        const Vertex* xp = out.find_vertex(id);
        if (!xp) throw precondition_error("demote: no vertex " + id);
        Vertex x = *xp;
        std::vector<DummyEnd> ends = ends_at(out, x);
        if (ends.size() != 4) throw precondition_error("demote: vertex " + id + " not degree 4");
        std::sort(ends.begin(), ends.end(),
                  [](const DummyEnd& a, const DummyEnd& b) { return direction_less(a.dir, b.dir); });
        merge_ends(out, x, ends[0], ends[2], true, eps, wsel);
        // re-fetch: indices moved
        std::vector<DummyEnd> rest = ends_at(out, x);
        if (rest.size() != 2) throw degenerate_error("demote: leftover ends at " + id);
        merge_ends(out, x, rest[0], rest[1], false, eps, wsel);
        for (size_t i = 0; i < out.vertices.size(); ++i)
            if (out.vertices[i].id == id) {
                out.vertices.erase(out.vertices.begin() + i);
                break;
            }
    }
    return out;
}

} // namespace

Drawing promote_crossings(const Drawing& d, const std::string& prefix,
                          std::vector<std::string>* dummy_ids) {
    return promote_impl(d, prefix, false, dummy_ids);
}

Drawing promote_same_part_crossings(const Drawing& d, const std::string& prefix,
                                    std::vector<std::string>* dummy_ids) {
    return promote_impl(d, prefix, true, dummy_ids);
}

Drawing demote_vertices(const Drawing& d, const std::vector<std::string>& dummy_ids) {
    long long before = crossing_count_all(d).count;
    for (int wsel = 0; wsel < 3; ++wsel) {
        Rat eps(1, 8);
        for (int attempt = 0; attempt < 5; ++attempt, eps /= 4) {
            Drawing out;
            try {
                out = demote_attempt(d, dummy_ids, eps, wsel);
                if (!validate(out).empty()) continue;
                if (crossing_count_all(out).count !=
                    before + static_cast<long long>(dummy_ids.size()))
                    continue;
            } catch (const degenerate_error&) {
                continue;
            }
            return out;
        }
    }
    throw degenerate_error("demote: no crossing-clean corner offset found");
}

// ---------------------------------------------------------------------------

Drawing restrict_part(const Drawing& d, PartLabel part) {
    if (part == PartLabel::None) return d;
    Drawing out;
    out.surface = d.surface;
    std::set<std::string> kept;
    for (const Vertex& v : d.vertices)
        if (v.part == part) {
            out.vertices.push_back(v);
            kept.insert(v.id);
        }
    for (const PolylineEdge& e : d.edges)
        if (e.part == part) {
            if (!kept.count(e.v1) || !kept.count(e.v2))
                throw precondition_error("edge " + e.id + " leaves its part");
            out.edges.push_back(e);
        }
    return out;
}

CrossingTriple crossing_profile(const Drawing& d, PartLabel part, SearchCaps caps,
                                long long* cap_hits) {
    Drawing sub = restrict_part(d, part);
    CrossingTriple t;
    WalkSearch wa = min_class_crossing(sub, CurveType::A, caps);
    WalkSearch wb = min_class_crossing(sub, CurveType::B, caps);
    WalkSearch wm = min_class_crossing(sub, CurveType::M, caps);
    t.a = wa.count;
    t.b = wb.count;
    t.m = wm.count;
    if (cap_hits) *cap_hits = wa.cap_hits + wb.cap_hits + wm.cap_hits;
    return t;
}

} // namespace kleinsep
