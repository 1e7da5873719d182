#include "kleinsep/oracle.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kleinsep {

namespace {

bool is_x_letter(Letter l) { return l == Letter::X || l == Letter::Xinv; }
bool is_z_letter(Letter l) { return l == Letter::Z || l == Letter::Zinv; }

// Word spelling y^p x^q (or z^p) of a normal form.
Word nf_spelling(const NormalForm& a) {
    Word w;
    if (a.surface == Surface::ProjectivePlane) {
        for (long long i = 0; i < std::llabs(a.p); ++i)
            w.push_back(a.p > 0 ? Letter::Z : Letter::Zinv);
        return w;
    }
    for (long long i = 0; i < std::llabs(a.p); ++i)
        w.push_back(a.p > 0 ? Letter::Y : Letter::Yinv);
    for (long long i = 0; i < std::llabs(a.q); ++i)
        w.push_back(a.q > 0 ? Letter::X : Letter::Xinv);
    return w;
}

} // namespace

NormalForm rewrite_normal_form(const Word& w, Surface s) {
    if (s == Surface::ProjectivePlane) {
        // z is its own inverse, so a word reduces to its exponent-sum parity.
        long long n = 0;
        for (Letter l : w) {
            if (!is_z_letter(l)) throw precondition_error("projective words use z only");
            ++n;
        }
        return NormalForm{n % 2, 0, s};
    }
    std::vector<Letter> v;
    for (Letter l : w) {
        if (is_z_letter(l)) throw precondition_error("klein bottle words use x and y only");
        v.push_back(l);
    }
    auto flip_y = [](Letter l) { return l == Letter::Y ? Letter::Yinv : Letter::Y; };
    // Cancel free inverses and push y's left with x y^e = y^-e x, read off the
    // relator. Each swap removes one x-before-y inversion and each
    // cancellation shortens the word, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            if (v[i + 1] == letter_inverse(v[i])) {
                v.erase(v.begin() + i, v.begin() + i + 2);
                changed = true;
                break;
            }
            if (is_x_letter(v[i]) && !is_x_letter(v[i + 1])) {
                Letter xl = v[i];
                v[i] = flip_y(v[i + 1]);
                v[i + 1] = xl;
                changed = true;
            }
        }
    }
    NormalForm nf{0, 0, s};
    size_t i = 0;
    for (; i < v.size() && !is_x_letter(v[i]); ++i) nf.p += v[i] == Letter::Y ? 1 : -1;
    for (; i < v.size(); ++i) {
        if (!is_x_letter(v[i])) throw theorem_violation("rewriting left an unsorted word");
        nf.q += v[i] == Letter::X ? 1 : -1;
    }
    return nf;
}

bool rewrite_free_homotopic(const NormalForm& a, const NormalForm& b, Surface s) {
    if (a.surface != s || b.surface != s) throw precondition_error("surface mismatch");
    NormalForm nb = rewrite_normal_form(nf_spelling(b), s);
    // Conjugation moves p by steps of 2 (odd q) or flips its sign (any q), so
    // conjugators with exponents up to 3 reach the whole orbit.
    for (long long c = -3; c <= 3; ++c)
        for (long long e = -3; e <= 3; ++e) {
            if (s == Surface::ProjectivePlane && (e != 0 || c < 0 || c > 1)) continue;
            Word g = nf_spelling(NormalForm{c, e, s});
            for (int invert = 0; invert < 2; ++invert) {
                Word wa = nf_spelling(a);
                if (invert) wa = word_inverse(wa);
                Word total = g;
                total.insert(total.end(), wa.begin(), wa.end());
                Word gi = word_inverse(g);
                total.insert(total.end(), gi.begin(), gi.end());
                if (rewrite_normal_form(total, s) == nb) return true;
            }
        }
    return false;
}

namespace {

// Quotient graph drawn inside the fundamental polygon: walks along its edges
// are closed curves on the surface, weighted by transversal crossings with a
// drawing. An edge through the boundary carries the gluing letter of its
// forward direction.
struct QEdge {
    int u = -1;
    int v = -1;
    int fwd = -1; // Letter crossed when walked u to v, -1 for none
    std::vector<std::array<Point, 2>> pieces;
    long long w = 0;
    bool alive = true;
};

struct QGraph {
    int n = 0;
    std::vector<QEdge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj; // (edge, +1 forward / -1 back)
};

void link_alive(QGraph& g) {
    g.adj.assign(g.n, {});
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!g.edges[e].alive) continue;
        g.adj[g.edges[e].u].push_back({e, 1});
        g.adj[g.edges[e].v].push_back({e, -1});
    }
}

// n-by-n grid at odd multiples of 1/(2n); the half-integer offset makes the
// column set closed under the x -> 1-x flip of the top/bottom gluing.
QGraph klein_grid(int n) {
    QGraph g;
    g.n = n * n;
    auto vid = [n](int i, int j) { return j * n + i; };
    auto c = [n](int i) { return Rat(2 * i + 1, 2 * n); };
    auto at = [&](int i, int j) { return Point{c(i), c(j)}; };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i + 1 < n; ++i)
            g.edges.push_back({vid(i, j), vid(i + 1, j), -1, {{at(i, j), at(i + 1, j)}}});
        g.edges.push_back({vid(n - 1, j), vid(0, j), static_cast<int>(Letter::Y),
                           {{at(n - 1, j), Point{1, c(j)}}, {Point{0, c(j)}, at(0, j)}}});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j + 1 < n; ++j)
            g.edges.push_back({vid(i, j), vid(i, j + 1), -1, {{at(i, j), at(i, j + 1)}}});
        g.edges.push_back(
            {vid(i, n - 1), vid(n - 1 - i, 0), static_cast<int>(Letter::X),
             {{at(i, n - 1), Point{c(i), 1}}, {Point{1 - c(i), 0}, at(n - 1 - i, 0)}}});
    }
    return g;
}

// Sixteen rational circle points closed under the antipodal map, ccw.
// Rotated by the exact rotation (20/29, 21/29) off the stock gluing-point
// directions, so a drawing chord through those directions crosses ring
// edges transversally instead of running along a spoke or through a ring
// vertex, which would get every edge near it deleted as a contact.
const std::array<Point, 16>& ring_circle() {
    static const std::array<Point, 16> pts = [] {
        const std::array<Point, 16> base = {
            Point{1, 0},
            Point{Rat(4, 5), Rat(3, 5)},
            Point{Rat(3, 5), Rat(4, 5)},
            Point{Rat(5, 13), Rat(12, 13)},
            Point{0, 1},
            Point{Rat(-5, 13), Rat(12, 13)},
            Point{Rat(-3, 5), Rat(4, 5)},
            Point{Rat(-4, 5), Rat(3, 5)},
            Point{-1, 0},
            Point{Rat(-4, 5), Rat(-3, 5)},
            Point{Rat(-3, 5), Rat(-4, 5)},
            Point{Rat(-5, 13), Rat(-12, 13)},
            Point{0, -1},
            Point{Rat(5, 13), Rat(-12, 13)},
            Point{Rat(3, 5), Rat(-4, 5)},
            Point{Rat(4, 5), Rat(-3, 5)}};
        const Rat c(20, 29), s(21, 29);
        std::array<Point, 16> out;
        for (size_t i = 0; i < base.size(); ++i)
            out[i] = Point{c * base[i].x - s * base[i].y, s * base[i].x + c * base[i].y};
        return out;
    }();
    return pts;
}

// Concentric scaled copies of the circle's 16-point polygon; the outermost
// ring connects to its antipode through the boundary.
QGraph projective_rings(int rings) {
    const auto& circle = ring_circle();
    QGraph g;
    g.n = rings * 16;
    auto vid = [](int s, int k) { return s * 16 + ((k % 16) + 16) % 16; };
    auto at = [&](int s, int k) {
        Rat r(2 * s + 1, 2 * rings);
        const Point& p = circle[((k % 16) + 16) % 16];
        return Point{r * p.x, r * p.y};
    };
    for (int s = 0; s < rings; ++s)
        for (int k = 0; k < 16; ++k) {
            g.edges.push_back({vid(s, k), vid(s, k + 1), -1, {{at(s, k), at(s, k + 1)}}});
            if (s + 1 < rings)
                g.edges.push_back({vid(s, k), vid(s + 1, k), -1, {{at(s, k), at(s + 1, k)}}});
        }
    for (int k = 0; k < 8; ++k)
        g.edges.push_back({vid(rings - 1, k), vid(rings - 1, k + 8), static_cast<int>(Letter::Z),
                           {{at(rings - 1, k), circle[k]}, {circle[k + 8], at(rings - 1, k + 8)}}});
    return g;
}

// Weighs every edge by its proper crossings with the drawing and kills any
// edge with a non-transversal contact (tangency, overlap, endpoint or vertex
// touch), so surviving walks meet the drawing transversally only.
void weigh_against(QGraph& g, const Drawing& d) {
    struct Seg {
        Point a, b;
        Rat x0, x1, y0, y1;
    };
    std::vector<Seg> segs;
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
        EdgeGeometry geo = edge_geometry(d, e);
        for (const DrawnSegment& s : geo.segments) {
            Seg t{s.a, s.b, std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x),
                  std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y)};
            segs.push_back(std::move(t));
        }
    }
    for (QEdge& e : g.edges) {
        for (const auto& piece : e.pieces) {
            for (const Vertex& v : d.vertices)
                if (on_segment(v.pos, piece[0], piece[1])) {
                    e.alive = false;
                    break;
                }
            if (!e.alive) break;
            Rat x0 = std::min(piece[0].x, piece[1].x), x1 = std::max(piece[0].x, piece[1].x);
            Rat y0 = std::min(piece[0].y, piece[1].y), y1 = std::max(piece[0].y, piece[1].y);
            for (const Seg& s : segs) {
                if (s.x1 < x0 || x1 < s.x0 || s.y1 < y0 || y1 < s.y0) continue;
                SegmentHit h = segment_relation(piece[0], piece[1], s.a, s.b);
                if (h.rel == SegmentRelation::ProperCrossing) {
                    ++e.w;
                } else if (h.rel != SegmentRelation::Disjoint) {
                    e.alive = false;
                    break;
                }
            }
            if (!e.alive) break;
        }
    }
}

// Cheapest closed walk per target class, by one Dijkstra in (vertex, class
// window) space per drawing-complement region. Walks whose running class
// leaves the |p|,|q| <= 6 window are dropped; the refinement agreement and
// the comparison against the checked module are the detectors for that.
std::vector<long long> quotient_minima(const QGraph& g, Surface surf,
                                       const std::vector<CanonicalClass>& targets) {
    constexpr int W = 6;
    constexpr int span = 2 * W + 1;
    const int nfsz = surf == Surface::KleinBottle ? span * span : 2;
    auto nf_at = [&](int idx) {
        if (surf == Surface::ProjectivePlane) return NormalForm{idx, 0, surf};
        return NormalForm{idx / span - W, idx % span - W, surf};
    };
    auto index_of = [&](const NormalForm& nf) {
        if (surf == Surface::ProjectivePlane) return static_cast<int>(nf.p);
        if (nf.p < -W || nf.p > W || nf.q < -W || nf.q > W) return -1;
        return static_cast<int>((nf.p + W) * span + (nf.q + W));
    };
    std::array<std::vector<int>, 6> lt;
    for (int l = 0; l < 6; ++l) {
        if (is_z_letter(static_cast<Letter>(l)) != (surf == Surface::ProjectivePlane)) continue;
        lt[l].assign(nfsz, -1);
        for (int i = 0; i < nfsz; ++i)
            lt[l][i] = index_of(nf_multiply(nf_at(i), nf_letter(static_cast<Letter>(l), surf)));
    }
    std::vector<std::vector<char>> acc(targets.size(), std::vector<char>(nfsz, 0));
    for (size_t t = 0; t < targets.size(); ++t)
        for (int i = 0; i < nfsz; ++i) acc[t][i] = canonicalize(nf_at(i)) == targets[t];
    const int id0 = index_of(nf_identity(surf));

    std::vector<long long> best(targets.size(), -1);
    std::vector<char> covered(g.n, 0);
    std::vector<long long> dist;
    using QS = std::pair<long long, long long>;
    for (int v0 = 0; v0 < g.n; ++v0) {
        if (covered[v0]) continue;
        dist.assign(static_cast<size_t>(g.n) * nfsz, -1);
        std::priority_queue<QS, std::vector<QS>, std::greater<QS>> pq;
        size_t s0 = static_cast<size_t>(v0) * nfsz + id0;
        dist[s0] = 0;
        pq.push({0, static_cast<long long>(s0)});
        std::vector<long long> found(targets.size(), -1);
        size_t remaining = targets.size();
        while (!pq.empty() && remaining) {
            auto [dd, ss] = pq.top();
            pq.pop();
            if (dist[static_cast<size_t>(ss)] != dd) continue;
            int u = static_cast<int>(ss / nfsz);
            int nfi = static_cast<int>(ss % nfsz);
            // Zero-distance states share v0's complement region; closed walks
            // based there conjugate to walks based at v0, so one run serves.
            if (dd == 0) covered[u] = 1;
            if (u == v0)
                for (size_t t = 0; t < targets.size(); ++t)
                    if (found[t] < 0 && acc[t][nfi]) {
                        found[t] = dd;
                        --remaining;
                    }
            for (auto [e, dir] : g.adj[u]) {
                const QEdge& ed = g.edges[e];
                int to = dir > 0 ? ed.v : ed.u;
                int nf2 = nfi;
                if (ed.fwd >= 0) {
                    int l = ed.fwd;
                    if (dir < 0) l = static_cast<int>(letter_inverse(static_cast<Letter>(l)));
                    nf2 = lt[l][nfi];
                    if (nf2 < 0) continue;
                }
                size_t s2 = static_cast<size_t>(to) * nfsz + nf2;
                long long nd = dd + ed.w;
                if (dist[s2] < 0 || nd < dist[s2]) {
                    dist[s2] = nd;
                    pq.push({nd, static_cast<long long>(s2)});
                }
            }
        }
        for (size_t t = 0; t < targets.size(); ++t)
            if (found[t] >= 0 && (best[t] < 0 || found[t] < best[t])) best[t] = found[t];
    }
    return best;
}

long long arc_count(const Drawing& d) {
    return static_cast<long long>(d.edges.size()) + 2 * crossing_count_all(d).count;
}

std::vector<long long> brute_core(const Drawing& d, const std::vector<CanonicalClass>& targets,
                                  long long weight_cap, int grid) {
    if (d.surface == SurfaceKind::Plane)
        throw precondition_error("plane drawings carry no classes to search");
    Surface surf = group_surface(d.surface);
    for (const CanonicalClass& t : targets)
        if (t.surface != surf) throw precondition_error("target class is for another surface");
    if (grid < 8) throw precondition_error("grid resolution below 8");
    if (arc_count(d) > 60)
        throw precondition_error("brute crossing oracle wants at most 60 arcs");
    std::array<std::vector<long long>, 2> res;
    for (int pass = 0; pass < 2; ++pass) {
        int n = grid << pass;
        QGraph g = d.surface == SurfaceKind::KleinBottle ? klein_grid(n)
                                                         : projective_rings(std::max(4, n / 2));
        weigh_against(g, d);
        link_alive(g);
        res[pass] = quotient_minima(g, surf, targets);
    }
    for (size_t t = 0; t < targets.size(); ++t) {
        if (res[0][t] < 0 || res[1][t] < 0)
            throw search_limit_error("no closed walk reached the class");
        if (res[0][t] != res[1][t])
            throw search_limit_error("grid refinement did not stabilize the minimum");
        if (res[0][t] > weight_cap)
            throw search_limit_error("weight cap active: minimum lies above it");
    }
    return res[0];
}

} // namespace

long long brute_min_class_crossing(const Drawing& d, const CanonicalClass& target,
                                   long long weight_cap, int grid) {
    return brute_core(d, {target}, weight_cap, grid)[0];
}

long long brute_min_class_crossing(const Drawing& d, CurveType t, long long weight_cap,
                                   int grid) {
    CanonicalClass target = t == CurveType::Contractible
                                ? CanonicalClass{0, 0, Surface::KleinBottle}
                                : reference_class(t);
    return brute_min_class_crossing(d, target, weight_cap, grid);
}

std::array<long long, 3> brute_class_profile(const Drawing& d, long long weight_cap, int grid) {
    if (d.surface != SurfaceKind::KleinBottle)
        throw precondition_error("class profiles are a Klein bottle notion");
    auto v = brute_core(d,
                        {reference_class(CurveType::A), reference_class(CurveType::B),
                         reference_class(CurveType::M)},
                        weight_cap, grid);
    return {v[0], v[1], v[2]};
}

namespace {

Drawing keep_part(const Drawing& d, PartLabel part) {
    if (part == PartLabel::None) return d;
    Drawing r;
    r.surface = d.surface;
    std::set<std::string> need;
    for (const PolylineEdge& e : d.edges)
        if (e.part == part) {
            need.insert(e.v1);
            need.insert(e.v2);
        }
    for (const Vertex& v : d.vertices)
        if (v.part == part || need.count(v.id)) r.vertices.push_back(v);
    for (const PolylineEdge& e : d.edges)
        if (e.part == part) r.edges.push_back(e);
    return r;
}

void require_embedded_eulerian(const Drawing& r, const std::string& name) {
    if (crossing_count_all(r).count != 0)
        throw precondition_error(name + " is not embedded");
    std::map<std::string, int> deg;
    for (const PolylineEdge& e : r.edges) {
        ++deg[e.v1];
        ++deg[e.v2];
    }
    for (const auto& [id, k] : deg)
        if (k % 2) throw precondition_error(name + " is not eulerian at vertex " + id);
}

} // namespace

long long brute_max_packing(const Drawing& d, PartLabel part, PackingType type) {
    if (d.surface != SurfaceKind::KleinBottle)
        throw precondition_error("packing oracle works on Klein bottle drawings");
    Drawing r = keep_part(d, part);
    int m = static_cast<int>(r.edges.size());
    if (m > 12) throw precondition_error("packing oracle wants at most 12 edges");
    require_embedded_eulerian(r, "packing restriction");
    if (m == 0) return 0;

    std::map<std::string, int> vidx;
    for (const Vertex& v : r.vertices) vidx.emplace(v.id, static_cast<int>(vidx.size()));
    std::vector<int> eu(m), ev(m);
    std::vector<NormalForm> fwd(m), bwd(m);
    std::vector<int> full_deg(vidx.size(), 0);
    for (int i = 0; i < m; ++i) {
        eu[i] = vidx.at(r.edges[i].v1);
        ev[i] = vidx.at(r.edges[i].v2);
        fwd[i] = normalize(edge_word(r.edges[i], r.surface), Surface::KleinBottle);
        bwd[i] = nf_inverse(fwd[i]);
        ++full_deg[eu[i]];
        ++full_deg[ev[i]];
    }
    long long combos = 1;
    for (int dg : full_deg)
        for (int k = dg - 1; k > 1; k -= 2) {
            combos *= k;
            if (combos > 200000)
                throw precondition_error("too many transition systems to enumerate");
        }

    auto type_ok = [&](const NormalForm& nf) {
        CanonicalClass c = canonicalize(nf);
        switch (type) {
        case PackingType::OneSided: return orientation_character(c) == 1;
        case PackingType::TypeA: return classify(c) == CurveType::A;
        case PackingType::TypeB: return classify(c) == CurveType::B;
        }
        return false;
    };

    // ok[T]: some transition system turns edge set T into one closed trail of
    // the requested type. Ends are coded 2*edge + side, side 0 at v1.
    std::vector<signed char> ok(1u << m, -1);
    auto circuit_ok = [&](int T) {
        if (ok[T] >= 0) return ok[T] == 1;
        ok[T] = 0;
        std::vector<int> deg(vidx.size(), 0), comp(vidx.size(), -1);
        std::vector<int> in_t;
        for (int i = 0; i < m; ++i)
            if (T >> i & 1) {
                in_t.push_back(i);
                ++deg[eu[i]];
                ++deg[ev[i]];
            }
        for (int dg : deg)
            if (dg % 2) return false;
        std::function<int(int)> find = [&](int a) { return comp[a] < 0 ? a : comp[a] = find(comp[a]); };
        for (int i : in_t) {
            int a = find(eu[i]), b = find(ev[i]);
            if (a != b) comp[a] = b;
        }
        int root = find(eu[in_t.front()]);
        for (int i : in_t)
            if (find(eu[i]) != root || find(ev[i]) != root) return false;

        std::vector<std::vector<int>> vends(vidx.size());
        for (int i : in_t) {
            vends[eu[i]].push_back(2 * i);
            vends[ev[i]].push_back(2 * i + 1);
        }
        std::vector<int> mate(2 * m, -1);
        int e0 = in_t.front();
        auto trace_ok = [&]() {
            std::vector<char> used(m, 0);
            NormalForm acc = fwd[e0];
            used[e0] = 1;
            size_t steps = 1;
            int cur = 2 * e0 + 1;
            while (true) {
                int leave = mate[cur];
                if (leave == 2 * e0) break; // next traversal restarts the trail
                int e = leave / 2;
                if (used[e]) return false;
                used[e] = 1;
                acc = nf_multiply(acc, leave % 2 == 0 ? fwd[e] : bwd[e]);
                cur = 2 * e + 1 - leave % 2;
                ++steps;
            }
            return steps == in_t.size() && type_ok(acc);
        };
        std::function<bool(size_t)> go = [&](size_t vi) -> bool {
            if (vi == vends.size()) return trace_ok();
            int a = -1;
            for (int cand : vends[vi])
                if (mate[cand] < 0) {
                    a = cand;
                    break;
                }
            if (a < 0) return go(vi + 1);
            for (int b : vends[vi]) {
                if (b == a || mate[b] >= 0) continue;
                mate[a] = b;
                mate[b] = a;
                if (go(vi)) return true;
                mate[a] = mate[b] = -1;
            }
            mate[a] = -1;
            return false;
        };
        if (go(0)) ok[T] = 1;
        return ok[T] == 1;
    };

    std::vector<long long> f(1u << m, 0);
    for (int S = 1; S < (1 << m); ++S) {
        int low = S & -S;
        long long bestv = f[S ^ low];
        for (int T = S; T; T = (T - 1) & S) {
            if (!(T & low)) continue;
            if (circuit_ok(T)) bestv = std::max(bestv, 1 + f[S ^ T]);
        }
        f[S] = bestv;
    }
    return f[(1 << m) - 1];
}

InequalityReport verify_inequalities(const Drawing& d) {
    if (d.surface != SurfaceKind::KleinBottle)
        throw precondition_error("inequality checks are a Klein bottle notion");
    for (const PolylineEdge& e : d.edges)
        if (e.part == PartLabel::None)
            throw precondition_error("every edge needs a part label for the bounds");
    Drawing h = keep_part(d, PartLabel::H);
    Drawing k = keep_part(d, PartLabel::K);
    require_embedded_eulerian(h, "part H");
    require_embedded_eulerian(k, "part K");
    std::array<long long, 3> hp{0, 0, 0}, kp{0, 0, 0};
    if (!h.edges.empty()) hp = brute_class_profile(h, 128);
    if (!k.edges.empty()) kp = brute_class_profile(k, 128);

    InequalityReport rep;
    rep.h_a = hp[0];
    rep.h_b = hp[1];
    rep.h_m = hp[2];
    rep.k_a = kp[0];
    rep.k_b = kp[1];
    rep.k_m = kp[2];
    rep.between = crossing_count_between_parts(d).count;

    Rat cr(rep.between);
    Rat half(1, 2);
    auto add = [&](std::string name, bool applicable, Rat rhs) {
        BoundCheck b{std::move(name), cr, std::move(rhs), applicable, true};
        if (applicable) b.ok = !(b.lhs < b.rhs);
        rep.all_ok = rep.all_ok && b.ok;
        rep.bounds.push_back(std::move(b));
    };
    long long ha = rep.h_a, hb = rep.h_b, hm = rep.h_m;
    long long ka = rep.k_a, kb = rep.k_b, km = rep.k_m;
    // A decomposition of one part into one-sided and m-circuits, counted
    // against the other part's minima; then edge-disjoint a- and b-circuit
    // packings of K against H; then the decompositions with the one-sided
    // count known not to clip.
    long long hmin = std::min(hm, ha + hb);
    add("h-mixed-decomposition", true,
        Rat(hmin) * std::min(ka, kb) + half * Rat(ha + hb - hmin) * km);
    long long kmin = std::min(km, ka + kb);
    add("k-mixed-decomposition", true,
        Rat(kmin) * std::min(ha, hb) + half * Rat(ka + kb - kmin) * hm);
    add("k-a-circuits-cross-h", true, Rat(std::min(ka, km)) * ha);
    add("k-b-circuits-cross-h", true, Rat(std::min(kb, km)) * hb);
    add("h-mixed-reduced", hm <= ha + hb,
        Rat(hm) * std::min(ka, kb) + half * Rat(ha + hb - hm) * km);
    add("k-mixed-reduced", km <= ka + kb, Rat(km) * ha + half * Rat(ka + kb - km) * hm);
    return rep;
}

} // namespace kleinsep
