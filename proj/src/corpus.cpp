#include "kleinsep/codec.hpp"
#include "kleinsep/errors.hpp"
#include "kleinsep/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace kleinsep {

namespace {

Point pt(Rat x, Rat y) { return Point{std::move(x), std::move(y)}; }
PathItem pp(Point p) { return PathItem::point(std::move(p)); }
PathItem tk(GluingToken t) { return PathItem::token(t); }

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::string pad(int n, int width) {
    std::string s = std::to_string(n);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

Drawing merged(const std::vector<Drawing>& parts) {
    Drawing out;
    out.surface = parts.at(0).surface;
    for (const Drawing& d : parts) {
        out.vertices.insert(out.vertices.end(), d.vertices.begin(), d.vertices.end());
        out.edges.insert(out.edges.end(), d.edges.begin(), d.edges.end());
    }
    return out;
}

Drawing part_of(const Drawing& d, PartLabel part) {
    Drawing r;
    r.surface = d.surface;
    std::vector<std::string> need;
    for (const PolylineEdge& e : d.edges)
        if (e.part == part) {
            need.push_back(e.v1);
            need.push_back(e.v2);
        }
    for (const Vertex& v : d.vertices)
        if (v.part == part || std::find(need.begin(), need.end(), v.id) != need.end())
            r.vertices.push_back(v);
    for (const PolylineEdge& e : d.edges)
        if (e.part == part) r.edges.push_back(e);
    return r;
}

bool embedded_eulerian(const Drawing& d) {
    if (d.edges.empty()) return false;
    if (crossing_count_all(d).count != 0) return false;
    std::map<std::string, int> deg;
    for (const PolylineEdge& e : d.edges) {
        ++deg[e.v1];
        ++deg[e.v2];
    }
    for (const auto& [id, k] : deg)
        if (k % 2) return false;
    return true;
}

void add_member(Corpus& c, std::string name, std::string family, Drawing d,
                std::optional<std::array<long long, 3>> expected = {}) {
    auto findings = validate(d);
    if (!findings.empty())
        throw theorem_violation("corpus member " + name + " came out invalid: " +
                                findings.front().rule + " " + findings.front().detail);
    CorpusMember m{std::move(name), std::move(family), std::move(d), false, false, expected};
    m.eulerian_embedded = embedded_eulerian(m.drawing);
    bool has_h = false, has_k = false;
    for (const PolylineEdge& e : m.drawing.edges) {
        has_h = has_h || e.part == PartLabel::H;
        has_k = has_k || e.part == PartLabel::K;
    }
    if (has_h && has_k)
        m.parts_eulerian = embedded_eulerian(part_of(m.drawing, PartLabel::H)) &&
                           embedded_eulerian(part_of(m.drawing, PartLabel::K)) &&
                           crossing_count_between_parts(m.drawing).count >= 1;
    c.members.push_back(std::move(m));
}

// k petals through the flipped gluing around one vertex; every petal is in
// the class of the reference a.
Drawing flower(int k, const std::string& prefix, PartLabel part) {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    d.vertices.push_back(Vertex{prefix + "f0", pt(Rat(1, 2), Rat(1, 2)), part});
    for (int i = 1; i <= k; ++i) {
        Rat xi = Rat(1, 2) + Rat(i, 16);
        PolylineEdge e;
        e.id = prefix + "p" + std::to_string(i);
        e.v1 = e.v2 = prefix + "f0";
        e.part = part;
        e.path = {pp(pt(xi, Rat(3, 4))), pp(pt(xi, 1)), tk(GluingToken::HPlus),
                  pp(pt(1 - xi, 0)), pp(pt(1 - xi, Rat(1, 4)))};
        d.edges.push_back(std::move(e));
    }
    return d;
}

// One-sided loops of both kinds wedged at a common vertex.
Drawing ab_wedge(const std::string& prefix, PartLabel part) {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    d.vertices.push_back(Vertex{prefix + "w0", pt(Rat(1, 2), Rat(1, 2)), part});
    PolylineEdge ea;
    ea.id = prefix + "wa";
    ea.v1 = ea.v2 = prefix + "w0";
    ea.part = part;
    ea.path = {pp(pt(Rat(1, 2), Rat(3, 4))), pp(pt(Rat(1, 2), 1)), tk(GluingToken::HPlus),
               pp(pt(Rat(1, 2), 0))};
    d.edges.push_back(std::move(ea));
    PolylineEdge eb;
    eb.id = prefix + "wb";
    eb.v1 = eb.v2 = prefix + "w0";
    eb.part = part;
    eb.path = {pp(pt(Rat(3, 4), Rat(5, 8))), pp(pt(1, Rat(5, 8))), tk(GluingToken::VPlus),
               pp(pt(0, Rat(5, 8))), pp(pt(Rat(1, 4), Rat(3, 4))), pp(pt(Rat(3, 8), 1)),
               tk(GluingToken::HPlus), pp(pt(Rat(5, 8), 0))};
    d.edges.push_back(std::move(eb));
    return d;
}

// Pairwise disjoint horizontal loops through the straight gluing.
Drawing m_stack(const std::vector<Rat>& heights, const std::string& prefix, PartLabel part) {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    for (size_t i = 0; i < heights.size(); ++i) {
        std::string vid = prefix + "mv" + std::to_string(i);
        d.vertices.push_back(Vertex{vid, pt(Rat(2 * static_cast<int>(i) + 1, 32), heights[i]), part});
        PolylineEdge e;
        e.id = prefix + "m" + std::to_string(i);
        e.v1 = e.v2 = vid;
        e.part = part;
        e.path = {pp(pt(1, heights[i])), tk(GluingToken::VPlus), pp(pt(0, heights[i]))};
        d.edges.push_back(std::move(e));
    }
    return d;
}

// Pairwise disjoint double-passage loops in the separating class. Each loop
// is two edges split near the top of its vertical runs, so a transversal
// circuit can cross both runs without crossing any single edge twice.
Drawing e_stack(int r, const std::string& prefix, PartLabel part) {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    for (int j = 0; j < r; ++j) {
        Rat c = Rat(1, 4) + Rat(j, 16);
        std::string v1 = prefix + "ev" + std::to_string(2 * j);
        std::string v2 = prefix + "ev" + std::to_string(2 * j + 1);
        d.vertices.push_back(Vertex{v1, pt(c, Rat(31, 32)), part});
        d.vertices.push_back(Vertex{v2, pt(1 - c, Rat(31, 32)), part});
        PolylineEdge e1;
        e1.id = prefix + "e" + std::to_string(2 * j);
        e1.v1 = v1;
        e1.v2 = v2;
        e1.part = part;
        e1.path = {pp(pt(c, 1)), tk(GluingToken::HPlus), pp(pt(1 - c, 0))};
        d.edges.push_back(std::move(e1));
        PolylineEdge e2;
        e2.id = prefix + "e" + std::to_string(2 * j + 1);
        e2.v1 = v2;
        e2.v2 = v1;
        e2.part = part;
        e2.path = {pp(pt(1 - c, 1)), tk(GluingToken::HPlus), pp(pt(c, 0))};
        d.edges.push_back(std::move(e2));
    }
    return d;
}

// Circuit running p times through the straight gluing: pass j slants from
// (0, ys[j-1]) to (1, ys[j]) cyclically. Passes are split at x = 1/4 and
// x = 3/4, putting every pass-to-pass crossing between two mid edges that
// share no vertex. The offsets are irregular so no two crossings coincide.
Drawing horizontal_circuit(const std::vector<Rat>& ys) {
    int p = static_cast<int>(ys.size());
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    std::vector<std::string> av(p), bv(p);
    for (int j = 0; j < p; ++j) {
        Point from = pt(0, ys[(j + p - 1) % p]);
        Point to = pt(1, ys[j]);
        av[j] = "la" + std::to_string(j);
        bv[j] = "lb" + std::to_string(j);
        d.vertices.push_back(Vertex{av[j], from + Rat(1, 4) * (to - from), PartLabel::None});
        d.vertices.push_back(Vertex{bv[j], from + Rat(3, 4) * (to - from), PartLabel::None});
    }
    for (int j = 0; j < p; ++j) {
        PolylineEdge mid;
        mid.id = "lm" + std::to_string(j);
        mid.v1 = av[j];
        mid.v2 = bv[j];
        d.edges.push_back(std::move(mid));
        PolylineEdge tr;
        tr.id = "lt" + std::to_string(j);
        tr.v1 = bv[j];
        tr.v2 = av[(j + 1) % p];
        tr.path = {pp(pt(1, ys[j])), tk(GluingToken::VPlus), pp(pt(0, ys[j]))};
        d.edges.push_back(std::move(tr));
    }
    return d;
}

// Same with q passes through the flipped gluing: pass j climbs from
// (1 - cs[j-1], 0) to (cs[j], 1), split at y = 1/4 and y = 3/4.
Drawing climb_circuit(const std::vector<Rat>& cs) {
    int q = static_cast<int>(cs.size());
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    std::vector<std::string> av(q), bv(q);
    for (int j = 0; j < q; ++j) {
        Point from = pt(1 - cs[(j + q - 1) % q], 0);
        Point to = pt(cs[j], 1);
        av[j] = "la" + std::to_string(j);
        bv[j] = "lb" + std::to_string(j);
        d.vertices.push_back(Vertex{av[j], from + Rat(1, 4) * (to - from), PartLabel::None});
        d.vertices.push_back(Vertex{bv[j], from + Rat(3, 4) * (to - from), PartLabel::None});
    }
    for (int j = 0; j < q; ++j) {
        PolylineEdge mid;
        mid.id = "lm" + std::to_string(j);
        mid.v1 = av[j];
        mid.v2 = bv[j];
        d.edges.push_back(std::move(mid));
        PolylineEdge tr;
        tr.id = "lt" + std::to_string(j);
        tr.v1 = bv[j];
        tr.v2 = av[(j + 1) % q];
        tr.path = {pp(pt(cs[j], 1)), tk(GluingToken::HPlus), pp(pt(1 - cs[j], 0))};
        d.edges.push_back(std::move(tr));
    }
    return d;
}

// Circuits realizing exponent pair (p, q) for the small pairs the corpus
// carries. The four simple classes come out as one loop; the others need
// self-intersections, so they are built from subdivided passes.
Drawing lattice_circuit(int p, int q) {
    if (p == 0 && q == 0) {
        Drawing d;
        d.surface = SurfaceKind::KleinBottle;
        d.vertices.push_back(Vertex{"lv", pt(Rat(5, 16), Rat(5, 16)), PartLabel::None});
        PolylineEdge e;
        e.id = "lc";
        e.v1 = e.v2 = "lv";
        e.path = {pp(pt(Rat(7, 16), Rat(5, 16))), pp(pt(Rat(7, 16), Rat(7, 16))),
                  pp(pt(Rat(5, 16), Rat(7, 16)))};
        d.edges.push_back(std::move(e));
        return d;
    }
    if (p == 1 && q == 1) {
        Drawing d;
        d.surface = SurfaceKind::KleinBottle;
        d.vertices.push_back(Vertex{"lv", pt(Rat(1, 2), Rat(1, 16)), PartLabel::None});
        PolylineEdge e;
        e.id = "lc";
        e.v1 = e.v2 = "lv";
        e.path = {pp(pt(1, Rat(1, 16))), tk(GluingToken::VPlus), pp(pt(0, Rat(1, 16))),
                  pp(pt(Rat(9, 16), 1)), tk(GluingToken::HPlus), pp(pt(Rat(7, 16), 0))};
        d.edges.push_back(std::move(e));
        return d;
    }
    if (q == 0) {
        std::vector<std::vector<Rat>> offsets = {
            {Rat(1, 16)},
            {Rat(1, 16), Rat(3, 16)},
            {Rat(1, 16), Rat(3, 16), Rat(5, 16)},
            {Rat(1, 16), Rat(3, 16), Rat(5, 16), Rat(8, 16)}};
        return horizontal_circuit(offsets.at(p - 1));
    }
    if (p == 0) {
        std::vector<std::vector<Rat>> offsets = {
            {Rat(9, 16)},
            {Rat(9, 16), Rat(11, 16)},
            {Rat(9, 16), Rat(11, 16), Rat(13, 16)},
            {Rat(9, 16), Rat(10, 16), Rat(12, 16), Rat(15, 16)}};
        return climb_circuit(offsets.at(q - 1));
    }
    throw precondition_error("no lattice construction for this exponent pair");
}

// Random +-1/32 wobble of every interior point, retried until legal.
Drawing jittered(const Drawing& base, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 12; ++attempt) {
        Drawing d = base;
        auto nudge = [&](Point& p) {
            if (p.x == 0 || p.x == 1 || p.y == 0 || p.y == 1) return;
            Rat dx(static_cast<long long>(draw(rng, 3)) - 1, 32);
            Rat dy(static_cast<long long>(draw(rng, 3)) - 1, 32);
            Point q{p.x + dx, p.y + dy};
            if (q.x <= 0 || q.x >= 1 || q.y <= 0 || q.y >= 1) return;
            p = std::move(q);
        };
        for (Vertex& v : d.vertices) nudge(v.pos);
        for (PolylineEdge& e : d.edges)
            for (PathItem& it : e.path)
                if (!it.is_token) nudge(it.pt);
        if (validate(d).empty()) return d;
    }
    return base;
}

const std::array<Point, 16>& corpus_circle() {
    static const std::array<Point, 16> pts = {
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
    return pts;
}

// Loop through the antipodal gluing; the vertex sits at parameter t along
// the chord from the entry point to the exit anchor.
Drawing z_loop(int anchor, const Rat& t, const std::string& prefix, PartLabel part) {
    const Point& a = corpus_circle()[((anchor % 16) + 16) % 16];
    Point enter = pt(-a.x, -a.y);
    Point v = enter + t * (a - enter);
    Drawing d;
    d.surface = SurfaceKind::ProjectivePlane;
    d.vertices.push_back(Vertex{prefix + "zv", v, part});
    PolylineEdge e;
    e.id = prefix + "z";
    e.v1 = e.v2 = prefix + "zv";
    e.part = part;
    e.path = {pp(a), tk(GluingToken::Z), pp(enter)};
    d.edges.push_back(std::move(e));
    return d;
}

// Petals through the antipodal gluing sharing one vertex; the vertex lies on
// the first petal's chord.
Drawing z_flower(const std::vector<int>& anchors, const Rat& t, const std::string& prefix,
                 PartLabel part) {
    const auto& circle = corpus_circle();
    const Point& a0 = circle[((anchors.at(0) % 16) + 16) % 16];
    Point enter0 = pt(-a0.x, -a0.y);
    Point v = enter0 + t * (a0 - enter0);
    Drawing d;
    d.surface = SurfaceKind::ProjectivePlane;
    d.vertices.push_back(Vertex{prefix + "fv", v, part});
    for (size_t i = 0; i < anchors.size(); ++i) {
        const Point& a = circle[((anchors[i] % 16) + 16) % 16];
        PolylineEdge e;
        e.id = prefix + "f" + std::to_string(i);
        e.v1 = e.v2 = prefix + "fv";
        e.part = part;
        e.path = {pp(a), tk(GluingToken::Z), pp(pt(-a.x, -a.y))};
        d.edges.push_back(std::move(e));
    }
    return d;
}

// Two antipodal passages in a row; the loop word squares to the identity.
Drawing zz_loop() {
    const auto& circle = corpus_circle();
    const Point& a1 = circle[2];
    const Point& a2 = circle[4];
    Drawing d;
    d.surface = SurfaceKind::ProjectivePlane;
    d.vertices.push_back(Vertex{"zzv", pt(Rat(1, 8), Rat(-1, 8)), PartLabel::None});
    PolylineEdge e;
    e.id = "zz";
    e.v1 = e.v2 = "zzv";
    e.path = {pp(a1), tk(GluingToken::Z), pp(pt(-a1.x, -a1.y)),
              pp(a2), tk(GluingToken::Z), pp(pt(-a2.x, -a2.y))};
    d.edges.push_back(std::move(e));
    return d;
}

std::vector<Rat> pick_heights(std::mt19937_64& rng, int p) {
    int start = static_cast<int>(draw(rng, 8));
    int stride = 1 + static_cast<int>(draw(rng, 3));
    std::vector<Rat> hs;
    for (int t = 0; t < p; ++t) hs.push_back(Rat(2 * ((start + t * stride) % 8) + 1, 16));
    return hs;
}

} // namespace

const CorpusMember* Corpus::find(const std::string& name) const {
    for (const CorpusMember& m : members)
        if (m.name == name) return &m;
    return nullptr;
}

Corpus generate_corpus(std::uint64_t seed, const CorpusParams& params) {
    std::mt19937_64 rng(seed);
    Corpus c;
    c.seed = seed;

    const std::array<CurveType, 4> types{CurveType::A, CurveType::B, CurveType::M, CurveType::E};
    const std::array<char, 4> letters{'a', 'b', 'm', 'e'};
    const std::array<std::array<long long, 3>, 4> ref_profiles{
        {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}, {0, 0, 2}}};
    for (int i = 0; i < 4; ++i)
        add_member(c, std::string("ref-") + letters[i], "reference", reference_drawing(types[i]),
                   ref_profiles[i]);

    for (int mask = 1; mask < 16; ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        std::string name = "merge-";
        std::vector<Drawing> parts;
        for (int i = 0; i < 4; ++i)
            if (mask >> i & 1) {
                name += letters[i];
                // m crosses e twice, so merges holding both need the split
                // two-edge e to stay within one crossing per edge pair.
                if (i == 3 && (mask >> 2 & 1))
                    parts.push_back(e_stack(1, "", PartLabel::None));
                else
                    parts.push_back(reference_drawing(types[i]));
            }
        std::optional<std::array<long long, 3>> expected;
        if (mask == 0b0101) expected = std::array<long long, 3>{2, 1, 1}; // a with m
        add_member(c, name, "merge", merged(parts), expected);
    }

    for (int k = 1; k <= 4; ++k)
        add_member(c, "wedge-" + std::to_string(k), "wedge", flower(k, "", PartLabel::None),
                   std::array<long long, 3>{k, 0, k});
    add_member(c, "wedge-ab", "wedge", ab_wedge("", PartLabel::None));

    add_member(c, "stack-m2", "stack",
               m_stack({Rat(1, 16), Rat(3, 16)}, "", PartLabel::None),
               std::array<long long, 3>{2, 2, 0});
    add_member(c, "stack-m3", "stack",
               m_stack({Rat(1, 16), Rat(3, 16), Rat(5, 16)}, "", PartLabel::None),
               std::array<long long, 3>{3, 3, 0});
    add_member(c, "stack-e2", "stack", e_stack(2, "", PartLabel::None),
               std::array<long long, 3>{0, 0, 4});

    const std::vector<std::pair<int, int>> lattice_pq = {
        {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2},
        {3, 0}, {0, 3}, {4, 0}, {0, 4}};
    int nl = std::min<int>(params.n_lattice, static_cast<int>(lattice_pq.size()));
    for (int i = 0; i < nl; ++i)
        add_member(c,
                   "lattice-" + std::to_string(lattice_pq[i].first) + "-" +
                       std::to_string(lattice_pq[i].second),
                   "lattice", lattice_circuit(lattice_pq[i].first, lattice_pq[i].second));

    std::vector<Drawing> jitter_bases;
    jitter_bases.push_back(reference_drawing(CurveType::A));
    jitter_bases.push_back(reference_drawing(CurveType::M));
    jitter_bases.push_back(reference_drawing(CurveType::E));
    jitter_bases.push_back(
        merged({reference_drawing(CurveType::A), reference_drawing(CurveType::M)}));
    jitter_bases.push_back(
        merged({reference_drawing(CurveType::A), reference_drawing(CurveType::B)}));
    jitter_bases.push_back(flower(2, "", PartLabel::None));
    jitter_bases.push_back(lattice_circuit(1, 1));
    jitter_bases.push_back(m_stack({Rat(1, 16), Rat(3, 16)}, "", PartLabel::None));
    for (int i = 0; i < params.n_jitter; ++i)
        add_member(c, "jitter-" + pad(i, 2), "jitter",
                   jittered(jitter_bases[i % jitter_bases.size()], rng));

    for (int i = 0; i < params.n_pairs; ++i) {
        int variant = i % 4;
        int p = 1 + static_cast<int>(draw(rng, 3));
        Drawing h, k;
        if (variant == 0) {
            int petals = 1 + static_cast<int>(draw(rng, 3));
            h = m_stack(pick_heights(rng, p), "H", PartLabel::H);
            k = flower(petals, "K", PartLabel::K);
        } else if (variant == 1) {
            int petals = 1 + static_cast<int>(draw(rng, 3));
            h = flower(petals, "H", PartLabel::H);
            k = m_stack(pick_heights(rng, p), "K", PartLabel::K);
        } else if (variant == 2) {
            int r = 1 + static_cast<int>(draw(rng, 2));
            h = m_stack(pick_heights(rng, p), "H", PartLabel::H);
            k = e_stack(r, "K", PartLabel::K);
        } else {
            h = ab_wedge("H", PartLabel::H);
            k = m_stack(pick_heights(rng, p), "K", PartLabel::K);
        }
        Drawing d = merged({h, k});
        add_member(c, "pair-" + pad(i, 3), "pair", std::move(d));
        if (!c.members.back().parts_eulerian)
            throw theorem_violation("pair member lost its eulerian parts: " +
                                    c.members.back().name);
    }

    add_member(c, "proj-z", "projective", z_loop(2, Rat(1, 3), "", PartLabel::None));
    add_member(c, "proj-z2", "projective", z_loop(5, Rat(2, 5), "", PartLabel::None));
    add_member(c, "proj-zz", "projective", zz_loop());
    add_member(c, "proj-fl2", "projective", z_flower({2, 5}, Rat(1, 3), "", PartLabel::None));

    const std::vector<std::array<int, 3>> proj_anchor_sets = {
        {2, 5, 12}, {1, 6, 13}, {3, 6, 12}, {2, 6, 11}, {1, 5, 12}, {3, 7, 13}};
    const std::vector<Rat> th_list = {Rat(1, 3), Rat(3, 8), Rat(2, 5), Rat(5, 12)};
    const std::vector<Rat> tk_list = {Rat(1, 4), Rat(2, 7), Rat(1, 3), Rat(3, 10)};
    int n_proj_pairs = std::max(0, params.n_projective - 4);
    for (int i = 0; i < n_proj_pairs; ++i) {
        int petals = 1 + static_cast<int>(draw(rng, 2));
        Rat th = th_list[draw(rng, th_list.size())];
        Rat tks = tk_list[draw(rng, tk_list.size())];
        std::uint64_t rot = draw(rng, proj_anchor_sets.size());
        bool placed = false;
        for (size_t attempt = 0; attempt < proj_anchor_sets.size() && !placed; ++attempt) {
            const auto& set = proj_anchor_sets[(rot + attempt) % proj_anchor_sets.size()];
            std::vector<int> anchors{set[0]};
            if (petals == 2) anchors.push_back(set[1]);
            Drawing h = z_flower(anchors, th, "H", PartLabel::H);
            Drawing k = z_loop(set[2], tks, "K", PartLabel::K);
            Drawing d = merged({h, k});
            if (!validate(d).empty()) continue;
            if (!embedded_eulerian(part_of(d, PartLabel::H)) ||
                !embedded_eulerian(part_of(d, PartLabel::K)))
                continue;
            if (crossing_count_between_parts(d).count < 1) continue;
            add_member(c, "proj-pair-" + pad(i, 2), "projective", std::move(d));
            placed = true;
        }
        if (!placed)
            throw theorem_violation("no legal projective pair for index " + std::to_string(i));
    }

    return c;
}

void save_corpus(const Corpus& c, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json members = nlohmann::json::array();
    for (const CorpusMember& m : c.members) {
        std::string file = m.name + ".kd";
        write_drawing_file((fs::path(dir) / file).string(), m.drawing);
        nlohmann::json j;
        j["name"] = m.name;
        j["family"] = m.family;
        j["file"] = file;
        j["surface"] = m.drawing.surface == SurfaceKind::KleinBottle       ? "klein"
                       : m.drawing.surface == SurfaceKind::ProjectivePlane ? "projective"
                                                                           : "plane";
        j["eulerian_embedded"] = m.eulerian_embedded;
        j["parts_eulerian"] = m.parts_eulerian;
        if (m.expected_profile)
            j["expected_profile"] = {(*m.expected_profile)[0], (*m.expected_profile)[1],
                                     (*m.expected_profile)[2]};
        else
            j["expected_profile"] = nullptr;
        members.push_back(std::move(j));
    }
    nlohmann::json manifest;
    manifest["seed"] = c.seed;
    manifest["members"] = std::move(members);
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << manifest.dump(2) << "\n";
}

} // namespace kleinsep
