#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinsep/circuits.hpp"
#include "kleinsep/errors.hpp"
#include "kleinsep/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

using namespace kleinsep;

namespace {

Point pt(Rat x, Rat y) { return Point{std::move(x), std::move(y)}; }

PolylineEdge make_edge(std::string id, std::string v1, std::string v2,
                       std::vector<PathItem> path) {
    PolylineEdge e;
    e.id = std::move(id);
    e.v1 = std::move(v1);
    e.v2 = std::move(v2);
    e.path = std::move(path);
    return e;
}

const Corpus& small_corpus() {
    static const Corpus c = generate_corpus(20260823, CorpusParams{6, 4, 8, 6});
    return c;
}

const Drawing& member(const std::string& name) {
    const CorpusMember* m = small_corpus().find(name);
    REQUIRE(m != nullptr);
    return m->drawing;
}

// m-circuit and e-circuit wedged at two shared vertices, no crossings.
Drawing me_wedge() {
    Drawing d;
    d.vertices = {Vertex{"u", pt(Rat(1, 4), Rat(1, 2)), PartLabel::None},
                  Vertex{"w", pt(Rat(3, 4), Rat(1, 2)), PartLabel::None}};
    d.edges.push_back(make_edge("m1", "u", "w", {}));
    d.edges.push_back(make_edge("m2", "w", "u",
                                {PathItem::point(pt(1, Rat(1, 2))),
                                 PathItem::token(GluingToken::VPlus),
                                 PathItem::point(pt(0, Rat(1, 2)))}));
    d.edges.push_back(make_edge("e1", "u", "w",
                                {PathItem::point(pt(Rat(1, 4), 1)),
                                 PathItem::token(GluingToken::HPlus),
                                 PathItem::point(pt(Rat(3, 4), 0))}));
    d.edges.push_back(make_edge("e2", "w", "u",
                                {PathItem::point(pt(Rat(3, 4), 1)),
                                 PathItem::token(GluingToken::HPlus),
                                 PathItem::point(pt(Rat(1, 4), 0))}));
    return d;
}

// b-circuit and m-circuit wedged at one shared vertex.
Drawing bm_wedge() {
    Drawing d;
    d.vertices = {Vertex{"u", pt(Rat(1, 2), Rat(1, 2)), PartLabel::None}};
    d.edges.push_back(make_edge("b1", "u", "u",
                                {PathItem::point(pt(1, Rat(5, 8))),
                                 PathItem::token(GluingToken::VPlus),
                                 PathItem::point(pt(0, Rat(5, 8))),
                                 PathItem::point(pt(Rat(3, 8), 1)),
                                 PathItem::token(GluingToken::HPlus),
                                 PathItem::point(pt(Rat(5, 8), 0))}));
    d.edges.push_back(make_edge("m1", "u", "u",
                                {PathItem::point(pt(1, Rat(1, 2))),
                                 PathItem::token(GluingToken::VPlus),
                                 PathItem::point(pt(0, Rat(1, 2)))}));
    return d;
}

std::vector<std::string> covered_edges(const Decomposition& dec) {
    std::vector<std::string> ids;
    for (const Circuit& c : dec.circuits)
        for (const EdgeStep& s : c.steps) ids.push_back(s.edge);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::string> part_edges(const Drawing& d, PartLabel part) {
    std::vector<std::string> ids;
    for (const PolylineEdge& e : restrict_part(d, part).edges) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

void check_profile_equalities(const Drawing& d, PartLabel part) {
    CAPTURE(part == PartLabel::H ? "H" : part == PartLabel::K ? "K" : "all");
    Decomposition dec = decompose_base(d, part);
    DecompositionCounts n = count_kinds(dec);
    long long hits = 0;
    CrossingTriple prof = crossing_profile(d, part, {}, &hits);
    CHECK(hits == 0);
    CHECK(n.n_other == 0);
    CHECK(n.n_a + n.n_m == prof.a);
    CHECK(n.n_b + n.n_m == prof.b);
    CHECK(n.n_a + n.n_b + 2 * n.n_e == prof.m);
    CHECK(covered_edges(dec) == part_edges(d, part));
}

} // namespace

TEST_CASE("eulerian predicate tracks vertex parity") {
    CHECK(is_eulerian(reference_drawing(CurveType::A), PartLabel::None));
    CHECK(is_eulerian(reference_drawing(CurveType::E), PartLabel::None));

    Drawing open;
    open.vertices = {Vertex{"u", pt(Rat(1, 4), Rat(1, 4)), PartLabel::None},
                     Vertex{"w", pt(Rat(3, 4), Rat(1, 4)), PartLabel::None}};
    open.edges.push_back(make_edge("p", "u", "w", {}));
    CHECK_FALSE(is_eulerian(open, PartLabel::None));

    CHECK(is_eulerian(me_wedge(), PartLabel::None));
    CHECK(is_eulerian(member("pair-000"), PartLabel::H));
    CHECK(is_eulerian(member("pair-000"), PartLabel::K));
}

TEST_CASE("circuit words follow step direction") {
    const Drawing ref_b = reference_drawing(CurveType::B);
    Circuit fwd{{EdgeStep{"b", true}}};
    Circuit bwd{{EdgeStep{"b", false}}};
    CHECK(circuit_word(ref_b, fwd) == Word{Letter::X, Letter::Y});
    CHECK(circuit_word(ref_b, bwd) == Word{Letter::Yinv, Letter::Xinv});
    CHECK(circuit_kind(ref_b, fwd) == CircuitKind::B);
    CHECK(circuit_kind(ref_b, bwd) == CircuitKind::B);

    const Drawing wedge = me_wedge();
    Circuit skip{{EdgeStep{"m1", true}, EdgeStep{"e2", false}}};
    CHECK_THROWS_AS(circuit_word(wedge, skip), precondition_error);
    Circuit ghost{{EdgeStep{"zz", true}}};
    CHECK_THROWS_AS(circuit_word(wedge, ghost), precondition_error);
}

TEST_CASE("reference loops decompose to their own kinds") {
    const std::map<CurveType, CircuitKind> expect = {
        {CurveType::A, CircuitKind::A},
        {CurveType::B, CircuitKind::B},
        {CurveType::M, CircuitKind::M},
        {CurveType::E, CircuitKind::E},
    };
    for (const auto& [t, k] : expect) {
        Decomposition dec = decompose_base(reference_drawing(t), PartLabel::None);
        REQUIRE(dec.circuits.size() == 1);
        CHECK(dec.kinds[0] == k);
    }
    CHECK(circuit_kind(reference_drawing(CurveType::E), Circuit{{EdgeStep{"e", true}}}) ==
          CircuitKind::E);
}

TEST_CASE("decompose base matches known corpus counts") {
    const std::vector<std::pair<std::string, DecompositionCounts>> cases = {
        {"wedge-ab", {1, 1, 0, 0, 0, 0}},
        {"wedge-2", {2, 0, 0, 0, 0, 0}},
        {"wedge-3", {3, 0, 0, 0, 0, 0}},
        {"stack-m2", {0, 0, 2, 0, 0, 0}},
        {"stack-e2", {0, 0, 0, 2, 0, 0}},
        {"lattice-0-0", {0, 0, 0, 0, 1, 0}},
        {"lattice-1-0", {0, 0, 1, 0, 0, 0}},
        {"lattice-0-1", {1, 0, 0, 0, 0, 0}},
        {"lattice-1-1", {0, 1, 0, 0, 0, 0}},
        {"merge-ab", {1, 1, 0, 0, 0, 0}},
        {"merge-abe", {1, 1, 0, 1, 0, 0}},
    };
    for (const auto& [name, counts] : cases) {
        CAPTURE(name);
        Decomposition dec = decompose_base(member(name), PartLabel::None);
        CHECK(count_kinds(dec) == counts);
        CHECK(covered_edges(dec) == part_edges(member(name), PartLabel::None));
    }
}

TEST_CASE("decompose base equalities hold across the corpus") {
    int instances = 0;
    for (const CorpusMember& m : small_corpus().members) {
        if (m.drawing.surface != SurfaceKind::KleinBottle) continue;
        CAPTURE(m.name);
        if (m.eulerian_embedded) {
            check_profile_equalities(m.drawing, PartLabel::None);
            ++instances;
        }
        if (m.parts_eulerian) {
            check_profile_equalities(m.drawing, PartLabel::H);
            check_profile_equalities(m.drawing, PartLabel::K);
            instances += 2;
        }
    }
    CHECK(instances >= 30);
}

TEST_CASE("merging an m and an e circuit yields one-sided circuits") {
    const Drawing d = me_wedge();
    REQUIRE(validate(d).empty());

    Circuit m{{EdgeStep{"m1", true}, EdgeStep{"m2", true}}};
    Circuit e{{EdgeStep{"e1", true}, EdgeStep{"e2", true}}};
    REQUIRE(circuit_kind(d, m) == CircuitKind::M);
    REQUIRE(circuit_kind(d, e) == CircuitKind::E);

    Decomposition dec{{m, e}, {CircuitKind::M, CircuitKind::E}};
    Decomposition out = merge_me(d, dec, 0, 1);
    REQUIRE(out.circuits.size() == 2);
    CHECK(out.kinds[0] == CircuitKind::A);
    CHECK(out.kinds[1] == CircuitKind::B);
    CHECK(covered_edges(out) == part_edges(d, PartLabel::None));

    CanonicalClass ca = canonicalize(normalize(circuit_word(d, out.circuits[0]),
                                               Surface::KleinBottle));
    CanonicalClass cb = canonicalize(normalize(circuit_word(d, out.circuits[1]),
                                               Surface::KleinBottle));
    CHECK(classify(ca) == CurveType::A);
    CHECK(classify(cb) == CurveType::B);
}

TEST_CASE("merging a b and an m circuit yields a single a circuit") {
    const Drawing d = bm_wedge();
    REQUIRE(validate(d).empty());

    Circuit b{{EdgeStep{"b1", true}}};
    Circuit m{{EdgeStep{"m1", true}}};
    REQUIRE(circuit_kind(d, b) == CircuitKind::B);
    REQUIRE(circuit_kind(d, m) == CircuitKind::M);

    Decomposition dec{{b, m}, {CircuitKind::B, CircuitKind::M}};
    Decomposition out = merge_bm(d, dec, 0, 1);
    REQUIRE(out.circuits.size() == 1);
    CHECK(out.kinds[0] == CircuitKind::A);
    CHECK(covered_edges(out) == part_edges(d, PartLabel::None));
    CHECK(classify(canonicalize(normalize(circuit_word(d, out.circuits[0]),
                                          Surface::KleinBottle))) == CurveType::A);
}

TEST_CASE("merge preconditions are enforced") {
    const Drawing d = bm_wedge();
    Decomposition dec{{Circuit{{EdgeStep{"b1", true}}}, Circuit{{EdgeStep{"m1", true}}}},
                      {CircuitKind::B, CircuitKind::M}};
    CHECK_THROWS_AS(merge_me(d, dec, 0, 1), precondition_error);
    CHECK_THROWS_AS(merge_bm(d, dec, 0, 5), precondition_error);
    CHECK_THROWS_AS(merge_bm(d, dec, 1, 1), precondition_error);

    // m-loop and an e-pair in separate components: nothing to re-pair.
    Drawing far;
    far.vertices = {Vertex{"mv", pt(Rat(1, 2), Rat(1, 4)), PartLabel::None},
                    Vertex{"ev1", pt(Rat(1, 4), Rat(31, 32)), PartLabel::None},
                    Vertex{"ev2", pt(Rat(3, 4), Rat(31, 32)), PartLabel::None}};
    far.edges.push_back(make_edge("mm", "mv", "mv",
                                  {PathItem::point(pt(1, Rat(1, 4))),
                                   PathItem::token(GluingToken::VPlus),
                                   PathItem::point(pt(0, Rat(1, 4)))}));
    far.edges.push_back(make_edge("ee1", "ev1", "ev2",
                                  {PathItem::point(pt(Rat(1, 4), 1)),
                                   PathItem::token(GluingToken::HPlus),
                                   PathItem::point(pt(Rat(3, 4), 0))}));
    far.edges.push_back(make_edge("ee2", "ev2", "ev1",
                                  {PathItem::point(pt(Rat(3, 4), 1)),
                                   PathItem::token(GluingToken::HPlus),
                                   PathItem::point(pt(Rat(1, 4), 0))}));
    Decomposition split{{Circuit{{EdgeStep{"mm", true}}},
                         Circuit{{EdgeStep{"ee1", true}, EdgeStep{"ee2", true}}}},
                        {CircuitKind::M, CircuitKind::E}};
    CHECK_THROWS_AS(merge_me(far, split, 0, 1), precondition_error);
}

TEST_CASE("promoted crossings give decomposable embeddings") {
    Drawing me = promote_crossings(member("merge-me"));
    REQUIRE(validate(me).empty());
    REQUIRE(is_eulerian(me, PartLabel::None));
    check_profile_equalities(me, PartLabel::None);

    PackingResult one = max_one_sided_packing(me, PartLabel::None);
    CHECK(one.count == 2);
    CHECK(count_kinds(one.decomposition).n_m == 0);
    PackingResult a = max_a_packing(me, PartLabel::None);
    CHECK(a.count == 1);
    PackingResult b = max_b_packing(me, PartLabel::None);
    CHECK(b.count == 1);

    // One crossing between an a-loop and an m-loop; the b packing has to
    // merge them into a single b-circuit.
    Drawing am = promote_crossings(member("merge-am"));
    REQUIRE(validate(am).empty());
    check_profile_equalities(am, PartLabel::None);
    CHECK(max_one_sided_packing(am, PartLabel::None).count == 1);
    CHECK(max_a_packing(am, PartLabel::None).count == 1);
    PackingResult bam = max_b_packing(am, PartLabel::None);
    CHECK(bam.count == 1);
    CHECK(count_kinds(bam.decomposition).n_b == 1);
    CHECK(covered_edges(bam.decomposition) == part_edges(am, PartLabel::None));
}

TEST_CASE("packing counts match the profile minima and the brute force") {
    int instances = 0;
    for (const CorpusMember& m : small_corpus().members) {
        if (m.drawing.surface != SurfaceKind::KleinBottle) continue;
        std::vector<PartLabel> parts;
        if (m.eulerian_embedded) parts.push_back(PartLabel::None);
        if (m.parts_eulerian) {
            parts.push_back(PartLabel::H);
            parts.push_back(PartLabel::K);
        }
        for (PartLabel part : parts) {
            if (restrict_part(m.drawing, part).edges.size() > 12) continue;
            CAPTURE(m.name);
            long long hits = 0;
            CrossingTriple prof = crossing_profile(m.drawing, part, {}, &hits);
            REQUIRE(hits == 0);

            PackingResult one = max_one_sided_packing(m.drawing, part);
            CHECK(one.count == std::min(prof.a + prof.b, prof.m));
            CHECK(one.count == brute_max_packing(m.drawing, part, PackingType::OneSided));
            CHECK(2 * count_kinds(one.decomposition).n_m ==
                  prof.a + prof.b - std::min(prof.a + prof.b, prof.m));

            PackingResult a = max_a_packing(m.drawing, part);
            CHECK(a.count == std::min(prof.a, prof.m));
            CHECK(a.count == brute_max_packing(m.drawing, part, PackingType::TypeA));

            PackingResult b = max_b_packing(m.drawing, part);
            CHECK(b.count == std::min(prof.b, prof.m));
            CHECK(b.count == brute_max_packing(m.drawing, part, PackingType::TypeB));

            CHECK(a.count <= one.count);
            CHECK(b.count <= one.count);
            CHECK(covered_edges(one.decomposition) == part_edges(m.drawing, part));
            ++instances;
        }
    }
    CHECK(instances >= 25);
}

TEST_CASE("decompose base rejects parts outside its domain") {
    CHECK_THROWS_AS(decompose_base(member("merge-am"), PartLabel::None), precondition_error);
    CHECK_THROWS_AS(decompose_base(member("proj-z"), PartLabel::None), precondition_error);

    Drawing open;
    open.vertices = {Vertex{"u", pt(Rat(1, 4), Rat(1, 4)), PartLabel::None},
                     Vertex{"w", pt(Rat(3, 4), Rat(1, 4)), PartLabel::None}};
    open.edges.push_back(make_edge("p", "u", "w", {}));
    CHECK_THROWS_AS(decompose_base(open, PartLabel::None), precondition_error);

    Decomposition empty = decompose_base(reference_drawing(CurveType::A), PartLabel::H);
    CHECK(empty.circuits.empty());
    CHECK(max_one_sided_packing(reference_drawing(CurveType::A), PartLabel::H).count == 0);
}
