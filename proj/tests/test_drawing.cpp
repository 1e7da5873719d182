#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinsep/codec.hpp"
#include "kleinsep/drawing.hpp"
#include "kleinsep/errors.hpp"

#include <map>

using namespace kleinsep;

namespace {

Point pt(Rat x, Rat y) { return Point{std::move(x), std::move(y)}; }

// Merges several single-part drawings on one surface; ids must not clash.
Drawing merge(const std::vector<Drawing>& parts) {
    Drawing out;
    out.surface = parts.at(0).surface;
    for (const Drawing& d : parts) {
        out.vertices.insert(out.vertices.end(), d.vertices.begin(), d.vertices.end());
        out.edges.insert(out.edges.end(), d.edges.begin(), d.edges.end());
    }
    return out;
}

const std::vector<CurveType> kRefs{CurveType::A, CurveType::B, CurveType::M, CurveType::E};

} // namespace

TEST_CASE("token gluing geometry") {
    CHECK(token_exit_matches(SurfaceKind::KleinBottle, GluingToken::VPlus, pt(1, Rat(1, 3))));
    CHECK(!token_exit_matches(SurfaceKind::KleinBottle, GluingToken::VPlus, pt(0, Rat(1, 3))));
    CHECK(!token_exit_matches(SurfaceKind::KleinBottle, GluingToken::VPlus, pt(1, 0)));
    CHECK(token_enter_point(SurfaceKind::KleinBottle, GluingToken::VPlus, pt(1, Rat(1, 3))) ==
          pt(0, Rat(1, 3)));
    CHECK(token_enter_point(SurfaceKind::KleinBottle, GluingToken::HPlus, pt(Rat(1, 4), 1)) ==
          pt(Rat(3, 4), 0));
    CHECK(token_enter_point(SurfaceKind::KleinBottle, GluingToken::HMinus, pt(Rat(1, 4), 0)) ==
          pt(Rat(3, 4), 1));
    // All four corners are one surface point.
    Point corner = boundary_key(SurfaceKind::KleinBottle, pt(0, 0));
    CHECK(boundary_key(SurfaceKind::KleinBottle, pt(1, 0)) == corner);
    CHECK(boundary_key(SurfaceKind::KleinBottle, pt(0, 1)) == corner);
    CHECK(boundary_key(SurfaceKind::KleinBottle, pt(1, 1)) == corner);
    CHECK(boundary_key(SurfaceKind::KleinBottle, pt(Rat(1, 3), 1)) ==
          boundary_key(SurfaceKind::KleinBottle, pt(Rat(2, 3), 0)));
    CHECK(token_exit_matches(SurfaceKind::ProjectivePlane, GluingToken::Z,
                             pt(Rat(3, 5), Rat(4, 5))));
    CHECK(token_enter_point(SurfaceKind::ProjectivePlane, GluingToken::Z,
                            pt(Rat(3, 5), Rat(4, 5))) == pt(Rat(-3, 5), Rat(-4, 5)));
}

TEST_CASE("reference curves classify as their letters") {
    std::map<CurveType, CurveType> got;
    for (CurveType t : kRefs) {
        ClosedCurve c = reference_curve(t);
        CHECK(validate_curve(c).empty());
        CHECK(curve_self_crossings(c) == 0);
        got[t] = classify(curve_class(c));
    }
    CHECK(got[CurveType::A] == CurveType::A);
    CHECK(got[CurveType::B] == CurveType::B);
    CHECK(got[CurveType::M] == CurveType::M);
    CHECK(got[CurveType::E] == CurveType::E);
}

TEST_CASE("reference drawings validate cleanly") {
    for (CurveType t : kRefs) {
        Drawing d = reference_drawing(t);
        auto findings = validate(d);
        for (const auto& f : findings) { CAPTURE(f.rule); CAPTURE(f.detail); }
        CHECK(findings.empty());
        CHECK(crossing_count_all(d).count == 0);
        // Loop round trip keeps the class.
        ClosedCurve back = edge_as_curve(d, d.edges[0]);
        CHECK(classify(curve_class(back)) == t);
    }
    // All four coexist geometrically; the only rule they break is the
    // crossing bound, because e and m cannot cross fewer than two times.
    Drawing all = merge({reference_drawing(CurveType::A), reference_drawing(CurveType::B),
                         reference_drawing(CurveType::M), reference_drawing(CurveType::E)});
    auto findings = validate(all);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].rule == "non-incident edges cross at most once");
    CHECK(findings[0].detail == "e and m cross 2 times");
}

TEST_CASE("pairwise crossings of reference curves match the class table") {
    for (CurveType t : kRefs)
        for (CurveType u : kRefs) {
            if (t == u) continue;
            long long n = curve_pair_crossings(reference_curve(t), reference_curve(u));
            CHECK(n == min_pairwise_crossing(t, u));
        }
}

TEST_CASE("crossing counts through drawings") {
    Drawing am = merge({reference_drawing(CurveType::A), reference_drawing(CurveType::M)});
    CrossingReport rep = crossing_count_all(am);
    CHECK(rep.count == 1);
    REQUIRE(rep.list.size() == 1);
    CHECK(rep.list[0].at == pt(Rat(1, 2), Rat(1, 2)));
    CHECK(rep.list[0].edge1 == "a");
    CHECK(rep.list[0].edge2 == "m");

    CHECK(crossing_count_with_curve(reference_drawing(CurveType::A),
                                    reference_curve(CurveType::M))
              .count == 1);
    CHECK(crossing_count_with_curve(reference_drawing(CurveType::E),
                                    reference_curve(CurveType::M))
              .count == 2);
    CHECK(crossing_count_with_curve(reference_drawing(CurveType::E),
                                    reference_curve(CurveType::A))
              .count == 0);

    Drawing empty;
    empty.surface = SurfaceKind::KleinBottle;
    CHECK(crossing_count_all(empty).count == 0);
}

TEST_CASE("between-parts counting respects labels") {
    Drawing h = reference_drawing(CurveType::A);
    h.vertices[0].part = PartLabel::H;
    h.edges[0].part = PartLabel::H;
    Drawing k = reference_drawing(CurveType::M);
    k.vertices[0].part = PartLabel::K;
    k.edges[0].part = PartLabel::K;
    Drawing both = merge({h, k});
    CHECK(validate(both).empty());
    CHECK(crossing_count_all(both).count == 1);
    CHECK(crossing_count_between_parts(both).count == 1);

    // Internal crossings of one part never count as between.
    Drawing k2 = reference_drawing(CurveType::E);
    k2.vertices[0].part = PartLabel::K;
    k2.edges[0].part = PartLabel::K;
    Drawing three = merge({h, k, k2});
    CHECK(crossing_count_all(three).count == 3);         // a-m 1, m-e 2
    CHECK(crossing_count_between_parts(three).count == 1); // only a-m
}

TEST_CASE("validate reports the proper-drawing rules") {
    // Two straight edges crossing twice cannot exist; use polylines.
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    d.vertices = {Vertex{"p", pt(Rat(1, 4), Rat(1, 4))}, Vertex{"q", pt(Rat(3, 4), Rat(1, 4))},
                  Vertex{"r", pt(Rat(1, 4), Rat(1, 2))}, Vertex{"s", pt(Rat(3, 4), Rat(1, 2))}};
    PolylineEdge e1{"x", "p", "q", {PathItem::point(pt(Rat(1, 2), Rat(3, 4)))}, PartLabel::None};
    PolylineEdge e2{"y", "r", "s", {PathItem::point(pt(Rat(1, 2), Rat(1, 4)))}, PartLabel::None};
    d.edges = {e1, e2};
    auto findings = validate(d);
    bool saw = false;
    for (const auto& f : findings)
        if (f.rule == "non-incident edges cross at most once") saw = true;
    CHECK(saw);

    // Edge through a vertex.
    Drawing d2;
    d2.surface = SurfaceKind::KleinBottle;
    d2.vertices = {Vertex{"p", pt(Rat(1, 4), Rat(1, 2))}, Vertex{"q", pt(Rat(3, 4), Rat(1, 2))},
                   Vertex{"w", pt(Rat(1, 2), Rat(1, 2))}};
    d2.edges = {PolylineEdge{"x", "p", "q", {}, PartLabel::None}};
    saw = false;
    for (const auto& f : validate(d2))
        if (f.rule == "proper drawing") saw = true;
    CHECK(saw);

    // Tangency is degenerate for the counting ops.
    Drawing d3;
    d3.surface = SurfaceKind::KleinBottle;
    d3.vertices = {Vertex{"p", pt(Rat(1, 4), Rat(1, 4))}, Vertex{"q", pt(Rat(3, 4), Rat(1, 4))},
                   Vertex{"r", pt(Rat(1, 4), Rat(3, 4))}, Vertex{"s", pt(Rat(3, 4), Rat(3, 4))}};
    // Shared interior point (1/2,1/2) where y only touches (bends away).
    d3.edges = {PolylineEdge{"x", "p", "s", {}, PartLabel::None},
                PolylineEdge{"y", "r", "q", {PathItem::point(pt(Rat(1, 2), Rat(1, 2)))},
                             PartLabel::None}};
    CHECK_THROWS_AS(crossing_count_all(d3), degenerate_error);
    CHECK(!validate(d3).empty());
}

TEST_CASE("self-crossings are counted but flagged") {
    // Figure-eight: one loop edge crossing itself once.
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    d.vertices = {Vertex{"v", pt(Rat(1, 2), Rat(1, 2))}};
    PolylineEdge e;
    e.id = "f";
    e.v1 = e.v2 = "v";
    e.path = {PathItem::point(pt(Rat(11, 16), Rat(11, 16))),
              PathItem::point(pt(Rat(13, 16), Rat(9, 16))),
              PathItem::point(pt(Rat(11, 16), Rat(7, 16))),
              PathItem::point(pt(Rat(9, 16), Rat(10, 16)))};
    d.edges = {e};
    CrossingReport rep = crossing_count_all(d);
    CHECK(rep.count == 1);
    REQUIRE(rep.list.size() == 1);
    CHECK(rep.list[0].at == pt(Rat(47, 80), Rat(47, 80)));
    bool saw = false;
    for (const auto& f : validate(d))
        if (f.rule == "edges simple") saw = true;
    CHECK(saw);
}

TEST_CASE("perturbed reference curves keep their class") {
    // Same combinatorics, nudged coordinates.
    ClosedCurve a;
    a.surface = SurfaceKind::KleinBottle;
    a.items = {PathItem::point(pt(Rat(17, 32), 1)), PathItem::token(GluingToken::HPlus),
               PathItem::point(pt(Rat(15, 32), 0))};
    CHECK(validate_curve(a).empty());
    CHECK(classify(curve_class(a)) == CurveType::A);

    // m traversed the other way round still lands in class M.
    ClosedCurve m;
    m.surface = SurfaceKind::KleinBottle;
    m.items = {PathItem::point(pt(0, Rat(2, 5))), PathItem::token(GluingToken::VMinus),
               PathItem::point(pt(1, Rat(2, 5)))};
    CHECK(validate_curve(m).empty());
    CHECK(classify(curve_class(m)) == CurveType::M);

    // e with a cancelling out-and-back jog through the straight gluing.
    ClosedCurve e;
    e.surface = SurfaceKind::KleinBottle;
    e.items = {PathItem::point(pt(Rat(1, 4), 1)),      PathItem::token(GluingToken::HPlus),
               PathItem::point(pt(Rat(3, 4), 0)),      PathItem::point(pt(Rat(9, 10), Rat(1, 3))),
               PathItem::point(pt(1, Rat(1, 3))),      PathItem::token(GluingToken::VPlus),
               PathItem::point(pt(0, Rat(1, 3))),      PathItem::point(pt(Rat(1, 10), Rat(2, 5))),
               PathItem::point(pt(0, Rat(1, 2))),      PathItem::token(GluingToken::VMinus),
               PathItem::point(pt(1, Rat(1, 2))),      PathItem::point(pt(Rat(7, 10), Rat(3, 4))),
               PathItem::point(pt(Rat(7, 10), 1)),     PathItem::token(GluingToken::HPlus),
               PathItem::point(pt(Rat(3, 10), 0)),     PathItem::point(pt(Rat(1, 4), Rat(1, 2)))};
    CHECK(validate_curve(e).empty());
    CHECK(classify(curve_class(e)) == CurveType::E);

    // A contractible square.
    ClosedCurve o;
    o.surface = SurfaceKind::KleinBottle;
    o.items = {PathItem::point(pt(Rat(1, 3), Rat(1, 3))), PathItem::point(pt(Rat(2, 3), Rat(1, 3))),
               PathItem::point(pt(Rat(2, 3), Rat(2, 3))), PathItem::point(pt(Rat(1, 3), Rat(2, 3)))};
    CHECK(validate_curve(o).empty());
    CHECK(classify(curve_class(o)) == CurveType::Contractible);

    // The corner loop crosses all four gluing pieces yet is contractible.
    ClosedCurve corner;
    corner.surface = SurfaceKind::KleinBottle;
    corner.items = {PathItem::point(pt(Rat(1, 8), Rat(1, 8))),
                    PathItem::point(pt(0, Rat(1, 16))),
                    PathItem::token(GluingToken::VMinus),
                    PathItem::point(pt(1, Rat(1, 16))),
                    PathItem::point(pt(Rat(15, 16), Rat(1, 8))),
                    PathItem::point(pt(Rat(31, 32), 0)),
                    PathItem::token(GluingToken::HMinus),
                    PathItem::point(pt(Rat(1, 32), 1)),
                    PathItem::point(pt(Rat(1, 16), Rat(7, 8))),
                    PathItem::point(pt(0, Rat(15, 16))),
                    PathItem::token(GluingToken::VMinus),
                    PathItem::point(pt(1, Rat(15, 16))),
                    PathItem::point(pt(Rat(7, 8), Rat(31, 32))),
                    PathItem::point(pt(Rat(29, 32), 1)),
                    PathItem::token(GluingToken::HPlus),
                    PathItem::point(pt(Rat(3, 32), 0))};
    CHECK(validate_curve(corner).empty());
    CHECK(classify(curve_class(corner)) == CurveType::Contractible);
}

TEST_CASE("projective curves and the chart polygon") {
    // Essential loop: a diameter-ish chord closed through the antipodal gluing.
    ClosedCurve z;
    z.surface = SurfaceKind::ProjectivePlane;
    z.items = {PathItem::point(pt(Rat(4, 5), Rat(3, 5))), PathItem::token(GluingToken::Z),
               PathItem::point(pt(Rat(-4, 5), Rat(-3, 5)))};
    CHECK(validate_curve(z).empty());
    CHECK(curve_class(z) == projective_essential());
    CHECK(classify(curve_class(z)) == CurveType::OneSidedOther);

    // Twice through the gluing: contractible.
    ClosedCurve zz;
    zz.surface = SurfaceKind::ProjectivePlane;
    zz.items = {PathItem::point(pt(Rat(4, 5), Rat(3, 5))),  PathItem::token(GluingToken::Z),
                PathItem::point(pt(Rat(-4, 5), Rat(-3, 5))), PathItem::point(pt(Rat(-12, 13), Rat(5, 13))),
                PathItem::token(GluingToken::Z),            PathItem::point(pt(Rat(12, 13), Rat(-5, 13)))};
    CHECK(validate_curve(zz).empty());
    CHECK(classify(curve_class(zz)) == CurveType::Contractible);

    // Two essential loops in distinct gluing points must cross oddly.
    ClosedCurve z2;
    z2.surface = SurfaceKind::ProjectivePlane;
    z2.items = {PathItem::point(pt(Rat(-3, 5), Rat(4, 5))), PathItem::token(GluingToken::Z),
                PathItem::point(pt(Rat(3, 5), Rat(-4, 5)))};
    CHECK(curve_pair_crossings(z, z2) == 1);
}

TEST_CASE("codec round trip and errors") {
    Drawing all = merge({reference_drawing(CurveType::A), reference_drawing(CurveType::B),
                         reference_drawing(CurveType::M), reference_drawing(CurveType::E)});
    std::string text = write_drawing(all);
    Drawing back = read_drawing(text);
    CHECK(write_drawing(back) == text);
    CHECK(back.vertices.size() == 4);
    CHECK(back.edges.size() == 4);
    CHECK(crossing_count_all(back).count == crossing_count_all(all).count);

    Drawing minimal = read_drawing("surface klein\nv only 1/2 1/2\n");
    CHECK(minimal.surface == SurfaceKind::KleinBottle);
    CHECK(minimal.vertices.size() == 1);
    CHECK(minimal.edges.empty());
    CHECK(write_drawing(read_drawing(write_drawing(minimal))) == write_drawing(minimal));

    // Part labels survive the round trip.
    Drawing labeled = reference_drawing(CurveType::A);
    labeled.vertices[0].part = PartLabel::H;
    labeled.edges[0].part = PartLabel::H;
    Drawing labeled_back = read_drawing(write_drawing(labeled));
    CHECK(labeled_back.vertices[0].part == PartLabel::H);
    CHECK(labeled_back.edges[0].part == PartLabel::H);

    CHECK_THROWS_AS(read_drawing("surface moebius\n"), parse_error);
    CHECK_THROWS_AS(read_drawing("v a 1/2 1/2\n"), parse_error);
    CHECK_THROWS_AS(read_drawing("surface klein\nv a 1/2\n"), parse_error);
    CHECK_THROWS_AS(read_drawing("surface klein\nv a 3/2 1/2\n"), parse_error);
    CHECK_THROWS_AS(read_drawing("surface klein\ne x a b 1/2\n"), parse_error);
    CHECK_THROWS_AS(read_drawing("surface klein\nnonsense\n"), parse_error);
    try {
        read_drawing("surface klein\n# fine\nv a 2 0\n");
        CHECK(false);
    } catch (const parse_error& pe) {
        CHECK(pe.line == 3);
    }

    // Comments are dropped, whitespace is free-form.
    Drawing c = read_drawing("surface klein # trailing\n  v  a  1/4  3/4   # indented\n");
    CHECK(c.vertices.size() == 1);
    CHECK(c.vertices[0].pos == pt(Rat(1, 4), Rat(3, 4)));
}
