#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinsep/arrangement.hpp"
#include "kleinsep/codec.hpp"
#include "kleinsep/errors.hpp"
#include "kleinsep/oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace kleinsep;

namespace {

Point pt(Rat x, Rat y) { return Point{std::move(x), std::move(y)}; }

Drawing merge(std::initializer_list<Drawing> parts) {
    Drawing out;
    out.surface = parts.begin()->surface;
    for (const Drawing& d : parts) {
        out.vertices.insert(out.vertices.end(), d.vertices.begin(), d.vertices.end());
        out.edges.insert(out.edges.end(), d.edges.begin(), d.edges.end());
    }
    return out;
}

Drawing relabel(Drawing d, PartLabel part, const std::string& prefix) {
    for (Vertex& v : d.vertices) {
        v.part = part;
        v.id = prefix + v.id;
    }
    for (PolylineEdge& e : d.edges) {
        e.part = part;
        e.id = prefix + e.id;
        e.v1 = prefix + e.v1;
        e.v2 = prefix + e.v2;
    }
    return d;
}

// n disjoint contractible boxes; used to trip the size guards.
Drawing many_boxes(int n) {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    for (int i = 0; i < n; ++i) {
        Rat x(2 * i + 1, 256);
        std::string vid = "b" + std::to_string(i);
        d.vertices.push_back(Vertex{vid, pt(x, Rat(1, 2)), PartLabel::None});
        PolylineEdge e;
        e.id = "e" + std::to_string(i);
        e.v1 = e.v2 = vid;
        e.path = {PathItem::point(pt(x + Rat(1, 512), Rat(1, 2))),
                  PathItem::point(pt(x + Rat(1, 512), Rat(1, 2) + Rat(1, 512))),
                  PathItem::point(pt(x, Rat(1, 2) + Rat(1, 512)))};
        d.edges.push_back(std::move(e));
    }
    return d;
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

Word random_word(std::mt19937_64& rng, int max_len, Surface s) {
    Word w;
    int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i)
        w.push_back(s == Surface::KleinBottle ? static_cast<Letter>(rng() % 4) : Letter::Z);
    return w;
}

} // namespace

TEST_CASE("word rewriting matches normalize on hand-picked words") {
    const Surface kb = Surface::KleinBottle;
    CHECK(rewrite_normal_form({}, kb) == NormalForm{0, 0, kb});
    CHECK(rewrite_normal_form({Letter::X}, kb) == NormalForm{0, 1, kb});
    CHECK(rewrite_normal_form({Letter::Y}, kb) == NormalForm{1, 0, kb});
    CHECK(rewrite_normal_form({Letter::Y, Letter::X}, kb) == NormalForm{1, 1, kb});
    CHECK(rewrite_normal_form({Letter::X, Letter::Y}, kb) == NormalForm{-1, 1, kb});
    CHECK(rewrite_normal_form({Letter::X, Letter::X, Letter::Xinv}, kb) == NormalForm{0, 1, kb});
    CHECK(rewrite_normal_form({Letter::X, Letter::Y, Letter::X}, kb) == NormalForm{-1, 2, kb});

    const Surface pp = Surface::ProjectivePlane;
    CHECK(rewrite_normal_form({Letter::Z}, pp) == NormalForm{1, 0, pp});
    CHECK(rewrite_normal_form({Letter::Z, Letter::Z}, pp) == NormalForm{0, 0, pp});
    CHECK(rewrite_normal_form({Letter::Zinv}, pp) == NormalForm{1, 0, pp});
    CHECK_THROWS_AS(rewrite_normal_form({Letter::Z}, kb), precondition_error);
    CHECK_THROWS_AS(rewrite_normal_form({Letter::X}, pp), precondition_error);
}

TEST_CASE("word rewriting matches normalize on random words") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        Word w = random_word(rng, 20, Surface::KleinBottle);
        CHECK(rewrite_normal_form(w, Surface::KleinBottle) == normalize(w, Surface::KleinBottle));
    }
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, 20, Surface::ProjectivePlane);
        CHECK(rewrite_normal_form(w, Surface::ProjectivePlane) ==
              normalize(w, Surface::ProjectivePlane));
    }
}

TEST_CASE("free homotopy oracle accepts constructed conjugates") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        Word w = random_word(rng, 12, Surface::KleinBottle);
        Word g = random_word(rng, 3, Surface::KleinBottle);
        Word conj = g;
        Word core = rng() % 2 ? w : word_inverse(w);
        conj.insert(conj.end(), core.begin(), core.end());
        Word ginv = word_inverse(g);
        conj.insert(conj.end(), ginv.begin(), ginv.end());
        NormalForm na = normalize(w, Surface::KleinBottle);
        NormalForm nb = normalize(conj, Surface::KleinBottle);
        CHECK(rewrite_free_homotopic(na, nb, Surface::KleinBottle));
        CHECK(canonicalize(na) == canonicalize(nb));
    }
}

TEST_CASE("free homotopy oracle agrees with canonicalize on a window") {
    for (long long p1 = -2; p1 <= 2; ++p1)
        for (long long q1 = -2; q1 <= 2; ++q1)
            for (long long p2 = -2; p2 <= 2; ++p2)
                for (long long q2 = -2; q2 <= 2; ++q2) {
                    NormalForm a{p1, q1, Surface::KleinBottle};
                    NormalForm b{p2, q2, Surface::KleinBottle};
                    bool same = canonicalize(a) == canonicalize(b);
                    CHECK(rewrite_free_homotopic(a, b, Surface::KleinBottle) == same);
                }
    for (long long p1 = 0; p1 <= 1; ++p1)
        for (long long p2 = 0; p2 <= 1; ++p2) {
            NormalForm a{p1, 0, Surface::ProjectivePlane};
            NormalForm b{p2, 0, Surface::ProjectivePlane};
            CHECK(rewrite_free_homotopic(a, b, Surface::ProjectivePlane) == (p1 == p2));
        }
}

TEST_CASE("brute search reproduces the pairwise minima table") {
    const std::array<CurveType, 4> types{CurveType::A, CurveType::B, CurveType::M, CurveType::E};
    for (CurveType t1 : types) {
        Drawing d = reference_drawing(t1);
        for (CurveType t2 : types)
            CHECK(brute_min_class_crossing(d, t2, 16) == min_pairwise_crossing(t1, t2));
    }
}

TEST_CASE("brute search on an empty drawing finds zero everywhere") {
    Drawing d;
    d.surface = SurfaceKind::KleinBottle;
    for (CurveType t : {CurveType::Contractible, CurveType::A, CurveType::B, CurveType::M,
                        CurveType::E})
        CHECK(brute_min_class_crossing(d, t, 8) == 0);
}

TEST_CASE("brute profiles match the expected corpus profiles") {
    for (const CorpusMember& m : small_corpus().members) {
        if (!m.expected_profile) continue;
        INFO(m.name);
        auto got = brute_class_profile(m.drawing, 64);
        CHECK(got == *m.expected_profile);
    }
}

TEST_CASE("brute profiles agree with the arrangement search") {
    for (const CorpusMember& m : small_corpus().members) {
        if (m.family == "pair" || m.family == "projective") continue;
        INFO(m.name);
        long long hits = 0;
        CrossingTriple triple = crossing_profile(m.drawing, PartLabel::None, {}, &hits);
        CHECK(hits == 0);
        auto got = brute_class_profile(m.drawing, 64);
        CHECK(got[0] == triple.a);
        CHECK(got[1] == triple.b);
        CHECK(got[2] == triple.m);
    }
}

TEST_CASE("brute search handles projective drawings") {
    CanonicalClass essential = projective_essential();
    CanonicalClass trivial{0, 0, Surface::ProjectivePlane};
    CHECK(brute_min_class_crossing(member("proj-z"), essential, 16) == 1);
    CHECK(brute_min_class_crossing(member("proj-z"), trivial, 16) == 0);
    CHECK(brute_min_class_crossing(member("proj-fl2"), essential, 16) == 2);
    CHECK(brute_min_class_crossing(member("proj-zz"), essential, 16) == 0);
    for (const CorpusMember& m : small_corpus().members) {
        if (m.family != "projective") continue;
        INFO(m.name);
        WalkSearch ws = min_class_crossing(m.drawing, essential);
        CHECK(ws.cap_hits == 0);
        CHECK(brute_min_class_crossing(m.drawing, essential, 16) == ws.count);
    }
}

TEST_CASE("brute search guards its limits") {
    CHECK_THROWS_AS(brute_min_class_crossing(member("ref-a"), CurveType::A, 16, 7),
                    precondition_error);
    Drawing plane;
    plane.surface = SurfaceKind::Plane;
    CHECK_THROWS_AS(brute_min_class_crossing(plane, CurveType::A, 16), precondition_error);
    CHECK_THROWS_AS(
        brute_min_class_crossing(member("ref-a"), projective_essential(), 16),
        precondition_error);
    CHECK_THROWS_AS(brute_min_class_crossing(many_boxes(61), CurveType::A, 16),
                    precondition_error);
    CHECK_THROWS_AS(brute_min_class_crossing(member("merge-am"), CurveType::A, 0),
                    search_limit_error);
}

TEST_CASE("packing oracle on single loops and wedges") {
    const Drawing& wedge_ab = member("wedge-ab");
    CHECK(brute_max_packing(wedge_ab, PartLabel::None, PackingType::OneSided) == 2);
    CHECK(brute_max_packing(wedge_ab, PartLabel::None, PackingType::TypeA) == 1);
    CHECK(brute_max_packing(wedge_ab, PartLabel::None, PackingType::TypeB) == 1);

    const Drawing& ref_m = member("ref-m");
    CHECK(brute_max_packing(ref_m, PartLabel::None, PackingType::OneSided) == 0);
    CHECK(brute_max_packing(ref_m, PartLabel::None, PackingType::TypeA) == 0);

    const Drawing& ref_a = member("ref-a");
    CHECK(brute_max_packing(ref_a, PartLabel::None, PackingType::OneSided) == 1);
    CHECK(brute_max_packing(ref_a, PartLabel::None, PackingType::TypeA) == 1);
    CHECK(brute_max_packing(ref_a, PartLabel::None, PackingType::TypeB) == 0);

    CHECK(brute_max_packing(member("wedge-2"), PartLabel::None, PackingType::OneSided) == 2);
    CHECK(brute_max_packing(member("wedge-2"), PartLabel::None, PackingType::TypeA) == 2);
    CHECK(brute_max_packing(member("wedge-2"), PartLabel::None, PackingType::TypeB) == 0);
    CHECK(brute_max_packing(member("wedge-4"), PartLabel::None, PackingType::TypeA) == 4);

    CHECK(brute_max_packing(member("stack-m2"), PartLabel::None, PackingType::OneSided) == 0);

    CHECK(brute_max_packing(member("lattice-1-1"), PartLabel::None, PackingType::OneSided) == 1);
    CHECK(brute_max_packing(member("lattice-1-1"), PartLabel::None, PackingType::TypeB) == 1);
    CHECK(brute_max_packing(member("lattice-1-1"), PartLabel::None, PackingType::TypeA) == 0);
}

TEST_CASE("packing oracle restricted to one part") {
    Drawing d = merge({relabel(reference_drawing(CurveType::A), PartLabel::H, "H"),
                       relabel(reference_drawing(CurveType::M), PartLabel::K, "K")});
    CHECK(brute_max_packing(d, PartLabel::H, PackingType::OneSided) == 1);
    CHECK(brute_max_packing(d, PartLabel::K, PackingType::OneSided) == 0);
}

TEST_CASE("packing oracle guards its preconditions") {
    CHECK_THROWS_AS(brute_max_packing(member("merge-am"), PartLabel::None, PackingType::OneSided),
                    precondition_error);
    CHECK_THROWS_AS(brute_max_packing(many_boxes(13), PartLabel::None, PackingType::OneSided),
                    precondition_error);
    Drawing open_path;
    open_path.surface = SurfaceKind::KleinBottle;
    open_path.vertices.push_back(Vertex{"u", pt(Rat(1, 4), Rat(1, 4)), PartLabel::None});
    open_path.vertices.push_back(Vertex{"w", pt(Rat(3, 4), Rat(1, 4)), PartLabel::None});
    PolylineEdge e;
    e.id = "uw";
    e.v1 = "u";
    e.v2 = "w";
    open_path.edges.push_back(e);
    CHECK_THROWS_AS(brute_max_packing(open_path, PartLabel::None, PackingType::OneSided),
                    precondition_error);
}

TEST_CASE("inequality verifier on a tight one-crossing instance") {
    Drawing d = merge({relabel(reference_drawing(CurveType::M), PartLabel::H, "H"),
                       relabel(reference_drawing(CurveType::A), PartLabel::K, "K")});
    InequalityReport rep = verify_inequalities(d);
    CHECK(rep.between == 1);
    CHECK(rep.h_a == 1);
    CHECK(rep.h_b == 1);
    CHECK(rep.h_m == 0);
    CHECK(rep.k_a == 1);
    CHECK(rep.k_b == 0);
    CHECK(rep.k_m == 1);
    CHECK(rep.bounds.size() == 6);
    CHECK(rep.all_ok);
    for (const BoundCheck& b : rep.bounds) {
        INFO(b.name);
        CHECK(b.ok);
    }
}

TEST_CASE("inequality verifier on a four-crossing lattice instance") {
    Drawing d = merge({relabel(member("stack-m2"), PartLabel::H, "H"),
                       relabel(member("wedge-2"), PartLabel::K, "K")});
    InequalityReport rep = verify_inequalities(d);
    CHECK(rep.between == 4);
    CHECK(rep.all_ok);
    bool seen = false;
    for (const BoundCheck& b : rep.bounds)
        if (b.name == "h-mixed-decomposition") {
            seen = true;
            CHECK(b.rhs == Rat(4));
        }
    CHECK(seen);
}

TEST_CASE("inequality verifier with an empty part and bad inputs") {
    Drawing only_h = relabel(reference_drawing(CurveType::M), PartLabel::H, "H");
    InequalityReport rep = verify_inequalities(only_h);
    CHECK(rep.between == 0);
    CHECK(rep.all_ok);
    for (const BoundCheck& b : rep.bounds) CHECK(b.rhs == Rat(0));

    CHECK_THROWS_AS(verify_inequalities(member("ref-a")), precondition_error);

    Drawing crossing_h = merge({relabel(member("merge-am"), PartLabel::H, "H"),
                                relabel(reference_drawing(CurveType::E), PartLabel::K, "K")});
    CHECK_THROWS_AS(verify_inequalities(crossing_h), precondition_error);
}

TEST_CASE("corpus generation is deterministic and well formed") {
    const Corpus& c1 = small_corpus();
    Corpus c2 = generate_corpus(20260823, CorpusParams{6, 4, 8, 6});
    REQUIRE(c1.members.size() == c2.members.size());
    for (size_t i = 0; i < c1.members.size(); ++i) {
        CHECK(c1.members[i].name == c2.members[i].name);
        CHECK(write_drawing(c1.members[i].drawing) == write_drawing(c2.members[i].drawing));
    }

    std::map<std::string, int> families;
    for (const CorpusMember& m : c1.members) {
        INFO(m.name);
        CHECK(validate(m.drawing).empty());
        ++families[m.family];
    }
    CHECK(families["reference"] == 4);
    CHECK(families["merge"] == 11);
    CHECK(families["wedge"] == 5);
    CHECK(families["stack"] == 3);
    CHECK(families["lattice"] == 6);
    CHECK(families["jitter"] == 4);
    CHECK(families["pair"] == 8);
    CHECK(families["projective"] == 6);

    const CorpusMember* ra = c1.find("ref-a");
    REQUIRE(ra != nullptr);
    CHECK(ra->expected_profile == std::array<long long, 3>{1, 0, 1});
    CHECK(ra->eulerian_embedded);
    CHECK(c1.find("no-such-member") == nullptr);

    const CorpusMember* am = c1.find("merge-am");
    REQUIRE(am != nullptr);
    CHECK_FALSE(am->eulerian_embedded); // the two loops cross

    for (const CorpusMember& m : c1.members) {
        if (m.family == "pair") CHECK(m.parts_eulerian);
        if (m.family == "projective")
            CHECK(m.drawing.surface == SurfaceKind::ProjectivePlane);
    }
}

TEST_CASE("corpus saves to disk with a readable manifest") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "kleinsep-oracle-corpus-test";
    fs::remove_all(dir);
    save_corpus(small_corpus(), dir.string());

    std::ifstream in(dir / "manifest.json");
    REQUIRE(in.good());
    nlohmann::json manifest = nlohmann::json::parse(in);
    CHECK(manifest["seed"].get<std::uint64_t>() == small_corpus().seed);
    REQUIRE(manifest["members"].size() == small_corpus().members.size());

    bool seen_ref_a = false;
    for (const auto& j : manifest["members"]) {
        if (j["name"] != "ref-a") continue;
        seen_ref_a = true;
        CHECK(j["family"] == "reference");
        CHECK(j["surface"] == "klein");
        CHECK(j["eulerian_embedded"].get<bool>());
        std::vector<long long> prof = j["expected_profile"].get<std::vector<long long>>();
        CHECK(prof == std::vector<long long>{1, 0, 1});
        Drawing back = read_drawing_file((dir / j["file"].get<std::string>()).string());
        CHECK(write_drawing(back) == write_drawing(member("ref-a")));
    }
    CHECK(seen_ref_a);
    fs::remove_all(dir);
}
