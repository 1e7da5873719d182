#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinsep/errors.hpp"
#include "kleinsep/homotopy.hpp"

#include <optional>
#include <random>
#include <vector>

using namespace kleinsep;

namespace {

const Word kKleinAlphabet{Letter::X, Letter::Xinv, Letter::Y, Letter::Yinv};

Word random_klein_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, 3);
    Word w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w.push_back(kKleinAlphabet[pick(rng)]);
    return w;
}

// Literal rewriting oracle: push every X letter to the right using
// x^s y^t = y^-t x^s, then read off exponent sums. Independent of the
// closed-form multiplication in the library.
NormalForm rewriting_normalize(const Word& w) {
    auto is_x = [](Letter l) { return l == Letter::X || l == Letter::Xinv; };
    Word cur = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            if (is_x(cur[i]) && !is_x(cur[i + 1])) {
                Letter x = cur[i];
                Letter y = cur[i + 1];
                cur[i] = letter_inverse(y);
                cur[i + 1] = x;
                changed = true;
            }
        }
    }
    long long p = 0, q = 0;
    for (Letter l : cur) {
        if (l == Letter::Y) ++p;
        if (l == Letter::Yinv) --p;
        if (l == Letter::X) ++q;
        if (l == Letter::Xinv) --q;
    }
    return NormalForm{p, q, Surface::KleinBottle};
}

// Enumerates conjugators g with |g| <= max_len over the Klein alphabet and
// reports one with g a g^-1 = b or g a^-1 g^-1 = b, if any.
std::optional<Word> find_conjugator(const NormalForm& a, const NormalForm& b, int max_len) {
    std::vector<Word> frontier{Word{}};
    for (int len = 0; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& g : frontier) {
            NormalForm gnf = normalize(g, Surface::KleinBottle);
            NormalForm conj = nf_multiply(nf_multiply(gnf, a), nf_inverse(gnf));
            NormalForm conj_inv = nf_multiply(nf_multiply(gnf, nf_inverse(a)), nf_inverse(gnf));
            if (conj == b || conj_inv == b) return g;
            if (len < max_len)
                for (Letter l : kKleinAlphabet) {
                    Word h = g;
                    h.push_back(l);
                    next.push_back(std::move(h));
                }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("normalize matches the rewriting oracle on random words") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 10000; ++i) {
        Word w = random_klein_word(rng, 20);
        NormalForm got = normalize(w, Surface::KleinBottle);
        NormalForm want = rewriting_normalize(w);
        REQUIRE(got == want);
    }
}

TEST_CASE("normalize is a monoid morphism") {
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Word u = random_klein_word(rng, 12);
        Word v = random_klein_word(rng, 12);
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        CHECK(normalize(uv, Surface::KleinBottle) ==
              nf_multiply(normalize(u, Surface::KleinBottle), normalize(v, Surface::KleinBottle)));
    }
}

TEST_CASE("normalize fixed values") {
    CHECK(normalize({}, Surface::KleinBottle) == NormalForm{0, 0, Surface::KleinBottle});
    CHECK(normalize({Letter::X, Letter::Y, Letter::Xinv}, Surface::KleinBottle) ==
          NormalForm{-1, 0, Surface::KleinBottle});
    CHECK(normalize({Letter::Y, Letter::X, Letter::Y}, Surface::KleinBottle) ==
          NormalForm{0, 1, Surface::KleinBottle});
    CHECK(normalize({Letter::Z, Letter::Z}, Surface::ProjectivePlane) ==
          NormalForm{0, 0, Surface::ProjectivePlane});
    CHECK(normalize({Letter::Z, Letter::Zinv, Letter::Z}, Surface::ProjectivePlane) ==
          NormalForm{1, 0, Surface::ProjectivePlane});
}

TEST_CASE("inverse words cancel") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Word w = random_klein_word(rng, 16);
        Word wi = word_inverse(w);
        Word both = w;
        both.insert(both.end(), wi.begin(), wi.end());
        CHECK(normalize(both, Surface::KleinBottle) == nf_identity(Surface::KleinBottle));
    }
}

TEST_CASE("canonicalize is invariant under conjugation and inversion") {
    std::mt19937 rng(99);
    for (int i = 0; i < 1000; ++i) {
        Word w = random_klein_word(rng, 14);
        CanonicalClass base = canonicalize(normalize(w, Surface::KleinBottle));
        for (Letter g : kKleinAlphabet) {
            Word conj{g};
            conj.insert(conj.end(), w.begin(), w.end());
            conj.push_back(letter_inverse(g));
            CHECK(canonicalize(normalize(conj, Surface::KleinBottle)) == base);
        }
        CHECK(canonicalize(normalize(word_inverse(w), Surface::KleinBottle)) == base);
    }
}

TEST_CASE("canonicalize is idempotent") {
    for (long long p = -5; p <= 5; ++p)
        for (long long q = -5; q <= 5; ++q) {
            CanonicalClass c = canonicalize(NormalForm{p, q, Surface::KleinBottle});
            CHECK(canonicalize(NormalForm{c.p, c.q, c.surface}) == c);
        }
}

TEST_CASE("canonicalize fixed identifications") {
    auto canon = [](long long p, long long q) {
        return canonicalize(NormalForm{p, q, Surface::KleinBottle});
    };
    CHECK(canon(-1, 0) == canon(1, 0));
    CHECK(canon(5, 3) == canon(1, 3));
    CHECK(canon(2, 4) == canon(-2, -4));
    CHECK(canon(0, 1) != canon(1, 1));
    CHECK(canon(1, 0) != canon(2, 0));
}

TEST_CASE("canonical equality matches the conjugator enumeration oracle") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 120; ++i) {
        Word w = random_klein_word(rng, 6);
        Word g = random_klein_word(rng, 3);
        // Same class by construction: g w g^-1, possibly inverted.
        Word conj = g;
        conj.insert(conj.end(), w.begin(), w.end());
        Word gi = word_inverse(g);
        conj.insert(conj.end(), gi.begin(), gi.end());
        NormalForm a = normalize(w, Surface::KleinBottle);
        NormalForm b = normalize(conj, Surface::KleinBottle);
        CHECK(canonicalize(a) == canonicalize(b));
        CHECK(find_conjugator(a, b, 6).has_value());
    }
    // Distinct canonical classes admit no short conjugator.
    std::vector<NormalForm> reps{{0, 0, Surface::KleinBottle}, {0, 1, Surface::KleinBottle},
                                 {1, 1, Surface::KleinBottle}, {1, 0, Surface::KleinBottle},
                                 {0, 2, Surface::KleinBottle}, {2, 0, Surface::KleinBottle},
                                 {1, 2, Surface::KleinBottle}, {0, 3, Surface::KleinBottle}};
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j) {
            if (i == j) continue;
            CHECK(canonicalize(reps[i]) != canonicalize(reps[j]));
            CHECK(!find_conjugator(reps[i], reps[j], 6).has_value());
        }
}

TEST_CASE("classify covers the simple classes and the rest") {
    CHECK(classify(canonicalize(NormalForm{0, 0, Surface::KleinBottle})) == CurveType::Contractible);
    CHECK(classify(reference_class(CurveType::A)) == CurveType::A);
    CHECK(classify(reference_class(CurveType::B)) == CurveType::B);
    CHECK(classify(reference_class(CurveType::M)) == CurveType::M);
    CHECK(classify(reference_class(CurveType::E)) == CurveType::E);
    CHECK(classify(canonicalize(NormalForm{0, 3, Surface::KleinBottle})) == CurveType::OneSidedOther);
    CHECK(classify(canonicalize(NormalForm{1, 3, Surface::KleinBottle})) == CurveType::OneSidedOther);
    CHECK(classify(canonicalize(NormalForm{2, 0, Surface::KleinBottle})) == CurveType::TwoSidedOther);
    CHECK(classify(canonicalize(NormalForm{1, 2, Surface::KleinBottle})) == CurveType::TwoSidedOther);
    CHECK(classify(canonicalize(NormalForm{0, 4, Surface::KleinBottle})) == CurveType::TwoSidedOther);
    CHECK(classify(canonicalize(NormalForm{0, 0, Surface::ProjectivePlane})) == CurveType::Contractible);
    CHECK(classify(projective_essential()) == CurveType::OneSidedOther);
}

TEST_CASE("orientation character separates one-sided from two-sided") {
    CHECK(orientation_character(reference_class(CurveType::A)) == 1);
    CHECK(orientation_character(reference_class(CurveType::B)) == 1);
    CHECK(orientation_character(reference_class(CurveType::M)) == 0);
    CHECK(orientation_character(reference_class(CurveType::E)) == 0);
    CHECK(orientation_character(projective_essential()) == 1);
}

TEST_CASE("pairwise crossing table") {
    using enum CurveType;
    CHECK(min_pairwise_crossing(A, A) == 1);
    CHECK(min_pairwise_crossing(B, B) == 1);
    CHECK(min_pairwise_crossing(A, B) == 0);
    CHECK(min_pairwise_crossing(A, M) == 1);
    CHECK(min_pairwise_crossing(B, M) == 1);
    CHECK(min_pairwise_crossing(M, M) == 0);
    CHECK(min_pairwise_crossing(E, M) == 2);
    CHECK(min_pairwise_crossing(E, A) == 0);
    CHECK(min_pairwise_crossing(E, B) == 0);
    CHECK(min_pairwise_crossing(E, E) == 0);
    for (CurveType t : {A, B, M, E})
        for (CurveType u : {A, B, M, E})
            CHECK(min_pairwise_crossing(t, u) == min_pairwise_crossing(u, t));
    CHECK_THROWS_AS(min_pairwise_crossing(Contractible, A), precondition_error);
    CHECK_THROWS_AS(min_pairwise_crossing(A, OneSidedOther), precondition_error);
}

TEST_CASE("mod-2 intersection form lower-bounds the table") {
    using enum CurveType;
    auto z2 = [](CurveType t, CurveType u) {
        return z2_intersection(reference_class(t), reference_class(u));
    };
    CHECK(z2(A, M) == 1);
    CHECK(z2(B, A) == 0);
    for (CurveType t : {A, B, M, E}) CHECK(z2(E, t) == 0);
    int strict = 0;
    for (CurveType t : {A, B, M, E})
        for (CurveType u : {A, B, M, E}) {
            int lo = z2(t, u);
            int table = min_pairwise_crossing(t, u);
            CHECK(lo <= table);
            CHECK(lo % 2 == table % 2);
            if (lo < table) ++strict;
        }
    // (E,M) and (M,E) are the only strict gaps.
    CHECK(strict == 2);
    CHECK(z2_intersection(projective_essential(), projective_essential()) == 1);
}
