#include "kleinsep/homotopy.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace kleinsep {

namespace {

bool is_klein_letter(Letter l) {
    return l == Letter::X || l == Letter::Xinv || l == Letter::Y || l == Letter::Yinv;
}

} // namespace

Letter letter_inverse(Letter l) {
    switch (l) {
    case Letter::X: return Letter::Xinv;
    case Letter::Xinv: return Letter::X;
    case Letter::Y: return Letter::Yinv;
    case Letter::Yinv: return Letter::Y;
    case Letter::Z: return Letter::Zinv;
    case Letter::Zinv: return Letter::Z;
    }
    throw precondition_error("bad letter");
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
    return out;
}

NormalForm nf_identity(Surface s) { return NormalForm{0, 0, s}; }

NormalForm nf_letter(Letter l, Surface s) {
    if (s == Surface::KleinBottle) {
        if (!is_klein_letter(l)) throw precondition_error("letter outside Klein bottle alphabet");
        switch (l) {
        case Letter::X: return NormalForm{0, 1, s};
        case Letter::Xinv: return NormalForm{0, -1, s};
        case Letter::Y: return NormalForm{1, 0, s};
        default: return NormalForm{-1, 0, s};
        }
    }
    if (is_klein_letter(l)) throw precondition_error("letter outside projective plane alphabet");
    return NormalForm{1, 0, s}; // z and z^-1 coincide: z^2 = 1
}

NormalForm nf_multiply(const NormalForm& a, const NormalForm& b) {
    if (a.surface != b.surface) throw precondition_error("normal forms on different surfaces");
    if (a.surface == Surface::ProjectivePlane)
        return NormalForm{(a.p + b.p) & 1, 0, a.surface};
    long long p = a.p + ((a.q % 2 == 0) ? b.p : -b.p);
    return NormalForm{p, a.q + b.q, a.surface};
}

NormalForm nf_inverse(const NormalForm& a) {
    if (a.surface == Surface::ProjectivePlane) return a;
    // (y^p x^q)^-1 = x^-q y^-p = y^{(-1)^(q+1) p} x^-q.
    long long p = (a.q % 2 == 0) ? -a.p : a.p;
    return NormalForm{p, -a.q, a.surface};
}

NormalForm normalize(const Word& w, Surface s) {
    NormalForm acc = nf_identity(s);
    for (Letter l : w) acc = nf_multiply(acc, nf_letter(l, s));
    return acc;
}

CanonicalClass canonicalize(const NormalForm& nf) {
    if (nf.surface == Surface::ProjectivePlane)
        return CanonicalClass{((nf.p % 2) + 2) % 2, 0, nf.surface};
    long long p = nf.p, q = nf.q;
    if (q < 0) {
        // Inversion flips the sign of q and, for even q, of p as well.
        if (q % 2 == 0) p = -p;
        q = -q;
    }
    if (q % 2 != 0) {
        // Conjugation by y shifts p by 2, conjugation by x negates it,
        // so only p mod 2 survives.
        p = ((p % 2) + 2) % 2;
    } else {
        p = std::llabs(p);
    }
    return CanonicalClass{p, q, nf.surface};
}

CurveType classify(const CanonicalClass& cc) {
    if (cc.surface == Surface::ProjectivePlane)
        return cc.p == 0 ? CurveType::Contractible : CurveType::OneSidedOther;
    if (cc.p == 0 && cc.q == 0) return CurveType::Contractible;
    if (cc.p == 0 && cc.q == 1) return CurveType::A;
    if (cc.p == 1 && cc.q == 1) return CurveType::B;
    if (cc.p == 1 && cc.q == 0) return CurveType::M;
    if (cc.p == 0 && cc.q == 2) return CurveType::E;
    return (cc.q % 2 != 0) ? CurveType::OneSidedOther : CurveType::TwoSidedOther;
}

int orientation_character(const CanonicalClass& cc) {
    if (cc.surface == Surface::ProjectivePlane) return static_cast<int>(cc.p & 1);
    return static_cast<int>(cc.q & 1);
}

CanonicalClass reference_class(CurveType t) {
    switch (t) {
    case CurveType::A: return CanonicalClass{0, 1, Surface::KleinBottle};
    case CurveType::B: return CanonicalClass{1, 1, Surface::KleinBottle};
    case CurveType::M: return CanonicalClass{1, 0, Surface::KleinBottle};
    case CurveType::E: return CanonicalClass{0, 2, Surface::KleinBottle};
    default: throw precondition_error("reference_class wants one of A, B, M, E");
    }
}

CanonicalClass projective_essential() {
    return CanonicalClass{1, 0, Surface::ProjectivePlane};
}

int min_pairwise_crossing(CurveType t1, CurveType t2) {
    auto index = [](CurveType t) -> int {
        switch (t) {
        case CurveType::A: return 0;
        case CurveType::B: return 1;
        case CurveType::M: return 2;
        case CurveType::E: return 3;
        default: throw precondition_error("min_pairwise_crossing wants essential simple types");
        }
    };
    static constexpr std::array<std::array<int, 4>, 4> table{{
        // A  B  M  E
        {{1, 0, 1, 0}}, // A
        {{0, 1, 1, 0}}, // B
        {{1, 1, 0, 2}}, // M
        {{0, 0, 2, 0}}, // E
    }};
    return table[index(t1)][index(t2)];
}

int z2_intersection(const CanonicalClass& c1, const CanonicalClass& c2) {
    if (c1.surface != c2.surface) throw precondition_error("classes on different surfaces");
    if (c1.surface == Surface::ProjectivePlane)
        return static_cast<int>((c1.p * c2.p) & 1);
    // Basis classes: x is one-sided with self-intersection 1, y two-sided
    // with self-intersection 0, and x.y = 1.
    long long v = c1.q * c2.q + c1.q * c2.p + c1.p * c2.q;
    return static_cast<int>(v & 1);
}

} // namespace kleinsep
