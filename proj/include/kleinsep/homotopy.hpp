#pragma once

#include <cstdint>
#include <vector>

namespace kleinsep {

enum class Surface { KleinBottle, ProjectivePlane };

// Generators of the fundamental group. X/Y belong to the Klein bottle
// presentation <x, y | x y x^-1 = y^-1>; Z to the projective plane <z | z^2>.
enum class Letter { X, Xinv, Y, Yinv, Z, Zinv };

using Word = std::vector<Letter>;

Letter letter_inverse(Letter l);
Word word_inverse(const Word& w);

// Unique form y^p x^q of a Klein bottle element; for the projective plane
// q = 0 and p is the exponent of z reduced to {0, 1}.
struct NormalForm {
    long long p = 0;
    long long q = 0;
    Surface surface = Surface::KleinBottle;

    bool operator==(const NormalForm&) const = default;
};

NormalForm nf_identity(Surface s);
NormalForm nf_letter(Letter l, Surface s);
// Group law: (p1,q1)*(p2,q2) = (p1 + (-1)^q1 * p2, q1 + q2) on the Klein
// bottle; exponent sum mod 2 on the projective plane.
NormalForm nf_multiply(const NormalForm& a, const NormalForm& b);
NormalForm nf_inverse(const NormalForm& a);

NormalForm normalize(const Word& w, Surface s);

// Representative of the free homotopy class of an undirected curve:
// NormalForm taken up to conjugation and inversion.
struct CanonicalClass {
    long long p = 0;
    long long q = 0;
    Surface surface = Surface::KleinBottle;

    bool operator==(const CanonicalClass&) const = default;
};

// Orbit rules: conjugation by x sends (p,q) to (-p,q); conjugation by y is
// the identity for even q and adds 2 to p for odd q; inversion sends (p,q)
// to ((-1)^(q+1) p, -q). Canon: q >= 0; p >= 0 when q is even; p in {0,1}
// when q is odd.
CanonicalClass canonicalize(const NormalForm& nf);

enum class CurveType {
    Contractible,
    A,             // one-sided simple
    B,             // one-sided simple, not homotopic to A
    M,             // two-sided simple, cuts the surface into a cylinder
    E,             // two-sided simple, separates into two Moebius strips
    OneSidedOther,
    TwoSidedOther,
};

CurveType classify(const CanonicalClass& cc);

// 1 for one-sided classes, 0 for two-sided.
int orientation_character(const CanonicalClass& cc);

// Canonical class of a reference type (A, B, M, E on the Klein bottle).
CanonicalClass reference_class(CurveType t);
// The essential class of the projective plane.
CanonicalClass projective_essential();

// Minimum crossings between any representatives of the two classes.
// Both arguments must be essential simple types (A, B, M, E).
int min_pairwise_crossing(CurveType t1, CurveType t2);

// Mod-2 intersection form on first homology; a 1 certifies that every
// representative pair crosses.
int z2_intersection(const CanonicalClass& c1, const CanonicalClass& c2);

} // namespace kleinsep
