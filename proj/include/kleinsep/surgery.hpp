#pragma once

#include "kleinsep/drawing.hpp"

namespace kleinsep {

// Exact crossing ledger of one surgery. predicted == measured is asserted by
// every operation; a mismatch throws theorem_violation.
struct SurgeryReport {
    long long input_crossings = 0;
    long long curve_crossings = 0;   // crossings of the cut curve with the drawing
    long long reroute_crossings = 0; // crossings of the reroute curve (Klein cut only)
    long long predicted = 0;
    long long measured = 0;
};

struct SurgeryResult {
    Drawing drawing;
    SurgeryReport report;
};

// Cuts the surface open along the one-sided simple curve c, caps the hole
// with a disk, and reconnects the k severed edges through it as chords that
// pairwise cross exactly once. Klein bottle inputs land on the projective
// plane, projective inputs on the plane; the crossing count grows by
// k(k-1)/2. The curve must avoid vertices; the abstract graph is unchanged.
SurgeryResult remove_crosscap(const Drawing& d, const ClosedCurve& c);

// Cuts the Klein bottle open along m_curve into a cylinder and reroutes each
// severed edge beside a_curve, then flattens the cylinder; the output is a
// plane drawing with no gluing tokens. a_curve and m_curve must be simple,
// freely homotopic to the reference one-sided a and cylinder curve m, cross
// each other exactly once, and avoid vertices. Writing cr_a = cr(a_curve, d)
// and cr_m = cr(m_curve, d), the crossing count grows by exactly
// cr_a * cr_m + cr_m (cr_m - 1) / 2.
SurgeryResult planarize_klein(const Drawing& d, const ClosedCurve& a_curve,
                              const ClosedCurve& m_curve);

// Shrinks the planar guest into the interior of the largest face of the host
// arrangement (host geometry is kept verbatim); no new crossings. An empty
// host adopts the guest scaled into the middle of its chart.
SurgeryResult place_in_face(const Drawing& host, const Drawing& guest);

// Combines two projective-plane drawings into one Klein-bottle drawing with
// the parts in disjoint Moebius bands: dh goes to the band around the
// reference a (x strictly between 1/4 and 3/4), dk to the complementary band
// around b. Zero crossings between the parts; projective-essential curves
// become one-sided curves of the receiving band's core class.
SurgeryResult place_in_moebius_halves(const Drawing& dh, const Drawing& dk);

} // namespace kleinsep
