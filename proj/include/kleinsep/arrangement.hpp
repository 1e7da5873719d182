#pragma once

#include "kleinsep/chartcomplex.hpp"

#include <string>
#include <vector>

namespace kleinsep {

struct ArrangementNode {
    std::string id; // vertex id, or a synthesized label for a crossing
    Point pos;
    bool is_crossing = false;
};

struct ArrangementArc {
    std::string edge_id;
    int index = 0; // order along the edge
    int from = -1;
    int to = -1;
};

// Crossing the arc near its start joins these two regions; gluing tokens met
// along the arc are recorded as letters (empty for interior arcs).
struct DualLink {
    int face1 = -1;
    int face2 = -1;
    Word letters;
};

struct Arrangement {
    std::vector<ArrangementNode> nodes;
    std::vector<ArrangementArc> arcs;
    long long face_count = 0;
    long long euler_total = 0; // nodes - arcs + faces, literal count
    long long chi = 0;         // Euler characteristic of the underlying cell complex
    std::vector<DualLink> dual_links; // one per arc
};

Arrangement planarize(const Drawing& d);

// Crossing-promotion mode of planarize: every crossing becomes a labeled
// degree-4 dummy vertex splitting both edges; the result has no crossings.
// Ids of the new vertices are appended to dummy_ids when given.
Drawing promote_crossings(const Drawing& d, const std::string& prefix = "x",
                          std::vector<std::string>* dummy_ids = nullptr);
// Restricted promotion: only crossings between edges of the same part.
Drawing promote_same_part_crossings(const Drawing& d, const std::string& prefix = "x",
                                    std::vector<std::string>* dummy_ids = nullptr);
// Inverse of promotion: each listed degree-4 vertex is removed, its strands
// re-joined straight through, recreating one transversal crossing.
Drawing demote_vertices(const Drawing& d, const std::vector<std::string>& dummy_ids);

struct SearchCaps {
    long long p_max = 4;
    long long q_max = 4;
};

struct WalkSearch {
    long long count = 0;
    long long cap_hits = 0; // suppressed relaxations; zero certifies exactness
};

// Minimum crossings with the drawing over closed curves in the class that
// avoid all vertices, found by homotopy-tracked shortest closed dual walks.
// Throws search_limit_error when the class stays unreachable under the caps.
WalkSearch min_class_crossing(const Drawing& d, const CanonicalClass& cls, SearchCaps caps = {});
WalkSearch min_class_crossing(const Drawing& d, CurveType t, SearchCaps caps = {});

// Explicit polyline achieving min_class_crossing, through face interiors.
ClosedCurve realize_curve(const Drawing& d, CurveType t, SearchCaps caps = {});
ClosedCurve realize_curve_class(const Drawing& d, const CanonicalClass& cls, SearchCaps caps = {});
// Same minimum, restricted to curves crossing the probe exactly once.
ClosedCurve realize_curve_crossing_probe_once(const Drawing& d, const ClosedCurve& probe,
                                              CurveType t, SearchCaps caps = {});

struct CrossingTriple {
    long long a = 0;
    long long b = 0;
    long long m = 0;

    bool operator==(const CrossingTriple&) const = default;
};

// Sub-drawing holding one part (None keeps everything).
Drawing restrict_part(const Drawing& d, PartLabel part);
// (cr([a], .), cr([b], .), cr([m], .)) of the part's restriction.
CrossingTriple crossing_profile(const Drawing& d, PartLabel part, SearchCaps caps = {},
                                long long* cap_hits = nullptr);

} // namespace kleinsep
