#pragma once

// Private machinery for the surgery operations: an abstract cell complex of
// the glued surface with cut/cap/insert primitives, plus an exact certified
// straight-line layout for the cut-open disk.

#include "kleinsep/chartcomplex.hpp"
#include "kleinsep/drawing.hpp"

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace kleinsep {
namespace rechart {

// Faces are oriented cycles of slots; a slot traverses edge `edge` starting
// from end `org` (0 = origin, 1 = target). Vertices are not stored: they are
// the classes of edge ends forced together by consecutive slots, recomputed
// by rebuild(). This makes vertex splitting along a cut automatic.
struct Slot {
    int edge = -1;
    int org = 0;
};

struct SxEdge {
    bool alive = false;
    bool scaffold = true;
    int strand = -1; // content: owning strand; scaffold probe pieces keep theirs
};

struct SxFace {
    bool alive = false;
    std::vector<Slot> cyc;
};

struct StrandEntry {
    int edge = -1;
    bool fwd = true; // traversed origin -> target
};

// (face, position): the corner before slot `pos` on the face cycle.
struct Corner {
    int face = -1;
    int pos = 0;
};

struct SurfaceComplex {
    std::vector<SxFace> faces;
    std::vector<SxEdge> edges;
    // Per edge end (2e + end): index into the source drawing's vertex list,
    // or -1. All ends of a vertex class must agree on the mark.
    std::vector<int> end_vertex_mark;
    // One strand per content edge of the source drawing, then one per probe.
    // Probe strands are scaffold but keep their entry lists so cuts can
    // follow them; cutting clears any strand that contains a cut edge.
    std::vector<std::vector<StrandEntry>> strands;
    int n_content_strands = 0;

    // Derived by rebuild().
    std::vector<int> uf_parent;                             // over edge ends
    std::vector<std::vector<std::pair<int, int>>> slots_of; // edge -> (face, pos)
    std::vector<int> vclass_of_end;                         // edge end -> class
    int n_vclasses = 0;
    std::vector<int> class_marks;         // drawing-vertex index per class, -1
    std::vector<char> class_on_boundary;  // touches a boundary edge

    int end_id(int edge, int end) const { return 2 * edge + end; }
    int find_end(int x);
    int vclass(int edge, int end);
    int slot_origin_class(const Slot& s) { return vclass(s.edge, s.org); }
    int slot_target_class(const Slot& s) { return vclass(s.edge, 1 - s.org); }

    int new_edge(bool scaffold, int strand);
    void rebuild();

    long long n_alive_edges() const;
    long long n_alive_faces() const;
    long long euler_characteristic();
    int connected_components();

    bool is_boundary_edge(int e) const;
    // Cycles of boundary slots, each oriented along its adjacent face side.
    std::vector<std::vector<Slot>> boundary_cycles();

    int class_mark(int cls);
};

SurfaceComplex from_glued_chart(const ChartComplex& cc, const Drawing& d);

// Splits edge e; returns {near, far} where `near` keeps end 0 of e.
std::pair<int, int> split_edge(SurfaceComplex& sx, int e);

// Splits face `at.face` by a chain of fresh edges from the corner `at` to the
// corner `to` on the same face, with n_mid fresh vertices along the chain.
// Returns the chain edge ids oriented from `at` to `to`. Invalidates corners
// and derived data; rebuild() before further lookups.
std::vector<int> insert_chain(SurfaceComplex& sx, Corner at, Corner to, int n_mid,
                              bool scaffold, int strand);

// One crossing step of an inserted path: subdivides the edge at slot position
// `edge_pos` of `at.face`, draws a chord from `at` to the new vertex, and
// reports the corner of the new vertex in the face on the far side.
struct CrossStep {
    int chord_edge = -1;
    int crossed_near = -1; // piece keeping end 0 of the crossed edge
    int crossed_far = -1;
    Corner cont;
};
CrossStep cross_into(SurfaceComplex& sx, Corner at, int edge_pos, bool scaffold, int strand);

// Cuts the complex along the given scaffold edges: each becomes two boundary
// edges (index pairs returned per cut edge, in slot order) and the vertices
// along the cut split on the next rebuild.
std::vector<std::array<int, 2>> cut_along(SurfaceComplex& sx, const std::vector<int>& cut_edges);

// Caps one traced boundary cycle with a new face; returns the face id.
int cap_boundary(SurfaceComplex& sx, const std::vector<Slot>& cycle);

void remove_face(SurfaceComplex& sx, int f);

// Flips face cycles to a consistent orientation (BFS over shared edges).
// Throws theorem_violation when the complex is not orientable.
void reorient_faces(SurfaceComplex& sx);

// Splits self-loop edges and content edges joining two boundary classes.
// Call after all cuts and caps, before pinning the frame.
void prepare_for_layout(SurfaceComplex& sx);

// Corner of vertex class cls on face f; occurrence selects among repeats.
std::optional<Corner> find_corner(SurfaceComplex& sx, int f, int cls, int occurrence = 0);

// ---------------------------------------------------------------------------

struct FramePin {
    int vclass = -1;
    Point pos;
};

struct Layout {
    std::vector<Point> pos; // per vertex class, in the final rebuild numbering
};

// Exact certified straight-line layout of a disk complex (exactly one
// boundary cycle, Euler characteristic 1). Every face gets a cushion ring and
// hub, the interior solves the uniform-weight barycentric system, positions
// snap to a power-of-two grid, and every triangle orientation is certified
// exactly (uniform sign). Additional certified properties: all content class
// positions and pins pairwise distinct; no content class on a forbidden
// vertical line and no content edge with both ends on one; all content
// classes strictly inside `containment_hull` when non-empty. Throws
// degenerate_error when no grid level certifies.
Layout layout_disk(SurfaceComplex& sx, const std::vector<FramePin>& frame,
                   const std::vector<Rat>& forbidden_x,
                   const std::vector<Point>& containment_hull);

// ---------------------------------------------------------------------------

// Convex positions on a circle of the given radius in ring order, slightly
// jittered so inserted straight chords meet in distinct points; drives the
// combinatorial chord insertions inside one face.
std::vector<Point> model_circle(int n, int jitter_seed, const Rat& radius);

// ---------------------------------------------------------------------------

struct EmitPassage {
    Point exit;
    GluingToken tok;
    Point enter;
};

struct EmitHooks {
    // Token for a severed strand gap, given the two gap end positions in
    // layout coordinates. Unset means gaps are forbidden.
    std::function<EmitPassage(const Point& from, const Point& to)> passage;
    // Vertical seam lines in layout coordinates; content segments crossing
    // one are split there and the crossing becomes a passage. `rightward` is
    // the sign of the x direction of travel.
    std::vector<Rat> seam_x;
    std::function<EmitPassage(const Point& at, bool rightward)> seam_passage;
    // Layout coordinates -> chart coordinates (exact; applied last).
    std::function<Point(const Point& p)> map_point;
};

// Rebuilds a Drawing from the laid-out complex: walks every content strand,
// demotes crossing classes with exact corner shortcuts, splits segments at
// seam lines, then maps points and emits vertices, polylines and tokens.
Drawing emit_drawing(SurfaceComplex& sx, const Layout& layout, const Drawing& source,
                     SurfaceKind out_surface, const EmitHooks& hooks);

} // namespace rechart
} // namespace kleinsep
