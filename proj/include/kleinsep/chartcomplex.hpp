#pragma once

#include "kleinsep/drawing.hpp"

#include <map>
#include <vector>

namespace kleinsep {

// Exact subdivision of the chart polygon induced by a drawing plus optional
// probe curves: content segments are split at proper crossings, a vertical
// wall is shot up and down from every interior vertex, and the chart
// boundary is subdivided compatibly with the gluing. Every inner face is a
// convex cell, so any two boundary points of a face see each other.

enum class ChartEdgeKind { Content, Wall, Boundary };

struct ChartEdge {
    int a = -1;
    int b = -1;
    ChartEdgeKind kind = ChartEdgeKind::Wall;
    int strand = -1;               // Content: the owning strand
    Letter letter_out = Letter::X; // Boundary: letter acquired crossing outward
    int twin = -1;                 // Boundary: deck-image edge, -1 on the plane
};

// Half-edges are 2*edge + dir with dir 1 running b -> a.
inline int he_edge(int he) { return he >> 1; }
inline int he_opposite(int he) { return he ^ 1; }

struct ChartFace {
    std::vector<int> half_edges; // ccw cycle, interior on the left
    std::vector<int> vertices;   // origin of each half-edge in the cycle
    Point inside;                // centroid of the cycle, strictly interior
};

struct ChartCrossing {
    int strand1 = -1;
    int strand2 = -1;
    int vertex = -1;
};

struct StrandStep {
    bool is_token = false;
    int half_edge = -1;   // content half-edge in walk direction
    TokenPassage passage; // token steps only
};

struct ChartComplex {
    SurfaceKind surface = SurfaceKind::KleinBottle;
    std::vector<Point> chart_polygon; // ccw; unit square corners except on the projective plane
    std::vector<Point> verts;
    std::vector<ChartEdge> edges;
    std::vector<ChartFace> faces;           // inner faces only
    std::vector<std::vector<int>> rotation; // ccw outgoing half-edges per vertex
    std::vector<int> he_rot_index;          // position of each half-edge in its rotation
    std::vector<int> he_face;               // face of each half-edge, -1 outside
    std::vector<ChartCrossing> crossings;
    std::vector<int> vert_drawing_vertex; // index into the drawing's vertices, -1 otherwise
    std::vector<bool> vert_on_boundary;
    int n_edge_strands = 0; // strands at or beyond this index are probes
    std::vector<std::vector<StrandStep>> strands;
    std::vector<int> face_class; // faces merged across walls and the gluing
    int n_face_classes = 0;
    long long chi = 0; // Euler characteristic of the glued complex

    std::map<Point, int> point_index;

    int vertex_id(const Point& p) const;
    int find_face(const Point& p) const; // face strictly containing p, -1 otherwise
    int he_origin(int he) const;
    int he_target(int he) const;
    int next_in_face(int he) const; // successor along the face left of he
};

ChartComplex build_chart_complex(const Drawing& d, const std::vector<ClosedCurve>& probes = {});

} // namespace kleinsep
