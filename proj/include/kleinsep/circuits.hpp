#pragma once

#include "kleinsep/arrangement.hpp"
#include "kleinsep/drawing.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace kleinsep {

// One directed traversal of an edge; forward means v1 to v2.
struct EdgeStep {
    std::string edge;
    bool forward = true;

    bool operator==(const EdgeStep&) const = default;
};

// Closed walk using each of its edges exactly once; consecutive steps
// (wrapping around) share a vertex.
struct Circuit {
    std::vector<EdgeStep> steps;

    bool operator==(const Circuit&) const = default;
};

// Tag from the orthogonality pattern of the circuit's free class against
// the classes of a, b and m: orthogonal to a only -> A, to b only -> B,
// to both -> M, to neither but to m -> E, to none -> Neutral. Other is
// kept for reporting; the pattern decision tree never produces it.
enum class CircuitKind { A, B, M, E, Neutral, Other };

// Partition of an embedded eulerian part's edges into circuits; kinds runs
// parallel to circuits.
struct Decomposition {
    std::vector<Circuit> circuits;
    std::vector<CircuitKind> kinds;
};

struct DecompositionCounts {
    long long n_a = 0;
    long long n_b = 0;
    long long n_m = 0;
    long long n_e = 0;
    long long n_neutral = 0;
    long long n_other = 0;

    bool operator==(const DecompositionCounts&) const = default;
};

// Every vertex of the part has even degree.
bool is_eulerian(const Drawing& d, PartLabel part);

// Gluing letters collected along the walk, edge words reversed on
// backward steps.
Word circuit_word(const Drawing& d, const Circuit& c);

// Kind of the circuit's free class. Orthogonality against a reference
// class is certified by the mod-2 intersection form when that is 1, and
// otherwise by a capped walk search over the reference curve's
// arrangement; an inconclusive search raises search_limit_error.
CircuitKind circuit_kind(const Drawing& d, const Circuit& c, SearchCaps caps = {});

DecompositionCounts count_kinds(const Decomposition& dec);

// Decomposition of an embedded eulerian part whose counts match the
// part's crossing profile: cr([a]) = n_a + n_m, cr([b]) = n_b + n_m,
// cr([m]) = n_a + n_b + 2 n_e, with n_other = 0. Found by enumerating
// transition systems (pairings of edge ends at each vertex) in
// lexicographic order; the first satisfying system wins. Exhaustion
// without a hit raises theorem_violation.
Decomposition decompose_base(const Drawing& d, PartLabel part, SearchCaps caps = {});

// Replaces an m-circuit and an e-circuit sharing a vertex by two circuits
// over the same edges, one of kind A and one of kind B, found by
// re-pairing edge ends at shared vertices. The A circuit lands at index
// mi, the B circuit at index ei; everything else is untouched.
Decomposition merge_me(const Drawing& d, const Decomposition& dec, std::size_t mi,
                       std::size_t ei, SearchCaps caps = {});

// Replaces a b-circuit and an m-circuit sharing a vertex by one circuit
// of kind A over the union of their edges. The merged circuit lands at
// the smaller of the two indices.
Decomposition merge_bm(const Drawing& d, const Decomposition& dec, std::size_t bi,
                       std::size_t mi, SearchCaps caps = {});

struct PackingResult {
    long long count = 0;
    Decomposition decomposition;
};

// Maximum number of pairwise edge-disjoint one-sided circuits of the
// part, equal to min(cr([a]) + cr([b]), cr([m])). The returned
// decomposition achieves it after min(n_m, n_e) m/e merges and keeps
// (cr([a]) + cr([b]) - count) / 2 m-circuits.
PackingResult max_one_sided_packing(const Drawing& d, PartLabel part, SearchCaps caps = {});

// Maximum number of edge-disjoint circuits of kind A, equal to
// min(cr([a]), cr([m])): m/e merges first, then b/m merges while both
// kinds remain.
PackingResult max_a_packing(const Drawing& d, PartLabel part, SearchCaps caps = {});

// Same with the roles of a and b exchanged.
PackingResult max_b_packing(const Drawing& d, PartLabel part, SearchCaps caps = {});

} // namespace kleinsep
