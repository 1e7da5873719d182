#pragma once

#include "kleinsep/drawing.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kleinsep {

// Independent reference implementations used to cross-check the search
// modules. Everything here is built from drawing and homotopy primitives
// only, never from the modules whose numbers it reproduces.

// Normal form obtained by literal relator rewriting on the word; no
// multiplication tables involved.
NormalForm rewrite_normal_form(const Word& w, Surface s);

// Free homotopy equivalence decided by enumerating small conjugators and
// the inversion over rewrite-based products.
bool rewrite_free_homotopic(const NormalForm& a, const NormalForm& b, Surface s);

// Minimum crossings with d over closed curves of the class, by exhaustive
// shortest-walk search on a quotient grid graph (Klein bottle) or a ring
// graph (projective plane). Grid edges touching the drawing non-transversally
// are discarded, so every counted crossing is a proper one. The search runs
// at resolutions grid and 2*grid and both must agree; disagreement, a result
// above weight_cap, or an unreachable class raises search_limit_error.
long long brute_min_class_crossing(const Drawing& d, const CanonicalClass& target,
                                   long long weight_cap, int grid = 16);
long long brute_min_class_crossing(const Drawing& d, CurveType t, long long weight_cap,
                                   int grid = 16);

// (a, b, m) minima of brute_min_class_crossing out of one shared search.
std::array<long long, 3> brute_class_profile(const Drawing& d, long long weight_cap,
                                             int grid = 16);

enum class PackingType { OneSided, TypeA, TypeB };

// Exact maximum number of pairwise edge-disjoint circuits of the requested
// type in the part's restriction, by exhaustive transition-system search
// over all edge subsets. The restriction must be embedded and eulerian and
// have at most 12 edges.
long long brute_max_packing(const Drawing& d, PartLabel part, PackingType type);

struct BoundCheck {
    std::string name;
    Rat lhs;
    Rat rhs;
    bool applicable = true;
    bool ok = true; // lhs >= rhs whenever applicable
};

struct InequalityReport {
    long long between = 0;               // crossings between the two parts
    long long h_a = 0, h_b = 0, h_m = 0; // brute class profile of part H
    long long k_a = 0, k_b = 0, k_m = 0; // brute class profile of part K
    std::vector<BoundCheck> bounds;
    bool all_ok = true;
};

// Lower bounds on the between-part crossing count of a Klein bottle drawing
// in terms of the parts' class profiles. Both parts must be individually
// embedded and eulerian; a failed bound is a report entry, not an exception.
InequalityReport verify_inequalities(const Drawing& d);

struct CorpusMember {
    std::string name;
    std::string family; // reference, merge, wedge, stack, lattice, jitter, pair, projective
    Drawing drawing;
    bool eulerian_embedded = false; // no crossings at all and every degree even
    bool parts_eulerian = false;    // both parts embedded eulerian, and they cross
    std::optional<std::array<long long, 3>> expected_profile; // hand-computed (a, b, m)
};

struct CorpusParams {
    int n_lattice = 10;
    int n_jitter = 12;
    int n_pairs = 110;
    int n_projective = 24;
};

struct Corpus {
    std::uint64_t seed = 0;
    std::vector<CorpusMember> members;

    const CorpusMember* find(const std::string& name) const;
};

// Deterministic test corpus: the four reference singletons, their merges,
// wedges, parallel stacks, lattice circuits of prescribed classes, jittered
// copies, crossing H/K pairs, and projective instances. Every member passes
// validate.
Corpus generate_corpus(std::uint64_t seed, const CorpusParams& params = {});

// One drawing file per member plus a manifest.json with the metadata.
void save_corpus(const Corpus& c, const std::string& dir);

} // namespace kleinsep
