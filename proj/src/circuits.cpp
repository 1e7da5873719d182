#include "kleinsep/circuits.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kleinsep {

namespace {

constexpr long long kSystemBudget = 2'000'000;

const char* kind_name(CircuitKind k) {
    switch (k) {
    case CircuitKind::A: return "a-circuit";
    case CircuitKind::B: return "b-circuit";
    case CircuitKind::M: return "m-circuit";
    case CircuitKind::E: return "e-circuit";
    case CircuitKind::Neutral: return "neutral circuit";
    case CircuitKind::Other: return "other circuit";
    }
    return "?";
}

// Memoized kind-of-class decision. Orthogonality against a reference class
// holds outright when the mod-2 intersection form gives 1; in the even
// cases a capped walk search over the reference curve's own arrangement
// settles it, with a found zero doubling as a disjointness certificate.
class KindOracle {
  public:
    explicit KindOracle(SearchCaps caps)
        : caps_(caps), refs_{reference_drawing(CurveType::A), reference_drawing(CurveType::B),
                             reference_drawing(CurveType::M)} {}

    CircuitKind kind(const CanonicalClass& cc) {
        auto key = std::make_pair(cc.p, cc.q);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        CircuitKind k = compute(cc);
        memo_.emplace(key, k);
        return k;
    }

  private:
    bool orthogonal(const CanonicalClass& cc, CurveType t) {
        if (z2_intersection(cc, reference_class(t)) == 1) return true;
        const Drawing& ref = refs_[t == CurveType::A ? 0 : t == CurveType::B ? 1 : 2];
        WalkSearch ws = min_class_crossing(ref, cc, caps_);
        if (ws.cap_hits > 0)
            throw search_limit_error("circuit kind predicate hit the search caps for class (" +
                                     std::to_string(cc.p) + ", " + std::to_string(cc.q) + ")");
        return ws.count >= 1;
    }

    CircuitKind compute(const CanonicalClass& cc) {
        if (classify(cc) == CurveType::Contractible) return CircuitKind::Neutral;
        bool oa = orthogonal(cc, CurveType::A);
        bool ob = orthogonal(cc, CurveType::B);
        if (oa && ob) return CircuitKind::M;
        if (oa) return CircuitKind::A;
        if (ob) return CircuitKind::B;
        return orthogonal(cc, CurveType::M) ? CircuitKind::E : CircuitKind::Neutral;
    }

    SearchCaps caps_;
    std::array<Drawing, 3> refs_;
    std::map<std::pair<long long, long long>, CircuitKind> memo_;
};

// Ends are encoded as 2 * edge_index + side, side 0 at v1.
struct EndTable {
    std::vector<const PolylineEdge*> edges;
    std::vector<std::string> end_vertex;
    std::map<std::string, std::vector<int>> ends_at;

    void add(const PolylineEdge* e) {
        int i = static_cast<int>(edges.size());
        edges.push_back(e);
        end_vertex.push_back(e->v1);
        end_vertex.push_back(e->v2);
        ends_at[e->v1].push_back(2 * i);
        ends_at[e->v2].push_back(2 * i + 1);
    }
};

void matchings_rec(const std::vector<int>& pool, std::vector<std::pair<int, int>>& cur,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
    if (pool.empty()) {
        out.push_back(cur);
        return;
    }
    for (std::size_t j = 1; j < pool.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t k = 1; k < pool.size(); ++k)
            if (k != j) rest.push_back(pool[k]);
        cur.emplace_back(pool[0], pool[j]);
        matchings_rec(rest, cur, out);
        cur.pop_back();
    }
}

// All perfect matchings of the ends, lexicographic: the least end is paired
// with each later one in turn.
std::vector<std::vector<std::pair<int, int>>> all_matchings(const std::vector<int>& ends) {
    if (ends.size() % 2 != 0)
        throw error("internal: odd end count at a vertex");
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    matchings_rec(ends, cur, out);
    return out;
}

// Follows the end pairing: enter an edge at one end, leave at the other,
// continue into the partner of the exit. Starts each circuit at the least
// unused edge, forward.
std::vector<Circuit> trace_circuits(const std::vector<const PolylineEdge*>& edges,
                                    const std::vector<int>& partner) {
    std::vector<Circuit> out;
    std::vector<char> used(edges.size(), 0);
    for (std::size_t e0 = 0; e0 < edges.size(); ++e0) {
        if (used[e0]) continue;
        Circuit c;
        int entry = static_cast<int>(2 * e0);
        do {
            int ei = entry / 2;
            used[ei] = 1;
            c.steps.push_back(EdgeStep{edges[ei]->id, entry % 2 == 0});
            entry = partner[entry ^ 1];
        } while (entry != static_cast<int>(2 * e0));
        out.push_back(std::move(c));
    }
    return out;
}

CanonicalClass circuit_class(const Drawing& d, const Circuit& c) {
    return canonicalize(normalize(circuit_word(d, c), group_surface(d.surface)));
}

DecompositionCounts tally(const std::vector<CircuitKind>& kinds) {
    DecompositionCounts n;
    for (CircuitKind k : kinds) {
        switch (k) {
        case CircuitKind::A: ++n.n_a; break;
        case CircuitKind::B: ++n.n_b; break;
        case CircuitKind::M: ++n.n_m; break;
        case CircuitKind::E: ++n.n_e; break;
        case CircuitKind::Neutral: ++n.n_neutral; break;
        case CircuitKind::Other: ++n.n_other; break;
        }
    }
    return n;
}

std::size_t find_kind(const Decomposition& dec, CircuitKind k) {
    for (std::size_t i = 0; i < dec.kinds.size(); ++i)
        if (dec.kinds[i] == k) return i;
    return std::numeric_limits<std::size_t>::max();
}

// Shared engine of the merge operations: re-pairs edge ends of circuits i
// and j at their shared vertices, leaving every other circuit untouched,
// and accepts the first re-pairing whose traced circuits carry exactly the
// target kinds. target has one entry (join) or two (split); the first
// target kind lands at index i, the second at index j.
Decomposition merge_pair(const Drawing& d, const Decomposition& dec, std::size_t i,
                         std::size_t j, CircuitKind want_i, CircuitKind want_j,
                         const std::vector<CircuitKind>& target, SearchCaps caps) {
    if (dec.kinds.size() != dec.circuits.size())
        throw precondition_error("merge: decomposition kinds out of step with circuits");
    if (i >= dec.circuits.size() || j >= dec.circuits.size() || i == j)
        throw precondition_error("merge: bad circuit indices");
    if (dec.kinds[i] != want_i || dec.kinds[j] != want_j)
        throw precondition_error(std::string("merge: expected ") + kind_name(want_i) + " and " +
                                 kind_name(want_j) + ", got " + kind_name(dec.kinds[i]) +
                                 " and " + kind_name(dec.kinds[j]));

    EndTable t;
    std::map<std::string, int> edge_index;
    auto add_circuit = [&](const Circuit& c) {
        for (const EdgeStep& s : c.steps) {
            const PolylineEdge* e = d.find_edge(s.edge);
            if (!e) throw precondition_error("merge: unknown edge " + s.edge);
            if (!edge_index.emplace(e->id, static_cast<int>(t.edges.size())).second)
                throw precondition_error("merge: circuits are not edge-disjoint at " + e->id);
            t.add(e);
        }
    };
    add_circuit(dec.circuits[i]);
    add_circuit(dec.circuits[j]);

    // Junction pairing the two circuits currently induce.
    std::vector<int> base(2 * t.edges.size(), -1);
    std::array<std::set<std::string>, 2> visits;
    auto entry_end = [&](const EdgeStep& s) {
        return 2 * edge_index.at(s.edge) + (s.forward ? 0 : 1);
    };
    for (int which = 0; which < 2; ++which) {
        const Circuit& c = dec.circuits[which == 0 ? i : j];
        for (std::size_t k = 0; k < c.steps.size(); ++k) {
            int ex = entry_end(c.steps[k]) ^ 1;
            int nx = entry_end(c.steps[(k + 1) % c.steps.size()]);
            if (t.end_vertex[ex] != t.end_vertex[nx])
                throw precondition_error("merge: consecutive steps of a circuit do not meet");
            base[ex] = nx;
            base[nx] = ex;
            visits[which].insert(t.end_vertex[nx]);
        }
    }

    std::vector<std::string> shared;
    for (const std::string& v : visits[0])
        if (visits[1].count(v)) shared.push_back(v);
    if (shared.empty())
        throw precondition_error("merge: circuits share no vertex");

    std::vector<std::vector<std::vector<std::pair<int, int>>>> slots;
    long long total = 1;
    for (const std::string& v : shared) {
        slots.push_back(all_matchings(t.ends_at.at(v)));
        total *= static_cast<long long>(slots.back().size());
        if (total > kSystemBudget)
            throw search_limit_error("merge: re-pairing space exceeds the search budget");
    }

    KindOracle oracle(caps);
    std::vector<CircuitKind> want_sorted = target;
    std::sort(want_sorted.begin(), want_sorted.end());

    std::vector<std::size_t> idx(slots.size(), 0);
    std::vector<int> partner;
    for (;;) {
        partner = base;
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (const auto& [x, y] : slots[s][idx[s]]) {
                partner[x] = y;
                partner[y] = x;
            }
        std::vector<Circuit> traced = trace_circuits(t.edges, partner);
        if (traced.size() == target.size()) {
            std::vector<CircuitKind> kinds;
            for (const Circuit& c : traced) kinds.push_back(oracle.kind(circuit_class(d, c)));
            std::vector<CircuitKind> sorted = kinds;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == want_sorted) {
                Decomposition out = dec;
                if (target.size() == 1) {
                    std::size_t lo = std::min(i, j), hi = std::max(i, j);
                    out.circuits[lo] = std::move(traced[0]);
                    out.kinds[lo] = kinds[0];
                    out.circuits.erase(out.circuits.begin() + static_cast<long>(hi));
                    out.kinds.erase(out.kinds.begin() + static_cast<long>(hi));
                } else {
                    std::size_t first = kinds[0] == target[0] ? 0 : 1;
                    out.circuits[i] = std::move(traced[first]);
                    out.kinds[i] = target[0];
                    out.circuits[j] = std::move(traced[1 - first]);
                    out.kinds[j] = target[1];
                }
                return out;
            }
        }
        std::size_t s = slots.size();
        for (;;) {
            if (s == 0) {
                std::string wanted(kind_name(target[0]));
                for (std::size_t w = 1; w < target.size(); ++w)
                    wanted += std::string(" and ") + kind_name(target[w]);
                throw theorem_violation("merge: no re-pairing at shared vertices yields " +
                                        wanted);
            }
            --s;
            if (++idx[s] < slots[s].size()) break;
            idx[s] = 0;
        }
    }
}

} // namespace

bool is_eulerian(const Drawing& d, PartLabel part) {
    Drawing r = restrict_part(d, part);
    std::map<std::string, int> deg;
    for (const PolylineEdge& e : r.edges) {
        ++deg[e.v1];
        ++deg[e.v2];
    }
    for (const auto& [v, k] : deg)
        if (k % 2 != 0) return false;
    return true;
}

Word circuit_word(const Drawing& d, const Circuit& c) {
    Word w;
    for (std::size_t k = 0; k < c.steps.size(); ++k) {
        const EdgeStep& s = c.steps[k];
        const PolylineEdge* e = d.find_edge(s.edge);
        if (!e) throw precondition_error("circuit references unknown edge " + s.edge);
        const EdgeStep& nxt = c.steps[(k + 1) % c.steps.size()];
        const PolylineEdge* en = d.find_edge(nxt.edge);
        if (!en) throw precondition_error("circuit references unknown edge " + nxt.edge);
        const std::string& head = s.forward ? e->v2 : e->v1;
        const std::string& tail = nxt.forward ? en->v1 : en->v2;
        if (head != tail)
            throw precondition_error("consecutive circuit steps " + s.edge + " and " + nxt.edge +
                                     " do not share a vertex");
        Word part = edge_word(*e, d.surface);
        if (!s.forward) part = word_inverse(part);
        w.insert(w.end(), part.begin(), part.end());
    }
    return w;
}

CircuitKind circuit_kind(const Drawing& d, const Circuit& c, SearchCaps caps) {
    if (d.surface != SurfaceKind::KleinBottle)
        throw precondition_error("circuit kinds are defined on the Klein bottle");
    KindOracle oracle(caps);
    return oracle.kind(circuit_class(d, c));
}

DecompositionCounts count_kinds(const Decomposition& dec) { return tally(dec.kinds); }

Decomposition decompose_base(const Drawing& d, PartLabel part, SearchCaps caps) {
    if (d.surface != SurfaceKind::KleinBottle)
        throw precondition_error("circuit decomposition is defined on the Klein bottle");
    Drawing r = restrict_part(d, part);
    if (r.edges.empty()) return {};
    if (!is_eulerian(r, PartLabel::None))
        throw precondition_error("part is not eulerian");
    CrossingReport crossings = crossing_count_all(r);
    if (crossings.count != 0)
        throw precondition_error("part is not an embedding: " +
                                 std::to_string(crossings.count) + " crossings");

    long long cap_hits = 0;
    CrossingTriple prof = crossing_profile(r, PartLabel::None, caps, &cap_hits);
    if (cap_hits > 0)
        throw search_limit_error("crossing profile of the part hit the search caps");

    EndTable t;
    for (const PolylineEdge& e : r.edges) t.add(&e);

    // One matching list per vertex holding ends, in drawing order; the
    // odometer below turns the last slot fastest, so candidate systems come
    // out in lexicographic order and the first valid one wins.
    std::vector<std::vector<std::vector<std::pair<int, int>>>> slots;
    long long total = 1;
    for (const Vertex& v : r.vertices) {
        auto it = t.ends_at.find(v.id);
        if (it == t.ends_at.end()) continue;
        slots.push_back(all_matchings(it->second));
        total *= static_cast<long long>(slots.back().size());
        if (total > kSystemBudget)
            throw search_limit_error("transition system count exceeds the search budget");
    }

    KindOracle oracle(caps);
    std::vector<std::size_t> idx(slots.size(), 0);
    std::vector<int> partner(2 * t.edges.size(), -1);
    for (;;) {
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (const auto& [x, y] : slots[s][idx[s]]) {
                partner[x] = y;
                partner[y] = x;
            }
        std::vector<Circuit> circuits = trace_circuits(t.edges, partner);
        std::vector<CircuitKind> kinds;
        for (const Circuit& c : circuits) kinds.push_back(oracle.kind(circuit_class(r, c)));
        DecompositionCounts n = tally(kinds);
        if (n.n_other == 0 && n.n_a + n.n_m == prof.a && n.n_b + n.n_m == prof.b &&
            n.n_a + n.n_b + 2 * n.n_e == prof.m)
            return Decomposition{std::move(circuits), std::move(kinds)};

        std::size_t s = slots.size();
        for (;;) {
            if (s == 0)
                throw theorem_violation(
                    "no transition system matches the crossing profile (" +
                    std::to_string(prof.a) + ", " + std::to_string(prof.b) + ", " +
                    std::to_string(prof.m) + ")");
            --s;
            if (++idx[s] < slots[s].size()) break;
            idx[s] = 0;
        }
    }
}

Decomposition merge_me(const Drawing& d, const Decomposition& dec, std::size_t mi,
                       std::size_t ei, SearchCaps caps) {
    return merge_pair(d, dec, mi, ei, CircuitKind::M, CircuitKind::E,
                      {CircuitKind::A, CircuitKind::B}, caps);
}

Decomposition merge_bm(const Drawing& d, const Decomposition& dec, std::size_t bi,
                       std::size_t mi, SearchCaps caps) {
    return merge_pair(d, dec, bi, mi, CircuitKind::B, CircuitKind::M, {CircuitKind::A}, caps);
}

PackingResult max_one_sided_packing(const Drawing& d, PartLabel part, SearchCaps caps) {
    Decomposition dec = decompose_base(d, part, caps);
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    for (;;) {
        std::size_t mi = find_kind(dec, CircuitKind::M);
        std::size_t ei = find_kind(dec, CircuitKind::E);
        if (mi == npos || ei == npos) break;
        dec = merge_me(d, dec, mi, ei, caps);
    }
    DecompositionCounts n = count_kinds(dec);
    return PackingResult{n.n_a + n.n_b, std::move(dec)};
}

PackingResult max_a_packing(const Drawing& d, PartLabel part, SearchCaps caps) {
    Decomposition dec = decompose_base(d, part, caps);
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    for (;;) {
        std::size_t mi = find_kind(dec, CircuitKind::M);
        std::size_t ei = find_kind(dec, CircuitKind::E);
        if (mi == npos || ei == npos) break;
        dec = merge_me(d, dec, mi, ei, caps);
    }
    for (;;) {
        std::size_t bi = find_kind(dec, CircuitKind::B);
        std::size_t mi = find_kind(dec, CircuitKind::M);
        if (bi == npos || mi == npos) break;
        dec = merge_bm(d, dec, bi, mi, caps);
    }
    DecompositionCounts n = count_kinds(dec);
    return PackingResult{n.n_a, std::move(dec)};
}

PackingResult max_b_packing(const Drawing& d, PartLabel part, SearchCaps caps) {
    Decomposition dec = decompose_base(d, part, caps);
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    for (;;) {
        std::size_t mi = find_kind(dec, CircuitKind::M);
        std::size_t ei = find_kind(dec, CircuitKind::E);
        if (mi == npos || ei == npos) break;
        dec = merge_me(d, dec, mi, ei, caps);
    }
    for (;;) {
        std::size_t ai = find_kind(dec, CircuitKind::A);
        std::size_t mi = find_kind(dec, CircuitKind::M);
        if (ai == npos || mi == npos) break;
        dec = merge_pair(d, dec, ai, mi, CircuitKind::A, CircuitKind::M, {CircuitKind::B}, caps);
    }
    DecompositionCounts n = count_kinds(dec);
    return PackingResult{n.n_b, std::move(dec)};
}

} // namespace kleinsep
