#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bvf/properties.hpp"
#include "bvf/vector_field.hpp"

namespace bvf {

// A finite mu-walk: consecutive pairs are mu-steps (identity steps are
// legal, mu being reflexive).
using Walk = std::vector<State>;

// Finite representation of an infinite fair path: the walk `prefix`
// followed either by a proper closed walk repeated forever or by a
// stable parking state held forever.  Exactly one of cycle/parking is
// set.  An empty prefix anchors the tail at the path origin itself;
// otherwise the prefix starts at the origin and its last state connects
// to the tail by a mu-step (for parking, a proper one: a lasso parking
// at its own prefix end is stored in the shorter form without the
// duplicated state).
struct Lasso {
    Walk prefix;
    std::vector<State> cycle;
    std::optional<State> parking;
};

// w, g(w), ..., g^steps(w): the canonical fair continuation in which
// every excited coordinate switches immediately.
Walk full_update_walk(const VectorField& g, State w, int steps);

// Validates the lasso structure (throws Error when malformed) and
// decides fairness: parking lassos are fair; a cycle is fair iff for
// every coordinate i and value a some support state u has
// u_i != a or i not excited at u.
bool is_fair_lasso(const VectorField& g, const Lasso& lasso);

// The fair-behavior catalog from w: every lasso with a simple proper
// prefix inside reach(g,w) and either a stable parking state or a fair
// proper cycle of length <= cycle_bound (0 = |reach|).  Appended after
// the catalog: one witness lasso per proper edge not already covered by
// a catalog behavior (shortest walk to the edge plus the full-update
// completion; these prefixes may revisit states).  Deterministic order;
// throws Error when the enumeration exceeds its work budget.
std::vector<Lasso> enumerate_lassos(const VectorField& g, State w,
                                    std::size_t cycle_bound = 0);

// The unrolled behavior of a lasso: prefix plus enough tail to expose
// at least `min_steps` states and two full cycle periods.
Walk unroll(const Lasso& lasso, std::size_t min_steps);

// Independent re-derivation of the full PropertyReport from path
// semantics: reachability by direct DFS over flip sets, convergence by
// exhaustive fair-support enumeration, monotonicity by phase-tagged
// search over finite walks, WSM by frozen-subset analysis, SM/TCGR by
// one-step scans with milestone validation along behaviors.  Intended
// for n <= 4 (throws Error beyond); used to cross-validate classify.
PropertyReport oracle_classify(const VectorField& g, State w,
                               int wsm_coordinate_limit = 0);

// Field-by-field comparison of two reports over everything except
// witness contents: verdicts, causes, limit, reach data, orbit, branch.
// Returns the names of differing fields (empty = agreement).
std::vector<std::string> report_differences(const PropertyReport& graph_side,
                                            const PropertyReport& oracle_side);

// Milestone structure of a concrete walk: milestone indices k_m with
// walk[k_m] = g^m(walk[0]), plus the split into the states strictly
// before k_J (transient) and from k_J on (permanent), J being the
// transient length of the iterate orbit.
struct MilestoneDecomposition {
    std::vector<std::size_t> indices;
    std::vector<State> transient_states;
    std::vector<State> permanent_states;
};

struct MilestoneCheck {
    enum class Status { ok, not_applicable, violation };
    Status status = Status::ok;
    std::optional<MilestoneDecomposition> decomposition; // engaged iff ok
    std::string detail; // violation description

    bool ok() const { return status == Status::ok; }
};

// Locates the greedy milestone indices of the walk (least k > k_m with
// walk[k] = g^{m+1}), verifies the segment constancy g(walk[k]) =
// g^{m+1}(w) for k_m <= k < k_{m+1} including the trailing partial
// segment, and verifies per-coordinate monotonicity on every segment.
// not_applicable when g does not satisfy TCGR at walk[0]; violation
// (with detail) when the walk breaks the structure, which a valid
// mu-walk of a TCGR field never does.
MilestoneCheck milestone_decomposition(const VectorField& g, const Walk& walk);

} // namespace bvf
