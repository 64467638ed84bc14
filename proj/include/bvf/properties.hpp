#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bvf/relations.hpp"
#include "bvf/vector_field.hpp"

namespace bvf {

// Failure classes reported alongside a failing property.
enum class Cause { oscillation, multiple_limits, non_monotonous };

// A fair cycle support along which some paths never converge.
struct OscillationWitness {
    std::vector<State> scc;
};

// Two distinct stable states reachable from the analyzed state.
struct MultipleLimitsWitness {
    State first;
    State second;
};

// A mu-walk from the analyzed state on which `coordinate` takes value
// a, then not-a, then a again.
struct NonMonotonousWitness {
    int coordinate;
    std::vector<State> walk;
};

// Two reachable states with different images (g not constant on M(w)).
struct NonConstantWitness {
    State left;
    State right;
};

// Coordinate stays excited in `state`, is unchanged in `successor`, yet
// is no longer excited there.
struct SemiModularityWitness {
    State state;
    State successor;
    int coordinate;
};

// From `state`, where `coordinate` is excited, a fair path exists that
// never flips the coordinate: it parks at `frozen_stable` or loops
// through `frozen_scc`.
struct WsmWitness {
    State state;
    int coordinate;
    std::optional<State> frozen_stable;
    std::vector<State> frozen_scc;
};

// A mu-step state -> successor with successor != g(state) and
// g(successor) != g(state).
struct TcgrWitness {
    State state;
    State successor;
};

using Witness =
    std::variant<OscillationWitness, MultipleLimitsWitness,
                 NonMonotonousWitness, NonConstantWitness,
                 SemiModularityWitness, WsmWitness, TcgrWitness>;

struct Verdict {
    bool holds = true;
    std::optional<Witness> witness; // engaged iff !holds

    static Verdict pass() { return Verdict{}; }
    static Verdict fail(Witness w) { return Verdict{false, std::move(w)}; }
};

// Branch of the orbit characterization of TCGR: 1 = already stable,
// 2 = iterates stabilize after p >= 1 strict steps, 3 = iterates cycle.
struct TcgrBranch {
    int branch = 1;
    std::optional<int> p; // engaged iff branch == 2
};

struct TcgrResult {
    Verdict verdict;
    std::optional<TcgrBranch> branch; // engaged iff verdict.holds
};

struct ThfResult {
    Verdict verdict;
    std::optional<State> target; // the constant image; engaged iff holds
};

struct PropertyReport {
    State state;
    bool stable = false;
    std::vector<int> excited;
    std::size_t reach_size = 0;
    std::vector<State> stable_reachable;
    std::optional<State> limit; // engaged iff delay_insensitive holds
    Verdict delay_insensitive;
    Verdict hazard_free;
    ThfResult trivially_hazard_free;
    Verdict semi_modular;
    Verdict weakly_semi_modular;
    TcgrResult tcgr;
    bool single_bit_change = false;
    std::vector<Cause> delay_sensitivity_causes;
    std::vector<Cause> hazard_causes;
    std::optional<std::pair<State, State>> hazardous_transition;
    OrbitSummary orbit;
};

// Proper mu-successors of u ordered by race size then coordinate order:
// ascending flip-set cardinality, ties broken by the lexicographic order
// of the flipped coordinate sets.  This is the scan order behind every
// deterministic (u, u') witness.
std::vector<State> ordered_proper_successors(const VectorField& g, State u);

std::vector<State> stable_reach(const VectorField& g, State w);

Verdict all_paths_convergent(const VectorField& g, const ReachGraph& graph);
Verdict all_paths_monotonous(const VectorField& g, const ReachGraph& graph);

// Two-sided computations used by the public deciders; exposed so suites
// can report which side of a theorem broke.
struct VariantPair {
    bool first;
    bool second;
    bool agree() const { return first == second; }
};
// reach-containment test vs stable-state count
VariantPair di_variants(const VectorField& g, State w);
// monotonicity + containment vs monotonicity + count
VariantPair hf_variants(const VectorField& g, State w);
// kept-excitation step scan vs pairwise single-flip scan
VariantPair sm_variants(const VectorField& g, State w);
// direct deviation scan vs orbit-shape characterization
VariantPair tcgr_variants(const VectorField& g, State w);

Verdict delay_insensitive(const VectorField& g, State w);
Verdict hazard_free(const VectorField& g, State w);
ThfResult trivially_hazard_free(const VectorField& g, State w);
Verdict semi_modular(const VectorField& g, State w);

// coordinate_limit restricts the quantified coordinate i to 1..limit
// (0 = all); the closed-field analysis passes the state width here.
Verdict weakly_semi_modular(const VectorField& g, State w,
                            int coordinate_limit = 0);

TcgrResult tcgr(const VectorField& g, State w);

bool single_bit_change(const VectorField& g, State w);

struct ClassifyOptions {
    int wsm_coordinate_limit = 0; // 0 = all coordinates
};

PropertyReport classify(const VectorField& g, State w,
                        const ClassifyOptions& options = {});

} // namespace bvf
