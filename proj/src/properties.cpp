#include "bvf/properties.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "bvf/error.hpp"

namespace bvf {

namespace {

std::string fmt(State s) { return s.str(); }

// Backward closure of {target} along proper edges, restricted to nodes
// allowed by `within` (empty = all).
std::vector<char> backward_mask(const ReachGraph& graph, int target,
                                const std::vector<char>& within) {
    std::vector<char> in(graph.size(), 0);
    if (!within.empty() && !within[std::size_t(target)])
        return in;
    std::deque<int> queue{target};
    in[std::size_t(target)] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : graph.pred[std::size_t(u)]) {
            if (in[std::size_t(v)])
                continue;
            if (!within.empty() && !within[std::size_t(v)])
                continue;
            in[std::size_t(v)] = 1;
            queue.push_back(v);
        }
    }
    return in;
}

std::vector<State> stables_in(const VectorField& g, const ReachGraph& graph) {
    std::vector<State> out;
    for (State u : graph.nodes)
        if (is_stable(g, u))
            out.push_back(u);
    return out;
}

// Number of stable states s with reach(root) contained in coreach(s).
// Any path from a graph node to s stays inside the graph, so the
// containment test is a within-graph backward closure covering all nodes.
int containment_count(const VectorField& g, const ReachGraph& graph) {
    int count = 0;
    for (State s : stables_in(g, graph)) {
        std::vector<char> back =
            backward_mask(graph, graph.index_of(s), {});
        if (std::find(back.begin(), back.end(), 0) == back.end())
            ++count;
    }
    return count;
}

// Multi-source forward closure.
std::vector<char> forward_mask_multi(const ReachGraph& graph,
                                     const std::vector<char>& seeds) {
    std::vector<char> in = seeds;
    std::deque<int> queue;
    for (int u = 0; u < int(graph.size()); ++u)
        if (seeds[std::size_t(u)])
            queue.push_back(u);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : graph.succ[std::size_t(u)])
            if (!in[std::size_t(v)]) {
                in[std::size_t(v)] = 1;
                queue.push_back(v);
            }
    }
    return in;
}

// Is there a walk on which coordinate i goes a, then 1-a, then a?
bool has_triple(const ReachGraph& graph, int i, int a) {
    std::vector<char> layer1(graph.size(), 0);
    for (int u = 0; u < int(graph.size()); ++u)
        if (graph.nodes[std::size_t(u)].bit(i) == a)
            layer1[std::size_t(u)] = 1;
    std::vector<char> reach1 = forward_mask_multi(graph, layer1);
    std::vector<char> layer2(graph.size(), 0);
    bool any2 = false;
    for (int u = 0; u < int(graph.size()); ++u)
        if (reach1[std::size_t(u)] &&
            graph.nodes[std::size_t(u)].bit(i) != a) {
            layer2[std::size_t(u)] = 1;
            any2 = true;
        }
    if (!any2)
        return false;
    std::vector<char> reach2 = forward_mask_multi(graph, layer2);
    for (int u = 0; u < int(graph.size()); ++u)
        if (reach2[std::size_t(u)] &&
            graph.nodes[std::size_t(u)].bit(i) == a)
            return true;
    return false;
}

// First (i, a) in scan order with a triple, as a concrete witness walk
// w -> u1 -> u2 -> u3 made of concatenated shortest walks.
NonMonotonousWitness build_triple_witness(const VectorField& g,
                                          const ReachGraph& graph) {
    for (int i = 1; i <= g.width(); ++i) {
        for (int a = 0; a <= 1; ++a) {
            if (!has_triple(graph, i, a))
                continue;
            for (State u1 : graph.nodes) {
                if (u1.bit(i) != a)
                    continue;
                ReachGraph from1 = reach_graph(g, u1);
                for (State u2 : from1.nodes) {
                    if (u2.bit(i) != 1 - a)
                        continue;
                    ReachGraph from2 = reach_graph(g, u2);
                    for (State u3 : from2.nodes) {
                        if (u3.bit(i) != a)
                            continue;
                        std::vector<State> walk = shortest_walk(graph, u1);
                        std::vector<State> seg2 = shortest_walk(from1, u2);
                        std::vector<State> seg3 = shortest_walk(from2, u3);
                        walk.insert(walk.end(), seg2.begin() + 1, seg2.end());
                        walk.insert(walk.end(), seg3.begin() + 1, seg3.end());
                        return NonMonotonousWitness{i, std::move(walk)};
                    }
                }
            }
        }
    }
    throw Defect("monotonicity triple vanished during witness construction");
}

// One milestone step behaves like a trivially hazard-free transfer: every
// state reachable from `from` without passing through `to` must map to `to`.
bool milestone_step_holds(const VectorField& g, const ReachGraph& graph,
                          State from, State to) {
    int to_idx = graph.index_of(to);
    std::vector<char> seen(graph.size(), 0);
    std::deque<int> queue{graph.index_of(from)};
    seen[std::size_t(queue.front())] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == to_idx)
            continue;
        if (g.apply(graph.nodes[std::size_t(u)]) != to)
            return false;
        for (int v : graph.succ[std::size_t(u)])
            if (!seen[std::size_t(v)]) {
                seen[std::size_t(v)] = 1;
                queue.push_back(v);
            }
    }
    return true;
}

// Orbit-shape characterization, per the branch the orbit selects.
bool tcgr_orbit_variant(const VectorField& g, const ReachGraph& graph,
                        const OrbitSummary& orbit) {
    if (orbit.transient_len == 0 && orbit.period == 1)
        return true; // b.1: already stable
    int upto = orbit.period == 1 ? orbit.transient_len
                                 : orbit.transient_len + orbit.period;
    for (int j = 0; j < upto; ++j)
        if (!milestone_step_holds(g, graph, orbit.at(j), orbit.at(j + 1)))
            return false;
    return true;
}

std::optional<TcgrWitness> tcgr_direct_violation(const VectorField& g,
                                                 const ReachGraph& graph) {
    for (State u : graph.nodes) {
        State gu = g.apply(u);
        for (State u2 : ordered_proper_successors(g, u))
            if (u2 != gu && g.apply(u2) != gu)
                return TcgrWitness{u, u2};
    }
    return std::nullopt;
}

std::optional<SemiModularityWitness> sm_pairwise_violation(
    const VectorField& g, const ReachGraph& graph) {
    for (State u : graph.nodes) {
        std::vector<int> exc = excitation_set(g, u);
        for (int j : exc) {
            State u2 = u.with_flipped(j);
            for (int i : exc) {
                if (i == j)
                    continue;
                if (g.coordinate(u2, i) == u2.bit(i))
                    return SemiModularityWitness{u, u2, i};
            }
        }
    }
    return std::nullopt;
}

bool sm_direct(const VectorField& g, const ReachGraph& graph) {
    for (State u : graph.nodes) {
        std::uint32_t exc = excitation_mask(g, u);
        for (State u2 : ordered_proper_successors(g, u)) {
            std::uint32_t kept = exc & ~(u.bits() ^ u2.bits());
            if ((kept & ~excitation_mask(g, u2)) != 0)
                return false;
        }
    }
    return true;
}

std::optional<WsmWitness> wsm_violation(const VectorField& g,
                                        const ReachGraph& graph,
                                        int coordinate_limit) {
    int limit = coordinate_limit > 0 ? coordinate_limit : g.width();
    for (State u : graph.nodes) {
        for (int i : excitation_set(g, u)) {
            if (i > limit)
                continue;
            int b = u.bit(i);
            ReachGraph frozen = frozen_reach(g, u, i, b);
            for (State s : frozen.nodes)
                if (is_stable(g, s))
                    return WsmWitness{u, i, s, {}};
            if (auto scc = accepting_scc(g, frozen, Freeze{i, b}))
                return WsmWitness{u, i, std::nullopt, *scc};
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<State> ordered_proper_successors(const VectorField& g, State u) {
    std::vector<std::uint32_t> diffs;
    std::uint32_t mask = excitation_mask(g, u);
    std::uint32_t sub = 0;
    do {
        if (sub)
            diffs.push_back(sub);
        sub = (sub - mask) & mask;
    } while (sub != 0);
    std::sort(diffs.begin(), diffs.end(),
              [](std::uint32_t a, std::uint32_t b) {
                  int pa = std::popcount(a), pb = std::popcount(b);
                  if (pa != pb)
                      return pa < pb;
                  return a > b; // larger mask = lexicographically earlier set
              });
    std::vector<State> out;
    for (std::uint32_t d : diffs)
        out.push_back(State(u.bits() ^ d, u.width()));
    return out;
}

std::vector<State> stable_reach(const VectorField& g, State w) {
    std::vector<State> out;
    for (State u : reach(g, w))
        if (is_stable(g, u))
            out.push_back(u);
    return out;
}

Verdict all_paths_convergent(const VectorField& g, const ReachGraph& graph) {
    if (auto scc = accepting_scc(g, graph))
        return Verdict::fail(OscillationWitness{*scc});
    return Verdict::pass();
}

Verdict all_paths_monotonous(const VectorField& g, const ReachGraph& graph) {
    for (int i = 1; i <= g.width(); ++i)
        for (int a = 0; a <= 1; ++a)
            if (has_triple(graph, i, a))
                return Verdict::fail(build_triple_witness(g, graph));
    return Verdict::pass();
}

VariantPair di_variants(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    bool convergent = !accepting_scc(g, graph).has_value();
    bool b = convergent && containment_count(g, graph) == 1;
    bool c = convergent && stables_in(g, graph).size() == 1;
    return VariantPair{b, c};
}

VariantPair hf_variants(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    bool monotone = all_paths_monotonous(g, graph).holds;
    bool b = monotone && containment_count(g, graph) == 1;
    bool c = monotone && stables_in(g, graph).size() == 1;
    return VariantPair{b, c};
}

VariantPair sm_variants(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    return VariantPair{sm_direct(g, graph),
                       !sm_pairwise_violation(g, graph).has_value()};
}

VariantPair tcgr_variants(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    return VariantPair{!tcgr_direct_violation(g, graph).has_value(),
                       tcgr_orbit_variant(g, graph, orbit_summary(g, w))};
}

Verdict delay_insensitive(const VectorField& g, State w) {
    return classify(g, w).delay_insensitive;
}

Verdict hazard_free(const VectorField& g, State w) {
    return classify(g, w).hazard_free;
}

ThfResult trivially_hazard_free(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    State target = g.apply(graph.nodes.front());
    for (State u : graph.nodes)
        if (g.apply(u) != target)
            return ThfResult{
                Verdict::fail(NonConstantWitness{graph.nodes.front(), u}),
                std::nullopt};
    return ThfResult{Verdict::pass(), target};
}

Verdict semi_modular(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    bool direct = sm_direct(g, graph);
    auto violation = sm_pairwise_violation(g, graph);
    if (direct == violation.has_value())
        throw Defect("semi-modularity variants disagree at " + fmt(w));
    if (violation)
        return Verdict::fail(*violation);
    return Verdict::pass();
}

Verdict weakly_semi_modular(const VectorField& g, State w,
                            int coordinate_limit) {
    ReachGraph graph = reach_graph(g, w);
    if (auto violation = wsm_violation(g, graph, coordinate_limit))
        return Verdict::fail(*violation);
    return Verdict::pass();
}

TcgrResult tcgr(const VectorField& g, State w) {
    ReachGraph graph = reach_graph(g, w);
    OrbitSummary orbit = orbit_summary(g, w);
    auto violation = tcgr_direct_violation(g, graph);
    bool orbit_side = tcgr_orbit_variant(g, graph, orbit);
    if (violation.has_value() == orbit_side)
        throw Defect("TCGR variants disagree at " + fmt(w));
    if (violation)
        return TcgrResult{Verdict::fail(*violation), std::nullopt};
    TcgrBranch branch;
    if (orbit.transient_len == 0 && orbit.period == 1)
        branch = TcgrBranch{1, std::nullopt};
    else if (orbit.period == 1)
        branch = TcgrBranch{2, orbit.transient_len};
    else
        branch = TcgrBranch{3, std::nullopt};
    return TcgrResult{Verdict::pass(), branch};
}

bool single_bit_change(const VectorField& g, State w) {
    OrbitSummary orbit = orbit_summary(g, w);
    int upto = orbit.transient_len + orbit.period;
    for (int j = 0; j < upto; ++j)
        if (hamming(orbit.at(j), orbit.at(j + 1)) > 1)
            return false;
    return true;
}

PropertyReport classify(const VectorField& g, State w,
                        const ClassifyOptions& options) {
    PropertyReport r;
    r.state = w;
    r.stable = is_stable(g, w);
    r.excited = excitation_set(g, w);
    r.orbit = orbit_summary(g, w);

    ReachGraph graph = reach_graph(g, w);
    r.reach_size = graph.size();
    r.stable_reachable = stables_in(g, graph);

    Verdict convergent = all_paths_convergent(g, graph);
    Verdict monotonous = all_paths_monotonous(g, graph);
    if (!convergent.holds && monotonous.holds)
        throw Defect("monotonous but non-convergent at " + fmt(w));

    bool unique_c = r.stable_reachable.size() == 1;
    bool unique_b = containment_count(g, graph) == 1;
    if (convergent.holds && unique_b != unique_c)
        throw Defect("delay-insensitivity variants disagree at " + fmt(w));
    if (monotonous.holds && unique_b != unique_c)
        throw Defect("hazard-freedom variants disagree at " + fmt(w));

    bool multiple = r.stable_reachable.size() >= 2;
    if (!convergent.holds)
        r.delay_sensitivity_causes.push_back(Cause::oscillation);
    if (multiple) {
        r.delay_sensitivity_causes.push_back(Cause::multiple_limits);
        r.hazard_causes.push_back(Cause::multiple_limits);
    }
    if (!monotonous.holds)
        r.hazard_causes.insert(r.hazard_causes.begin(), Cause::non_monotonous);

    if (convergent.holds && unique_c) {
        r.delay_insensitive = Verdict::pass();
        r.limit = r.stable_reachable.front();
    } else if (!convergent.holds) {
        r.delay_insensitive = Verdict::fail(*convergent.witness);
    } else {
        r.delay_insensitive = Verdict::fail(MultipleLimitsWitness{
            r.stable_reachable[0], r.stable_reachable[1]});
    }
    if (r.delay_insensitive.holds != r.delay_sensitivity_causes.empty())
        throw Defect("delay-sensitivity causes inconsistent at " + fmt(w));

    if (monotonous.holds && unique_c) {
        r.hazard_free = Verdict::pass();
    } else if (!monotonous.holds) {
        r.hazard_free = Verdict::fail(*monotonous.witness);
    } else {
        r.hazard_free = Verdict::fail(MultipleLimitsWitness{
            r.stable_reachable[0], r.stable_reachable[1]});
    }
    if (r.hazard_free.holds != r.hazard_causes.empty())
        throw Defect("hazard causes inconsistent at " + fmt(w));
    if (r.delay_insensitive.holds && !r.hazard_free.holds)
        r.hazardous_transition = std::make_pair(w, *r.limit);

    r.trivially_hazard_free = trivially_hazard_free(g, w);

    {
        bool direct = sm_direct(g, graph);
        auto violation = sm_pairwise_violation(g, graph);
        if (direct == violation.has_value())
            throw Defect("semi-modularity variants disagree at " + fmt(w));
        r.semi_modular =
            violation ? Verdict::fail(*violation) : Verdict::pass();
    }

    {
        auto violation = wsm_violation(g, graph, options.wsm_coordinate_limit);
        r.weakly_semi_modular =
            violation ? Verdict::fail(*violation) : Verdict::pass();
    }

    {
        auto violation = tcgr_direct_violation(g, graph);
        bool orbit_side = tcgr_orbit_variant(g, graph, r.orbit);
        if (violation.has_value() == orbit_side)
            throw Defect("TCGR variants disagree at " + fmt(w));
        if (violation) {
            r.tcgr = TcgrResult{Verdict::fail(*violation), std::nullopt};
        } else if (r.orbit.transient_len == 0 && r.orbit.period == 1) {
            r.tcgr = TcgrResult{Verdict::pass(), TcgrBranch{1, std::nullopt}};
        } else if (r.orbit.period == 1) {
            r.tcgr = TcgrResult{Verdict::pass(),
                                TcgrBranch{2, r.orbit.transient_len}};
        } else {
            r.tcgr = TcgrResult{Verdict::pass(), TcgrBranch{3, std::nullopt}};
        }
    }

    r.single_bit_change = single_bit_change(g, w);

    // The implication lattice between the properties, asserted on every
    // instance.
    auto imply = [&](bool from, bool to, const char* name) {
        if (from && !to)
            throw Defect(std::string(name) + " violated at " + fmt(w));
    };
    imply(r.hazard_free.holds, r.delay_insensitive.holds, "HF implies DI");
    imply(r.trivially_hazard_free.verdict.holds, r.hazard_free.holds,
          "THF implies HF");
    imply(r.semi_modular.holds, r.weakly_semi_modular.holds,
          "SM implies WSM");
    imply(r.trivially_hazard_free.verdict.holds, r.semi_modular.holds,
          "THF implies SM");
    imply(r.hazard_free.holds, r.weakly_semi_modular.holds,
          "HF implies WSM");
    imply(r.tcgr.verdict.holds, r.semi_modular.holds, "TCGR implies SM");
    imply(r.single_bit_change, r.tcgr.verdict.holds, "SBC implies TCGR");
    if (r.tcgr.verdict.holds && r.orbit.stabilizes()) {
        State expected = r.orbit.at(r.orbit.transient_len);
        if (!r.delay_insensitive.holds || *r.limit != expected)
            throw Defect("stabilizing TCGR without the iterate limit at " +
                         fmt(w));
    }
    bool fast = r.tcgr.verdict.holds &&
                iterate(g, w, 1) == iterate(g, w, 2);
    if (fast != r.trivially_hazard_free.verdict.holds)
        throw Defect("fast-stabilizing TCGR does not match trivial "
                     "hazard-freedom at " + fmt(w));
    if (r.limit.has_value() != r.delay_insensitive.holds)
        throw Defect("limit presence inconsistent at " + fmt(w));
    if (r.limit &&
        !std::binary_search(r.stable_reachable.begin(),
                            r.stable_reachable.end(), *r.limit))
        throw Defect("limit not among stable reachable at " + fmt(w));

    return r;
}

} // namespace bvf
