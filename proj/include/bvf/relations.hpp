#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bvf/vector_field.hpp"

namespace bvf {

// One asynchronous step: w mu w' iff the set of flipped coordinates is a
// subset of E(w).  Flipped coordinates necessarily take their g-value.

// All mu-successors of w (2^|E(w)| states, ascending, includes w itself
// and g(w)).
std::vector<State> mu_successors(const VectorField& g, State w);

bool is_mu_step(const VectorField& g, State w, State w2);

// Reach set M(w): closure of {w} under mu, ascending.
std::vector<State> reach(const VectorField& g, State w);

// Coreach set M^-1(target) = { u : target in M(u) }, ascending, computed
// over the full state space.
std::vector<State> coreach(const VectorField& g, State target);

// The mu digraph restricted to M(root), with only proper edges (w -> w',
// w' != w) stored.  Node order is ascending by bits, and adjacency lists
// are ascending, so every traversal of the graph is deterministic.
struct ReachGraph {
    State root;
    std::vector<State> nodes;              // ascending
    std::vector<std::vector<int>> succ;    // proper edges, ascending targets
    std::vector<std::vector<int>> pred;    // reverse of succ, ascending

    int index_of(State u) const;           // -1 when absent
    std::size_t size() const { return nodes.size(); }
    std::size_t edge_count() const;
};

ReachGraph reach_graph(const VectorField& g, State root);

// A strongly connected component of the proper-edge digraph.  Singletons
// are trivial (a proper edge is never a self loop); components with >= 2
// nodes always carry a proper cycle.
struct Scc {
    std::vector<int> node_indices;          // ascending
    bool trivial() const { return node_indices.size() < 2; }
};

// All SCCs of the graph, each with ascending node indices, listed in
// ascending order of their smallest node.
std::vector<Scc> proper_sccs(const ReachGraph& graph);

// Optional coordinate freeze (x_i = b) under which a graph was built.
struct Freeze {
    int coordinate;
    int value;
};

// A non-trivial SCC through which a fair non-convergent path runs: for
// every coordinate i and value a the component meets
// F_(i,a) = { u : u_i != a or g_i(u) = u_i }, i.e. no coordinate is
// continuously excited at a constant value along the component.  Returns
// the first such component in graph order, or nothing.  When `freeze` is
// given the graph must be a frozen reach graph for it; the acceptance
// targets then specialize automatically because x_i = b holds throughout.
std::optional<std::vector<State>> accepting_scc(
    const VectorField& g, const ReachGraph& graph,
    std::optional<Freeze> freeze = std::nullopt);

// Reach graph of u under mu restricted to steps that never flip
// coordinate i; requires u_i = b, and every node keeps x_i = b.
ReachGraph frozen_reach(const VectorField& g, State u, int i, int b);

// Shortest walk from graph root to `target` along proper edges, both ends
// included (BFS, deterministic).  target must be a graph node.
std::vector<State> shortest_walk(const ReachGraph& graph, State target);

} // namespace bvf
