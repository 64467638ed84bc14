#include "bvf/relations.hpp"

#include <algorithm>
#include <deque>

#include "bvf/error.hpp"

namespace bvf {

namespace {

// Enumerate w ^ sub for all sub subseteq mask, ascending after sort.
std::vector<std::uint32_t> flip_closure(std::uint32_t bits, std::uint32_t mask) {
    std::vector<std::uint32_t> out;
    std::uint32_t sub = 0;
    do {
        out.push_back(bits ^ sub);
        sub = (sub - mask) & mask; // next subset of mask
    } while (sub != 0);
    std::sort(out.begin(), out.end());
    return out;
}

// BFS closure over bit successors; `allowed_mask` limits which excited
// coordinates may flip (bits()-layout).
std::vector<std::uint32_t> reach_bits(const VectorField& g, std::uint32_t start,
                                      std::uint32_t allowed_mask) {
    std::vector<bool> seen(g.table_size(), false);
    std::vector<std::uint32_t> order;
    std::deque<std::uint32_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        order.push_back(u);
        std::uint32_t exc = (g.apply_bits(u) ^ u) & allowed_mask;
        for (std::uint32_t v : flip_closure(u, exc)) {
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

ReachGraph build_graph(const VectorField& g, State root,
                       std::uint32_t allowed_mask) {
    ReachGraph graph;
    graph.root = root;
    for (std::uint32_t b : reach_bits(g, root.bits(), allowed_mask))
        graph.nodes.push_back(State(b, g.width()));
    graph.succ.resize(graph.nodes.size());
    graph.pred.resize(graph.nodes.size());
    for (int ui = 0; ui < int(graph.nodes.size()); ++ui) {
        std::uint32_t u = graph.nodes[std::size_t(ui)].bits();
        std::uint32_t exc = (g.apply_bits(u) ^ u) & allowed_mask;
        for (std::uint32_t v : flip_closure(u, exc)) {
            if (v == u)
                continue;
            int vi = graph.index_of(State(v, g.width()));
            graph.succ[std::size_t(ui)].push_back(vi);
            graph.pred[std::size_t(vi)].push_back(ui);
        }
    }
    for (auto& p : graph.pred)
        std::sort(p.begin(), p.end());
    return graph;
}

} // namespace

std::vector<State> mu_successors(const VectorField& g, State w) {
    std::vector<State> out;
    for (std::uint32_t b : flip_closure(w.bits(), excitation_mask(g, w)))
        out.push_back(State(b, g.width()));
    return out;
}

bool is_mu_step(const VectorField& g, State w, State w2) {
    if (w.width() != g.width() || w2.width() != g.width())
        throw Error("state width does not match field");
    std::uint32_t diff = w.bits() ^ w2.bits();
    return (diff & ~excitation_mask(g, w)) == 0;
}

std::vector<State> reach(const VectorField& g, State w) {
    std::vector<State> out;
    for (std::uint32_t b : reach_bits(g, w.bits(), ~std::uint32_t(0)))
        out.push_back(State(b, g.width()));
    return out;
}

std::vector<State> coreach(const VectorField& g, State target) {
    if (target.width() != g.width())
        throw Error("state width does not match field");
    // Reverse BFS over the full space: u -> target needs target reachable,
    // so walk predecessors p with p mu u.
    std::vector<bool> member(g.table_size(), false);
    std::deque<std::uint32_t> queue{target.bits()};
    member[target.bits()] = true;
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t p = 0; p < g.table_size(); ++p) {
            if (member[p])
                continue;
            std::uint32_t diff = p ^ u;
            if ((diff & ~(g.apply_bits(p) ^ p)) == 0) {
                member[p] = true;
                queue.push_back(p);
            }
        }
    }
    std::vector<State> out;
    for (std::uint32_t b = 0; b < g.table_size(); ++b)
        if (member[b])
            out.push_back(State(b, g.width()));
    return out;
}

int ReachGraph::index_of(State u) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
    if (it == nodes.end() || *it != u)
        return -1;
    return int(it - nodes.begin());
}

std::size_t ReachGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& s : succ)
        total += s.size();
    return total;
}

ReachGraph reach_graph(const VectorField& g, State root) {
    if (root.width() != g.width())
        throw Error("state width does not match field");
    return build_graph(g, root, ~std::uint32_t(0));
}

std::vector<Scc> proper_sccs(const ReachGraph& graph) {
    // Tarjan, iterative to keep deep graphs off the call stack.
    int n = int(graph.size());
    std::vector<int> index(std::size_t(n), -1), low(std::size_t(n), 0);
    std::vector<bool> on_stack(std::size_t(n), false);
    std::vector<int> stack;
    std::vector<Scc> sccs;
    int next_index = 0;

    struct Frame {
        int node;
        std::size_t edge;
    };
    for (int start = 0; start < n; ++start) {
        if (index[std::size_t(start)] != -1)
            continue;
        std::vector<Frame> frames{{start, 0}};
        index[std::size_t(start)] = low[std::size_t(start)] = next_index++;
        stack.push_back(start);
        on_stack[std::size_t(start)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& edges = graph.succ[std::size_t(f.node)];
            if (f.edge < edges.size()) {
                int child = edges[f.edge++];
                if (index[std::size_t(child)] == -1) {
                    index[std::size_t(child)] = low[std::size_t(child)] =
                        next_index++;
                    stack.push_back(child);
                    on_stack[std::size_t(child)] = true;
                    frames.push_back({child, 0});
                } else if (on_stack[std::size_t(child)]) {
                    low[std::size_t(f.node)] =
                        std::min(low[std::size_t(f.node)], index[std::size_t(child)]);
                }
            } else {
                if (low[std::size_t(f.node)] == index[std::size_t(f.node)]) {
                    Scc scc;
                    for (;;) {
                        int v = stack.back();
                        stack.pop_back();
                        on_stack[std::size_t(v)] = false;
                        scc.node_indices.push_back(v);
                        if (v == f.node)
                            break;
                    }
                    std::sort(scc.node_indices.begin(), scc.node_indices.end());
                    sccs.push_back(std::move(scc));
                }
                int done = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[std::size_t(frames.back().node)] =
                        std::min(low[std::size_t(frames.back().node)],
                                 low[std::size_t(done)]);
            }
        }
    }
    std::sort(sccs.begin(), sccs.end(), [](const Scc& a, const Scc& b) {
        return a.node_indices.front() < b.node_indices.front();
    });
    return sccs;
}

std::optional<std::vector<State>> accepting_scc(const VectorField& g,
                                                const ReachGraph& graph,
                                                std::optional<Freeze> freeze) {
    if (freeze) {
        for (State u : graph.nodes)
            if (u.bit(freeze->coordinate) != freeze->value)
                throw Error("graph node violates freeze of coordinate " +
                            std::to_string(freeze->coordinate));
    }
    int n = g.width();
    for (const Scc& scc : proper_sccs(graph)) {
        if (scc.trivial())
            continue;
        bool accepting = true;
        for (int i = 1; i <= n && accepting; ++i) {
            for (int a = 0; a <= 1 && accepting; ++a) {
                // Needs a member of F_(i,a): u_i != a or i not excited.
                bool met = false;
                for (int idx : scc.node_indices) {
                    State u = graph.nodes[std::size_t(idx)];
                    if (u.bit(i) != a || g.coordinate(u, i) == u.bit(i)) {
                        met = true;
                        break;
                    }
                }
                accepting = met;
            }
        }
        if (accepting) {
            std::vector<State> states;
            for (int idx : scc.node_indices)
                states.push_back(graph.nodes[std::size_t(idx)]);
            return states;
        }
    }
    return std::nullopt;
}

ReachGraph frozen_reach(const VectorField& g, State u, int i, int b) {
    if (u.width() != g.width())
        throw Error("state width does not match field");
    if (b != 0 && b != 1)
        throw Error("frozen value must be 0 or 1");
    if (u.bit(i) != b)
        throw Error("state has coordinate " + std::to_string(i) + " = " +
                    std::to_string(u.bit(i)) + ", cannot freeze at " +
                    std::to_string(b));
    return build_graph(g, u, ~u.coordinate_mask(i));
}

std::vector<State> shortest_walk(const ReachGraph& graph, State target) {
    int ti = graph.index_of(target);
    if (ti < 0)
        throw Error("walk target is not in the reach graph");
    int ri = graph.index_of(graph.root);
    std::vector<int> parent(graph.size(), -1);
    std::vector<bool> seen(graph.size(), false);
    std::deque<int> queue{ri};
    seen[std::size_t(ri)] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == ti)
            break;
        for (int v : graph.succ[std::size_t(u)]) {
            if (!seen[std::size_t(v)]) {
                seen[std::size_t(v)] = true;
                parent[std::size_t(v)] = u;
                queue.push_back(v);
            }
        }
    }
    if (!seen[std::size_t(ti)])
        throw Error("walk target unreachable from graph root");
    std::vector<State> walk;
    for (int v = ti; v != -1; v = parent[std::size_t(v)])
        walk.push_back(graph.nodes[std::size_t(v)]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

} // namespace bvf
