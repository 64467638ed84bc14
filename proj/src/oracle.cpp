#include "bvf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

#include "bvf/error.hpp"

namespace bvf {

namespace {

constexpr std::size_t kMaxNodes = 16;
constexpr std::size_t kMaxLassos = 100000;
constexpr std::size_t kMaxWork = 2000000;

// Self-contained view of the mu digraph, rebuilt from g alone so the
// oracle shares no decision machinery with the relations module.
struct Core {
    const VectorField& g;
    std::vector<State> nodes; // ascending
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    Core(const VectorField& field, State origin, std::uint32_t allowed_mask)
        : g(field) {
        std::vector<char> seen(field.table_size(), 0);
        std::deque<std::uint32_t> queue{origin.bits()};
        seen[origin.bits()] = 1;
        while (!queue.empty()) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            std::uint32_t exc = (field.apply_bits(u) ^ u) & allowed_mask;
            std::uint32_t sub = 0;
            do {
                std::uint32_t v = u ^ sub;
                if (!seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
                sub = (sub - exc) & exc;
            } while (sub != 0);
        }
        for (std::uint32_t b = 0; b < field.table_size(); ++b)
            if (seen[b])
                nodes.push_back(State(b, field.width()));
        succ.resize(nodes.size());
        pred.resize(nodes.size());
        for (int ui = 0; ui < int(nodes.size()); ++ui) {
            std::uint32_t u = nodes[std::size_t(ui)].bits();
            std::uint32_t exc = (field.apply_bits(u) ^ u) & allowed_mask;
            std::uint32_t sub = 0;
            do {
                if (sub) {
                    int vi = index_of_bits(u ^ sub);
                    succ[std::size_t(ui)].push_back(vi);
                    pred[std::size_t(vi)].push_back(ui);
                }
                sub = (sub - exc) & exc;
            } while (sub != 0);
        }
        for (auto& s : succ)
            std::sort(s.begin(), s.end());
        for (auto& p : pred)
            std::sort(p.begin(), p.end());
    }

    int index_of_bits(std::uint32_t bits) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(),
                                   State(bits, g.width()));
        return int(it - nodes.begin());
    }
    int index_of(State s) const { return index_of_bits(s.bits()); }

    std::uint32_t exc_mask(State u) const {
        return g.apply_bits(u.bits()) ^ u.bits();
    }
    bool excited(State u, int i) const {
        return (exc_mask(u) >> (g.width() - i)) & 1;
    }
    bool mu(State a, State b) const {
        return ((a.bits() ^ b.bits()) & ~exc_mask(a)) == 0;
    }
};

// Strongly connected within the member set, and for every coordinate i
// and value a some member is not excited-at-a.
bool fair_support(const Core& core, const std::vector<int>& members) {
    if (members.size() < 2)
        return false;
    std::set<int> member_set(members.begin(), members.end());
    for (int pass = 0; pass < 2; ++pass) {
        std::set<int> seen{members.front()};
        std::deque<int> queue{members.front()};
        const auto& adj = pass == 0 ? core.succ : core.pred;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[std::size_t(u)])
                if (member_set.count(v) && !seen.count(v)) {
                    seen.insert(v);
                    queue.push_back(v);
                }
        }
        if (seen.size() != members.size())
            return false;
    }
    for (int i = 1; i <= core.g.width(); ++i) {
        for (int a = 0; a <= 1; ++a) {
            bool met = false;
            for (int idx : members) {
                State u = core.nodes[std::size_t(idx)];
                if (u.bit(i) != a || !core.excited(u, i)) {
                    met = true;
                    break;
                }
            }
            if (!met)
                return false;
        }
    }
    return true;
}

// First fair support among subsets of `universe`, by ascending subset
// mask; exact because every fair non-convergent path's infinitely
// visited set is such a support.
std::optional<std::vector<State>> find_fair_support(
    const Core& core, const std::vector<int>& universe) {
    if (universe.size() > 20)
        throw Error("oracle fair-support universe too large");
    for (std::uint32_t mask = 1; mask < (1u << universe.size()); ++mask) {
        if (std::popcount(mask) < 2)
            continue;
        std::vector<int> members;
        for (std::size_t t = 0; t < universe.size(); ++t)
            if (mask >> t & 1)
                members.push_back(universe[t]);
        if (fair_support(core, members)) {
            std::vector<State> states;
            for (int idx : members)
                states.push_back(core.nodes[std::size_t(idx)]);
            return states;
        }
    }
    return std::nullopt;
}

std::vector<int> all_indices(const Core& core) {
    std::vector<int> out(core.nodes.size());
    for (int t = 0; t < int(out.size()); ++t)
        out[std::size_t(t)] = t;
    return out;
}

Walk bfs_path(const Core& core, State from, State to) {
    int fi = core.index_of(from), ti = core.index_of(to);
    std::vector<int> parent(core.nodes.size(), -2);
    parent[std::size_t(fi)] = -1;
    std::deque<int> queue{fi};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == ti)
            break;
        for (int v : core.succ[std::size_t(u)])
            if (parent[std::size_t(v)] == -2) {
                parent[std::size_t(v)] = u;
                queue.push_back(v);
            }
    }
    Walk walk;
    for (int v = ti; v != -1; v = parent[std::size_t(v)])
        walk.push_back(core.nodes[std::size_t(v)]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

// Phase-tagged search for a walk taking coordinate i through a, 1-a, a.
std::optional<NonMonotonousWitness> phase_violation(const Core& core,
                                                    State origin) {
    int n = core.g.width();
    for (int i = 1; i <= n; ++i) {
        for (int a = 0; a <= 1; ++a) {
            int seq[3] = {a, 1 - a, a};
            auto advance = [&](int phase, State s) {
                if (phase < 3 && s.bit(i) == seq[phase])
                    ++phase;
                return phase;
            };
            int root = core.index_of(origin);
            int start_phase = advance(0, origin);
            std::vector<int> parent(core.nodes.size() * 4, -2);
            auto key = [&](int idx, int phase) { return idx * 4 + phase; };
            parent[std::size_t(key(root, start_phase))] = -1;
            std::deque<std::pair<int, int>> queue{{root, start_phase}};
            std::optional<int> hit;
            if (start_phase == 3)
                hit = key(root, start_phase);
            while (!queue.empty() && !hit) {
                auto [u, phase] = queue.front();
                queue.pop_front();
                for (int v : core.succ[std::size_t(u)]) {
                    int next = advance(phase, core.nodes[std::size_t(v)]);
                    int k = key(v, next);
                    if (parent[std::size_t(k)] != -2)
                        continue;
                    parent[std::size_t(k)] = key(u, phase);
                    if (next == 3) {
                        hit = k;
                        break;
                    }
                    queue.push_back({v, next});
                }
            }
            if (hit) {
                Walk walk;
                for (int k = *hit; k != -1; k = parent[std::size_t(k)])
                    walk.push_back(core.nodes[std::size_t(k / 4)]);
                std::reverse(walk.begin(), walk.end());
                return NonMonotonousWitness{i, std::move(walk)};
            }
        }
    }
    return std::nullopt;
}

std::optional<TcgrWitness> tcgr_scan(const Core& core) {
    for (State u : core.nodes) {
        State gu = core.g.apply(u);
        std::uint32_t exc = core.exc_mask(u);
        std::uint32_t sub = 0;
        do {
            if (sub) {
                State u2(u.bits() ^ sub, u.width());
                if (u2 != gu && core.g.apply(u2) != gu)
                    return TcgrWitness{u, u2};
            }
            sub = (sub - exc) & exc;
        } while (sub != 0);
    }
    return std::nullopt;
}

std::optional<SemiModularityWitness> sm_scan(const Core& core) {
    int n = core.g.width();
    for (State u : core.nodes) {
        std::uint32_t exc = core.exc_mask(u);
        std::uint32_t sub = 0;
        do {
            if (sub) {
                State u2(u.bits() ^ sub, u.width());
                std::uint32_t kept = exc & ~sub;
                std::uint32_t lost = kept & ~core.exc_mask(u2);
                if (lost) {
                    int i = mask_coordinates(lost, n).front();
                    return SemiModularityWitness{u, u2, i};
                }
            }
            sub = (sub - exc) & exc;
        } while (sub != 0);
    }
    return std::nullopt;
}

std::optional<WsmWitness> wsm_scan(const VectorField& g, const Core& core,
                                   int coordinate_limit) {
    int limit = coordinate_limit > 0 ? coordinate_limit : g.width();
    for (State u : core.nodes) {
        for (int i : mask_coordinates(core.exc_mask(u), g.width())) {
            if (i > limit)
                continue;
            Core frozen(g, u, ~u.coordinate_mask(i));
            for (State s : frozen.nodes)
                if (g.apply(s) == s)
                    return WsmWitness{u, i, s, {}};
            if (auto scc = find_fair_support(frozen, all_indices(frozen)))
                return WsmWitness{u, i, std::nullopt, *scc};
        }
    }
    return std::nullopt;
}

struct LocalOrbit {
    int transient_len;
    int period;
    std::vector<State> milestones;

    State at(long long j) const {
        if (j < std::int64_t(milestones.size()))
            return milestones[std::size_t(j)];
        long long wrapped = transient_len + (j - transient_len) % period;
        return milestones[std::size_t(wrapped)];
    }
};

LocalOrbit local_orbit(const VectorField& g, State w) {
    LocalOrbit orbit;
    std::map<std::uint32_t, int> first;
    std::uint32_t bits = w.bits();
    for (;;) {
        auto [it, inserted] = first.emplace(bits, int(orbit.milestones.size()));
        if (!inserted) {
            orbit.transient_len = it->second;
            orbit.period = int(orbit.milestones.size()) - it->second;
            return orbit;
        }
        orbit.milestones.push_back(State(bits, g.width()));
        bits = g.apply_bits(bits);
    }
}

void require_mu_walk(const Core& core, const Walk& walk) {
    if (walk.empty())
        throw Error("empty walk");
    for (std::size_t t = 0; t + 1 < walk.size(); ++t)
        if (!core.mu(walk[t], walk[t + 1]))
            throw Error("walk breaks at step " + std::to_string(t) + ": " +
                        walk[t].str() + " -/-> " + walk[t + 1].str());
}

bool segment_monotonous(const Walk& walk, std::size_t from, std::size_t to,
                        int n) {
    for (int i = 1; i <= n; ++i) {
        int switches = 0;
        for (std::size_t k = from; k + 1 <= to; ++k)
            if (walk[k].bit(i) != walk[k + 1].bit(i))
                ++switches;
        if (switches > 1)
            return false;
    }
    return true;
}

} // namespace

Walk full_update_walk(const VectorField& g, State w, int steps) {
    if (steps < 0)
        throw Error("negative step count");
    Walk walk{w};
    for (int t = 0; t < steps; ++t)
        walk.push_back(g.apply(walk.back()));
    return walk;
}

bool is_fair_lasso(const VectorField& g, const Lasso& lasso) {
    Core core(g, lasso.prefix.empty()
                     ? (lasso.parking ? *lasso.parking : lasso.cycle.front())
                     : lasso.prefix.front(),
              ~std::uint32_t(0));
    if (lasso.parking.has_value() == !lasso.cycle.empty())
        throw Error("lasso must have exactly one of cycle or parking");
    for (std::size_t t = 0; t + 1 < lasso.prefix.size(); ++t)
        if (!core.mu(lasso.prefix[t], lasso.prefix[t + 1]))
            throw Error("lasso prefix breaks at step " + std::to_string(t));
    if (lasso.parking) {
        if (!lasso.prefix.empty() && !core.mu(lasso.prefix.back(), *lasso.parking))
            throw Error("lasso prefix does not connect to parking state");
        if (g.apply(*lasso.parking) != *lasso.parking)
            throw Error("parking state " + lasso.parking->str() +
                        " is not stable");
        return true;
    }
    const auto& cycle = lasso.cycle;
    if (!lasso.prefix.empty() && !core.mu(lasso.prefix.back(), cycle.front()))
        throw Error("lasso prefix does not connect to cycle");
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        State a = cycle[t];
        State b = cycle[(t + 1) % cycle.size()];
        if (a == b)
            throw Error("cycle contains an identity step");
        if (!core.mu(a, b))
            throw Error("cycle breaks at step " + std::to_string(t));
    }
    for (int i = 1; i <= g.width(); ++i) {
        for (int a = 0; a <= 1; ++a) {
            bool met = false;
            for (State u : cycle)
                if (u.bit(i) != a || !core.excited(u, i)) {
                    met = true;
                    break;
                }
            if (!met)
                return false;
        }
    }
    return true;
}

Walk unroll(const Lasso& lasso, std::size_t min_steps) {
    Walk walk = lasso.prefix;
    if (lasso.parking) {
        for (std::size_t t = 0; t < std::max<std::size_t>(min_steps, 1); ++t)
            walk.push_back(*lasso.parking);
        return walk;
    }
    std::size_t need = std::max(min_steps, 2 * lasso.cycle.size());
    for (std::size_t t = 0; t < need; ++t)
        walk.push_back(lasso.cycle[t % lasso.cycle.size()]);
    return walk;
}

std::vector<Lasso> enumerate_lassos(const VectorField& g, State w,
                                    std::size_t cycle_bound) {
    Core core(g, w, ~std::uint32_t(0));
    if (core.nodes.size() > kMaxNodes)
        throw Error("lasso enumeration limited to " +
                    std::to_string(kMaxNodes) + " reachable states");
    if (cycle_bound == 0)
        cycle_bound = core.nodes.size();
    std::size_t work = 0;
    auto spend = [&](std::size_t amount) {
        work += amount;
        if (work > kMaxWork)
            throw Error("lasso enumeration work budget exceeded");
    };

    // Simple proper cycles, each rotation recorded once (anchored at its
    // first state), ascending by state sequence; unfair cycles dropped.
    std::vector<std::vector<State>> fair_cycles;
    {
        std::vector<char> on_path(core.nodes.size(), 0);
        std::vector<int> path;
        auto dfs = [&](auto&& self, int anchor, int u) -> void {
            spend(1);
            for (int v : core.succ[std::size_t(u)]) {
                if (v == anchor && path.size() >= 2) {
                    std::vector<State> cycle;
                    for (int idx : path)
                        cycle.push_back(core.nodes[std::size_t(idx)]);
                    if (cycle.size() <= cycle_bound) {
                        Lasso probe{{}, cycle, std::nullopt};
                        if (is_fair_lasso(core.g, probe))
                            fair_cycles.push_back(std::move(cycle));
                    }
                    continue;
                }
                if (v <= anchor || on_path[std::size_t(v)])
                    continue; // rotations anchored at their smallest index
                if (path.size() >= cycle_bound)
                    continue;
                on_path[std::size_t(v)] = 1;
                path.push_back(v);
                self(self, anchor, v);
                path.pop_back();
                on_path[std::size_t(v)] = 0;
            }
        };
        for (int anchor = 0; anchor < int(core.nodes.size()); ++anchor) {
            on_path[std::size_t(anchor)] = 1;
            path = {anchor};
            dfs(dfs, anchor, anchor);
            on_path[std::size_t(anchor)] = 0;
        }
    }

    // Every rotation of every fair cycle is a legal tail; regenerate
    // them, keyed by front state.
    std::vector<std::vector<State>> rotations;
    for (const auto& cycle : fair_cycles) {
        for (std::size_t r = 0; r < cycle.size(); ++r) {
            std::vector<State> rot;
            for (std::size_t t = 0; t < cycle.size(); ++t)
                rot.push_back(cycle[(r + t) % cycle.size()]);
            rotations.push_back(std::move(rot));
        }
    }
    std::sort(rotations.begin(), rotations.end());
    rotations.erase(std::unique(rotations.begin(), rotations.end()),
                    rotations.end());

    std::vector<Lasso> out;
    auto emit = [&](Lasso lasso) {
        out.push_back(std::move(lasso));
        if (out.size() > kMaxLassos)
            throw Error("lasso enumeration result budget exceeded");
    };

    // Tails anchored directly at the origin.
    for (const auto& rot : rotations)
        if (rot.front() == w)
            emit(Lasso{{}, rot, std::nullopt});

    // Simple prefixes in lexicographic order.
    {
        std::vector<char> on_path(core.nodes.size(), 0);
        Walk path;
        auto visit = [&](auto&& self, int u) -> void {
            spend(1);
            State end = core.nodes[std::size_t(u)];
            if (core.g.apply(end) == end) {
                Walk prefix(path.begin(), path.end() - 1);
                emit(Lasso{std::move(prefix), {}, end});
            }
            for (const auto& rot : rotations)
                if (core.mu(end, rot.front()))
                    emit(Lasso{path, rot, std::nullopt});
            for (int v : core.succ[std::size_t(u)]) {
                if (on_path[std::size_t(v)])
                    continue;
                on_path[std::size_t(v)] = 1;
                path.push_back(core.nodes[std::size_t(v)]);
                self(self, v);
                path.pop_back();
                on_path[std::size_t(v)] = 0;
            }
        };
        int root = core.index_of(w);
        on_path[std::size_t(root)] = 1;
        path = {w};
        visit(visit, root);
    }

    // Witness lassos for proper edges not yet covered by any behavior.
    std::set<std::pair<std::uint32_t, std::uint32_t>> covered;
    auto cover_pair = [&](State a, State b) {
        if (a != b)
            covered.insert({a.bits(), b.bits()});
    };
    auto cover = [&](const Lasso& lasso) {
        for (std::size_t t = 0; t + 1 < lasso.prefix.size(); ++t)
            cover_pair(lasso.prefix[t], lasso.prefix[t + 1]);
        State tail_front = lasso.parking ? *lasso.parking : lasso.cycle.front();
        if (!lasso.prefix.empty())
            cover_pair(lasso.prefix.back(), tail_front);
        for (std::size_t t = 0; t < lasso.cycle.size(); ++t)
            cover_pair(lasso.cycle[t],
                       lasso.cycle[(t + 1) % lasso.cycle.size()]);
    };
    for (const Lasso& lasso : out)
        cover(lasso);
    for (int ui = 0; ui < int(core.nodes.size()); ++ui) {
        State u = core.nodes[std::size_t(ui)];
        for (int vi : core.succ[std::size_t(ui)]) {
            State u2 = core.nodes[std::size_t(vi)];
            if (covered.count({u.bits(), u2.bits()}))
                continue;
            Walk base = bfs_path(core, w, u);
            LocalOrbit orbit = local_orbit(g, u2);
            Lasso lasso;
            lasso.prefix = base;
            for (int t = 0; t < orbit.transient_len; ++t)
                lasso.prefix.push_back(orbit.milestones[std::size_t(t)]);
            if (orbit.period == 1) {
                lasso.parking = orbit.at(orbit.transient_len);
            } else {
                for (int t = orbit.transient_len;
                     t < orbit.transient_len + orbit.period; ++t)
                    lasso.cycle.push_back(orbit.milestones[std::size_t(t)]);
            }
            cover(lasso);
            emit(std::move(lasso));
        }
    }
    return out;
}

namespace {

// Milestone analysis shared by the public checker and oracle_classify;
// assumes the walk was validated and TCGR holds at walk[0].
MilestoneCheck analyze_milestones(const VectorField& g, const Walk& walk) {
    State w = walk.front();
    LocalOrbit orbit = local_orbit(g, w);
    std::vector<std::size_t> indices{0};
    for (;;) {
        State target = orbit.at(std::int64_t(indices.size()));
        std::size_t found = walk.size();
        for (std::size_t k = indices.back() + 1; k < walk.size(); ++k)
            if (walk[k] == target) {
                found = k;
                break;
            }
        if (found == walk.size())
            break;
        indices.push_back(found);
    }
    MilestoneCheck check;
    for (std::size_t m = 0; m + 1 < indices.size(); ++m) {
        State next = walk[indices[m + 1]];
        for (std::size_t k = indices[m]; k < indices[m + 1]; ++k)
            if (g.apply(walk[k]) != next) {
                check.status = MilestoneCheck::Status::violation;
                check.detail = "segment constancy fails at position " +
                               std::to_string(k) + ": g(" + walk[k].str() +
                               ") != " + next.str();
                return check;
            }
        if (!segment_monotonous(walk, indices[m], indices[m + 1], g.width())) {
            check.status = MilestoneCheck::Status::violation;
            check.detail = "segment " + std::to_string(m) + " not monotonous";
            return check;
        }
    }
    State beyond = orbit.at(std::int64_t(indices.size()));
    for (std::size_t k = indices.back(); k < walk.size(); ++k)
        if (g.apply(walk[k]) != beyond) {
            check.status = MilestoneCheck::Status::violation;
            check.detail = "trailing constancy fails at position " +
                           std::to_string(k);
            return check;
        }
    if (!segment_monotonous(walk, indices.back(), walk.size() - 1, g.width())) {
        check.status = MilestoneCheck::Status::violation;
        check.detail = "trailing segment not monotonous";
        return check;
    }

    MilestoneDecomposition dec;
    dec.indices = indices;
    std::size_t split = std::size_t(orbit.transient_len) < indices.size()
                            ? indices[std::size_t(orbit.transient_len)]
                            : walk.size();
    std::set<State> transient(walk.begin(),
                              walk.begin() + std::int64_t(split));
    std::set<State> permanent(walk.begin() + std::int64_t(split), walk.end());
    dec.transient_states.assign(transient.begin(), transient.end());
    dec.permanent_states.assign(permanent.begin(), permanent.end());
    check.status = MilestoneCheck::Status::ok;
    check.decomposition = std::move(dec);
    return check;
}

} // namespace

MilestoneCheck milestone_decomposition(const VectorField& g, const Walk& walk) {
    if (walk.empty())
        throw Error("empty walk");
    Core core(g, walk.front(), ~std::uint32_t(0));
    require_mu_walk(core, walk);
    if (tcgr_scan(core)) {
        MilestoneCheck check;
        check.status = MilestoneCheck::Status::not_applicable;
        check.detail = "field does not satisfy TCGR at " + walk.front().str();
        return check;
    }
    return analyze_milestones(g, walk);
}

PropertyReport oracle_classify(const VectorField& g, State w,
                               int wsm_coordinate_limit) {
    if (g.width() > 4)
        throw Error("oracle_classify limited to 4 coordinates");
    Core core(g, w, ~std::uint32_t(0));
    PropertyReport r;
    r.state = w;
    r.stable = core.exc_mask(w) == 0;
    r.excited = mask_coordinates(core.exc_mask(w), g.width());
    r.reach_size = core.nodes.size();
    for (State u : core.nodes)
        if (g.apply(u) == u)
            r.stable_reachable.push_back(u);

    LocalOrbit orbit = local_orbit(g, w);
    r.orbit.transient_len = orbit.transient_len;
    r.orbit.period = orbit.period;
    r.orbit.milestones = orbit.milestones;

    auto oscillation = find_fair_support(core, all_indices(core));
    bool convergent = !oscillation.has_value();
    auto triple = phase_violation(core, w);
    bool monotone = !triple.has_value();
    bool unique = r.stable_reachable.size() == 1;

    if (!convergent)
        r.delay_sensitivity_causes.push_back(Cause::oscillation);
    if (r.stable_reachable.size() >= 2) {
        r.delay_sensitivity_causes.push_back(Cause::multiple_limits);
        r.hazard_causes.push_back(Cause::multiple_limits);
    }
    if (!monotone)
        r.hazard_causes.insert(r.hazard_causes.begin(), Cause::non_monotonous);

    if (convergent && unique) {
        r.delay_insensitive = Verdict::pass();
        r.limit = r.stable_reachable.front();
    } else if (!convergent) {
        r.delay_insensitive = Verdict::fail(OscillationWitness{*oscillation});
    } else {
        r.delay_insensitive = Verdict::fail(MultipleLimitsWitness{
            r.stable_reachable[0], r.stable_reachable[1]});
    }
    if (monotone && unique) {
        r.hazard_free = Verdict::pass();
    } else if (!monotone) {
        r.hazard_free = Verdict::fail(*triple);
    } else {
        r.hazard_free = Verdict::fail(MultipleLimitsWitness{
            r.stable_reachable[0], r.stable_reachable[1]});
    }
    if (r.delay_insensitive.holds && !r.hazard_free.holds)
        r.hazardous_transition = std::make_pair(w, *r.limit);

    {
        State target = g.apply(core.nodes.front());
        std::optional<NonConstantWitness> witness;
        for (State u : core.nodes)
            if (g.apply(u) != target) {
                witness = NonConstantWitness{core.nodes.front(), u};
                break;
            }
        r.trivially_hazard_free =
            witness ? ThfResult{Verdict::fail(*witness), std::nullopt}
                    : ThfResult{Verdict::pass(), target};
    }

    {
        auto witness = sm_scan(core);
        r.semi_modular =
            witness ? Verdict::fail(*witness) : Verdict::pass();
    }
    {
        auto witness = wsm_scan(g, core, wsm_coordinate_limit);
        r.weakly_semi_modular =
            witness ? Verdict::fail(*witness) : Verdict::pass();
    }
    {
        auto witness = tcgr_scan(core);
        if (witness) {
            r.tcgr = TcgrResult{Verdict::fail(*witness), std::nullopt};
        } else {
            TcgrBranch branch;
            if (orbit.transient_len == 0 && orbit.period == 1)
                branch = TcgrBranch{1, std::nullopt};
            else if (orbit.period == 1)
                branch = TcgrBranch{2, orbit.transient_len};
            else
                branch = TcgrBranch{3, std::nullopt};
            r.tcgr = TcgrResult{Verdict::pass(), branch};

            // Milestone structure validated along concrete behaviors:
            // the full update from w and every one-step deviation.
            int depth = 3 * int(core.nodes.size());
            if (!analyze_milestones(g, full_update_walk(g, w, depth)).ok())
                throw Defect("milestone structure broken on full update from " +
                             w.str());
            for (int ui = 0; ui < int(core.nodes.size()); ++ui) {
                State u = core.nodes[std::size_t(ui)];
                for (int vi : core.succ[std::size_t(ui)]) {
                    Walk walk = bfs_path(core, w, u);
                    State u2 = core.nodes[std::size_t(vi)];
                    Walk tail = full_update_walk(g, u2, depth);
                    walk.insert(walk.end(), tail.begin(), tail.end());
                    if (!analyze_milestones(g, walk).ok())
                        throw Defect("milestone structure broken via edge " +
                                     u.str() + " -> " + u2.str());
                }
            }
        }
    }

    {
        bool sbc = true;
        for (int j = 0; j < orbit.transient_len + orbit.period; ++j)
            if (hamming(orbit.at(j), orbit.at(j + 1)) > 1)
                sbc = false;
        r.single_bit_change = sbc;
    }
    return r;
}

namespace {

std::string causes_text(const std::vector<Cause>& causes) {
    std::string out;
    for (Cause c : causes) {
        if (!out.empty())
            out += ",";
        out += c == Cause::oscillation       ? "oscillation"
               : c == Cause::multiple_limits ? "multiple_limits"
                                             : "non_monotonous";
    }
    return out;
}

std::string states_text(const std::vector<State>& states) {
    std::string out;
    for (State s : states) {
        if (!out.empty())
            out += ",";
        out += s.str();
    }
    return out;
}

} // namespace

std::vector<std::string> report_differences(const PropertyReport& graph_side,
                                            const PropertyReport& oracle_side) {
    std::vector<std::string> diff;
    auto cmp = [&](bool equal, const char* name) {
        if (!equal)
            diff.push_back(name);
    };
    cmp(graph_side.state == oracle_side.state, "state");
    cmp(graph_side.stable == oracle_side.stable, "stable");
    cmp(graph_side.excited == oracle_side.excited, "excited");
    cmp(graph_side.reach_size == oracle_side.reach_size, "reach_size");
    cmp(graph_side.stable_reachable == oracle_side.stable_reachable,
        "stable_reachable");
    cmp(graph_side.limit == oracle_side.limit, "limit");
    cmp(graph_side.delay_insensitive.holds ==
            oracle_side.delay_insensitive.holds,
        "delay_insensitive");
    cmp(graph_side.hazard_free.holds == oracle_side.hazard_free.holds,
        "hazard_free");
    cmp(graph_side.trivially_hazard_free.verdict.holds ==
            oracle_side.trivially_hazard_free.verdict.holds,
        "trivially_hazard_free");
    cmp(graph_side.trivially_hazard_free.target ==
            oracle_side.trivially_hazard_free.target,
        "thf_target");
    cmp(graph_side.semi_modular.holds == oracle_side.semi_modular.holds,
        "semi_modular");
    cmp(graph_side.weakly_semi_modular.holds ==
            oracle_side.weakly_semi_modular.holds,
        "weakly_semi_modular");
    cmp(graph_side.tcgr.verdict.holds == oracle_side.tcgr.verdict.holds,
        "tcgr");
    bool branch_equal =
        graph_side.tcgr.branch.has_value() ==
        oracle_side.tcgr.branch.has_value();
    if (branch_equal && graph_side.tcgr.branch)
        branch_equal = graph_side.tcgr.branch->branch ==
                           oracle_side.tcgr.branch->branch &&
                       graph_side.tcgr.branch->p == oracle_side.tcgr.branch->p;
    cmp(branch_equal, "tcgr_branch");
    cmp(graph_side.single_bit_change == oracle_side.single_bit_change,
        "single_bit_change");
    cmp(causes_text(graph_side.delay_sensitivity_causes) ==
            causes_text(oracle_side.delay_sensitivity_causes),
        "delay_sensitivity_causes");
    cmp(causes_text(graph_side.hazard_causes) ==
            causes_text(oracle_side.hazard_causes),
        "hazard_causes");
    cmp(graph_side.hazardous_transition == oracle_side.hazardous_transition,
        "hazardous_transition");
    cmp(graph_side.orbit.transient_len == oracle_side.orbit.transient_len &&
            graph_side.orbit.period == oracle_side.orbit.period &&
            graph_side.orbit.milestones == oracle_side.orbit.milestones,
        "orbit");
    cmp(states_text(graph_side.stable_reachable) ==
            states_text(oracle_side.stable_reachable),
        "stable_reachable_order");
    return diff;
}

} // namespace bvf
