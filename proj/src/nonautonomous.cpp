#include "bvf/nonautonomous.hpp"

#include <algorithm>

#include "bvf/error.hpp"
#include "bvf/relations.hpp"

namespace bvf {

namespace {

void check_widths(const ParamVectorField& f, TotalState z) {
    if (z.w.width() != f.state_width() || z.v.width() != f.input_width())
        throw Error("total state (" + std::to_string(z.w.width()) + "," +
                    std::to_string(z.v.width()) + ") does not match field (" +
                    std::to_string(f.state_width()) + "," +
                    std::to_string(f.input_width()) + ")");
}

std::uint32_t input_mask(const ParamVectorField& f) {
    return f.input_width() ? (std::uint32_t(1) << f.input_width()) - 1 : 0;
}

} // namespace

ClosedField close_field(const ParamVectorField& f, InputVector target) {
    if (target.width() != f.input_width())
        throw Error("target input width " + std::to_string(target.width()) +
                    " does not match m = " + std::to_string(f.input_width()));
    int width = f.total_width();
    std::vector<std::uint32_t> table(std::size_t(1) << width);
    for (std::uint32_t z = 0; z < table.size(); ++z)
        table[z] = f.apply_bits(z) << f.input_width() | target.bits();
    return ClosedField{f, target, VectorField(width, std::move(table))};
}

bool state_stable(const ParamVectorField& f, TotalState z) {
    check_widths(f, z);
    return f.apply(z) == z.w;
}

ModeQualifiedReport classify_param(const ParamVectorField& f, TotalState z,
                                   InputVector target) {
    check_widths(f, z);
    ClosedField closed = close_field(f, target);
    ClassifyOptions options;
    options.wsm_coordinate_limit = f.state_width();
    ModeQualifiedReport out;
    out.state_width = f.state_width();
    out.input_width = f.input_width();
    out.target = target;
    out.state_stable = state_stable(f, z);
    out.report = classify(closed.view, z.joined(), options);
    out.fundamental_mode = FundamentalModeFlags{
        out.report.delay_insensitive.holds && out.state_stable,
        out.report.hazard_free.holds && out.state_stable,
        out.report.trivially_hazard_free.verdict.holds && out.state_stable,
        out.report.semi_modular.holds && out.state_stable,
        out.report.weakly_semi_modular.holds && out.state_stable,
        out.report.tcgr.verdict.holds && out.state_stable,
    };
    return out;
}

std::optional<Verdict> fundamental_first_moves(const ParamVectorField& f,
                                               TotalState z,
                                               InputVector target) {
    check_widths(f, z);
    if (!state_stable(f, z))
        return std::nullopt;
    ClosedField closed = close_field(f, target);
    State joined = z.joined();
    std::uint32_t state_part = ~input_mask(f);
    for (State next : mu_successors(closed.view, joined)) {
        if (next == joined)
            continue;
        if ((next.bits() ^ joined.bits()) & state_part) {
            Verdict v;
            v.holds = false;
            v.witness = TcgrWitness{joined, next};
            return v;
        }
    }
    return Verdict::pass();
}

Verdict autonomous_consistency(const ParamVectorField& f, TotalState z) {
    check_widths(f, z);
    ClosedField closed = close_field(f, z.v);
    std::vector<State> total_side = reach(closed.view, z.joined());
    std::vector<State> lifted;
    for (State w : reach(f.restriction(z.v), z.w))
        lifted.push_back(TotalState{w, z.v}.joined());
    std::sort(lifted.begin(), lifted.end());
    if (total_side == lifted)
        return Verdict::pass();
    Verdict v;
    v.holds = false;
    return v;
}

std::optional<Verdict> trivhf_fm_checks(const ParamVectorField& f,
                                        TotalState z, InputVector target) {
    ModeQualifiedReport qualified = classify_param(f, z, target);
    if (!qualified.fundamental_mode.trivially_hazard_free)
        return std::nullopt;
    State limit = *qualified.report.trivially_hazard_free.target;
    if (TotalState::split(limit, f.state_width(), f.input_width()).w != z.w) {
        Verdict v;
        v.holds = false;
        return v;
    }
    ClosedField closed = close_field(f, target);
    ReachGraph graph = reach_graph(closed.view, z.joined());
    std::uint32_t inputs = input_mask(f);
    for (std::size_t ui = 0; ui < graph.nodes.size(); ++ui) {
        State u = graph.nodes[ui];
        for (int vi : graph.succ[ui]) {
            State u2 = graph.nodes[std::size_t(vi)];
            if (((u.bits() ^ u2.bits()) & inputs) == 0) {
                Verdict v;
                v.holds = false;
                v.witness = TcgrWitness{u, u2};
                return v;
            }
        }
    }
    return Verdict::pass();
}

} // namespace bvf
