#include "bvf/selftest.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>

#include "bvf/error.hpp"
#include "bvf/io.hpp"
#include "bvf/nonautonomous.hpp"
#include "bvf/oracle.hpp"
#include "bvf/properties.hpp"
#include "bvf/relations.hpp"

namespace bvf {

namespace {

class Recorder {
public:
    explicit Recorder(std::vector<Violation>& out) : out_(out) {}

    void set_case(const VectorField& g, State w) {
        model_ = serialize_model(ParamVectorField(g));
        state_ = w.str();
    }
    void set_case(const ParamVectorField& f, TotalState z, InputVector target) {
        model_ = serialize_model(f);
        state_ = z.joined().str() + " target " + target.str();
    }

    void add(const std::string& law, const std::string& details) {
        out_.push_back(Violation{law, model_, state_, details});
    }
    void require(bool ok, const std::string& law,
                 const std::string& details = "") {
        if (!ok)
            add(law, details);
    }

private:
    std::vector<Violation>& out_;
    std::string model_;
    std::string state_;
};

bool in_reach(const std::vector<State>& reach_set, State u) {
    return std::binary_search(reach_set.begin(), reach_set.end(), u);
}

// At least two value switches of coordinate i along the walk.
bool walk_returns(const std::vector<State>& walk, int i) {
    int switches = 0;
    for (std::size_t k = 0; k + 1 < walk.size(); ++k)
        if (walk[k].bit(i) != walk[k + 1].bit(i))
            ++switches;
    return switches >= 2;
}

void check_witnesses(const VectorField& g, State w, const PropertyReport& r,
                     Recorder& rec) {
    std::vector<State> reach_set = reach(g, w);

    if (const auto* osc = r.delay_insensitive.witness
                              ? std::get_if<OscillationWitness>(
                                    &*r.delay_insensitive.witness)
                              : nullptr) {
        bool ok = osc->scc.size() >= 2;
        for (State u : osc->scc)
            ok = ok && in_reach(reach_set, u);
        for (int i = 1; ok && i <= g.width(); ++i)
            for (int a = 0; a <= 1; ++a) {
                bool met = false;
                for (State u : osc->scc)
                    if (u.bit(i) != a || g.coordinate(u, i) == u.bit(i))
                        met = true;
                ok = ok && met;
            }
        rec.require(ok, "witness_oscillation", "invalid fair component");
    }
    auto check_limits = [&](const Verdict& v) {
        if (!v.witness)
            return;
        if (const auto* two = std::get_if<MultipleLimitsWitness>(&*v.witness))
            rec.require(two->first < two->second &&
                            in_reach(reach_set, two->first) &&
                            in_reach(reach_set, two->second) &&
                            is_stable(g, two->first) &&
                            is_stable(g, two->second),
                        "witness_multiple_limits",
                        two->first.str() + "," + two->second.str());
    };
    check_limits(r.delay_insensitive);
    check_limits(r.hazard_free);
    if (r.hazard_free.witness) {
        if (const auto* tri =
                std::get_if<NonMonotonousWitness>(&*r.hazard_free.witness)) {
            bool ok = !tri->walk.empty() && tri->walk.front() == w;
            for (std::size_t k = 0; ok && k + 1 < tri->walk.size(); ++k)
                ok = is_mu_step(g, tri->walk[k], tri->walk[k + 1]);
            ok = ok && walk_returns(tri->walk, tri->coordinate);
            rec.require(ok, "witness_non_monotonous", "invalid return walk");
        }
    }
    if (r.trivially_hazard_free.verdict.witness) {
        if (const auto* pair = std::get_if<NonConstantWitness>(
                &*r.trivially_hazard_free.verdict.witness))
            rec.require(in_reach(reach_set, pair->left) &&
                            in_reach(reach_set, pair->right) &&
                            g.apply(pair->left) != g.apply(pair->right),
                        "witness_thf", "images do not differ");
    }
    if (r.semi_modular.witness) {
        if (const auto* sm =
                std::get_if<SemiModularityWitness>(&*r.semi_modular.witness)) {
            int i = sm->coordinate;
            rec.require(in_reach(reach_set, sm->state) &&
                            is_mu_step(g, sm->state, sm->successor) &&
                            g.coordinate(sm->state, i) != sm->state.bit(i) &&
                            sm->successor.bit(i) == sm->state.bit(i) &&
                            g.coordinate(sm->successor, i) ==
                                sm->successor.bit(i),
                        "witness_semi_modular", "excitation not lost");
        }
    }
    if (r.weakly_semi_modular.witness) {
        if (const auto* wsm =
                std::get_if<WsmWitness>(&*r.weakly_semi_modular.witness)) {
            int i = wsm->coordinate;
            bool ok = in_reach(reach_set, wsm->state) &&
                      g.coordinate(wsm->state, i) != wsm->state.bit(i);
            if (ok) {
                ReachGraph frozen =
                    frozen_reach(g, wsm->state, i, wsm->state.bit(i));
                if (wsm->frozen_stable)
                    ok = frozen.index_of(*wsm->frozen_stable) >= 0 &&
                         is_stable(g, *wsm->frozen_stable);
                else {
                    ok = wsm->frozen_scc.size() >= 2;
                    for (State u : wsm->frozen_scc)
                        ok = ok && frozen.index_of(u) >= 0;
                }
            }
            rec.require(ok, "witness_weakly_semi_modular", "invalid escape");
        }
    }
    if (r.tcgr.verdict.witness) {
        if (const auto* tc = std::get_if<TcgrWitness>(&*r.tcgr.verdict.witness))
            rec.require(in_reach(reach_set, tc->state) &&
                            is_mu_step(g, tc->state, tc->successor) &&
                            tc->successor != g.apply(tc->state) &&
                            g.apply(tc->successor) != g.apply(tc->state),
                        "witness_tcgr", "pair does not deviate");
    }
    if (r.hazardous_transition)
        rec.require(r.hazardous_transition->first == w && r.limit &&
                        r.hazardous_transition->second == *r.limit,
                    "witness_hazardous_transition", "not the (state, limit)");
}

void check_relation_invariants(const VectorField& g, State w, Recorder& rec,
                               bool full_duality) {
    std::vector<State> succ = mu_successors(g, w);
    std::size_t expected = std::size_t(1)
                           << std::popcount(excitation_mask(g, w));
    rec.require(succ.size() == expected, "mu_successor_count",
                std::to_string(succ.size()) + " of " +
                    std::to_string(expected));
    rec.require(std::find(succ.begin(), succ.end(), w) != succ.end(),
                "mu_reflexive");
    rec.require(std::find(succ.begin(), succ.end(), g.apply(w)) != succ.end(),
                "mu_contains_image");
    for (State s : succ)
        rec.require(is_mu_step(g, w, s), "mu_step_membership", s.str());
    rec.require(std::is_sorted(succ.begin(), succ.end()), "mu_order");

    std::vector<State> reach_set = reach(g, w);
    if (is_stable(g, w))
        rec.require(reach_set.size() == 1 && reach_set.front() == w,
                    "stability_absorbs");
    if (full_duality) {
        for (std::uint32_t bits = 0; bits < g.table_size(); ++bits) {
            State u(bits, g.width());
            std::vector<State> co = coreach(g, u);
            rec.require(in_reach(reach_set, u) == in_reach(co, w),
                        "reach_coreach_duality", u.str());
        }
    }
}

void check_report_laws(const VectorField& g, State w, const PropertyReport& r,
                       Recorder& rec) {
    auto imply = [&](bool from, bool to, const char* law) {
        rec.require(!from || to, law);
    };
    imply(r.hazard_free.holds, r.delay_insensitive.holds, "hf_implies_di");
    imply(r.trivially_hazard_free.verdict.holds, r.hazard_free.holds,
          "thf_implies_hf");
    imply(r.trivially_hazard_free.verdict.holds, r.semi_modular.holds,
          "thf_implies_sm");
    imply(r.semi_modular.holds, r.weakly_semi_modular.holds, "sm_implies_wsm");
    imply(r.hazard_free.holds, r.weakly_semi_modular.holds, "hf_implies_wsm");
    imply(r.tcgr.verdict.holds, r.semi_modular.holds, "tcgr_implies_sm");
    imply(r.single_bit_change, r.tcgr.verdict.holds, "sbc_implies_tcgr");

    if (r.tcgr.verdict.holds && r.orbit.stabilizes())
        rec.require(r.delay_insensitive.holds && r.limit &&
                        *r.limit == r.orbit.at(r.orbit.transient_len),
                    "tcgr_stabilizing_limit");
    bool fast = r.tcgr.verdict.holds && iterate(g, w, 1) == iterate(g, w, 2);
    rec.require(fast == r.trivially_hazard_free.verdict.holds,
                "tcgr_fast_iff_thf");
    rec.require(r.limit.has_value() == r.delay_insensitive.holds,
                "limit_presence");
    if (r.limit)
        rec.require(r.stable_reachable.size() == 1 &&
                        r.stable_reachable.front() == *r.limit,
                    "limit_unique_stable");
    rec.require(r.delay_insensitive.holds ==
                    r.delay_sensitivity_causes.empty(),
                "delay_sensitivity_causes");
    rec.require(r.hazard_free.holds == r.hazard_causes.empty(),
                "hazard_causes");
    rec.require(r.tcgr.branch.has_value() == r.tcgr.verdict.holds,
                "tcgr_branch_presence");
    if (r.tcgr.branch)
        rec.require(r.tcgr.branch->p.has_value() ==
                        (r.tcgr.branch->branch == 2),
                    "tcgr_branch_p");

    ReachGraph graph = reach_graph(g, w);
    bool convergent = all_paths_convergent(g, graph).holds;
    bool monotonous = all_paths_monotonous(g, graph).holds;
    imply(monotonous, convergent, "monotone_implies_convergent");
}

void check_case(const VectorField& g, State w, Recorder& rec,
                bool full_duality, bool with_oracle) {
    rec.set_case(g, w);
    PropertyReport r;
    try {
        r = classify(g, w);
    } catch (const Defect& e) {
        rec.add("classify_defect", e.what());
        return;
    }

    rec.require(di_variants(g, w).agree(), "di_variant_agreement");
    rec.require(hf_variants(g, w).agree(), "hf_variant_agreement");
    rec.require(sm_variants(g, w).agree(), "sm_variant_agreement");
    rec.require(tcgr_variants(g, w).agree(), "tcgr_variant_agreement");

    check_report_laws(g, w, r, rec);
    check_witnesses(g, w, r, rec);
    check_relation_invariants(g, w, rec, full_duality);

    if (with_oracle) {
        try {
            PropertyReport reference = oracle_classify(g, w);
            std::vector<std::string> diff = report_differences(r, reference);
            if (!diff.empty()) {
                std::string joined;
                for (const std::string& name : diff)
                    joined += (joined.empty() ? "" : ",") + name;
                rec.add("oracle_agreement", joined);
            }
        } catch (const Defect& e) {
            rec.add("oracle_defect", e.what());
        }
    }
}

VectorField field_from_code(int n, std::uint64_t code) {
    std::uint32_t rows = std::uint32_t(1) << n;
    std::uint32_t mask = rows - 1;
    std::vector<std::uint32_t> table(rows);
    for (std::uint32_t row = 0; row < rows; ++row)
        table[row] = std::uint32_t(code >> (n * row)) & mask;
    return VectorField(n, std::move(table));
}

VectorField random_field(int n, std::mt19937_64& rng) {
    std::uint32_t rows = std::uint32_t(1) << n;
    std::uint32_t mask = rows - 1;
    std::vector<std::uint32_t> table(rows);
    for (std::uint32_t row = 0; row < rows; ++row)
        table[row] = std::uint32_t(rng()) & mask;
    return VectorField(n, std::move(table));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

} // namespace

SuiteResult exhaustive_lattice(int n) {
    if (n < 1 || n > 2)
        throw Error("exhaustive_lattice covers n in {1,2}");
    auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    Recorder rec(result.violations);
    std::uint64_t field_count = std::uint64_t(1) << (n << n);
    std::uint32_t states = std::uint32_t(1) << n;
    for (std::uint64_t code = 0; code < field_count; ++code) {
        VectorField g = field_from_code(n, code);
        for (std::uint32_t bits = 0; bits < states; ++bits) {
            check_case(g, State(bits, n), rec, true, true);
            ++result.cases_run;
        }
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
}

SuiteResult randomized_suite(int n, std::size_t samples, std::uint64_t seed,
                             std::size_t oracle_samples) {
    if (n < 1 || n > 12)
        throw Error("randomized_suite covers n in [1,12]");
    if (oracle_samples > 0 && n > 4)
        throw Error("oracle agreement requires n <= 4");
    auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    result.seed = seed;
    Recorder rec(result.violations);
    std::mt19937_64 rng(seed);
    std::uint32_t state_mask = (std::uint32_t(1) << n) - 1;
    for (std::size_t t = 0; t < samples + oracle_samples; ++t) {
        VectorField g = random_field(n, rng);
        State w(std::uint32_t(rng()) & state_mask, n);
        bool with_oracle = t >= samples;
        check_case(g, w, rec, n <= 2, with_oracle);
        ++result.cases_run;
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
}

SuiteResult fundamental_suite(int n, int m, std::size_t field_samples,
                              std::uint64_t seed) {
    if (n < 1 || m < 0 || n + m > 12)
        throw Error("fundamental_suite covers n >= 1, m >= 0, n+m <= 12");
    auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    result.seed = seed;
    Recorder rec(result.violations);
    std::mt19937_64 rng(seed);
    std::uint32_t rows = std::uint32_t(1) << (n + m);
    std::uint32_t value_mask = (std::uint32_t(1) << n) - 1;
    std::uint32_t inputs = std::uint32_t(1) << m;
    for (std::size_t t = 0; t < field_samples; ++t) {
        std::vector<std::uint32_t> table(rows);
        for (std::uint32_t row = 0; row < rows; ++row)
            table[row] = std::uint32_t(rng()) & value_mask;
        ParamVectorField f(n, m, std::move(table));
        for (std::uint32_t zbits = 0; zbits < rows; ++zbits) {
            TotalState z = TotalState::split(State(zbits, n + m), n, m);
            for (std::uint32_t vbits = 0; vbits < inputs; ++vbits) {
                InputVector target = m ? State(vbits, m) : State();
                rec.set_case(f, z, target);
                ++result.cases_run;

                ClosedField closed = close_field(f, target);
                std::uint32_t in_mask = inputs - 1;
                rec.require((closed.view.apply_bits(zbits) & in_mask) ==
                                target.bits(),
                            "closed_input_constant");
                rec.require(autonomous_consistency(f, z).holds,
                            "autonomous_consistency");

                ModeQualifiedReport q;
                try {
                    q = classify_param(f, z, target);
                } catch (const Defect& e) {
                    rec.add("classify_defect", e.what());
                    continue;
                }
                bool ss = state_stable(f, z);
                rec.require(q.state_stable == ss, "state_stable_flag");
                const FundamentalModeFlags& fm = q.fundamental_mode;
                rec.require(
                    fm.delay_insensitive ==
                            (q.report.delay_insensitive.holds && ss) &&
                        fm.hazard_free == (q.report.hazard_free.holds && ss) &&
                        fm.trivially_hazard_free ==
                            (q.report.trivially_hazard_free.verdict.holds &&
                             ss) &&
                        fm.semi_modular == (q.report.semi_modular.holds && ss) &&
                        fm.weakly_semi_modular ==
                            (q.report.weakly_semi_modular.holds && ss) &&
                        fm.tcgr == (q.report.tcgr.verdict.holds && ss),
                    "fm_flag_construction");

                if (auto firsts = fundamental_first_moves(f, z, target)) {
                    rec.require(firsts->holds, "fundamental_first_moves");
                    rec.require(ss, "fundamental_first_moves_applicability");
                } else {
                    rec.require(!ss, "fundamental_first_moves_applicability");
                }
                if (auto consequences = trivhf_fm_checks(f, z, target))
                    rec.require(consequences->holds, "trivhf_fm_consequences");

                check_report_laws(closed.view, z.joined(), q.report, rec);
            }
        }
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
}

std::vector<SeparationWitness> separation_search(int max_n,
                                                 std::uint64_t seed,
                                                 std::size_t samples) {
    std::vector<SeparationWitness> out = {
        {"di_not_hf", false, "", ""},    {"hf_not_sm", false, "", ""},
        {"wsm_not_sm", false, "", ""},   {"tcgr_not_di", false, "", ""},
        {"tcgr_not_sbc", false, "", ""},
    };
    auto all_found = [&] {
        return std::all_of(out.begin(), out.end(),
                           [](const SeparationWitness& s) { return s.found; });
    };
    auto try_case = [&](const VectorField& g, State w) {
        PropertyReport r = classify(g, w);
        bool flags[5] = {
            r.delay_insensitive.holds && !r.hazard_free.holds,
            r.hazard_free.holds && !r.semi_modular.holds,
            r.weakly_semi_modular.holds && !r.semi_modular.holds,
            r.tcgr.verdict.holds && !r.delay_insensitive.holds,
            r.tcgr.verdict.holds && !r.single_bit_change,
        };
        for (std::size_t t = 0; t < out.size(); ++t)
            if (flags[t] && !out[t].found) {
                out[t].found = true;
                out[t].model = serialize_model(ParamVectorField(g));
                out[t].state = w.str();
            }
    };

    for (int n = 1; n <= std::min(max_n, 2) && !all_found(); ++n) {
        std::uint64_t field_count = std::uint64_t(1) << (n << n);
        std::uint32_t states = std::uint32_t(1) << n;
        // Descending table code with the first row in the most significant
        // position, so constant-all-ones fields come first.
        for (std::uint64_t direct = 0; direct < field_count && !all_found();
             ++direct) {
            std::uint64_t code = 0;
            std::uint64_t reversed = field_count - 1 - direct;
            std::uint32_t rows = std::uint32_t(1) << n;
            std::uint32_t mask = rows - 1;
            for (std::uint32_t row = 0; row < rows; ++row) {
                std::uint32_t digit =
                    std::uint32_t(reversed >> (n * (rows - 1 - row))) & mask;
                code |= std::uint64_t(digit) << (n * row);
            }
            VectorField g = field_from_code(n, code);
            for (std::uint32_t bits = 0; bits < states && !all_found(); ++bits)
                try_case(g, State(bits, n));
        }
    }
    if (max_n >= 3 && !all_found()) {
        std::mt19937_64 rng(seed);
        std::uint32_t state_mask = (std::uint32_t(1) << 3) - 1;
        for (std::size_t t = 0; t < samples && !all_found(); ++t) {
            VectorField g = random_field(3, rng);
            State w(std::uint32_t(rng()) & state_mask, 3);
            try_case(g, w);
        }
    }
    return out;
}

} // namespace bvf
