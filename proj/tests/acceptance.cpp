#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bvf/cli.hpp"
#include "bvf/io.hpp"
#include "bvf/nonautonomous.hpp"
#include "bvf/oracle.hpp"
#include "bvf/properties.hpp"
#include "bvf/relations.hpp"
#include "bvf/selftest.hpp"

using namespace bvf;

namespace {

using Require = std::function<void(bool, const std::string&)>;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

State st(const char* text) { return State::from_string(text); }

VectorField load(const std::string& dir, const std::string& name) {
    return parse_model(slurp(dir + "/" + name)).autonomous();
}

template <class T>
const T* witness_as(const Verdict& verdict) {
    return verdict.witness ? std::get_if<T>(&*verdict.witness) : nullptr;
}

void criterion_exhaustive(Require require) {
    SuiteResult n1 = exhaustive_lattice(1);
    SuiteResult n2 = exhaustive_lattice(2);
    require(n1.cases_run == 8, "n=1 must cover 8 cases");
    require(n2.cases_run == 1024, "n=2 must cover 1024 cases");
    require(n1.violations.empty(), "violations at n=1");
    require(n2.violations.empty(), "violations at n=2");
    for (const Violation& v : n1.violations)
        std::cerr << "        " << v.law << " " << v.model << " @ " << v.state
                  << ": " << v.details << "\n";
    for (const Violation& v : n2.violations)
        std::cerr << "        " << v.law << " " << v.model << " @ " << v.state
                  << ": " << v.details << "\n";
}

void criterion_randomized(Require require) {
    SuiteResult suite = randomized_suite(3, 10000, 42);
    require(suite.cases_run == 10000, "must run 10000 cases");
    require(suite.violations.empty(),
            suite.violations.empty()
                ? ""
                : "violation: " + suite.violations.front().law + " on " +
                      suite.violations.front().model + " @ " +
                      suite.violations.front().state);
}

void criterion_oracle(Require require) {
    for (int n = 1; n <= 2; ++n) {
        std::uint64_t field_count = std::uint64_t(1) << (n << n);
        std::uint32_t rows = std::uint32_t(1) << n;
        std::uint32_t mask = rows - 1;
        for (std::uint64_t code = 0; code < field_count; ++code) {
            std::vector<std::uint32_t> table(rows);
            for (std::uint32_t row = 0; row < rows; ++row)
                table[row] = std::uint32_t(code >> (n * row)) & mask;
            VectorField g(n, std::move(table));
            for (std::uint32_t bits = 0; bits < rows; ++bits) {
                State w(bits, n);
                std::vector<std::string> diff = report_differences(
                    classify(g, w), oracle_classify(g, w));
                require(diff.empty(), "disagreement (" +
                                          serialize_model(ParamVectorField(g)) +
                                          " @ " + w.str() + "): " +
                                          (diff.empty() ? "" : diff.front()));
                if (!diff.empty())
                    return;
            }
        }
    }
    SuiteResult seeded = randomized_suite(3, 0, 7, 500);
    require(seeded.cases_run == 500, "must run 500 seeded n=3 cases");
    require(seeded.violations.empty(), "seeded n=3 oracle disagreement");
}

void criterion_fixtures(const std::string& dir, Require require) {
    VectorField inv = load(dir, "not.json");
    PropertyReport r = classify(inv, st("0"));
    VariantPair both = tcgr_variants(inv, st("0"));
    require(both.first && both.second, "NOT@0: tcgr must hold both ways");
    require(r.tcgr.verdict.holds && r.tcgr.branch && r.tcgr.branch->branch == 3,
            "NOT@0: tcgr branch b3");
    require(r.semi_modular.holds && r.weakly_semi_modular.holds,
            "NOT@0: semi-modularity");
    require(!r.delay_insensitive.holds &&
                r.delay_sensitivity_causes ==
                    std::vector<Cause>{Cause::oscillation},
            "NOT@0: delay-sensitive by oscillation");
    require(r.orbit.transient_len == 0 && r.orbit.period == 2,
            "NOT@0: orbit (J,P) = (0,2)");
    require(r.single_bit_change, "NOT@0: single bit change");

    VectorField ones = load(dir, "const11.json");
    r = classify(ones, st("00"));
    require(r.trivially_hazard_free.verdict.holds &&
                r.trivially_hazard_free.target == st("11"),
            "CONST11@00: trivially hazard-free toward 11");
    require(r.delay_insensitive.holds && r.hazard_free.holds &&
                r.semi_modular.holds && r.weakly_semi_modular.holds &&
                r.tcgr.verdict.holds,
            "CONST11@00: all properties hold");
    require(r.tcgr.branch && r.tcgr.branch->branch == 2 &&
                r.tcgr.branch->p == 1,
            "CONST11@00: tcgr branch b2 with p=1");
    require(!r.single_bit_change, "CONST11@00: no single bit change");

    VectorField race = load(dir, "race.json");
    r = classify(race, st("00"));
    require(!r.delay_insensitive.holds && !r.hazard_free.holds &&
                !r.trivially_hazard_free.verdict.holds &&
                !r.semi_modular.holds && !r.weakly_semi_modular.holds &&
                !r.tcgr.verdict.holds && !r.single_bit_change,
            "RACE@00: all seven properties fail");
    const auto* limits =
        witness_as<MultipleLimitsWitness>(r.delay_insensitive);
    require(limits && limits->first == st("01") && limits->second == st("10"),
            "RACE@00: limits witness (01, 10)");
    const auto* images =
        witness_as<NonConstantWitness>(r.trivially_hazard_free.verdict);
    require(images && images->left == st("00") && images->right == st("01"),
            "RACE@00: distinct-image witness (00, 01)");
    const auto* sm = witness_as<SemiModularityWitness>(r.semi_modular);
    require(sm && sm->state == st("00") && sm->successor == st("10") &&
                sm->coordinate == 2,
            "RACE@00: semi-modularity witness (00, 10, 2)");
    const auto* wsm = witness_as<WsmWitness>(r.weakly_semi_modular);
    require(wsm && wsm->state == st("00") && wsm->coordinate == 1 &&
                wsm->frozen_stable == st("01"),
            "RACE@00: weak semi-modularity witness (00, 1, 01)");
    const auto* tc = witness_as<TcgrWitness>(r.tcgr.verdict);
    require(tc && tc->state == st("00") && tc->successor == st("10"),
            "RACE@00: tcgr witness (00, 10)");
}

void criterion_separations(Require require) {
    std::vector<SeparationWitness> found = separation_search();
    require(found.size() == 5, "five separations expected");
    for (const SeparationWitness& sep : found) {
        require(sep.found, "missing separation: " + sep.name);
        if (!sep.found)
            continue;
        VectorField g = parse_model(sep.model).autonomous();
        PropertyReport r = classify(g, State::from_string(sep.state));
        bool replay = sep.name == "di_not_hf"
                          ? r.delay_insensitive.holds && !r.hazard_free.holds
                      : sep.name == "hf_not_sm"
                          ? r.hazard_free.holds && !r.semi_modular.holds
                      : sep.name == "wsm_not_sm"
                          ? r.weakly_semi_modular.holds && !r.semi_modular.holds
                      : sep.name == "tcgr_not_di"
                          ? r.tcgr.verdict.holds && !r.delay_insensitive.holds
                          : r.tcgr.verdict.holds && !r.single_bit_change;
        require(replay, "separation does not replay: " + sep.name);
    }
    require(found[3].state == "0" &&
                parse_model(found[3].model).autonomous() ==
                    VectorField(1, {1, 0}),
            "tcgr_not_di must be the NOT field at 0");
    require(found[4].state == "00" &&
                parse_model(found[4].model).autonomous() ==
                    VectorField(2, {3, 3, 3, 3}),
            "tcgr_not_sbc must be the constant-ones field at 00");
}

void criterion_fundamental(const std::string& dir, Require require) {
    SuiteResult suite = fundamental_suite(2, 1, 63, 2026);
    require(suite.cases_run >= 1000,
            "need at least 1000 fundamental-mode cases");
    require(suite.violations.empty(),
            suite.violations.empty()
                ? ""
                : "violation: " + suite.violations.front().law + " on " +
                      suite.violations.front().model + " @ " +
                      suite.violations.front().state);

    ParamVectorField buf = parse_model(slurp(dir + "/buf.json"));
    ModeQualifiedReport mq =
        classify_param(buf, TotalState{st("0"), st("0")}, st("1"));
    require(mq.state_stable, "BUF (0,0): state-stable");
    require(mq.fundamental_mode.delay_insensitive &&
                mq.fundamental_mode.hazard_free &&
                mq.fundamental_mode.semi_modular &&
                mq.fundamental_mode.weakly_semi_modular &&
                mq.fundamental_mode.tcgr,
            "BUF (0,0) toward 1: DI/HF/SM/WSM/TCGR in fundamental mode");
    require(mq.report.limit == st("11"), "BUF (0,0) toward 1: limit 11");
}

void criterion_milestones(Require require) {
    VectorField inv(1, {1, 0});
    Walk walk{st("0"), st("1"), st("1"), st("0"), st("0"),
              st("0"), st("1"), st("1"), st("1")};
    MilestoneCheck check = milestone_decomposition(inv, walk);
    require(check.ok(), "inverter walk must decompose: " + check.detail);
    if (!check.ok())
        return;
    const std::vector<std::size_t>& k = check.decomposition->indices;
    require(k == std::vector<std::size_t>{0, 1, 3, 6},
            "milestone indices must be 0,1,3,6");
    OrbitSummary orbit = orbit_summary(inv, walk.front());
    require(orbit.transient_len == 0 && orbit.period == 2,
            "inverter orbit must be (0,2)");
    // The decomposition exists, yet the two period-apart segments do not
    // align: w^{k_J+1} differs from w^{k_{J+P}+1}.
    std::size_t k_j = k[std::size_t(orbit.transient_len)];
    std::size_t k_jp =
        k[std::size_t(orbit.transient_len + orbit.period)];
    require(walk[k_j + 1] != walk[k_jp + 1],
            "alignment must fail at m=1");
}

void criterion_io(const std::string& dir, Require require) {
    for (const char* name : {"not.json", "const11.json", "race.json",
                             "buf.json"}) {
        ParamVectorField f = parse_model(slurp(dir + "/" + name));
        std::string text = serialize_model(f);
        require(parse_model(text) == f,
                std::string("round-trip failed for ") + name);
        require(serialize_model(parse_model(text)) == text,
                std::string("serialization unstable for ") + name);
    }

    ParamVectorField by_coords =
        parse_model(R"({"n": 2, "coords": ["w1 | !w2", "w2 | !w1"]})");
    ParamVectorField by_table = parse_model(slurp(dir + "/race.json"));
    require(by_coords == by_table, "coords/table forms must agree");
    require(emit_report(classify(by_coords.autonomous(), st("00"))) ==
                emit_report(classify(by_table.autonomous(), st("00"))),
            "coords/table reports must be identical");

    std::string dot = emit_dot(by_table.autonomous(), st("00"));
    require(dot == emit_dot(by_table.autonomous(), st("00")),
            "DOT must be byte-stable");
    require(dot.rfind("digraph mu {\n", 0) == 0 &&
                dot.substr(dot.size() - 2) == "}\n",
            "DOT must be well-formed");
    require(std::count(dot.begin(), dot.end(), '"') % 2 == 0,
            "DOT quotes must balance");

    auto exit_code = [&](std::vector<std::string> args) {
        std::vector<const char*> argv{"bvf"};
        for (const std::string& arg : args)
            argv.push_back(arg.c_str());
        std::ostringstream out;
        std::ostringstream err;
        return run(int(argv.size()), argv.data(), out, err);
    };
    require(exit_code({"analyze", dir + "/not.json", "--state", "0"}) == 0,
            "analyze must exit 0");
    require(exit_code({"analyze", dir + "/not.json", "--state", "2"}) == 2,
            "bad state must exit 2");
    require(exit_code({"analyze", dir + "/not.json"}) == 2,
            "missing flag must exit 2");
    require(exit_code({"selftest", "--n", "1"}) == 0,
            "selftest must exit 0");
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: bvf-acceptance <models-dir>\n";
        return 2;
    }
    std::string dir = argv[1];

    struct Criterion {
        std::string name;
        double budget_seconds;
        std::function<void(Require)> body;
    };
    std::vector<Criterion> criteria = {
        {"1 exhaustive lattice n<=2", 5.0, criterion_exhaustive},
        {"2 randomized n=3 laws", 60.0, criterion_randomized},
        {"3 oracle agreement", 120.0, criterion_oracle},
        {"4 canonical fixtures", 0.0,
         [&](Require r) { criterion_fixtures(dir, r); }},
        {"5 separation witnesses", 120.0, criterion_separations},
        {"6 fundamental mode", 0.0,
         [&](Require r) { criterion_fundamental(dir, r); }},
        {"7 pseudo-periodicity counterexample", 0.0, criterion_milestones},
        {"8 io and cli conformance", 0.0,
         [&](Require r) { criterion_io(dir, r); }},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        std::vector<std::string> notes;
        auto require = [&](bool ok, const std::string& what) {
            if (!ok)
                notes.push_back(what);
        };
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(require);
        } catch (const std::exception& e) {
            notes.push_back(std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds)
            notes.push_back("over the " +
                            std::to_string(int(criterion.budget_seconds)) +
                            " s budget");
        bool pass = notes.empty();
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << ": " << criterion.name << " ("
                  << std::fixed << std::setprecision(2) << elapsed << "s)\n";
        for (const std::string& note : notes)
            std::cout << "    - " << note << "\n";
    }
    std::cout << criteria.size() << " criteria, " << failed << " failed\n";
    return failed;
}
