#include "bvf/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bvf/error.hpp"
#include "bvf/io.hpp"
#include "bvf/nonautonomous.hpp"
#include "bvf/oracle.hpp"
#include "bvf/properties.hpp"
#include "bvf/selftest.hpp"

namespace bvf {

namespace {

ParamVectorField load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

State parse_state(const std::string& text, int width, const char* what) {
    State s = State::from_string(text);
    if (s.width() != width)
        throw Error(std::string(what) + " \"" + text + "\" must have " +
                    std::to_string(width) + " bits");
    return s;
}

// The target input: required for m >= 1, rejected for m = 0.
std::optional<InputVector> resolve_param(const ParamVectorField& f,
                                         const std::string& text,
                                         bool given) {
    if (f.input_width() == 0) {
        if (given)
            throw Error("--param given but the model has m = 0");
        return std::nullopt;
    }
    if (!given)
        throw Error("the model has m = " + std::to_string(f.input_width()) +
                    "; --param is required");
    return parse_state(text, f.input_width(), "--param");
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string causes_suffix(const std::vector<Cause>& causes) {
    if (causes.empty())
        return "";
    std::string s = " (";
    for (std::size_t t = 0; t < causes.size(); ++t) {
        if (t)
            s += ",";
        s += causes[t] == Cause::oscillation       ? "oscillation"
             : causes[t] == Cause::multiple_limits ? "multiple_limits"
                                                   : "non_monotonous";
    }
    return s + ")";
}

std::string join_states(const std::vector<State>& states) {
    std::string s;
    for (std::size_t t = 0; t < states.size(); ++t) {
        if (t)
            s += " ";
        s += states[t].str();
    }
    return s.empty() ? "-" : s;
}

std::string tcgr_suffix(const TcgrResult& tcgr) {
    if (!tcgr.branch)
        return "";
    std::string s = " (b" + std::to_string(tcgr.branch->branch);
    if (tcgr.branch->p)
        s += " p=" + std::to_string(*tcgr.branch->p);
    return s + ")";
}

void print_text_report(std::ostream& out, const PropertyReport& r) {
    out << "state: " << r.state.str() << "\n";
    out << "stable: " << yes_no(r.stable) << "\n";
    out << "excited:";
    for (int i : r.excited)
        out << " " << i;
    out << (r.excited.empty() ? " -" : "") << "\n";
    out << "reach_size: " << r.reach_size << "\n";
    out << "stable_reachable: " << join_states(r.stable_reachable) << "\n";
    out << "limit: " << (r.limit ? r.limit->str() : "-") << "\n";
    out << "delay_insensitive: " << yes_no(r.delay_insensitive.holds)
        << causes_suffix(r.delay_sensitivity_causes) << "\n";
    out << "hazard_free: " << yes_no(r.hazard_free.holds)
        << causes_suffix(r.hazard_causes) << "\n";
    out << "trivially_hazard_free: "
        << yes_no(r.trivially_hazard_free.verdict.holds);
    if (r.trivially_hazard_free.target)
        out << " (target " << r.trivially_hazard_free.target->str() << ")";
    out << "\n";
    out << "semi_modular: " << yes_no(r.semi_modular.holds) << "\n";
    out << "weakly_semi_modular: " << yes_no(r.weakly_semi_modular.holds)
        << "\n";
    out << "tcgr: " << yes_no(r.tcgr.verdict.holds) << tcgr_suffix(r.tcgr)
        << "\n";
    out << "single_bit_change: " << yes_no(r.single_bit_change) << "\n";
    out << "orbit: J=" << r.orbit.transient_len << " P=" << r.orbit.period
        << " milestones " << join_states(r.orbit.milestones) << "\n";
}

void print_text_report(std::ostream& out, const ModeQualifiedReport& q) {
    print_text_report(out, q.report);
    out << "param: n=" << q.state_width << " m=" << q.input_width
        << " target=" << q.target.str() << "\n";
    out << "state_stable: " << yes_no(q.state_stable) << "\n";
    const FundamentalModeFlags& fm = q.fundamental_mode;
    out << "fundamental_mode: di=" << yes_no(fm.delay_insensitive)
        << " hf=" << yes_no(fm.hazard_free)
        << " thf=" << yes_no(fm.trivially_hazard_free)
        << " sm=" << yes_no(fm.semi_modular)
        << " wsm=" << yes_no(fm.weakly_semi_modular)
        << " tcgr=" << yes_no(fm.tcgr) << "\n";
}

void print_text_line(std::ostream& out, const PropertyReport& r) {
    out << r.state.str() << " di=" << yes_no(r.delay_insensitive.holds)
        << " hf=" << yes_no(r.hazard_free.holds)
        << " thf=" << yes_no(r.trivially_hazard_free.verdict.holds)
        << " sm=" << yes_no(r.semi_modular.holds)
        << " wsm=" << yes_no(r.weakly_semi_modular.holds)
        << " tcgr=" << yes_no(r.tcgr.verdict.holds)
        << " sbc=" << yes_no(r.single_bit_change)
        << " limit=" << (r.limit ? r.limit->str() : "-") << "\n";
}

ordered_json suite_json(const std::string& name, const SuiteResult& suite) {
    ordered_json j;
    j["name"] = name;
    j["cases_run"] = suite.cases_run;
    j["seed"] = suite.seed;
    ordered_json violations = ordered_json::array();
    for (const Violation& v : suite.violations) {
        ordered_json entry;
        entry["law"] = v.law;
        entry["model"] = ordered_json::parse(v.model);
        entry["state"] = v.state;
        entry["details"] = v.details;
        violations.push_back(std::move(entry));
    }
    j["violations"] = std::move(violations);
    return j;
}

struct Options {
    std::string model_path;
    std::string state_text;
    bool state_given = false;
    std::string param_text;
    bool param_given = false;
    std::string format = "json";
    std::string out_path;
    int exhaustive_n = 0;
    bool exhaustive_given = false;
    int rand_n = 3;
    bool rand_given = false;
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
};

int run_analyze(const Options& opt, std::ostream& out) {
    ParamVectorField f = load_model(opt.model_path);
    auto target = resolve_param(f, opt.param_text, opt.param_given);
    if (target) {
        TotalState z = TotalState::split(
            parse_state(opt.state_text, f.total_width(), "--state"),
            f.state_width(), f.input_width());
        ModeQualifiedReport q = classify_param(f, z, *target);
        if (opt.format == "json")
            out << emit_report(q);
        else
            print_text_report(out, q);
    } else {
        VectorField g = f.autonomous();
        State w = parse_state(opt.state_text, g.width(), "--state");
        PropertyReport r = classify(g, w);
        if (opt.format == "json")
            out << emit_report(r);
        else
            print_text_report(out, r);
    }
    return 0;
}

int run_classify_all(const Options& opt, std::ostream& out) {
    ParamVectorField f = load_model(opt.model_path);
    auto target = resolve_param(f, opt.param_text, opt.param_given);
    std::uint32_t count = std::uint32_t(1) << f.total_width();
    ordered_json reports = ordered_json::array();
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        State z(bits, f.total_width());
        if (target) {
            ModeQualifiedReport q = classify_param(
                f, TotalState::split(z, f.state_width(), f.input_width()),
                *target);
            if (opt.format == "json")
                reports.push_back(report_json(q));
            else
                print_text_line(out, q.report);
        } else {
            PropertyReport r = classify(f.autonomous(), z);
            if (opt.format == "json")
                reports.push_back(report_json(r));
            else
                print_text_line(out, r);
        }
    }
    if (opt.format == "json") {
        ordered_json doc;
        doc["reports"] = std::move(reports);
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int run_graph(const Options& opt) {
    ParamVectorField f = load_model(opt.model_path);
    auto target = resolve_param(f, opt.param_text, opt.param_given);
    VectorField view = target ? close_field(f, *target).view : f.autonomous();
    std::optional<State> root;
    if (opt.state_given)
        root = parse_state(opt.state_text, view.width(), "--state");
    std::string dot = emit_dot(view, root, f.input_width());
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file)
        throw Error("cannot open output file: " + opt.out_path);
    file << dot;
    if (!file)
        throw Error("cannot write output file: " + opt.out_path);
    return 0;
}

int run_orbit(const Options& opt, std::ostream& out) {
    ParamVectorField f = load_model(opt.model_path);
    auto target = resolve_param(f, opt.param_text, opt.param_given);
    VectorField view = target ? close_field(f, *target).view : f.autonomous();
    State z = parse_state(opt.state_text, view.width(), "--state");
    OrbitSummary orbit = orbit_summary(view, z);
    ordered_json j;
    j["state"] = z.str();
    j["transient_len"] = orbit.transient_len;
    j["period"] = orbit.period;
    j["stabilizes"] = orbit.stabilizes();
    ordered_json milestones = ordered_json::array();
    for (State s : orbit.milestones)
        milestones.push_back(s.str());
    j["milestones"] = std::move(milestones);
    out << j.dump(2) << "\n";
    return 0;
}

int run_oracle_check(const Options& opt, std::ostream& out,
                     std::ostream& err) {
    ParamVectorField f = load_model(opt.model_path);
    if (f.input_width() != 0)
        throw Error("oracle-check requires an autonomous model (m = 0)");
    if (f.state_width() > 4)
        throw Error("oracle-check requires n <= 4");
    VectorField g = f.autonomous();
    State w = parse_state(opt.state_text, g.width(), "--state");
    PropertyReport graph_side = classify(g, w);
    PropertyReport oracle_side = oracle_classify(g, w);
    std::vector<std::string> differences =
        report_differences(graph_side, oracle_side);
    ordered_json j;
    j["state"] = w.str();
    j["agreement"] = differences.empty();
    j["differences"] = differences;
    out << j.dump(2) << "\n";
    if (!differences.empty()) {
        err << "oracle disagreement at " << w.str() << "\n";
        return 1;
    }
    return 0;
}

int run_selftest(const Options& opt, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<std::string, SuiteResult>> suites;
    if (opt.exhaustive_given)
        suites.emplace_back("exhaustive_n" + std::to_string(opt.exhaustive_n),
                            exhaustive_lattice(opt.exhaustive_n));
    if (opt.rand_given)
        suites.emplace_back("randomized_n" + std::to_string(opt.rand_n),
                            randomized_suite(opt.rand_n, opt.samples,
                                             opt.seed));
    if (!opt.exhaustive_given && !opt.rand_given) {
        suites.emplace_back("exhaustive_n1", exhaustive_lattice(1));
        suites.emplace_back("exhaustive_n2", exhaustive_lattice(2));
    }
    bool pass = true;
    ordered_json doc;
    ordered_json list = ordered_json::array();
    for (const auto& [name, suite] : suites) {
        pass = pass && suite.pass();
        list.push_back(suite_json(name, suite));
        err << name << ": " << suite.cases_run << " cases, "
            << suite.violations.size() << " violations (" << std::fixed
            << std::setprecision(2) << suite.elapsed_seconds << " s)\n";
    }
    doc["suites"] = std::move(list);
    doc["pass"] = pass;
    out << doc.dump(2) << "\n";
    return pass ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    Options opt;
    CLI::App app{"exact analyzer of asynchronous boolean automata under the "
                 "unbounded gate delay model"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("model", opt.model_path, "model document path")
            ->required();
    };
    auto add_param = [&](CLI::App* sub) {
        sub->add_option("--param", opt.param_text,
                        "target input bits (required when m >= 1)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "full property report for one state");
    add_model(analyze);
    analyze->add_option("--state", opt.state_text, "start state bits")
        ->required();
    add_param(analyze);
    add_format(analyze);

    CLI::App* classify_all =
        app.add_subcommand("classify-all", "property report for every state");
    add_model(classify_all);
    add_param(classify_all);
    add_format(classify_all);

    CLI::App* graph = app.add_subcommand("graph", "DOT diagram of the state "
                                                  "transition digraph");
    add_model(graph);
    CLI::Option* graph_state =
        graph->add_option("--state", opt.state_text,
                          "restrict to the reach set of this state");
    add_param(graph);
    graph->add_option("--out", opt.out_path, "output DOT path")->required();

    CLI::App* orbit = app.add_subcommand("orbit", "iterate orbit of a state");
    add_model(orbit);
    orbit->add_option("--state", opt.state_text, "start state bits")
        ->required();
    add_param(orbit);

    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "compare the analysis against the path oracle");
    add_model(oracle);
    oracle->add_option("--state", opt.state_text, "start state bits")
        ->required();

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the verification suites");
    CLI::Option* selftest_n =
        selftest->add_option("--n", opt.exhaustive_n, "exhaustive width")
            ->check(CLI::IsMember({1, 2}));
    CLI::Option* selftest_rand =
        selftest->add_option("--rand-n", opt.rand_n, "randomized width");
    selftest->add_option("--samples", opt.samples, "randomized sample count");
    selftest->add_option("--seed", opt.seed, "randomized seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    opt.state_given = graph_state->count() > 0;
    opt.param_given = analyze->count("--param") > 0 ||
                      classify_all->count("--param") > 0 ||
                      graph->count("--param") > 0 ||
                      orbit->count("--param") > 0;
    opt.exhaustive_given = selftest_n->count() > 0;
    opt.rand_given = selftest_rand->count() > 0;

    try {
        if (*analyze)
            return run_analyze(opt, out);
        if (*classify_all)
            return run_classify_all(opt, out);
        if (*graph)
            return run_graph(opt);
        if (*orbit)
            return run_orbit(opt, out);
        if (*oracle)
            return run_oracle_check(opt, out, err);
        if (*selftest)
            return run_selftest(opt, out, err);
        err << "error: no command\n";
        return 2;
    } catch (const Defect& e) {
        err << "defect: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace bvf
