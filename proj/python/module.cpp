#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvf/error.hpp"
#include "bvf/io.hpp"
#include "bvf/nonautonomous.hpp"
#include "bvf/oracle.hpp"
#include "bvf/properties.hpp"
#include "bvf/selftest.hpp"

namespace py = pybind11;

namespace {

using namespace bvf;

State parse_state(const std::string& text, int width, const char* what) {
    State s = State::from_string(text);
    if (s.width() != width)
        throw Error(std::string(what) + " \"" + text + "\" must have " +
                    std::to_string(width) + " bits");
    return s;
}

std::optional<InputVector> resolve_param(const ParamVectorField& f,
                                         const std::optional<std::string>& p) {
    if (f.input_width() == 0) {
        if (p)
            throw Error("param given but the model has m = 0");
        return std::nullopt;
    }
    if (!p)
        throw Error("the model has m = " + std::to_string(f.input_width()) +
                    "; param is required");
    return parse_state(*p, f.input_width(), "param");
}

std::string analyze(const std::string& model, const std::string& state,
                    const std::optional<std::string>& param) {
    ParamVectorField f = parse_model(model);
    auto target = resolve_param(f, param);
    if (target) {
        TotalState z = TotalState::split(
            parse_state(state, f.total_width(), "state"), f.state_width(),
            f.input_width());
        return emit_report(classify_param(f, z, *target));
    }
    VectorField g = f.autonomous();
    return emit_report(classify(g, parse_state(state, g.width(), "state")));
}

std::string classify_all(const std::string& model,
                         const std::optional<std::string>& param) {
    ParamVectorField f = parse_model(model);
    auto target = resolve_param(f, param);
    ordered_json reports = ordered_json::array();
    std::uint32_t count = std::uint32_t(1) << f.total_width();
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        State z(bits, f.total_width());
        if (target)
            reports.push_back(report_json(classify_param(
                f, TotalState::split(z, f.state_width(), f.input_width()),
                *target)));
        else
            reports.push_back(report_json(classify(f.autonomous(), z)));
    }
    ordered_json doc;
    doc["reports"] = std::move(reports);
    return doc.dump(2) + "\n";
}

std::string graph(const std::string& model,
                  const std::optional<std::string>& state,
                  const std::optional<std::string>& param) {
    ParamVectorField f = parse_model(model);
    auto target = resolve_param(f, param);
    VectorField view = target ? close_field(f, *target).view : f.autonomous();
    std::optional<State> root;
    if (state)
        root = parse_state(*state, view.width(), "state");
    return emit_dot(view, root, f.input_width());
}

std::string orbit(const std::string& model, const std::string& state,
                  const std::optional<std::string>& param) {
    ParamVectorField f = parse_model(model);
    auto target = resolve_param(f, param);
    VectorField view = target ? close_field(f, *target).view : f.autonomous();
    State z = parse_state(state, view.width(), "state");
    OrbitSummary summary = orbit_summary(view, z);
    ordered_json j;
    j["state"] = z.str();
    j["transient_len"] = summary.transient_len;
    j["period"] = summary.period;
    j["stabilizes"] = summary.stabilizes();
    ordered_json milestones = ordered_json::array();
    for (State s : summary.milestones)
        milestones.push_back(s.str());
    j["milestones"] = std::move(milestones);
    return j.dump(2) + "\n";
}

std::string oracle_check(const std::string& model, const std::string& state) {
    ParamVectorField f = parse_model(model);
    if (f.input_width() != 0)
        throw Error("oracle check requires an autonomous model (m = 0)");
    if (f.state_width() > 4)
        throw Error("oracle check requires n <= 4");
    VectorField g = f.autonomous();
    State w = parse_state(state, g.width(), "state");
    std::vector<std::string> differences =
        report_differences(classify(g, w), oracle_classify(g, w));
    ordered_json j;
    j["state"] = w.str();
    j["agreement"] = differences.empty();
    j["differences"] = differences;
    return j.dump(2) + "\n";
}

std::string serialize(const std::string& model) {
    return serialize_model(parse_model(model));
}

ordered_json suite_json(const SuiteResult& suite) {
    ordered_json j;
    j["cases_run"] = suite.cases_run;
    j["seed"] = suite.seed;
    j["pass"] = suite.pass();
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

std::string run_exhaustive(int n) {
    return suite_json(exhaustive_lattice(n)).dump(2) + "\n";
}

std::string run_randomized(int n, std::size_t samples, std::uint64_t seed,
                           std::size_t oracle_samples) {
    return suite_json(randomized_suite(n, samples, seed, oracle_samples))
               .dump(2) +
           "\n";
}

std::string run_fundamental(int n, int m, std::size_t field_samples,
                            std::uint64_t seed) {
    return suite_json(fundamental_suite(n, m, field_samples, seed)).dump(2) +
           "\n";
}

std::string run_separation_search(int max_n, std::uint64_t seed,
                                  std::size_t samples) {
    ordered_json list = ordered_json::array();
    for (const SeparationWitness& sep :
         separation_search(max_n, seed, samples)) {
        ordered_json entry;
        entry["name"] = sep.name;
        entry["found"] = sep.found;
        entry["model"] = sep.model;
        entry["state"] = sep.state;
        list.push_back(std::move(entry));
    }
    return list.dump(2) + "\n";
}

} // namespace

PYBIND11_MODULE(_bvf, m) {
    m.doc() = "exact analyzer of asynchronous boolean automata under the "
              "unbounded gate delay model";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Defect& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("analyze", &analyze, py::arg("model"), py::arg("state"),
          py::arg("param") = std::nullopt,
          "property report (JSON text) for one state of a model document");
    m.def("classify_all", &classify_all, py::arg("model"),
          py::arg("param") = std::nullopt,
          "property reports (JSON text) for every state, ascending");
    m.def("graph", &graph, py::arg("model"), py::arg("state") = std::nullopt,
          py::arg("param") = std::nullopt,
          "DOT digraph of the proper transitions, optionally reach-restricted");
    m.def("orbit", &orbit, py::arg("model"), py::arg("state"),
          py::arg("param") = std::nullopt,
          "iterate orbit summary (JSON text) of a state");
    m.def("oracle_check", &oracle_check, py::arg("model"), py::arg("state"),
          "agreement (JSON text) between the analysis and the path oracle");
    m.def("serialize", &serialize, py::arg("model"),
          "canonical table-form document for a model");
    m.def("exhaustive_lattice", &run_exhaustive, py::arg("n"),
          "exhaustive law suite over every width-n field (JSON text)");
    m.def("randomized_suite", &run_randomized, py::arg("n"),
          py::arg("samples"), py::arg("seed"),
          py::arg("oracle_samples") = std::size_t(0),
          "seeded law suite (JSON text)");
    m.def("fundamental_suite", &run_fundamental, py::arg("n"), py::arg("m"),
          py::arg("field_samples"), py::arg("seed"),
          "seeded closed-field law suite (JSON text)");
    m.def("separation_search", &run_separation_search, py::arg("max_n") = 3,
          py::arg("seed") = std::uint64_t(2026),
          py::arg("samples") = std::size_t(200000),
          "strict-separation witnesses as replayable model documents "
          "(JSON text)");
}
