#include "bvf/io.hpp"

#include <cctype>
#include <set>

#include "bvf/error.hpp"
#include "bvf/relations.hpp"

namespace bvf {

namespace {
using plain_json = nlohmann::json;
}

class ExpressionParser {
public:
    explicit ExpressionParser(const std::string& text) : text_(text) {}

    Expression run() {
        expr_.nodes_.clear();
        expr_.root_ = parse_or();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return std::move(expr_);
    }

private:
    using Op = Expression::Op;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int make(Op op, int value, int lhs, int rhs) {
        expr_.nodes_.push_back(Expression::Node{op, value, lhs, rhs});
        return int(expr_.nodes_.size()) - 1;
    }

    int parse_or() {
        int node = parse_xor();
        while (eat('|'))
            node = make(Op::disjunction, 0, node, parse_xor());
        return node;
    }

    int parse_xor() {
        int node = parse_and();
        while (eat('^'))
            node = make(Op::exclusive_or, 0, node, parse_and());
        return node;
    }

    int parse_and() {
        int node = parse_not();
        while (eat('&'))
            node = make(Op::conjunction, 0, node, parse_not());
        return node;
    }

    int parse_not() {
        if (eat('!'))
            return make(Op::negation, 0, parse_not(), -1);
        return parse_atom();
    }

    int parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '0' || c == '1') {
            ++pos_;
            return make(Op::constant, c - '0', -1, -1);
        }
        if (c == 'w' || c == 'v') {
            std::size_t start = pos_++;
            return make(c == 'w' ? Op::state_var : Op::input_var,
                        parse_index(start), -1, -1);
        }
        if (c == '(') {
            ++pos_;
            int node = parse_or();
            if (!eat(')'))
                throw ParseError("expected ')'", pos_);
            return node;
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         pos_);
    }

    int parse_index(std::size_t start) {
        std::size_t digits = pos_;
        long long index = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            index = index * 10 + (text_[pos_] - '0');
            if (index > kMaxWidth)
                throw ParseError("variable index out of range", start);
            ++pos_;
        }
        if (pos_ == digits)
            throw ParseError("expected a variable index", pos_);
        if (index == 0)
            throw ParseError("variable indices are 1-based", digits);
        return int(index);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Expression expr_;
};

Expression Expression::parse(const std::string& text) {
    return ExpressionParser(text).run();
}

int Expression::max_state_index() const {
    int best = 0;
    for (const Node& node : nodes_)
        if (node.op == Op::state_var)
            best = std::max(best, node.value);
    return best;
}

int Expression::max_input_index() const {
    int best = 0;
    for (const Node& node : nodes_)
        if (node.op == Op::input_var)
            best = std::max(best, node.value);
    return best;
}

int Expression::eval(State w, InputVector v) const {
    return eval_node(root_, w, v);
}

int Expression::eval_node(int index, State w, InputVector v) const {
    const Node& node = nodes_[std::size_t(index)];
    switch (node.op) {
    case Op::constant:
        return node.value;
    case Op::state_var:
        if (node.value > w.width())
            throw Error("identifier w" + std::to_string(node.value) +
                        " out of range (n = " + std::to_string(w.width()) + ")");
        return w.bit(node.value);
    case Op::input_var:
        if (node.value > v.width())
            throw Error("identifier v" + std::to_string(node.value) +
                        " out of range (m = " + std::to_string(v.width()) + ")");
        return v.bit(node.value);
    case Op::negation:
        return 1 - eval_node(node.lhs, w, v);
    case Op::conjunction:
        return eval_node(node.lhs, w, v) & eval_node(node.rhs, w, v);
    case Op::exclusive_or:
        return eval_node(node.lhs, w, v) ^ eval_node(node.rhs, w, v);
    case Op::disjunction:
        return eval_node(node.lhs, w, v) | eval_node(node.rhs, w, v);
    }
    throw Defect("unhandled expression node");
}

namespace {

plain_json parse_json_checked(const std::string& text) {
    std::vector<std::set<std::string>> object_keys;
    auto callback = [&](int, plain_json::parse_event_t event,
                        plain_json& parsed) {
        if (event == plain_json::parse_event_t::object_start) {
            object_keys.emplace_back();
        } else if (event == plain_json::parse_event_t::object_end) {
            object_keys.pop_back();
        } else if (event == plain_json::parse_event_t::key) {
            auto key = parsed.get<std::string>();
            if (!object_keys.back().insert(key).second)
                throw Error("duplicate key \"" + key + "\"");
        }
        return true;
    };
    try {
        return plain_json::parse(text, callback);
    } catch (const plain_json::parse_error& e) {
        throw ParseError("invalid JSON: " + std::string(e.what()), e.byte);
    }
}

int get_count(const plain_json& doc, const char* key, int fallback) {
    if (!doc.contains(key))
        return fallback;
    const plain_json& value = doc.at(key);
    if (!value.is_number_integer())
        throw Error(std::string("\"") + key + "\" must be an integer");
    return value.get<int>();
}

State parse_bits(const std::string& text, int width, const char* what) {
    if (int(text.size()) != width)
        throw Error(std::string(what) + " \"" + text + "\" must have " +
                    std::to_string(width) + " bits");
    return State::from_string(text);
}

} // namespace

ParamVectorField parse_model(const std::string& text) {
    plain_json doc = parse_json_checked(text);
    if (!doc.is_object())
        throw Error("model document must be a JSON object");
    for (const auto& item : doc.items())
        if (item.key() != "n" && item.key() != "m" && item.key() != "table" &&
            item.key() != "coords")
            throw Error("unknown key \"" + item.key() + "\"");
    if (!doc.contains("n"))
        throw Error("missing \"n\"");
    int n = get_count(doc, "n", 0);
    int m = get_count(doc, "m", 0);
    if (n < 1 || n > kMaxWidth)
        throw Error("n out of range [1," + std::to_string(kMaxWidth) +
                    "]: " + std::to_string(n));
    if (m < 0 || n + m > kMaxWidth)
        throw Error("m out of range [0," + std::to_string(kMaxWidth - n) +
                    "]: " + std::to_string(m));
    if (doc.contains("table") == doc.contains("coords"))
        throw Error("exactly one of \"table\" or \"coords\" is required");

    int width = n + m;
    std::vector<std::uint32_t> table(std::size_t(1) << width, ~std::uint32_t(0));
    if (doc.contains("table")) {
        const plain_json& rows = doc.at("table");
        if (!rows.is_object())
            throw Error("\"table\" must be an object");
        for (const auto& row : rows.items()) {
            State key = parse_bits(row.key(), width, "table key");
            if (!row.value().is_string())
                throw Error("table value for \"" + row.key() +
                            "\" must be a string");
            State value =
                parse_bits(row.value().get<std::string>(), n, "table value");
            table[key.bits()] = value.bits();
        }
        for (std::uint32_t bits = 0; bits < table.size(); ++bits)
            if (table[bits] == ~std::uint32_t(0))
                throw Error("missing row \"" + State(bits, width).str() + "\"");
    } else {
        const plain_json& coords = doc.at("coords");
        if (!coords.is_array() || int(coords.size()) != n)
            throw Error("\"coords\" must be an array of " + std::to_string(n) +
                        " expressions");
        std::vector<Expression> exprs;
        for (int i = 0; i < n; ++i) {
            if (!coords[std::size_t(i)].is_string())
                throw Error("coordinate " + std::to_string(i + 1) +
                            " must be a string expression");
            exprs.push_back(
                Expression::parse(coords[std::size_t(i)].get<std::string>()));
            if (exprs.back().max_state_index() > n)
                throw Error("coordinate " + std::to_string(i + 1) +
                            ": identifier w" +
                            std::to_string(exprs.back().max_state_index()) +
                            " out of range (n = " + std::to_string(n) + ")");
            if (exprs.back().max_input_index() > m)
                throw Error("coordinate " + std::to_string(i + 1) +
                            ": identifier v" +
                            std::to_string(exprs.back().max_input_index()) +
                            " out of range (m = " + std::to_string(m) + ")");
        }
        for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
            TotalState z = TotalState::split(State(bits, width), n, m);
            std::uint32_t value = 0;
            for (int i = 0; i < n; ++i)
                value = value << 1 |
                        std::uint32_t(exprs[std::size_t(i)].eval(z.w, z.v));
            table[bits] = value;
        }
    }
    return ParamVectorField(n, m, std::move(table));
}

ordered_json model_json(const ParamVectorField& f) {
    ordered_json doc;
    doc["n"] = f.state_width();
    doc["m"] = f.input_width();
    ordered_json rows = ordered_json::object();
    std::uint32_t count = std::uint32_t(1) << f.total_width();
    for (std::uint32_t bits = 0; bits < count; ++bits)
        rows[State(bits, f.total_width()).str()] =
            State(f.apply_bits(bits), f.state_width()).str();
    doc["table"] = std::move(rows);
    return doc;
}

std::string serialize_model(const ParamVectorField& f) {
    return model_json(f).dump();
}

std::string emit_dot(const VectorField& g, std::optional<State> root,
                     int input_split) {
    std::vector<State> nodes;
    if (root) {
        nodes = reach(g, *root);
    } else {
        for (std::uint32_t bits = 0; bits < g.table_size(); ++bits)
            nodes.push_back(State(bits, g.width()));
    }
    std::string out = "digraph mu {\n";
    for (State u : nodes) {
        std::string label;
        for (int i = 1; i <= g.width(); ++i) {
            if (input_split > 0 && i == g.width() - input_split + 1)
                label += '|';
            label += char('0' + u.bit(i));
            if (g.coordinate(u, i) != u.bit(i))
                label += '*';
        }
        out += "    \"" + u.str() + "\" [label=\"" + label + "\"";
        if (is_stable(g, u))
            out += ", peripheries=2";
        if (root && u == *root)
            out += ", penwidth=2";
        out += "];\n";
    }
    for (State u : nodes)
        for (State next : mu_successors(g, u))
            if (next != u)
                out += "    \"" + u.str() + "\" -> \"" + next.str() + "\";\n";
    out += "}\n";
    return out;
}

namespace {

const char* cause_name(Cause cause) {
    switch (cause) {
    case Cause::oscillation:
        return "oscillation";
    case Cause::multiple_limits:
        return "multiple_limits";
    case Cause::non_monotonous:
        return "non_monotonous";
    }
    throw Defect("unhandled cause");
}

ordered_json states_json(const std::vector<State>& states) {
    ordered_json out = ordered_json::array();
    for (State s : states)
        out.push_back(s.str());
    return out;
}

ordered_json causes_json(const std::vector<Cause>& causes) {
    ordered_json out = ordered_json::array();
    for (Cause c : causes)
        out.push_back(cause_name(c));
    return out;
}

template <class T>
const T* witness_as(const Verdict& verdict) {
    if (verdict.holds || !verdict.witness)
        return nullptr;
    return std::get_if<T>(&*verdict.witness);
}

ordered_json witnesses_json(const PropertyReport& r) {
    ordered_json w = ordered_json::object();
    if (const auto* osc = witness_as<OscillationWitness>(r.delay_insensitive))
        w["oscillation"] = states_json(osc->scc);
    const auto* limits = witness_as<MultipleLimitsWitness>(r.delay_insensitive);
    if (!limits)
        limits = witness_as<MultipleLimitsWitness>(r.hazard_free);
    if (limits)
        w["multiple_limits"] = {{"first", limits->first.str()},
                                {"second", limits->second.str()}};
    if (const auto* tri = witness_as<NonMonotonousWitness>(r.hazard_free))
        w["non_monotonous"] = {{"coordinate", tri->coordinate},
                               {"walk", states_json(tri->walk)}};
    if (r.trivially_hazard_free.verdict.holds)
        w["thf_target"] = r.trivially_hazard_free.target->str();
    if (const auto* images =
            witness_as<NonConstantWitness>(r.trivially_hazard_free.verdict))
        w["thf_distinct_images"] = {{"left", images->left.str()},
                                    {"right", images->right.str()}};
    if (const auto* sm = witness_as<SemiModularityWitness>(r.semi_modular))
        w["semi_modular"] = {{"state", sm->state.str()},
                             {"successor", sm->successor.str()},
                             {"coordinate", sm->coordinate}};
    if (const auto* wsm = witness_as<WsmWitness>(r.weakly_semi_modular)) {
        ordered_json entry = {{"state", wsm->state.str()},
                              {"coordinate", wsm->coordinate}};
        if (wsm->frozen_stable)
            entry["escape_stable"] = wsm->frozen_stable->str();
        else
            entry["escape_cycle"] = states_json(wsm->frozen_scc);
        w["weakly_semi_modular"] = std::move(entry);
    }
    if (const auto* tc = witness_as<TcgrWitness>(r.tcgr.verdict))
        w["tcgr"] = {{"state", tc->state.str()},
                     {"successor", tc->successor.str()}};
    if (r.hazardous_transition)
        w["hazardous_transition"] = {
            {"from", r.hazardous_transition->first.str()},
            {"to", r.hazardous_transition->second.str()}};
    return w;
}

} // namespace

ordered_json report_json(const PropertyReport& r) {
    ordered_json j;
    j["state"] = r.state.str();
    j["stable"] = r.stable;
    j["excited"] = r.excited;
    j["reach_size"] = r.reach_size;
    j["stable_reachable"] = states_json(r.stable_reachable);
    j["limit"] = r.limit ? ordered_json(r.limit->str()) : ordered_json(nullptr);
    ordered_json tcgr;
    tcgr["holds"] = r.tcgr.verdict.holds;
    tcgr["branch"] =
        r.tcgr.branch
            ? ordered_json("b" + std::to_string(r.tcgr.branch->branch))
            : ordered_json(nullptr);
    tcgr["p"] = r.tcgr.branch && r.tcgr.branch->p
                    ? ordered_json(*r.tcgr.branch->p)
                    : ordered_json(nullptr);
    j["properties"] = {
        {"delay_insensitive", r.delay_insensitive.holds},
        {"hazard_free", r.hazard_free.holds},
        {"trivially_hazard_free", r.trivially_hazard_free.verdict.holds},
        {"semi_modular", r.semi_modular.holds},
        {"weakly_semi_modular", r.weakly_semi_modular.holds},
        {"tcgr", std::move(tcgr)},
        {"single_bit_change", r.single_bit_change},
    };
    j["causes"] = {
        {"delay_sensitivity", causes_json(r.delay_sensitivity_causes)},
        {"hazard", causes_json(r.hazard_causes)},
    };
    j["orbit"] = {
        {"transient_len", r.orbit.transient_len},
        {"period", r.orbit.period},
        {"milestones", states_json(r.orbit.milestones)},
    };
    j["witnesses"] = witnesses_json(r);
    return j;
}

ordered_json report_json(const ModeQualifiedReport& r) {
    ordered_json j = report_json(r.report);
    j["param"] = {
        {"n", r.state_width},
        {"m", r.input_width},
        {"target", r.target.str()},
    };
    j["state_stable"] = r.state_stable;
    j["fundamental_mode"] = {
        {"delay_insensitive", r.fundamental_mode.delay_insensitive},
        {"hazard_free", r.fundamental_mode.hazard_free},
        {"trivially_hazard_free", r.fundamental_mode.trivially_hazard_free},
        {"semi_modular", r.fundamental_mode.semi_modular},
        {"weakly_semi_modular", r.fundamental_mode.weakly_semi_modular},
        {"tcgr", r.fundamental_mode.tcgr},
    };
    return j;
}

std::string emit_report(const PropertyReport& report) {
    return report_json(report).dump(2) + "\n";
}

std::string emit_report(const ModeQualifiedReport& report) {
    return report_json(report).dump(2) + "\n";
}

} // namespace bvf
