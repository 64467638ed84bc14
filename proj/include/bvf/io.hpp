#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bvf/nonautonomous.hpp"
#include "bvf/properties.hpp"
#include "bvf/vector_field.hpp"

namespace bvf {

using ordered_json = nlohmann::ordered_json;

// Boolean expression over state variables w1..wn and input variables
// v1..vm.  Grammar, loosest binding first:
//   or := xor ('|' xor)*; xor := and ('^' and)*; and := not ('&' not)*;
//   not := '!' not | atom; atom := '0' | '1' | ident | '(' expr ')';
//   ident := ('w'|'v') nonzero-decimal.  Whitespace is ignored.
class Expression {
public:
    static Expression parse(const std::string& text);

    // Largest referenced index per variable family, 0 when unused.
    int max_state_index() const;
    int max_input_index() const;

    int eval(State w, InputVector v) const;

private:
    enum class Op {
        constant,
        state_var,
        input_var,
        negation,
        conjunction,
        exclusive_or,
        disjunction,
    };
    struct Node {
        Op op;
        int value = 0; // constant bit or 1-based variable index
        int lhs = -1;
        int rhs = -1;
    };

    int eval_node(int index, State w, InputVector v) const;

    std::vector<Node> nodes_;
    int root_ = -1;

    friend class ExpressionParser;
};

// Reads a model document, {"n":…, "m":…, "table":{bits: bits, …}} or
// {"n":…, "m":…, "coords":[expr, …]}; m defaults to 0.  The table must
// be total over the (n+m)-bit keys; duplicate keys are rejected.
ParamVectorField parse_model(const std::string& text);

// Table-form document for f, keys ascending.
ordered_json model_json(const ParamVectorField& f);
std::string serialize_model(const ParamVectorField& f);

// DOT digraph of the proper mu-edges.  Node ids are the raw bit strings;
// labels mark each excited coordinate with a trailing '*'; stable nodes
// get peripheries=2.  With a root the graph is restricted to its reach
// set and the root is drawn with penwidth=2.  input_split > 0 inserts a
// '|' before the last input_split label positions (closed fields).
std::string emit_dot(const VectorField& g, std::optional<State> root,
                     int input_split = 0);

ordered_json report_json(const PropertyReport& report);
ordered_json report_json(const ModeQualifiedReport& report);

std::string emit_report(const PropertyReport& report);
std::string emit_report(const ModeQualifiedReport& report);

} // namespace bvf
