#include <string>

#include "doctest.h"

#include "bvf/error.hpp"
#include "bvf/io.hpp"
#include "bvf/nonautonomous.hpp"

#include "fixtures.hpp"

using namespace bvf;
using fixtures::S;

TEST_CASE("expression grammar") {
    Expression e = Expression::parse("w1 ^ w2 | w1 & w2");
    CHECK(e.eval(S("11"), State()) == 1);
    CHECK(e.eval(S("01"), State()) == 1);
    CHECK(e.eval(S("00"), State()) == 0);

    CHECK(Expression::parse("w1 & !w2").eval(S("10"), State()) == 1);
    CHECK(Expression::parse("w1 & !w2").eval(S("11"), State()) == 0);
    CHECK(Expression::parse("!!1").eval(S("0"), State()) == 1);
    CHECK(Expression::parse("0").eval(S("1"), State()) == 0);
    CHECK(Expression::parse("w1 & (w2 | v1)").eval(S("10"), S("1")) == 1);
    CHECK(Expression::parse("v2").eval(S("0"), S("01")) == 1);

    Expression wide = Expression::parse("w2 ^ v3");
    CHECK(wide.max_state_index() == 2);
    CHECK(wide.max_input_index() == 3);
    CHECK(Expression::parse("1").max_state_index() == 0);
}

TEST_CASE("expression parse errors") {
    CHECK_THROWS_AS(Expression::parse("w0"), ParseError);
    CHECK_THROWS_AS(Expression::parse("w25"), ParseError);
    CHECK_THROWS_AS(Expression::parse("w"), ParseError);
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    CHECK_THROWS_AS(Expression::parse("(w1"), ParseError);
    CHECK_THROWS_AS(Expression::parse("w1 w2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("w1 &"), ParseError);
    CHECK_THROWS_AS(Expression::parse("#"), ParseError);
    CHECK_THROWS_WITH(Expression::parse("w1 w2"),
                      "unexpected trailing input (at offset 3)");
    // Indices beyond the analyzed widths fail at evaluation time.
    CHECK_THROWS_AS(Expression::parse("w3").eval(S("10"), State()), Error);
    CHECK_THROWS_AS(Expression::parse("v1").eval(S("1"), State()), Error);
}

TEST_CASE("model parsing") {
    ParamVectorField inv =
        parse_model(R"({"n": 1, "m": 0, "table": {"0": "1", "1": "0"}})");
    CHECK(inv == ParamVectorField(fixtures::not_field()));

    // m defaults to 0; coords and table forms agree.
    ParamVectorField lifted =
        parse_model(R"({"n": 2, "coords": ["1", "1"]})");
    CHECK(lifted == ParamVectorField(fixtures::const11_field()));
    CHECK(parse_model(R"({"n": 2, "coords": ["w1 | !w2", "w2 | !w1"]})") ==
          ParamVectorField(fixtures::race_field()));
    CHECK(parse_model(R"({"n": 1, "m": 1, "coords": ["v1"]})") ==
          fixtures::buf_field());
}

TEST_CASE("model documents are validated") {
    CHECK_THROWS_AS(parse_model("[]"), Error);
    CHECK_THROWS_AS(parse_model("{"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"m": 1, "table": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 0, "table": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 25, "table": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "m": -1, "table": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 20, "m": 20, "table": {}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": "1", "table": {}})"), Error);
    CHECK_THROWS_AS(
        parse_model(R"({"n": 1, "table": {"0": "1", "1": "0"}, "note": 3})"),
        Error);
    // Exactly one of table/coords.
    CHECK_THROWS_AS(parse_model(R"({"n": 1})"), Error);
    CHECK_THROWS_AS(
        parse_model(R"({"n": 1, "table": {"0": "0", "1": "1"}, "coords": ["w1"]})"),
        Error);

    CHECK_THROWS_WITH(parse_model(R"({"n": 1, "table": {"0": "1"}})"),
                      "missing row \"1\"");
    CHECK_THROWS_WITH(
        parse_model(R"({"n": 1, "table": {"0": "1", "0": "0", "1": "0"}})"),
        "duplicate key \"0\"");
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "table": {"0": "1", "2": "0"}})"),
                    Error);
    CHECK_THROWS_AS(
        parse_model(R"({"n": 1, "table": {"0": "1", "01": "0"}})"), Error);
    CHECK_THROWS_AS(
        parse_model(R"({"n": 1, "table": {"0": "11", "1": "0"}})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "table": {"0": 1, "1": 0}})"),
                    Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "table": ["1", "0"]})"), Error);

    CHECK_THROWS_AS(parse_model(R"({"n": 2, "coords": ["w1"]})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "coords": [1]})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "coords": ["w2"]})"), Error);
    CHECK_THROWS_AS(parse_model(R"({"n": 1, "coords": ["v1"]})"), Error);
}

TEST_CASE("serialization round-trips") {
    CHECK(serialize_model(ParamVectorField(fixtures::not_field())) ==
          R"({"n":1,"m":0,"table":{"0":"1","1":"0"}})");

    for (const ParamVectorField& f :
         {ParamVectorField(fixtures::not_field()),
          ParamVectorField(fixtures::const11_field()),
          ParamVectorField(fixtures::race_field()),
          ParamVectorField(fixtures::unfair2_field()), fixtures::buf_field(),
          fixtures::const0_field()}) {
        std::string text = serialize_model(f);
        CHECK(parse_model(text) == f);
        CHECK(serialize_model(parse_model(text)) == text);
    }
}

TEST_CASE("equivalent forms yield identical reports") {
    ParamVectorField by_table = parse_model(
        R"({"n": 2, "m": 0, "table": {"00": "11", "01": "01", "10": "10", "11": "11"}})");
    ParamVectorField by_coords =
        parse_model(R"({"n": 2, "coords": ["w1 | !w2", "w2 | !w1"]})");
    CHECK(by_table == by_coords);
    std::string a = emit_report(classify(by_table.autonomous(), S("00")));
    std::string b = emit_report(classify(by_coords.autonomous(), S("00")));
    CHECK(a == b);
}

TEST_CASE("dot output") {
    CHECK(emit_dot(fixtures::not_field(), S("0")) ==
          "digraph mu {\n"
          "    \"0\" [label=\"0*\", penwidth=2];\n"
          "    \"1\" [label=\"1*\"];\n"
          "    \"0\" -> \"1\";\n"
          "    \"1\" -> \"0\";\n"
          "}\n");

    CHECK(emit_dot(VectorField::identity(1), std::nullopt) ==
          "digraph mu {\n"
          "    \"0\" [label=\"0\", peripheries=2];\n"
          "    \"1\" [label=\"1\", peripheries=2];\n"
          "}\n");

    CHECK(emit_dot(fixtures::race_field(), S("00")) ==
          "digraph mu {\n"
          "    \"00\" [label=\"0*0*\", penwidth=2];\n"
          "    \"01\" [label=\"01\", peripheries=2];\n"
          "    \"10\" [label=\"10\", peripheries=2];\n"
          "    \"11\" [label=\"11\", peripheries=2];\n"
          "    \"00\" -> \"01\";\n"
          "    \"00\" -> \"10\";\n"
          "    \"00\" -> \"11\";\n"
          "}\n");

    ClosedField closed = close_field(fixtures::buf_field(), S("1"));
    CHECK(emit_dot(closed.view, S("00"), 1) ==
          "digraph mu {\n"
          "    \"00\" [label=\"0|0*\", penwidth=2];\n"
          "    \"01\" [label=\"0*|1\"];\n"
          "    \"11\" [label=\"1|1\", peripheries=2];\n"
          "    \"00\" -> \"01\";\n"
          "    \"01\" -> \"11\";\n"
          "}\n");

    // Byte-stable across calls.
    CHECK(emit_dot(fixtures::race_field(), S("00")) ==
          emit_dot(fixtures::race_field(), S("00")));
}

TEST_CASE("report json for an oscillator") {
    ordered_json j = report_json(classify(fixtures::not_field(), S("0")));
    CHECK(j["state"] == "0");
    CHECK(j["stable"] == false);
    CHECK(j["excited"] == ordered_json::array({1}));
    CHECK(j["reach_size"] == 2);
    CHECK(j["stable_reachable"] == ordered_json::array());
    CHECK(j["limit"].is_null());
    CHECK(j["properties"]["delay_insensitive"] == false);
    CHECK(j["properties"]["hazard_free"] == false);
    CHECK(j["properties"]["trivially_hazard_free"] == false);
    CHECK(j["properties"]["semi_modular"] == true);
    CHECK(j["properties"]["weakly_semi_modular"] == true);
    CHECK(j["properties"]["tcgr"]["holds"] == true);
    CHECK(j["properties"]["tcgr"]["branch"] == "b3");
    CHECK(j["properties"]["tcgr"]["p"].is_null());
    CHECK(j["properties"]["single_bit_change"] == true);
    CHECK(j["causes"]["delay_sensitivity"] ==
          ordered_json::array({"oscillation"}));
    CHECK(j["causes"]["hazard"] == ordered_json::array({"non_monotonous"}));
    CHECK(j["orbit"]["transient_len"] == 0);
    CHECK(j["orbit"]["period"] == 2);
    CHECK(j["orbit"]["milestones"] == ordered_json::array({"0", "1"}));
    CHECK(j["witnesses"]["oscillation"] == ordered_json::array({"0", "1"}));
    CHECK(j["witnesses"]["non_monotonous"]["coordinate"] == 1);
    CHECK(j["witnesses"]["non_monotonous"]["walk"] ==
          ordered_json::array({"0", "1", "0"}));
    CHECK(j["witnesses"]["thf_distinct_images"]["left"] == "0");
    CHECK(j["witnesses"]["thf_distinct_images"]["right"] == "1");
    CHECK_FALSE(j["witnesses"].contains("multiple_limits"));
    CHECK_FALSE(j["witnesses"].contains("semi_modular"));
    CHECK_FALSE(j["witnesses"].contains("hazardous_transition"));
}

TEST_CASE("report json for a race") {
    ordered_json j = report_json(classify(fixtures::race_field(), S("00")));
    CHECK(j["stable_reachable"] == ordered_json::array({"01", "10", "11"}));
    CHECK(j["limit"].is_null());
    CHECK(j["properties"]["tcgr"]["holds"] == false);
    CHECK(j["properties"]["tcgr"]["branch"].is_null());
    CHECK(j["properties"]["single_bit_change"] == false);
    CHECK(j["causes"]["delay_sensitivity"] ==
          ordered_json::array({"multiple_limits"}));
    CHECK(j["causes"]["hazard"] == ordered_json::array({"multiple_limits"}));
    CHECK(j["witnesses"]["multiple_limits"]["first"] == "01");
    CHECK(j["witnesses"]["multiple_limits"]["second"] == "10");
    CHECK(j["witnesses"]["semi_modular"]["state"] == "00");
    CHECK(j["witnesses"]["semi_modular"]["successor"] == "10");
    CHECK(j["witnesses"]["semi_modular"]["coordinate"] == 2);
    CHECK(j["witnesses"]["weakly_semi_modular"]["state"] == "00");
    CHECK(j["witnesses"]["weakly_semi_modular"]["coordinate"] == 1);
    CHECK(j["witnesses"]["weakly_semi_modular"]["escape_stable"] == "01");
    CHECK(j["witnesses"]["tcgr"]["state"] == "00");
    CHECK(j["witnesses"]["tcgr"]["successor"] == "10");
    CHECK_FALSE(j["witnesses"].contains("oscillation"));
    CHECK_FALSE(j["witnesses"].contains("thf_target"));
}

TEST_CASE("report json for a resting state") {
    ordered_json j = report_json(classify(VectorField::identity(2), S("01")));
    CHECK(j["stable"] == true);
    CHECK(j["excited"] == ordered_json::array());
    CHECK(j["reach_size"] == 1);
    CHECK(j["limit"] == "01");
    CHECK(j["properties"]["delay_insensitive"] == true);
    CHECK(j["properties"]["tcgr"]["branch"] == "b1");
    CHECK(j["causes"]["delay_sensitivity"] == ordered_json::array());
    CHECK(j["causes"]["hazard"] == ordered_json::array());
    CHECK(j["witnesses"] == ordered_json::object({{"thf_target", "01"}}));
}

TEST_CASE("mode-qualified report json") {
    ordered_json j = report_json(
        classify_param(fixtures::buf_field(), TotalState{S("0"), S("0")},
                       S("1")));
    CHECK(j["param"]["n"] == 1);
    CHECK(j["param"]["m"] == 1);
    CHECK(j["param"]["target"] == "1");
    CHECK(j["state_stable"] == true);
    CHECK(j["state"] == "00");
    CHECK(j["limit"] == "11");
    CHECK(j["fundamental_mode"]["delay_insensitive"] == true);
    CHECK(j["fundamental_mode"]["trivially_hazard_free"] == false);
    CHECK(j["fundamental_mode"]["tcgr"] == true);

    std::string text = emit_report(
        classify_param(fixtures::buf_field(), TotalState{S("0"), S("0")},
                       S("1")));
    CHECK(text.back() == '\n');
    CHECK(text == report_json(classify_param(fixtures::buf_field(),
                                             TotalState{S("0"), S("0")},
                                             S("1")))
                          .dump(2) +
                      "\n");
}
