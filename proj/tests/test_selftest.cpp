#include <cstdint>

#include "doctest.h"

#include "bvf/error.hpp"
#include "bvf/io.hpp"
#include "bvf/properties.hpp"
#include "bvf/selftest.hpp"

#include "fixtures.hpp"

using namespace bvf;
using fixtures::S;

TEST_CASE("exhaustive lattice over width 1") {
    SuiteResult result = exhaustive_lattice(1);
    CHECK(result.cases_run == 8);
    CHECK(result.violations.empty());
}

TEST_CASE("exhaustive lattice over width 2") {
    SuiteResult result = exhaustive_lattice(2);
    CHECK(result.cases_run == 1024);
    CHECK(result.violations.empty());
    CHECK(result.elapsed_seconds < 5.0);
}

TEST_CASE("suite bounds") {
    CHECK_THROWS_AS(exhaustive_lattice(0), Error);
    CHECK_THROWS_AS(exhaustive_lattice(3), Error);
    CHECK_THROWS_AS(randomized_suite(13, 1, 0), Error);
    CHECK_THROWS_AS(randomized_suite(5, 1, 0, 1), Error);
    CHECK_THROWS_AS(fundamental_suite(6, 7, 1, 0), Error);
}

TEST_CASE("width-1 census of tcgr without convergence") {
    // Exactly the two inverter cases: both states of table {1,0}.
    int count = 0;
    for (std::uint32_t code = 0; code < 4; ++code) {
        VectorField g(1, {code & 1, code >> 1 & 1});
        for (std::uint32_t bits = 0; bits < 2; ++bits) {
            State w(bits, 1);
            if (tcgr(g, w).verdict.holds && !delay_insensitive(g, w).holds)
                ++count;
        }
    }
    CHECK(count == 2);
}

TEST_CASE("randomized suite is seeded and deterministic") {
    SuiteResult a = randomized_suite(2, 300, 42);
    SuiteResult b = randomized_suite(2, 300, 42);
    CHECK(a.cases_run == 300);
    CHECK(b.cases_run == 300);
    CHECK(a.seed == 42);
    CHECK(a.violations.empty());
    CHECK(b.violations.empty());

    SuiteResult wide = randomized_suite(6, 100, 2026);
    CHECK(wide.cases_run == 100);
    CHECK(wide.violations.empty());
}

TEST_CASE("randomized suite with oracle agreement") {
    SuiteResult mixed = randomized_suite(3, 50, 9, 25);
    CHECK(mixed.cases_run == 75);
    CHECK(mixed.violations.empty());

    SuiteResult oracle_only = randomized_suite(3, 0, 7, 40);
    CHECK(oracle_only.cases_run == 40);
    CHECK(oracle_only.violations.empty());
}

TEST_CASE("fundamental suite shapes") {
    SuiteResult two_inputs = fundamental_suite(2, 1, 6, 11);
    CHECK(two_inputs.cases_run == 6 * 8 * 2);
    CHECK(two_inputs.violations.empty());

    // m = 0 degenerates to one closed view per state.
    SuiteResult plain = fundamental_suite(1, 0, 4, 1);
    CHECK(plain.cases_run == 4 * 2);
    CHECK(plain.violations.empty());
}

TEST_CASE("separation witnesses up to width 2") {
    std::vector<SeparationWitness> found = separation_search(2);
    REQUIRE(found.size() == 5);
    CHECK(found[0].name == "di_not_hf");
    CHECK(found[1].name == "hf_not_sm");
    CHECK(found[2].name == "wsm_not_sm");
    CHECK(found[3].name == "tcgr_not_di");
    CHECK(found[4].name == "tcgr_not_sbc");

    CHECK(found[0].found);
    CHECK(found[3].found);
    CHECK(found[4].found);
    // Width 2 cannot separate these two; the witnesses live at width 3.
    CHECK_FALSE(found[1].found);
    CHECK_FALSE(found[2].found);
    CHECK(found[1].model.empty());
    CHECK(found[2].state.empty());

    // The scan runs descending table codes, ascending states: the
    // inverter and the constant-ones field come up first.
    CHECK(found[3].model ==
          serialize_model(ParamVectorField(fixtures::not_field())));
    CHECK(found[3].state == "0");
    CHECK(found[4].model ==
          serialize_model(ParamVectorField(fixtures::const11_field())));
    CHECK(found[4].state == "00");
}

TEST_CASE("separation witnesses replay") {
    for (const SeparationWitness& sep : separation_search(2)) {
        if (!sep.found)
            continue;
        VectorField g = parse_model(sep.model).autonomous();
        PropertyReport r = classify(g, State::from_string(sep.state));
        if (sep.name == "di_not_hf")
            CHECK((r.delay_insensitive.holds && !r.hazard_free.holds));
        else if (sep.name == "hf_not_sm")
            CHECK((r.hazard_free.holds && !r.semi_modular.holds));
        else if (sep.name == "wsm_not_sm")
            CHECK((r.weakly_semi_modular.holds && !r.semi_modular.holds));
        else if (sep.name == "tcgr_not_di")
            CHECK((r.tcgr.verdict.holds && !r.delay_insensitive.holds));
        else if (sep.name == "tcgr_not_sbc")
            CHECK((r.tcgr.verdict.holds && !r.single_bit_change));
    }
}
