#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvf/vector_field.hpp"

namespace bvf {

// One broken law: which law, on which serialized model document, at
// which start state, with a human-readable explanation.
struct Violation {
    std::string law;
    std::string model;
    std::string state;
    std::string details;
};

struct SuiteResult {
    std::size_t cases_run = 0;
    std::vector<Violation> violations;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;

    bool pass() const { return violations.empty(); }
};

// Every field of width n (n <= 2) at every state, checked against the
// implication lattice, the paired property formulations, the relation
// invariants, witness validity, and the brute-force oracle.
SuiteResult exhaustive_lattice(int n);

// Seeded uniform (field, state) samples; the same laws minus the oracle,
// plus oracle agreement on the first `oracle_samples` cases (requires
// n <= 4).  n <= 12 overall.
SuiteResult randomized_suite(int n, std::size_t samples, std::uint64_t seed,
                             std::size_t oracle_samples = 0);

// Seeded parameterized fields with all total states and all target
// inputs: closed-field construction laws, fundamental-mode flags, and
// the lattice on the closed views.
SuiteResult fundamental_suite(int n, int m, std::size_t field_samples,
                              std::uint64_t seed);

// A found (model, state) pair exhibiting one strict separation between
// properties, replayable through parse_model.
struct SeparationWitness {
    std::string name;
    bool found = false;
    std::string model;
    std::string state;
};

// Witnesses for DI without HF, HF without SM, WSM without SM, TCGR
// without DI, and TCGR without single bit change.  Widths 1..2 are
// scanned exhaustively (descending table code, ascending states), width
// 3 by seeded sampling.
std::vector<SeparationWitness> separation_search(int max_n = 3,
                                                 std::uint64_t seed = 2026,
                                                 std::size_t samples = 200000);

} // namespace bvf
