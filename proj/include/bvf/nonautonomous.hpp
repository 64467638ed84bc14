#pragma once

#include <optional>

#include "bvf/properties.hpp"
#include "bvf/vector_field.hpp"

namespace bvf {

// A parameterized field closed over a target input: the ordinary field
// view(w,v) = (f(w,v), target) of width n+m.  The last m coordinates of
// view are the constants of `target`.
struct ClosedField {
    ParamVectorField base;
    InputVector target;
    VectorField view;
};

ClosedField close_field(const ParamVectorField& f, InputVector target);

// f(w,v) = w: the state part of z is at rest.
bool state_stable(const ParamVectorField& f, TotalState z);

struct FundamentalModeFlags {
    bool delay_insensitive = false;
    bool hazard_free = false;
    bool trivially_hazard_free = false;
    bool semi_modular = false;
    bool weakly_semi_modular = false;
    bool tcgr = false;
};

// Autonomous analysis of the closed view at z.joined(), qualified by the
// fundamental mode: each flag is the property verdict AND state_stable.
// Weak semi-modularity quantifies the first n coordinates only.
struct ModeQualifiedReport {
    int state_width = 0;
    int input_width = 0;
    InputVector target;
    bool state_stable = false;
    FundamentalModeFlags fundamental_mode;
    PropertyReport report;
};

ModeQualifiedReport classify_param(const ParamVectorField& f, TotalState z,
                                   InputVector target);

// When the state part is at rest, every proper move of the closed field
// flips input coordinates only.  Empty when z is not state-stable.
std::optional<Verdict> fundamental_first_moves(const ParamVectorField& f,
                                               TotalState z,
                                               InputVector target);

// With target = z.v the closed field explores exactly the lifted reach
// set of the restriction f(., v).  Must always hold.
Verdict autonomous_consistency(const ParamVectorField& f, TotalState z);

// Consequences of trivial hazard-freedom in the fundamental mode: the
// state part never moves and every proper reachable edge flips an input
// coordinate.  Empty when the precondition does not hold.
std::optional<Verdict> trivhf_fm_checks(const ParamVectorField& f,
                                        TotalState z, InputVector target);

} // namespace bvf
