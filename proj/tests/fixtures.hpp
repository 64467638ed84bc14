#pragma once

#include "bvf/state.hpp"
#include "bvf/vector_field.hpp"

namespace bvf::fixtures {

inline State S(const char* text) { return State::from_string(text); }

// g(w) = complement of w.
inline VectorField not_field() { return VectorField(1, {1, 0}); }

// g constantly (1,1).
inline VectorField const11_field() { return VectorField(2, {3, 3, 3, 3}); }

// g(00) = 11, the other three states stable: three reachable limits
// racing from 00.
inline VectorField race_field() { return VectorField(2, {3, 1, 2, 3}); }

// 00 <-> 01 is a proper 2-cycle on which coordinate 1 stays excited at
// value 0: a cycle that fails the fairness test.
inline VectorField unfair2_field() { return VectorField(2, {3, 2, 2, 3}); }

// f(w, v) = v with n = m = 1.
inline ParamVectorField buf_field() {
    return ParamVectorField(1, 1, {0, 1, 0, 1});
}

// f constantly 0 with n = m = 1.
inline ParamVectorField const0_field() {
    return ParamVectorField(1, 1, {0, 0, 0, 0});
}

} // namespace bvf::fixtures
