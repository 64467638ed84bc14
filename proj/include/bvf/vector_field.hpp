#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvf/state.hpp"

namespace bvf {

// A boolean vector field g : B2^n -> B2^n, stored as a full value table
// indexed by State::bits().
class VectorField {
public:
    VectorField(int n, std::vector<std::uint32_t> table);

    static VectorField identity(int n);
    // Field constantly equal to `value`.
    static VectorField constant(State value);

    int width() const { return n_; }
    std::size_t table_size() const { return table_.size(); }

    State apply(State w) const {
        if (w.width() != n_)
            throw Error("state width " + std::to_string(w.width()) +
                        " does not match field width " + std::to_string(n_));
        return State(apply_bits(w.bits()), n_);
    }
    std::uint32_t apply_bits(std::uint32_t bits) const { return table_[bits]; }

    // g_i(w), 1-based.
    int coordinate(State w, int i) const { return apply(w).bit(i); }

    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    int n_;
    std::vector<std::uint32_t> table_;
};

// A parameterized field f : B2^n x B2^m -> B2^n.  The value table is
// indexed by TotalState::joined().bits(); m = 0 degenerates to a plain
// vector field.
class ParamVectorField {
public:
    ParamVectorField(int n, int m, std::vector<std::uint32_t> table);

    // View a plain field as a parameterized one with m = 0.
    explicit ParamVectorField(const VectorField& g);

    int state_width() const { return n_; }
    int input_width() const { return m_; }
    int total_width() const { return n_ + m_; }

    State apply(TotalState z) const {
        return State(table_[check_joined(z)], n_);
    }
    std::uint32_t apply_bits(std::uint32_t joined_bits) const {
        return table_[joined_bits];
    }

    // The autonomous field, available when m = 0.
    VectorField autonomous() const;

    // The restriction w -> f(w, v) for a fixed input vector.
    VectorField restriction(InputVector v) const;

    friend bool operator==(const ParamVectorField&,
                           const ParamVectorField&) = default;

private:
    std::uint32_t check_joined(TotalState z) const;

    int n_;
    int m_;
    std::vector<std::uint32_t> table_;
};

// Excitation set E(w) = { i : g_i(w) != w_i } as a bits()-layout mask.
inline std::uint32_t excitation_mask(const VectorField& g, State w) {
    return g.apply(w).bits() ^ w.bits();
}

// E(w) as a sorted list of 1-based coordinates.
std::vector<int> excitation_set(const VectorField& g, State w);

inline bool is_stable(const VectorField& g, State w) {
    return excitation_mask(g, w) == 0;
}

// g^j(w) for j >= 0.
State iterate(const VectorField& g, State w, long long j);

// Eventual periodicity data of the iterate sequence w, g(w), g^2(w), ...:
// the minimal transient length J and minimal period P with
// g^J(w) = g^(J+P)(w), and the milestones g^0(w), ..., g^(J+P-1)(w).
struct OrbitSummary {
    int transient_len = 0;
    int period = 1;
    std::vector<State> milestones;

    // True iff the sequence reaches a fixed point.
    bool stabilizes() const { return period == 1; }
    // g^j(w) for arbitrary j, read off the milestones.
    State at(long long j) const;
};

OrbitSummary orbit_summary(const VectorField& g, State w);

} // namespace bvf
