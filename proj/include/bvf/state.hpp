#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bvf/error.hpp"

namespace bvf {

// Hard cap on n+m so that full state spaces stay enumerable in memory.
inline constexpr int kMaxWidth = 24;

// A point of B2^n, i.e. a fixed-width bit vector.  Coordinates are
// 1-based; coordinate 1 is the leftmost character of the string form and
// the most significant of the low `width` bits, so the numeric order of
// `bits()` equals the lexicographic order of the string form.
class State {
public:
    State() = default;

    State(std::uint32_t bits, int width) : width_(width), bits_(bits) {
        if (width < 1 || width > kMaxWidth)
            throw Error("state width out of range [1," +
                        std::to_string(kMaxWidth) + "]: " + std::to_string(width));
        if (bits >> width)
            throw Error("state bits exceed width " + std::to_string(width));
    }

    static State from_string(std::string_view text) {
        if (text.empty())
            throw Error("empty bit string");
        if (text.size() > kMaxWidth)
            throw Error("bit string longer than " + std::to_string(kMaxWidth));
        std::uint32_t bits = 0;
        for (char c : text) {
            if (c != '0' && c != '1')
                throw Error("bit string must consist of 0/1, got '" +
                            std::string(text) + "'");
            bits = bits << 1 | std::uint32_t(c == '1');
        }
        return State(bits, int(text.size()));
    }

    int width() const { return width_; }
    std::uint32_t bits() const { return bits_; }

    // Value of coordinate i (1-based).
    int bit(int i) const {
        check_coordinate(i);
        return int(bits_ >> (width_ - i)) & 1;
    }

    // Single-bit mask of coordinate i in the `bits()` layout.
    std::uint32_t coordinate_mask(int i) const {
        check_coordinate(i);
        return std::uint32_t(1) << (width_ - i);
    }

    State with_flipped(int i) const {
        return State(bits_ ^ coordinate_mask(i), width_);
    }

    State with_bit(int i, int value) const {
        std::uint32_t m = coordinate_mask(i);
        return State(value ? bits_ | m : bits_ & ~m, width_);
    }

    std::string str() const {
        std::string s(std::size_t(width_), '0');
        for (int i = 1; i <= width_; ++i)
            s[std::size_t(i - 1)] = char('0' + bit(i));
        return s;
    }

    friend auto operator<=>(const State&, const State&) = default;

private:
    void check_coordinate(int i) const {
        if (i < 1 || i > width_)
            throw Error("coordinate " + std::to_string(i) +
                        " out of range [1," + std::to_string(width_) + "]");
    }

    int width_ = 0;
    std::uint32_t bits_ = 0;
};

// Input vectors of B2^m are bit vectors like states; the distinction is
// positional (an input vector is the v-part of a total state).
using InputVector = State;

// Total state (w, v) of a parameterized field: n state bits followed by
// m input bits.
struct TotalState {
    State w;
    InputVector v;

    // The concatenated n+m bit vector, as consumed by the closed field.
    State joined() const {
        return State(w.bits() << v.width() | v.bits(), w.width() + v.width());
    }

    static TotalState split(State z, int n, int m) {
        if (z.width() != n + m)
            throw Error("total state width " + std::to_string(z.width()) +
                        " does not equal n+m = " + std::to_string(n + m));
        return TotalState{State(z.bits() >> m, n),
                          m ? State(z.bits() & ((std::uint32_t(1) << m) - 1), m)
                            : State()};
    }

    friend auto operator<=>(const TotalState&, const TotalState&) = default;
};

// Number of coordinates on which two equal-width states differ.
int hamming(State a, State b);

// Sorted 1-based coordinates present in a `bits()`-layout mask.
std::vector<int> mask_coordinates(std::uint32_t mask, int width);

} // namespace bvf
