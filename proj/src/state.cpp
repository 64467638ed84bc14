#include "bvf/state.hpp"

#include <bit>

namespace bvf {

int hamming(State a, State b) {
    if (a.width() != b.width())
        throw Error("hamming distance of states with different widths");
    return std::popcount(a.bits() ^ b.bits());
}

std::vector<int> mask_coordinates(std::uint32_t mask, int width) {
    std::vector<int> out;
    for (int i = 1; i <= width; ++i)
        if (mask >> (width - i) & 1)
            out.push_back(i);
    return out;
}

} // namespace bvf
