#include "bvf/vector_field.hpp"

#include <unordered_map>

namespace bvf {

namespace {

std::vector<std::uint32_t> checked_table(int width,
                                         std::vector<std::uint32_t> table,
                                         int value_width) {
    if (width < 1 || width > kMaxWidth)
        throw Error("field width out of range [1," + std::to_string(kMaxWidth) +
                    "]: " + std::to_string(width));
    std::size_t expect = std::size_t(1) << width;
    if (table.size() != expect)
        throw Error("field table has " + std::to_string(table.size()) +
                    " entries, expected " + std::to_string(expect));
    for (std::uint32_t v : table)
        if (v >> value_width)
            throw Error("field table value exceeds width " +
                        std::to_string(value_width));
    return table;
}

} // namespace

VectorField::VectorField(int n, std::vector<std::uint32_t> table)
    : n_(n), table_(checked_table(n, std::move(table), n)) {}

VectorField VectorField::identity(int n) {
    std::vector<std::uint32_t> t(std::size_t(1) << n);
    for (std::uint32_t w = 0; w < t.size(); ++w)
        t[w] = w;
    return VectorField(n, std::move(t));
}

VectorField VectorField::constant(State value) {
    std::vector<std::uint32_t> t(std::size_t(1) << value.width(), value.bits());
    return VectorField(value.width(), std::move(t));
}

ParamVectorField::ParamVectorField(int n, int m, std::vector<std::uint32_t> table)
    : n_(n), m_(m), table_() {
    if (m < 0)
        throw Error("negative input width");
    table_ = checked_table(n + m, std::move(table), n);
    if (n < 1)
        throw Error("state width must be at least 1");
}

ParamVectorField::ParamVectorField(const VectorField& g)
    : n_(g.width()), m_(0), table_() {
    table_.resize(g.table_size());
    for (std::uint32_t w = 0; w < table_.size(); ++w)
        table_[w] = g.apply_bits(w);
}

std::uint32_t ParamVectorField::check_joined(TotalState z) const {
    if (z.w.width() != n_ || z.v.width() != m_)
        throw Error("total state (" + std::to_string(z.w.width()) + "," +
                    std::to_string(z.v.width()) + ") does not match field (" +
                    std::to_string(n_) + "," + std::to_string(m_) + ")");
    return z.joined().bits();
}

VectorField ParamVectorField::autonomous() const {
    if (m_ != 0)
        throw Error("field has " + std::to_string(m_) +
                    " input coordinates; autonomous view requires m = 0");
    return VectorField(n_, table_);
}

VectorField ParamVectorField::restriction(InputVector v) const {
    if (v.width() != m_)
        throw Error("input vector width " + std::to_string(v.width()) +
                    " does not match m = " + std::to_string(m_));
    std::vector<std::uint32_t> t(std::size_t(1) << n_);
    for (std::uint32_t w = 0; w < t.size(); ++w)
        t[w] = table_[w << m_ | v.bits()];
    return VectorField(n_, std::move(t));
}

std::vector<int> excitation_set(const VectorField& g, State w) {
    return mask_coordinates(excitation_mask(g, w), g.width());
}

State iterate(const VectorField& g, State w, long long j) {
    if (j < 0)
        throw Error("negative iterate index");
    // Shortcut through the orbit once j exceeds the state count.
    std::uint32_t bits = w.bits();
    long long cap = (std::int64_t(1) << g.width()) + 1;
    if (j > cap) {
        OrbitSummary orbit = orbit_summary(g, w);
        return orbit.at(j);
    }
    for (long long t = 0; t < j; ++t)
        bits = g.apply_bits(bits);
    return State(bits, g.width());
}

State OrbitSummary::at(long long j) const {
    if (j < 0)
        throw Error("negative iterate index");
    if (j < std::int64_t(milestones.size()))
        return milestones[std::size_t(j)];
    long long wrapped = transient_len + (j - transient_len) % period;
    return milestones[std::size_t(wrapped)];
}

OrbitSummary orbit_summary(const VectorField& g, State w) {
    std::unordered_map<std::uint32_t, int> first_seen;
    std::vector<State> seq;
    std::uint32_t bits = w.bits();
    for (;;) {
        auto [it, inserted] = first_seen.emplace(bits, int(seq.size()));
        if (!inserted) {
            OrbitSummary s;
            s.transient_len = it->second;
            s.period = int(seq.size()) - it->second;
            s.milestones = std::move(seq);
            return s;
        }
        seq.push_back(State(bits, g.width()));
        bits = g.apply_bits(bits);
    }
}

} // namespace bvf
