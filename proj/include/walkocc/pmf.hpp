#pragma once

#include <cstdint>
#include <vector>

namespace walkocc {

/// Probability mass function on an integer interval.
///
/// values[i] is the mass at integer index offset + i. The pair
/// (offset, values) determines the function; entries outside the stored
/// range are zero. Sub-probability vectors (mass < 1) are allowed, e.g.
/// truncated first-passage laws.
struct Pmf {
    std::int64_t offset = 0;
    std::vector<double> values;

    Pmf() = default;
    Pmf(std::int64_t off, std::vector<double> vals) : offset(off), values(std::move(vals)) {}

    /// Unit mass at a single index.
    static Pmf delta(std::int64_t at) { return Pmf(at, {1.0}); }

    std::int64_t lo() const { return offset; }
    std::int64_t hi() const { return offset + static_cast<std::int64_t>(values.size()) - 1; }
    bool empty() const { return values.empty(); }

    /// Mass at an absolute index (zero outside the stored range).
    double at(std::int64_t index) const {
        const std::int64_t i = index - offset;
        if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return 0.0;
        return values[static_cast<std::size_t>(i)];
    }

    double mass() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }

    /// Drop exact zeros at both ends; keeps (offset, values) canonical.
    void trim() {
        std::size_t first = 0;
        while (first < values.size() && values[first] == 0.0) ++first;
        std::size_t last = values.size();
        while (last > first && values[last - 1] == 0.0) --last;
        if (first == 0 && last == values.size()) return;
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(last), values.end());
        values.erase(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(first));
        offset += static_cast<std::int64_t>(first);
        if (values.empty()) offset = 0;
    }
};

} // namespace walkocc
