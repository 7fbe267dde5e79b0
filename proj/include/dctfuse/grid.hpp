#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dctfuse {

/// Dense row-major grid with one value per 8x8 block.
template <class T>
struct ValueGrid {
    int rows = 0;
    int cols = 0;
    std::vector<T> values;

    ValueGrid() = default;
    ValueGrid(int r, int c, T fill = T{})
        : rows(r), cols(c), values(std::size_t(r) * std::size_t(c), fill) {}

    T& at(int r, int c) { return values[std::size_t(r) * std::size_t(cols) + std::size_t(c)]; }
    const T& at(int r, int c) const {
        return values[std::size_t(r) * std::size_t(cols) + std::size_t(c)];
    }
    std::size_t size() const noexcept { return values.size(); }

    template <class U>
    bool same_shape(const ValueGrid<U>& o) const noexcept {
        return rows == o.rows && cols == o.cols;
    }

    friend bool operator==(const ValueGrid&, const ValueGrid&) = default;
};

/// Plain-text form: one grid row per line, values separated by single
/// spaces, trailing newline.
std::string format_grid(const ValueGrid<int>& g);

/// Inverse of format_grid(); throws Error(InvalidArgument) on ragged or
/// non-integer input.
ValueGrid<int> parse_grid(const std::string& text);

}  // namespace dctfuse
