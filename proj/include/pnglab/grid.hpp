#ifndef PNGLAB_GRID_HPP
#define PNGLAB_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace pnglab {

// Uniform grid on [x_lo, x_hi]. Abscissae are always computed from the
// index so that repeated addition never accumulates rounding error.
struct RealGrid {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double step = 0.0;
    std::size_t count = 0;

    RealGrid() = default;

    RealGrid(double lo, double hi, double h) : x_lo(lo), x_hi(hi), step(h) {
        if (!(lo < hi)) throw std::invalid_argument("RealGrid: need x_lo < x_hi");
        if (!(h > 0.0)) throw std::invalid_argument("RealGrid: need step > 0");
        count = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
    }

    double x(std::size_t i) const { return x_lo + static_cast<double>(i) * step; }

    bool contains(double x) const { return x >= x_lo && x <= x_hi; }

    // Index of the cell [x(i), x(i+1)] containing x; clamped to valid cells.
    std::size_t cell(double x) const {
        if (!contains(x)) throw std::out_of_range("RealGrid::cell: x outside grid");
        auto i = static_cast<std::ptrdiff_t>(std::floor((x - x_lo) / step));
        if (i < 0) i = 0;
        if (i > static_cast<std::ptrdiff_t>(count) - 2) i = static_cast<std::ptrdiff_t>(count) - 2;
        return static_cast<std::size_t>(i);
    }
};

}  // namespace pnglab

#endif
