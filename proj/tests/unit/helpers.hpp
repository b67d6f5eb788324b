#pragma once

#include "onsager/grid.hpp"

#include <array>
#include <numbers>

namespace test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline onsager::Grid box(std::size_t n, double L = kTwoPi) {
    const std::array<std::size_t, 2> d{n, n};
    const std::array<double, 2> e{L, L};
    const std::array<onsager::AxisKind, 2> k{onsager::AxisKind::periodic, onsager::AxisKind::periodic};
    return onsager::make_grid(d, e, k);
}

inline onsager::Grid channel(std::size_t nx, std::size_t ny, double lx, double ly) {
    const std::array<std::size_t, 2> d{nx, ny};
    const std::array<double, 2> e{lx, ly};
    const std::array<onsager::AxisKind, 2> k{onsager::AxisKind::periodic, onsager::AxisKind::wall};
    return onsager::make_grid(d, e, k);
}

} // namespace test
