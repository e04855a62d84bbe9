#pragma once

#include "tritile/model.hpp"

#include <array>

namespace tritile {

enum class Chirality {
    /// The b-segment comes first along every counterclockwise large edge.
    LeftBFirst,
    /// Mirror image of LeftBFirst.
    RightBFirst,
};

/// Periodic three-size tiling with small sides b, c and large side a = b + c.
struct PeriodicSpec {
    Scalar b;
    Scalar c;
    Chirality chirality = Chirality::LeftBFirst;

    Scalar a() const { return b + c; }
};

/// The three tiles of one lattice cell: large (side a), small (side b) and
/// small (side c), all anchored at the origin.
std::array<TrianglePlacement, 3> periodic_cell(const PeriodicSpec& spec);

/// Translation vectors t1, t2 of the cell lattice.
std::array<Point, 2> periodic_lattice(const PeriodicSpec& spec);

/// Every lattice translate of the cell meeting the window.
TilingPatch periodic_three_size(const PeriodicSpec& spec, const Window& window);

/// Spiral tiling of the plane minus `fixed_point`: T_i = phi^i(T_0) where phi
/// rotates by pi/3 about the fixed point and scales by the real root of
/// x^3 + x^2 - 1.
struct SpiralSpec {
    Point fixed_point;
    Point start;
    int i_min = -40;
    int i_max = 40;
};

/// Real root of x^3 + x^2 - 1 by bisection on [0.7, 0.8].
double spiral_ratio();

/// phi^i applied to p.
Point spiral_map(const SpiralSpec& spec, const Point& p, int i);

/// T_0: vertices start, phi(start) and the third vertex on the side of the
/// line through them that contains the fixed point.
TrianglePlacement spiral_seed(const SpiralSpec& spec);

/// All T_i for i in [i_min, i_max] (index i_min first in generation order;
/// the patch itself stores them canonically). The window is the bounding box
/// of the tiles; triangles whose neighbourhood may reach the missing tiles
/// (outside the generated range) are marked Boundary through a puncture
/// annulus and a margin proportional to each triangle's side.
TilingPatch klaassen_spiral(const SpiralSpec& spec);

/// Side-sharing triangular lattice of side s: a negative control.
TilingPatch uniform_lattice(const Scalar& s, const Window& window);

} // namespace tritile
