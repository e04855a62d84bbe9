#pragma once
// Reference computations kept independent of the library's predicates and
// clipping: plain Sutherland-Hodgman on Scalar coordinates, Newton iteration
// in long double, and hand-derived lattice formulas.

#include "tritile/generators.hpp"

#include <cmath>
#include <vector>

namespace oracle {

using tritile::Point;
using tritile::Scalar;

using Poly = std::vector<Point>;

inline Scalar cross3(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Clip `subject` by the convex counterclockwise polygon `clip`.
inline Poly clip_convex(Poly subject, const Poly& clip) {
    for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
        const Point& a = clip[e];
        const Point& b = clip[(e + 1) % clip.size()];
        Poly out;
        for (std::size_t i = 0; i < subject.size(); ++i) {
            const Point& p = subject[i];
            const Point& q = subject[(i + 1) % subject.size()];
            const Scalar sp = cross3(a, b, p);
            const Scalar sq = cross3(a, b, q);
            const bool pin = sp.sign() >= 0;
            const bool qin = sq.sign() >= 0;
            if (pin) {
                out.push_back(p);
            }
            if (pin != qin && sp.sign() != 0 && sq.sign() != 0) {
                const Scalar t = sp / (sp - sq);
                out.push_back(Point{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        subject = std::move(out);
    }
    return subject;
}

inline Scalar area(const Poly& poly, const Scalar& zero) {
    Scalar twice = zero;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        twice = twice + (p.x * q.y - p.y * q.x);
    }
    return twice / Scalar::constant(zero, 2);
}

inline Poly as_poly(const tritile::TrianglePlacement& t) { return {t.vertex(0), t.vertex(1), t.vertex(2)}; }

/// Real root of x^3 + x^2 - 1 by Newton's method in long double.
inline long double plastic_reciprocal() {
    long double x = 0.75L;
    for (int i = 0; i < 60; ++i) {
        x -= (x * x * x + x * x - 1.0L) / (3.0L * x * x + 2.0L * x);
    }
    return x;
}

struct LatticeCheck {
    bool determinant_matches = false;
    bool determinant_matches_side_form = false;
    bool overlap_free = false;
    Scalar defect;
};

/// 3x3 block of lattice translates of the three-tile cell: exact determinant
/// against sqrt(3)/4 (a^2 + b^2 + c^2) and sqrt(3)/2 (b^2 + bc + c^2), pairwise
/// zero overlap area, and the uncovered area of the fundamental parallelogram
/// centred on the middle cell.
inline LatticeCheck lattice_check(const tritile::PeriodicSpec& spec) {
    const auto cell = tritile::periodic_cell(spec);
    const auto t = tritile::periodic_lattice(spec);
    const Scalar zero = Scalar::exact(0);
    const Scalar sqrt3 = Scalar::exact(0, 1);
    const Scalar& b = spec.b;
    const Scalar& c = spec.c;
    const Scalar a = b + c;

    LatticeCheck out;
    const Scalar det = (t[0].x * t[1].y - t[0].y * t[1].x).abs();
    out.determinant_matches = det == sqrt3 / Scalar::exact(4) * (a * a + b * b + c * c);
    out.determinant_matches_side_form = det == sqrt3 / Scalar::exact(2) * (b * b + b * c + c * c);

    std::vector<Poly> tiles;
    for (int m = -1; m <= 1; ++m) {
        for (int n = -1; n <= 1; ++n) {
            const Scalar sm = Scalar::exact(m);
            const Scalar sn = Scalar::exact(n);
            const Point shift{sm * t[0].x + sn * t[1].x, sm * t[0].y + sn * t[1].y};
            for (const auto& tile : cell) {
                Poly p = as_poly(tile);
                for (auto& v : p) {
                    v = Point{v.x + shift.x, v.y + shift.y};
                }
                tiles.push_back(std::move(p));
            }
        }
    }
    out.overlap_free = true;
    for (std::size_t i = 0; i < tiles.size() && out.overlap_free; ++i) {
        for (std::size_t j = i + 1; j < tiles.size(); ++j) {
            if (area(clip_convex(tiles[i], tiles[j]), zero).sign() != 0) {
                out.overlap_free = false;
                break;
            }
        }
    }

    // Parallelogram spanned by t0, t1 centred on the large tile's centroid.
    const auto& large = cell[0];
    const Point centroid{(large.vertex(0).x + large.vertex(1).x + large.vertex(2).x) / Scalar::exact(3),
                         (large.vertex(0).y + large.vertex(1).y + large.vertex(2).y) / Scalar::exact(3)};
    const Point corner{centroid.x - (t[0].x + t[1].x) / Scalar::exact(2),
                       centroid.y - (t[0].y + t[1].y) / Scalar::exact(2)};
    Poly region{corner, Point{corner.x + t[0].x, corner.y + t[0].y},
                Point{corner.x + t[0].x + t[1].x, corner.y + t[0].y + t[1].y},
                Point{corner.x + t[1].x, corner.y + t[1].y}};
    if (area(region, zero).sign() < 0) {
        std::swap(region[1], region[3]);
    }
    Scalar covered = zero;
    for (const auto& tile : tiles) {
        covered = covered + area(clip_convex(tile, region), zero);
    }
    out.defect = area(region, zero) - covered;
    return out;
}

} // namespace oracle
