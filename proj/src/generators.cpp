#include "tritile/generators.hpp"

#include "tritile/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tritile {

namespace {

Scalar half(const Scalar& s) { return s / Scalar::constant(s, 2); }

Point mirrored(const Point& p) { return {-p.x, p.y}; }

TrianglePlacement mirrored(const TrianglePlacement& t) {
    return TrianglePlacement(mirrored(t.vertex(0)), mirrored(t.vertex(1)), mirrored(t.vertex(2)));
}

// Integer box of (m, n) with m*t1 + n*t2 covering the given rectangle.
struct IndexBox {
    long m_lo;
    long m_hi;
    long n_lo;
    long n_hi;
};

IndexBox lattice_box(const std::array<Point, 2>& basis, double xmin, double xmax, double ymin, double ymax) {
    const double ax = basis[0].x.to_double();
    const double ay = basis[0].y.to_double();
    const double bx = basis[1].x.to_double();
    const double by = basis[1].y.to_double();
    const double det = ax * by - ay * bx;
    IndexBox box{0, 0, 0, 0};
    bool first = true;
    for (double x : {xmin, xmax}) {
        for (double y : {ymin, ymax}) {
            const double m = (x * by - y * bx) / det;
            const double n = (ax * y - ay * x) / det;
            const long mf = static_cast<long>(std::floor(m)) - 1;
            const long mc = static_cast<long>(std::ceil(m)) + 1;
            const long nf = static_cast<long>(std::floor(n)) - 1;
            const long nc = static_cast<long>(std::ceil(n)) + 1;
            if (first) {
                box = {mf, mc, nf, nc};
                first = false;
            } else {
                box.m_lo = std::min(box.m_lo, mf);
                box.m_hi = std::max(box.m_hi, mc);
                box.n_lo = std::min(box.n_lo, nf);
                box.n_hi = std::max(box.n_hi, nc);
            }
        }
    }
    return box;
}

void require_positive(const Scalar& s, const char* name) {
    if (s.sign() <= 0) {
        throw NonPositiveSide(std::string(name) + " must be positive");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Periodic three-size tiling

std::array<TrianglePlacement, 3> periodic_cell(const PeriodicSpec& spec) {
    if (!spec.b.is_exact() || !spec.c.is_exact()) {
        throw BackendError("the periodic construction requires the exact backend");
    }
    require_positive(spec.b, "b");
    require_positive(spec.c, "c");
    const Scalar zero = Scalar::constant(spec.b, 0);
    const Scalar a = spec.a();
    const Point origin{zero, zero};
    std::array<TrianglePlacement, 3> cell{
        TrianglePlacement::upward(origin, a),
        TrianglePlacement::downward(origin, spec.b),
        TrianglePlacement::downward({spec.b, zero}, spec.c),
    };
    if (spec.chirality == Chirality::RightBFirst) {
        for (auto& t : cell) {
            t = mirrored(t);
        }
    }
    return cell;
}

std::array<Point, 2> periodic_lattice(const PeriodicSpec& spec) {
    if (!spec.b.is_exact() || !spec.c.is_exact()) {
        throw BackendError("the periodic construction requires the exact backend");
    }
    const Scalar a = spec.a();
    const Scalar sqrt3 = Scalar(QSqrt3::sqrt3());
    // t1 = (b/2 - a, -sqrt3 b/2), t2 = ((a + b)/2, -sqrt3 c/2).
    std::array<Point, 2> basis{
        Point{half(spec.b) - a, -(sqrt3 * half(spec.b))},
        Point{half(a + spec.b), -(sqrt3 * half(spec.c))},
    };
    if (spec.chirality == Chirality::RightBFirst) {
        for (auto& v : basis) {
            v = mirrored(v);
        }
    }
    return basis;
}

TilingPatch periodic_three_size(const PeriodicSpec& spec, const Window& window) {
    if (window.backend() != Backend::Exact) {
        throw BackendError("the periodic construction requires an exact window");
    }
    const auto cell = periodic_cell(spec);
    const auto basis = periodic_lattice(spec);
    const double pad = spec.a().to_double() + 1.0;
    const IndexBox range = lattice_box(basis, window.xmin.to_double() - pad, window.xmax.to_double() + pad,
                                       window.ymin.to_double() - pad, window.ymax.to_double() + pad);
    std::vector<TrianglePlacement> tiles;
    for (long m = range.m_lo; m <= range.m_hi; ++m) {
        for (long n = range.n_lo; n <= range.n_hi; ++n) {
            const Point offset = Scalar::exact(m) * basis[0] + Scalar::exact(n) * basis[1];
            for (const auto& t : cell) {
                TrianglePlacement moved = t.translated(offset);
                if (meets_window(moved, window)) {
                    tiles.push_back(std::move(moved));
                }
            }
        }
    }
    return build_patch(std::move(tiles), window);
}

// ---------------------------------------------------------------------------
// Spiral

double spiral_ratio() {
    const auto f = [](double x) { return x * x * x + x * x - 1.0; };
    double lo = 0.7;
    double hi = 0.8;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

Point spiral_map(const SpiralSpec& spec, const Point& p, int i) {
    // Rotation by i * pi/3 from an exact table; scale alpha^i.
    static const double kHalfSqrt3 = std::sqrt(3.0) / 2.0;
    static const double kCos[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
    static const double kSin[6] = {0.0, kHalfSqrt3, kHalfSqrt3, 0.0, -kHalfSqrt3, -kHalfSqrt3};
    const int k = ((i % 6) + 6) % 6;
    static const double alpha = spiral_ratio();
    const double scale = std::pow(alpha, i);
    const double px = spec.fixed_point.x.to_double();
    const double py = spec.fixed_point.y.to_double();
    const double dx = p.x.to_double() - px;
    const double dy = p.y.to_double() - py;
    const double eps = p.x.epsilon() > 0 ? p.x.epsilon() : kDefaultEpsilon;
    return make_point(px + scale * (kCos[k] * dx - kSin[k] * dy), py + scale * (kSin[k] * dx + kCos[k] * dy), eps);
}

TrianglePlacement spiral_seed(const SpiralSpec& spec) {
    if (spec.fixed_point.backend() != Backend::Float || spec.start.backend() != Backend::Float) {
        throw BackendError("the spiral construction requires the float backend");
    }
    if (spec.fixed_point == spec.start) {
        throw DegenerateSpec("fixed point and start point coincide");
    }
    const Point& a = spec.start;
    const Point b = spiral_map(spec, a, 1);
    const double dx = b.x.to_double() - a.x.to_double();
    const double dy = b.y.to_double() - a.y.to_double();
    const double c = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    const double eps = a.x.epsilon();
    const int side_of_fixed = orient(a, b, spec.fixed_point);
    for (double sign : {1.0, -1.0}) {
        const Point x = make_point(a.x.to_double() + c * dx - sign * s * dy, a.y.to_double() + sign * s * dx + c * dy, eps);
        if (orient(a, b, x) == side_of_fixed) {
            return TrianglePlacement(a, b, x);
        }
    }
    throw DegenerateSpec("fixed point lies on the line through start and its image");
}

TilingPatch klaassen_spiral(const SpiralSpec& spec) {
    if (spec.i_min > spec.i_max) {
        throw RangeError("empty index range");
    }
    if (std::abs(spec.i_min) > 120 || std::abs(spec.i_max) > 120) {
        throw RangeError("spiral indices are limited to |i| <= 120");
    }
    const TrianglePlacement seed = spiral_seed(spec);
    const double alpha = spiral_ratio();
    const double px = spec.fixed_point.x.to_double();
    const double py = spec.fixed_point.y.to_double();
    const double eps = spec.start.x.epsilon();
    const double side0 = std::sqrt(seed.squared_side().to_double());
    const double smallest = side0 * std::pow(alpha, spec.i_max);
    if (smallest <= 1e3 * eps * std::max({1.0, std::abs(px), std::abs(py)})) {
        throw RangeError("smallest spiral triangle is below the comparison tolerance");
    }

    std::vector<TrianglePlacement> tiles;
    double xmin = HUGE_VAL;
    double xmax = -HUGE_VAL;
    double ymin = HUGE_VAL;
    double ymax = -HUGE_VAL;
    for (int i = spec.i_min; i <= spec.i_max; ++i) {
        TrianglePlacement t(spiral_map(spec, seed.vertex(0), i), spiral_map(spec, seed.vertex(1), i),
                            spiral_map(spec, seed.vertex(2), i));
        for (const Point& v : t.vertices()) {
            xmin = std::min(xmin, v.x.to_double());
            xmax = std::max(xmax, v.x.to_double());
            ymin = std::min(ymin, v.y.to_double());
            ymax = std::max(ymax, v.y.to_double());
        }
        tiles.push_back(std::move(t));
    }

    // Distances of T_0 from the fixed point: nearest point and farthest vertex.
    double nearest = HUGE_VAL;
    double farthest = 0.0;
    for (std::size_t e = 0; e < 3; ++e) {
        const double ax = seed.vertex(e).x.to_double() - px;
        const double ay = seed.vertex(e).y.to_double() - py;
        const double bx = seed.vertex(e + 1).x.to_double() - px;
        const double by = seed.vertex(e + 1).y.to_double() - py;
        const double len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
        const double t = std::clamp(-(ax * (bx - ax) + ay * (by - ay)) / len2, 0.0, 1.0);
        nearest = std::min(nearest, std::hypot(ax + t * (bx - ax), ay + t * (by - ay)));
        farthest = std::max(farthest, std::hypot(ax, ay));
    }

    PatchOptions options;
    // Tiles T_j with j > i_max lie within farthest * alpha^(i_max + 1) of the
    // fixed point; tiles with j < i_min stay at least nearest * alpha^(i_min - 1)
    // away from it.
    options.puncture = Puncture{px, py, farthest * std::pow(alpha, spec.i_max + 1),
                                nearest * std::pow(alpha, spec.i_min - 1)};
    // Any margin below nearest/side keeps the neighbourhood of a triangle clear
    // of the fixed point; use half of that clearance.
    options.margin = MarginRule{MarginRule::Kind::RelativeToSide, Scalar::approx(0.5 * nearest / side0, eps)};
    const Window window = make_window(Scalar::approx(xmin, eps), Scalar::approx(xmax, eps),
                                      Scalar::approx(ymin, eps), Scalar::approx(ymax, eps));
    return build_patch(std::move(tiles), window, options);
}

// ---------------------------------------------------------------------------
// Uniform lattice

TilingPatch uniform_lattice(const Scalar& s, const Window& window) {
    require_positive(s, "s");
    if (s.backend() != window.backend()) {
        throw BackendMismatch("side and window from different backends");
    }
    const Scalar zero = Scalar::constant(s, 0);
    const Scalar sqrt3 = s.is_exact() ? Scalar(QSqrt3::sqrt3()) : Scalar::approx(std::sqrt(3.0), s.epsilon());
    const Scalar h = half(s) * sqrt3;
    const std::array<Point, 2> basis{Point{s, zero}, Point{half(s), h}};
    const double pad = s.to_double() + 1.0;
    const IndexBox range = lattice_box(basis, window.xmin.to_double() - pad, window.xmax.to_double() + pad,
                                       window.ymin.to_double() - pad, window.ymax.to_double() + pad);
    std::vector<TrianglePlacement> tiles;
    for (long j = range.n_lo; j <= range.n_hi; ++j) {
        for (long i = range.m_lo; i <= range.m_hi; ++i) {
            const Point origin = Scalar::constant(s, i) * basis[0] + Scalar::constant(s, j) * basis[1];
            for (TrianglePlacement t : {TrianglePlacement::upward(origin, s),
                                        TrianglePlacement::downward({origin.x + half(s), origin.y + h}, s)}) {
                if (meets_window(t, window)) {
                    tiles.push_back(std::move(t));
                }
            }
        }
    }
    return build_patch(std::move(tiles), window);
}

} // namespace tritile
