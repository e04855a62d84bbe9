#include "tritile/geometry.hpp"

#include "tritile/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tritile {

namespace {

// Sign without tolerance: exact sign, or the sign of the raw double.
int raw_sign(const Scalar& s) {
    if (s.is_exact()) {
        return s.exact_value().sign();
    }
    const double v = s.to_double();
    return (v > 0) - (v < 0);
}

int raw_compare(const Scalar& a, const Scalar& b) {
    if (a.is_exact()) {
        return compare(a.exact_value(), b.exact_value());
    }
    const double x = a.to_double();
    const double y = b.to_double();
    return (x > y) - (x < y);
}

// |a - b| <= eps * max(|a|, |b|) for floats; exact equality otherwise.
// Used for quantities of dimension length^2 where the unit floor of the
// coordinate comparison would be meaningless.
bool relative_equal(const Scalar& a, const Scalar& b) {
    if (a.is_exact()) {
        return a == b;
    }
    const double x = a.to_double();
    const double y = b.to_double();
    return std::abs(x - y) <= std::max(a.epsilon(), b.epsilon()) * std::max(std::abs(x), std::abs(y));
}

Scalar sqrt3_like(const Scalar& like) {
    if (like.is_exact()) {
        return Scalar(QSqrt3::sqrt3());
    }
    return Scalar::approx(std::sqrt(3.0), like.epsilon());
}

void require_same_backend(const Point& a, const Point& b) {
    if (a.backend() != b.backend()) {
        throw BackendMismatch("points from different backends");
    }
}

} // namespace

Point make_point(double x, double y, double eps) { return {Scalar::approx(x, eps), Scalar::approx(y, eps)}; }

Point make_point(const mpq_class& x, const mpq_class& y) { return {Scalar::exact(x), Scalar::exact(y)}; }

Scalar cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

Scalar dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

Scalar squared_length(const Point& v) { return dot(v, v); }

bool canonical_less(const Point& a, const Point& b) {
    const int cy = raw_compare(a.y, b.y);
    if (cy != 0) {
        return cy < 0;
    }
    return raw_compare(a.x, b.x) < 0;
}

int orient(const Point& p, const Point& q, const Point& r) {
    require_same_backend(p, q);
    require_same_backend(p, r);
    if (p.backend() == Backend::Exact) {
        const QSqrt3& px = p.x.exact_value();
        const QSqrt3& py = p.y.exact_value();
        const QSqrt3& qx = q.x.exact_value();
        const QSqrt3& qy = q.y.exact_value();
        const QSqrt3& rx = r.x.exact_value();
        const QSqrt3& ry = r.y.exact_value();
        // Filter: every coordinate is within ~4 ulp of its magnitude bound.
        const double ax = qx.to_double() - px.to_double();
        const double ay = qy.to_double() - py.to_double();
        const double bx = rx.to_double() - px.to_double();
        const double by = ry.to_double() - py.to_double();
        const double det = ax * by - ay * bx;
        const double m = std::max({px.magnitude(), py.magnitude(), qx.magnitude(), qy.magnitude(),
                                   rx.magnitude(), ry.magnitude()});
        const double bound = 1e-12 * (m * m + 1e-300);
        if (det > bound) {
            return 1;
        }
        if (det < -bound) {
            return -1;
        }
        return ((qx - px) * (ry - py) - (qy - py) * (rx - px)).sign();
    }
    const double ax = q.x.to_double() - p.x.to_double();
    const double ay = q.y.to_double() - p.y.to_double();
    const double bx = r.x.to_double() - p.x.to_double();
    const double by = r.y.to_double() - p.y.to_double();
    const double det = ax * by - ay * bx;
    const double eps = std::max({p.x.epsilon(), q.x.epsilon(), r.x.epsilon()});
    // Angular tolerance for far r; for r near p or q it degrades to a height
    // of eps * |pq| instead of vanishing.
    const double tolerance = eps * std::hypot(ax, ay) * std::max(std::hypot(bx, by), std::hypot(bx - ax, by - ay));
    if (std::abs(det) <= tolerance) {
        return 0;
    }
    return det > 0 ? 1 : -1;
}

bool point_in_segment_interior(const Point& p, const Segment& s) {
    if (orient(s.a, s.b, p) != 0) {
        return false;
    }
    if (p == s.a || p == s.b) {
        return false;
    }
    const Point d = s.b - s.a;
    return raw_sign(dot(p - s.a, d)) > 0 && raw_sign(dot(s.b - p, d)) > 0;
}

std::optional<Segment> collinear_overlap(const Segment& s1, const Segment& s2) {
    if (orient(s1.a, s1.b, s2.a) != 0 || orient(s1.a, s1.b, s2.b) != 0) {
        return std::nullopt;
    }
    const Point d = s1.b - s1.a;
    // Parameters along d (scaled by |d|^2); s1 spans [0, |d|^2].
    struct Tagged {
        Scalar t;
        const Point* p;
    };
    Tagged lo1{dot(s1.a - s1.a, d), &s1.a};
    Tagged hi1{dot(s1.b - s1.a, d), &s1.b};
    Tagged c{dot(s2.a - s1.a, d), &s2.a};
    Tagged e{dot(s2.b - s1.a, d), &s2.b};
    if (raw_compare(c.t, e.t) > 0) {
        std::swap(c, e);
    }
    const Tagged& lo = raw_compare(c.t, lo1.t) > 0 ? c : lo1;
    const Tagged& hi = raw_compare(e.t, hi1.t) < 0 ? e : hi1;
    if (raw_compare(lo.t, hi.t) >= 0 || *lo.p == *hi.p) {
        return std::nullopt;
    }
    return Segment{*lo.p, *hi.p};
}

// ---------------------------------------------------------------------------
// TrianglePlacement

TrianglePlacement::TrianglePlacement(Point v0, Point v1, Point v2) : v_{std::move(v0), std::move(v1), std::move(v2)} {
    require_same_backend(v_[0], v_[1]);
    require_same_backend(v_[0], v_[2]);
    const int o = orient(v_[0], v_[1], v_[2]);
    if (o == 0) {
        throw DegenerateTriangleError("triangle has zero area");
    }
    if (o < 0) {
        std::swap(v_[1], v_[2]);
    }
    const Scalar s01 = squared_length(v_[1] - v_[0]);
    const Scalar s12 = squared_length(v_[2] - v_[1]);
    const Scalar s20 = squared_length(v_[0] - v_[2]);
    if (!relative_equal(s01, s12) || !relative_equal(s01, s20)) {
        throw DegenerateTriangleError("triangle is not equilateral");
    }
}

TrianglePlacement TrianglePlacement::upward(const Point& origin, const Scalar& side) {
    const Scalar half = side / Scalar::constant(side, 2);
    const Scalar height = half * sqrt3_like(side);
    return TrianglePlacement({origin, {origin.x + side, origin.y}, {origin.x + half, origin.y + height}}, true);
}

TrianglePlacement TrianglePlacement::downward(const Point& origin, const Scalar& side) {
    const Scalar half = side / Scalar::constant(side, 2);
    const Scalar height = half * sqrt3_like(side);
    return TrianglePlacement({origin, {origin.x + half, origin.y - height}, {origin.x + side, origin.y}}, true);
}

std::array<Scalar, 3> TrianglePlacement::side_lengths() const {
    return {squared_length(v_[1] - v_[0]).sqrt(), squared_length(v_[2] - v_[1]).sqrt(),
            squared_length(v_[0] - v_[2]).sqrt()};
}

Scalar TrianglePlacement::area() const {
    return cross(v_[1] - v_[0], v_[2] - v_[0]) / Scalar::constant(v_[0].x, 2);
}

TrianglePlacement TrianglePlacement::translated(const Point& offset) const {
    return TrianglePlacement({v_[0] + offset, v_[1] + offset, v_[2] + offset}, true);
}

bool TrianglePlacement::same_as(const TrianglePlacement& other) const {
    for (std::size_t r = 0; r < 3; ++r) {
        if (v_[0] == other.vertex(r) && v_[1] == other.vertex(r + 1) && v_[2] == other.vertex(r + 2)) {
            return true;
        }
    }
    return false;
}

TrianglePlacement TrianglePlacement::canonical() const {
    std::size_t least = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (canonical_less(v_[i], v_[least])) {
            least = i;
        }
    }
    return TrianglePlacement({vertex(least), vertex(least + 1), vertex(least + 2)}, true);
}

bool TrianglePlacement::identical(const TrianglePlacement& other) const {
    return v_[0].identical(other.v_[0]) && v_[1].identical(other.v_[1]) && v_[2].identical(other.v_[2]);
}

bool canonical_less(const TrianglePlacement& a, const TrianglePlacement& b) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (canonical_less(a.vertex(i), b.vertex(i))) {
            return true;
        }
        if (canonical_less(b.vertex(i), a.vertex(i))) {
            return false;
        }
    }
    return false;
}

namespace {

// True when some edge line of `t` weakly separates it from `other`.
bool has_separating_edge(const TrianglePlacement& t, const TrianglePlacement& other) {
    for (std::size_t e = 0; e < 3; ++e) {
        const Point& a = t.vertex(e);
        const Point& b = t.vertex(e + 1);
        bool separated = true;
        for (const Point& v : other.vertices()) {
            if (orient(a, b, v) > 0) {
                separated = false;
                break;
            }
        }
        if (separated) {
            return true;
        }
    }
    return false;
}

bool boxes_disjoint(const Box& a, const Box& b) {
    return a.xmax < b.xmin || b.xmax < a.xmin || a.ymax < b.ymin || b.ymax < a.ymin;
}

} // namespace

bool interiors_intersect(const TrianglePlacement& t1, const TrianglePlacement& t2) {
    if (t1.backend() != t2.backend()) {
        throw BackendMismatch("triangles from different backends");
    }
    if (boxes_disjoint(padded_box(t1.vertices()), padded_box(t2.vertices()))) {
        return false;
    }
    // Two convex polygons have disjoint interiors iff an edge line of one of
    // them weakly separates them.
    return !has_separating_edge(t1, t2) && !has_separating_edge(t2, t1);
}

bool shares_full_side(const TrianglePlacement& t1, const TrianglePlacement& t2) {
    if (t1.backend() != t2.backend()) {
        throw BackendMismatch("triangles from different backends");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const Segment e = t1.edge(i);
            const Segment f = t2.edge(j);
            if ((e.a == f.a && e.b == f.b) || (e.a == f.b && e.b == f.a)) {
                return true;
            }
        }
    }
    return false;
}

Polygon clip_halfplane(const Polygon& poly, const Point& a, const Point& b) {
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0) {
        return out;
    }
    const Point dir = b - a;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const Scalar sp = cross(dir, p - a);
        const Scalar sq = cross(dir, q - a);
        const int op = raw_sign(sp);
        const int oq = raw_sign(sq);
        if (op >= 0) {
            out.push_back(p);
        }
        if ((op > 0 && oq < 0) || (op < 0 && oq > 0)) {
            const Scalar t = sp / (sp - sq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

Scalar polygon_area(const Polygon& poly, const Scalar& zero) {
    Scalar twice = zero;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(poly[i], poly[(i + 1) % n]);
    }
    return twice / Scalar::constant(zero, 2);
}

Box padded_box(std::span<const Point> points) {
    Box box{HUGE_VAL, HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
    double eps = 0.0;
    for (const Point& p : points) {
        const double x = p.x.to_double();
        const double y = p.y.to_double();
        box.xmin = std::min(box.xmin, x);
        box.xmax = std::max(box.xmax, x);
        box.ymin = std::min(box.ymin, y);
        box.ymax = std::max(box.ymax, y);
        eps = std::max(eps, p.x.epsilon());
    }
    const double rel = std::max(1e-12, 4.0 * eps);
    const double extent = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    const double scale = std::max({1.0, std::abs(box.xmin), std::abs(box.xmax), std::abs(box.ymin),
                                   std::abs(box.ymax)});
    const double pad = rel * (scale + extent);
    box.xmin -= pad;
    box.ymin -= pad;
    box.xmax += pad;
    box.ymax += pad;
    return box;
}

} // namespace tritile
