#pragma once

#include "tritile/scalar.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace tritile {

struct Point {
    Scalar x;
    Scalar y;

    Backend backend() const { return x.backend(); }

    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const Scalar& s, const Point& p) { return {s * p.x, s * p.y}; }
    Point operator-() const { return {-x, -y}; }

    /// Equality under the backend comparison (tolerant for floats).
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    bool identical(const Point& other) const { return x.identical(other.x) && y.identical(other.y); }
};

Point make_point(double x, double y, double eps = kDefaultEpsilon);
Point make_point(const mpq_class& x, const mpq_class& y);

Scalar cross(const Point& a, const Point& b);
Scalar dot(const Point& a, const Point& b);
Scalar squared_length(const Point& v);

/// Deterministic total order used for canonicalisation: by y, then x.
/// Float points are ordered by raw doubles so the order stays transitive.
bool canonical_less(const Point& a, const Point& b);

struct Segment {
    Point a;
    Point b;
};

/// Sign of the doubled signed area of (p, q, r).
///
/// Exact points are evaluated with a floating-point filter and an exact
/// fallback. Float points are treated as collinear when the distance of r from
/// line pq is at most eps * |q - p| * |r - p| / |q - p|, i.e. the sine of the
/// angle at p is below eps; this keeps the test scale-invariant.
int orient(const Point& p, const Point& q, const Point& r);

/// True iff p is collinear with s and strictly between its endpoints.
bool point_in_segment_interior(const Point& p, const Segment& s);

/// Common sub-segment of two collinear segments when it has positive length.
std::optional<Segment> collinear_overlap(const Segment& s1, const Segment& s2);

/// An equilateral triangle with counterclockwise vertices.
class TrianglePlacement {
public:
    /// Validates equilaterality and nondegeneracy; clockwise input is reordered.
    TrianglePlacement(Point v0, Point v1, Point v2);

    /// Upward triangle with lower-left vertex `origin` and side `side`
    /// (only in the exact backend, where sqrt(3) is representable).
    static TrianglePlacement upward(const Point& origin, const Scalar& side);
    /// Downward triangle with upper-left vertex `origin`.
    static TrianglePlacement downward(const Point& origin, const Scalar& side);

    const Point& vertex(std::size_t i) const { return v_[i % 3]; }
    const std::array<Point, 3>& vertices() const { return v_; }
    Backend backend() const { return v_[0].backend(); }

    /// Directed edge i runs from vertex(i) to vertex(i + 1).
    Segment edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }

    Scalar squared_side() const { return squared_length(v_[1] - v_[0]); }
    /// Exact side lengths must lie in Q(sqrt 3) (BackendError otherwise).
    Scalar side() const { return squared_side().sqrt(); }
    std::array<Scalar, 3> side_lengths() const;
    Scalar area() const;

    TrianglePlacement translated(const Point& offset) const;

    /// Same vertex set (under backend equality), in any rotation.
    bool same_as(const TrianglePlacement& other) const;
    /// Rotates the vertex list so that vertex 0 is the canonical-least vertex.
    TrianglePlacement canonical() const;

    bool identical(const TrianglePlacement& other) const;

private:
    TrianglePlacement(std::array<Point, 3> v, bool /*trusted*/) : v_(std::move(v)) {}
    std::array<Point, 3> v_;
};

bool canonical_less(const TrianglePlacement& a, const TrianglePlacement& b);

/// True iff the open triangles intersect (boundary contact alone is false).
bool interiors_intersect(const TrianglePlacement& t1, const TrianglePlacement& t2);

/// True iff some edge of t1 equals some edge of t2 as an unordered point pair.
bool shares_full_side(const TrianglePlacement& t1, const TrianglePlacement& t2);

/// A convex polygon, vertices counterclockwise.
using Polygon = std::vector<Point>;

/// Keeps the part of `poly` on the left of (or on) the directed line a->b.
Polygon clip_halfplane(const Polygon& poly, const Point& a, const Point& b);
Scalar polygon_area(const Polygon& poly, const Scalar& zero);

/// Axis-aligned bounding box in doubles, padded so that it contains every
/// point equal to a vertex under the backend comparison.
struct Box {
    double xmin;
    double ymin;
    double xmax;
    double ymax;
};
Box padded_box(std::span<const Point> points);

} // namespace tritile
