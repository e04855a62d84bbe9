#pragma once

#include "tritile/geometry.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace tritile {

/// Axis-aligned analysis window, xmin < xmax and ymin < ymax.
struct Window {
    Scalar xmin;
    Scalar xmax;
    Scalar ymin;
    Scalar ymax;

    Backend backend() const { return xmin.backend(); }
    Scalar area() const { return (xmax - xmin) * (ymax - ymin); }
    /// The window shrunk by `margin` on every side (may be empty).
    std::optional<Window> shrunk(const Scalar& margin) const;
    Polygon corners() const;
    bool identical(const Window& other) const;
};

Window make_window(const Scalar& xmin, const Scalar& xmax, const Scalar& ymin, const Scalar& ymax);

/// How far a triangle's neighbourhood must reach into the window for the
/// triangle to count as Interior.
struct MarginRule {
    enum class Kind { Absolute, RelativeToSide };
    Kind kind = Kind::Absolute;
    /// A length for Absolute, a factor applied to the triangle's own side for
    /// RelativeToSide.
    Scalar value;

    Scalar margin_for(const TrianglePlacement& t) const;
};

/// Annular validity region around a puncture point (float patches only): a
/// triangle is Interior only if its margin neighbourhood lies inside the outer
/// disc and misses the inner disc. Used for tilings of a punctured plane, whose
/// finite patches are missing the tiles that accumulate at the puncture.
struct Puncture {
    double cx = 0.0;
    double cy = 0.0;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
};

enum class Interiority { Interior, Boundary };

struct PatchOptions {
    /// Defaults to Absolute with twice the maximum side length.
    std::optional<MarginRule> margin;
    std::optional<Puncture> puncture;
    /// Recorded tolerance for exact patches (float patches use the tolerance
    /// carried by their coordinates).
    double eps = kDefaultEpsilon;
};

namespace detail {
struct SpatialIndex;
}

/// A finite set of interior-disjoint equilateral triangles restricted to a
/// window, with vertex incidence and spatial indexes. Immutable after
/// build_patch; triangles are stored in canonical order.
class TilingPatch {
public:
    Backend backend() const { return backend_; }
    double epsilon() const { return eps_; }
    const Window& window() const { return window_; }
    const MarginRule& margin() const { return margin_; }
    const std::optional<Puncture>& puncture() const { return puncture_; }

    std::size_t size() const { return triangles_.size(); }
    bool empty() const { return triangles_.empty(); }
    const TrianglePlacement& triangle(std::size_t i) const { return triangles_[i]; }
    std::span<const TrianglePlacement> triangles() const { return triangles_; }

    Interiority mark(std::size_t i) const { return marks_[i]; }
    bool is_interior(std::size_t i) const { return marks_[i] == Interiority::Interior; }
    std::size_t interior_count() const;

    std::size_t vertex_count() const { return vertices_.size(); }
    const Point& vertex(std::size_t v) const { return vertices_[v]; }
    /// Vertex ids of triangle i, aligned with its vertex order.
    const std::array<std::size_t, 3>& triangle_vertices(std::size_t i) const { return triangle_vertices_[i]; }
    /// Triangles having vertex v as a corner, ascending.
    std::span<const std::size_t> triangles_at_vertex(std::size_t v) const { return vertex_triangles_[v]; }

    std::optional<std::size_t> find_vertex(const Point& p) const;
    std::optional<std::size_t> find_triangle(const TrianglePlacement& t) const;
    /// Candidates only: ids whose padded boxes meet `box`, ascending.
    std::vector<std::size_t> vertices_in_box(const Box& box) const;
    std::vector<std::size_t> triangles_in_box(const Box& box) const;

    /// Interiority of an arbitrary placement under this patch's window rules.
    Interiority interiority_of(const TrianglePlacement& t) const;

    Scalar max_side() const { return max_side_; }
    Scalar min_side() const { return min_side_; }

    /// Bit-level equality of triangles, window, backend, tolerance and rules.
    bool identical(const TilingPatch& other) const;

private:
    friend TilingPatch build_patch(std::vector<TrianglePlacement>, const Window&, const PatchOptions&);

    Backend backend_ = Backend::Exact;
    double eps_ = kDefaultEpsilon;
    Window window_;
    MarginRule margin_;
    std::optional<Puncture> puncture_;
    std::vector<TrianglePlacement> triangles_;
    std::vector<Interiority> marks_;
    std::vector<Point> vertices_;
    std::vector<std::array<std::size_t, 3>> triangle_vertices_;
    std::vector<std::vector<std::size_t>> vertex_triangles_;
    Scalar max_side_;
    Scalar min_side_;
    std::shared_ptr<const detail::SpatialIndex> index_;
};

/// Builds a patch: canonical ordering, overlap rejection (OverlapError with
/// input indices), vertex merging, interiority marks.
TilingPatch build_patch(std::vector<TrianglePlacement> triangles, const Window& window,
                        const PatchOptions& options = {});

/// A side length usable for margins even when it is irrational in Q(sqrt 3):
/// the exact root when it exists, otherwise a slightly larger rational.
Scalar side_upper_bound(const TrianglePlacement& t);

enum class IncidenceRole { Vertex, EdgeInterior };

struct Incidence {
    std::size_t triangle;
    IncidenceRole role;
    /// Corner index for Vertex, edge index for EdgeInterior.
    std::size_t index;
};

/// Triangles having p as a corner, plus those having p inside an edge.
/// Throws UnknownVertex when p is not a vertex of the patch.
std::vector<Incidence> incident_triangles(const TilingPatch& patch, const Point& p);

/// Total area of triangle intersect region over all triangles.
Scalar clipped_area(const TilingPatch& patch);
Scalar clipped_area(const TilingPatch& patch, const Window& region);

/// True iff the open triangle meets the open rectangle.
bool meets_window(const TrianglePlacement& t, const Window& window);

} // namespace tritile
