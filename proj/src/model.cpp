#include "tritile/model.hpp"

#include "tritile/errors.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace tritile {

namespace detail {

using BoxPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using RBox = bg::model::box<BoxPoint>;
using Entry = std::pair<RBox, std::size_t>;
using RTree = bgi::rtree<Entry, bgi::rstar<16>>;

struct SpatialIndex {
    RTree triangles;
    RTree vertices;
};

RBox to_rbox(const Box& b) { return RBox(BoxPoint(b.xmin, b.ymin), BoxPoint(b.xmax, b.ymax)); }

std::vector<std::size_t> query(const RTree& tree, const Box& box) {
    std::vector<Entry> hits;
    tree.query(bgi::intersects(to_rbox(box)), std::back_inserter(hits));
    std::vector<std::size_t> ids;
    ids.reserve(hits.size());
    for (const auto& h : hits) {
        ids.push_back(h.second);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Window

Window make_window(const Scalar& xmin, const Scalar& xmax, const Scalar& ymin, const Scalar& ymax) {
    if (xmin.backend() != xmax.backend() || xmin.backend() != ymin.backend() ||
        xmin.backend() != ymax.backend()) {
        throw BackendMismatch("window bounds from different backends");
    }
    if (!(xmin < xmax) || !(ymin < ymax)) {
        throw PreconditionViolated("window must satisfy xmin < xmax and ymin < ymax");
    }
    return Window{xmin, xmax, ymin, ymax};
}

std::optional<Window> Window::shrunk(const Scalar& margin) const {
    Window w{xmin + margin, xmax - margin, ymin + margin, ymax - margin};
    if (!(w.xmin < w.xmax) || !(w.ymin < w.ymax)) {
        return std::nullopt;
    }
    return w;
}

Polygon Window::corners() const { return {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}; }

bool Window::identical(const Window& other) const {
    return xmin.identical(other.xmin) && xmax.identical(other.xmax) && ymin.identical(other.ymin) &&
           ymax.identical(other.ymax);
}

Scalar MarginRule::margin_for(const TrianglePlacement& t) const {
    if (kind == Kind::Absolute) {
        return value;
    }
    return value * side_upper_bound(t);
}

Scalar side_upper_bound(const TrianglePlacement& t) {
    const Scalar sq = t.squared_side();
    if (!sq.is_exact()) {
        return sq.sqrt();
    }
    if (auto root = sq.exact_value().sqrt()) {
        return Scalar(*root);
    }
    const double approx = std::sqrt(sq.to_double()) * (1.0 + 1e-9);
    return Scalar::exact(mpq_class(approx));
}

// ---------------------------------------------------------------------------
// Window predicates

bool meets_window(const TrianglePlacement& t, const Window& window) {
    // Separating axis test between two convex polygons; weak separation means
    // the open sets are disjoint.
    const Polygon rect = window.corners();
    const auto separated_by = [](const auto& poly, std::size_t n, const auto& others) {
        for (std::size_t e = 0; e < n; ++e) {
            const Point& a = poly[e];
            const Point& b = poly[(e + 1) % n];
            bool all_outside = true;
            for (const Point& v : others) {
                if (orient(a, b, v) > 0) {
                    all_outside = false;
                    break;
                }
            }
            if (all_outside) {
                return true;
            }
        }
        return false;
    };
    if (separated_by(t.vertices(), 3, rect)) {
        return false;
    }
    return !separated_by(rect, 4, t.vertices());
}

namespace {

double distance_to_segment(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

double distance_to_triangle(double px, double py, const TrianglePlacement& t) {
    double x[3];
    double y[3];
    for (std::size_t i = 0; i < 3; ++i) {
        x[i] = t.vertex(i).x.to_double();
        y[i] = t.vertex(i).y.to_double();
    }
    bool inside = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i + 1) % 3;
        if ((x[j] - x[i]) * (py - y[i]) - (y[j] - y[i]) * (px - x[i]) < 0) {
            inside = false;
        }
    }
    if (inside) {
        return 0.0;
    }
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i + 1) % 3;
        best = std::min(best, distance_to_segment(px, py, x[i], y[i], x[j], y[j]));
    }
    return best;
}

Interiority interiority(const TrianglePlacement& t, const Window& window, const MarginRule& rule,
                        const std::optional<Puncture>& puncture) {
    const Scalar m = rule.margin_for(t);
    for (const Point& v : t.vertices()) {
        if (v.x - m < window.xmin || v.x + m > window.xmax || v.y - m < window.ymin || v.y + m > window.ymax) {
            return Interiority::Boundary;
        }
    }
    if (puncture) {
        const double md = m.to_double();
        double farthest = 0.0;
        for (const Point& v : t.vertices()) {
            farthest = std::max(farthest, std::hypot(v.x.to_double() - puncture->cx, v.y.to_double() - puncture->cy));
        }
        if (farthest + md >= puncture->outer_radius) {
            return Interiority::Boundary;
        }
        if (distance_to_triangle(puncture->cx, puncture->cy, t) - md <= puncture->inner_radius) {
            return Interiority::Boundary;
        }
    }
    return Interiority::Interior;
}

} // namespace

// ---------------------------------------------------------------------------
// TilingPatch

std::size_t TilingPatch::interior_count() const {
    return static_cast<std::size_t>(std::count(marks_.begin(), marks_.end(), Interiority::Interior));
}

std::optional<std::size_t> TilingPatch::find_vertex(const Point& p) const {
    if (p.backend() != backend_) {
        throw BackendMismatch("point backend differs from patch backend");
    }
    const Point single[] = {p};
    for (std::size_t v : detail::query(index_->vertices, padded_box(single))) {
        if (vertices_[v] == p) {
            return v;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> TilingPatch::find_triangle(const TrianglePlacement& t) const {
    const auto v = find_vertex(t.vertex(0));
    if (!v) {
        return std::nullopt;
    }
    for (std::size_t i : vertex_triangles_[*v]) {
        if (triangles_[i].same_as(t)) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> TilingPatch::vertices_in_box(const Box& box) const {
    return detail::query(index_->vertices, box);
}

std::vector<std::size_t> TilingPatch::triangles_in_box(const Box& box) const {
    return detail::query(index_->triangles, box);
}

Interiority TilingPatch::interiority_of(const TrianglePlacement& t) const {
    return interiority(t, window_, margin_, puncture_);
}

bool TilingPatch::identical(const TilingPatch& other) const {
    if (backend_ != other.backend_ || eps_ != other.eps_ || size() != other.size() ||
        !window_.identical(other.window_) || margin_.kind != other.margin_.kind ||
        !margin_.value.identical(other.margin_.value) || puncture_.has_value() != other.puncture_.has_value()) {
        return false;
    }
    if (puncture_ && (puncture_->cx != other.puncture_->cx || puncture_->cy != other.puncture_->cy ||
                      puncture_->inner_radius != other.puncture_->inner_radius ||
                      puncture_->outer_radius != other.puncture_->outer_radius)) {
        return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (!triangles_[i].identical(other.triangles_[i])) {
            return false;
        }
    }
    return true;
}

TilingPatch build_patch(std::vector<TrianglePlacement> triangles, const Window& window,
                        const PatchOptions& options) {
    TilingPatch patch;
    patch.backend_ = window.backend();
    patch.window_ = make_window(window.xmin, window.xmax, window.ymin, window.ymax);
    patch.puncture_ = options.puncture;
    patch.eps_ = patch.backend_ == Backend::Exact ? options.eps : window.xmin.epsilon();
    for (const auto& t : triangles) {
        if (t.backend() != patch.backend_) {
            throw BackendMismatch("patch mixes exact and float coordinates");
        }
    }
    if (patch.puncture_ && patch.backend_ == Backend::Exact) {
        throw BackendError("punctured patches are float-only");
    }

    // Canonical order, remembering input positions for error reports.
    std::vector<std::size_t> order(triangles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (auto& t : triangles) {
        t = t.canonical();
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(triangles[a], triangles[b]);
    });
    patch.triangles_.reserve(triangles.size());
    for (std::size_t i : order) {
        patch.triangles_.push_back(triangles[i]);
    }

    auto index = std::make_shared<detail::SpatialIndex>();
    {
        std::vector<detail::Entry> entries;
        entries.reserve(patch.size());
        for (std::size_t i = 0; i < patch.size(); ++i) {
            entries.emplace_back(detail::to_rbox(padded_box(patch.triangles_[i].vertices())), i);
        }
        index->triangles = detail::RTree(entries.begin(), entries.end());
    }

    // Overlaps: report the pair with the smallest input indices found first
    // in canonical order.
    for (std::size_t i = 0; i < patch.size(); ++i) {
        for (std::size_t j : detail::query(index->triangles, padded_box(patch.triangles_[i].vertices()))) {
            if (j <= i) {
                continue;
            }
            if (interiors_intersect(patch.triangles_[i], patch.triangles_[j])) {
                throw OverlapError(std::min(order[i], order[j]), std::max(order[i], order[j]));
            }
        }
    }
    for (std::size_t i = 0; i < patch.size(); ++i) {
        if (!meets_window(patch.triangles_[i], patch.window_)) {
            throw PreconditionViolated("triangle " + std::to_string(order[i]) + " does not meet the window");
        }
    }

    // Vertex merging in canonical triangle order, so ids are deterministic.
    patch.triangle_vertices_.resize(patch.size());
    for (std::size_t i = 0; i < patch.size(); ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            const Point& p = patch.triangles_[i].vertex(k);
            const Point single[] = {p};
            const Box box = padded_box(single);
            std::optional<std::size_t> found;
            for (std::size_t v : detail::query(index->vertices, box)) {
                if (patch.vertices_[v] == p) {
                    found = v;
                    break;
                }
            }
            if (!found) {
                found = patch.vertices_.size();
                patch.vertices_.push_back(p);
                patch.vertex_triangles_.emplace_back();
                index->vertices.insert(detail::Entry(detail::to_rbox(box), *found));
            }
            patch.triangle_vertices_[i][k] = *found;
            patch.vertex_triangles_[*found].push_back(i);
        }
    }

    if (!patch.empty()) {
        patch.max_side_ = side_upper_bound(patch.triangles_[0]);
        patch.min_side_ = patch.max_side_;
        for (const auto& t : patch.triangles_) {
            const Scalar s = side_upper_bound(t);
            if (s > patch.max_side_) {
                patch.max_side_ = s;
            }
            if (s < patch.min_side_) {
                patch.min_side_ = s;
            }
        }
    } else {
        patch.max_side_ = Scalar::constant(window.xmin, 0);
        patch.min_side_ = patch.max_side_;
    }

    if (options.margin) {
        if (options.margin->value.backend() != patch.backend_) {
            throw BackendMismatch("margin backend differs from patch backend");
        }
        patch.margin_ = *options.margin;
    } else {
        patch.margin_ = MarginRule{MarginRule::Kind::Absolute, Scalar::constant(window.xmin, 2) * patch.max_side_};
    }
    patch.marks_.reserve(patch.size());
    for (const auto& t : patch.triangles_) {
        patch.marks_.push_back(interiority(t, patch.window_, patch.margin_, patch.puncture_));
    }
    patch.index_ = std::move(index);
    return patch;
}

std::vector<Incidence> incident_triangles(const TilingPatch& patch, const Point& p) {
    const auto v = patch.find_vertex(p);
    if (!v) {
        throw UnknownVertex("point is not a vertex of the patch");
    }
    std::vector<Incidence> result;
    for (std::size_t t : patch.triangles_at_vertex(*v)) {
        const auto& ids = patch.triangle_vertices(t);
        const std::size_t corner = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), *v) - ids.begin());
        result.push_back({t, IncidenceRole::Vertex, corner});
    }
    const Point single[] = {p};
    for (std::size_t t : patch.triangles_in_box(padded_box(single))) {
        const auto& ids = patch.triangle_vertices(t);
        if (std::find(ids.begin(), ids.end(), *v) != ids.end()) {
            continue;
        }
        for (std::size_t e = 0; e < 3; ++e) {
            if (point_in_segment_interior(p, patch.triangle(t).edge(e))) {
                result.push_back({t, IncidenceRole::EdgeInterior, e});
            }
        }
    }
    return result;
}

Scalar clipped_area(const TilingPatch& patch) { return clipped_area(patch, patch.window()); }

Scalar clipped_area(const TilingPatch& patch, const Window& region) {
    Scalar total = Scalar::constant(region.xmin, 0);
    const Polygon corners = region.corners();
    const Box box = padded_box(corners);
    for (std::size_t i : patch.triangles_in_box(box)) {
        const auto& t = patch.triangle(i);
        Polygon poly(t.vertices().begin(), t.vertices().end());
        for (std::size_t e = 0; e < 4 && !poly.empty(); ++e) {
            poly = clip_halfplane(poly, corners[e], corners[(e + 1) % 4]);
        }
        if (poly.size() >= 3) {
            total += polygon_area(poly, Scalar::constant(total, 0));
        }
    }
    return total;
}

} // namespace tritile
