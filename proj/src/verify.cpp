#include "tritile/verify.hpp"

#include "tritile/errors.hpp"
#include "tritile/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tritile {

bool all_pass(const std::vector<Verdict>& verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

// Pairs of triangles whose padded bounding boxes overlap, by a sweep along x.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const TilingPatch& patch) {
    std::vector<Box> boxes;
    boxes.reserve(patch.size());
    for (const auto& t : patch.triangles()) {
        boxes.push_back(padded_box(t.vertices()));
    }
    std::vector<std::size_t> order(patch.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].xmin < boxes[b].xmin || (boxes[a].xmin == boxes[b].xmin && a < b);
    });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Box& bk = boxes[order[k]];
        for (std::size_t l = k + 1; l < order.size() && boxes[order[l]].xmin <= bk.xmax; ++l) {
            const Box& bl = boxes[order[l]];
            if (bl.ymin <= bk.ymax && bk.ymin <= bl.ymax) {
                pairs.emplace_back(std::min(order[k], order[l]), std::max(order[k], order[l]));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

Scalar scalar_like(const TilingPatch& patch, double value) {
    if (patch.backend() == Backend::Exact) {
        return Scalar::exact(mpq_class(value));
    }
    return Scalar::approx(value, patch.epsilon());
}

std::string show(const Scalar& s) { return s.to_string(); }

Point anchor(const TrianglePlacement& t) { return t.vertex(0); }

bool same_shape(const TrianglePlacement& a, const TrianglePlacement& b) {
    return a.vertex(1) - a.vertex(0) == b.vertex(1) - b.vertex(0) &&
           a.vertex(2) - a.vertex(0) == b.vertex(2) - b.vertex(0);
}

} // namespace

// ---------------------------------------------------------------------------
// Hypotheses

std::vector<Verdict> HypothesesReport::verdicts() const {
    std::vector<Verdict> out;
    out.push_back({"interiors_disjoint", !overlap.has_value(),
                   overlap ? "triangles " + std::to_string(overlap->first) + " and " +
                                 std::to_string(overlap->second) + " overlap"
                           : "no overlapping pair"});
    out.push_back({"no_shared_side", shared_sides.empty(),
                   std::to_string(shared_sides.size()) + " pairs share a full side"});
    out.push_back({"min_side", min_side_ok, "min side " + show(min_side)});
    out.push_back({"coverage", coverage_ok,
                   coverage_defect ? "defect " + show(*coverage_defect) + " over area " + show(coverage_area)
                                   : "empty coverage region"});
    return out;
}

HypothesesReport hypotheses(const TilingPatch& patch, const Scalar& delta) {
    if (delta.sign() <= 0) {
        throw PreconditionViolated("delta must be positive");
    }
    if (delta.backend() != patch.backend()) {
        throw BackendMismatch("delta backend differs from patch backend");
    }
    HypothesesReport report;
    for (const auto& [i, j] : candidate_pairs(patch)) {
        const auto& ti = patch.triangle(i);
        const auto& tj = patch.triangle(j);
        if (!report.overlap && interiors_intersect(ti, tj)) {
            report.overlap = std::make_pair(i, j);
        }
        if (shares_full_side(ti, tj)) {
            report.shared_sides.emplace_back(i, j);
        }
    }

    report.min_side_ok = true;
    report.min_side = patch.min_side();
    const Scalar delta_sq = delta * delta;
    for (const auto& t : patch.triangles()) {
        if (t.squared_side() < delta_sq) {
            report.min_side_ok = false;
        }
    }

    // Coverage region.
    Scalar covered;
    if (patch.puncture()) {
        const Puncture& p = *patch.puncture();
        const double outer = p.outer_radius / std::sqrt(2.0);
        const Window& w = patch.window();
        const Scalar xmin = std::max(w.xmin, scalar_like(patch, p.cx - outer));
        const Scalar xmax = std::min(w.xmax, scalar_like(patch, p.cx + outer));
        const Scalar ymin = std::max(w.ymin, scalar_like(patch, p.cy - outer));
        const Scalar ymax = std::min(w.ymax, scalar_like(patch, p.cy + outer));
        if (xmin < xmax && ymin < ymax) {
            const Window region{xmin, xmax, ymin, ymax};
            const Window hole{scalar_like(patch, p.cx - p.inner_radius), scalar_like(patch, p.cx + p.inner_radius),
                              scalar_like(patch, p.cy - p.inner_radius), scalar_like(patch, p.cy + p.inner_radius)};
            report.coverage_area = region.area() - hole.area();
            covered = clipped_area(patch, region) - clipped_area(patch, hole);
            report.coverage_defect = report.coverage_area - covered;
        }
    } else {
        Scalar margin = patch.margin().value;
        if (patch.margin().kind == MarginRule::Kind::RelativeToSide) {
            margin = margin * patch.max_side();
        }
        if (auto region = patch.window().shrunk(margin)) {
            report.coverage_area = region->area();
            covered = clipped_area(patch, *region);
            report.coverage_defect = report.coverage_area - covered;
        }
    }
    if (!report.coverage_defect) {
        report.coverage_ok = true;
    } else if (patch.backend() == Backend::Exact) {
        report.coverage_ok = report.coverage_defect->sign() == 0;
    } else {
        report.coverage_ok = std::abs(report.coverage_defect->to_double()) <=
                             patch.epsilon() * std::abs(report.coverage_area.to_double());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Periods

std::optional<std::pair<long, long>> lattice_coordinates(const std::array<Point, 2>& basis, const Point& v) {
    const Scalar det = cross(basis[0], basis[1]);
    if (det.sign() == 0) {
        throw PreconditionViolated("lattice basis is degenerate");
    }
    const Scalar m = cross(v, basis[1]) / det;
    const Scalar n = cross(basis[0], v) / det;
    if (m.is_exact()) {
        const QSqrt3& qm = m.exact_value();
        const QSqrt3& qn = n.exact_value();
        if (!qm.is_rational() || !qn.is_rational() || qm.rational().get_den() != 1 ||
            qn.rational().get_den() != 1) {
            return std::nullopt;
        }
        return std::make_pair(qm.rational().get_num().get_si(), qn.rational().get_num().get_si());
    }
    const double md = std::round(m.to_double());
    const double nd = std::round(n.to_double());
    const double tol = 1e3 * m.epsilon();
    if (std::abs(m.to_double() - md) > tol || std::abs(n.to_double() - nd) > tol) {
        return std::nullopt;
    }
    return std::make_pair(static_cast<long>(md), static_cast<long>(nd));
}

bool same_lattice(const std::array<Point, 2>& first, const std::array<Point, 2>& second) {
    for (const Point& v : second) {
        if (!lattice_coordinates(first, v)) {
            return false;
        }
    }
    for (const Point& v : first) {
        if (!lattice_coordinates(second, v)) {
            return false;
        }
    }
    return true;
}

bool is_period(const TilingPatch& patch, const Point& v) {
    std::size_t checked = 0;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        if (!patch.is_interior(i)) {
            continue;
        }
        const TrianglePlacement image = patch.triangle(i).translated(v);
        if (patch.interiority_of(image) != Interiority::Interior) {
            continue;
        }
        if (!patch.find_triangle(image)) {
            return false;
        }
        ++checked;
    }
    return checked > 0;
}

std::vector<Point> detect_periods(const TilingPatch& patch) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        if (patch.is_interior(i) && classify(patch, i) == TriangleClass::Large) {
            pool.push_back(i);
        }
    }
    if (pool.size() < 2) {
        pool.clear();
        for (std::size_t i = 0; i < patch.size(); ++i) {
            if (patch.is_interior(i)) {
                pool.push_back(i);
            }
        }
    }
    if (pool.size() < 2) {
        return {};
    }

    // Reference: the pooled triangle closest to the window centre.
    const Window& w = patch.window();
    const double cx = 0.5 * (w.xmin.to_double() + w.xmax.to_double());
    const double cy = 0.5 * (w.ymin.to_double() + w.ymax.to_double());
    const auto distance = [&](std::size_t i) {
        const Point& p = anchor(patch.triangle(i));
        return std::hypot(p.x.to_double() - cx, p.y.to_double() - cy);
    };
    const std::size_t ref = *std::min_element(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
        return distance(a) < distance(b);
    });

    struct Candidate {
        Point v;
        Scalar length_sq;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i : pool) {
        if (i == ref || !same_shape(patch.triangle(i), patch.triangle(ref))) {
            continue;
        }
        Point v = anchor(patch.triangle(i)) - anchor(patch.triangle(ref));
        Scalar len = squared_length(v);
        candidates.push_back({std::move(v), std::move(len)});
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        const int c = compare(a.length_sq, b.length_sq);
        if (c != 0) {
            return c < 0;
        }
        return canonical_less(a.v, b.v);
    });

    constexpr std::size_t kMaxTested = 256;
    std::vector<Point> basis;
    std::size_t tested = 0;
    for (const Candidate& c : candidates) {
        if (tested++ >= kMaxTested) {
            break;
        }
        if (!basis.empty() && cross(basis[0], c.v).sign() == 0) {
            continue;
        }
        if (is_period(patch, c.v)) {
            basis.push_back(c.v);
            if (basis.size() == 2) {
                break;
            }
        }
    }
    if (basis.size() == 2) {
        // Lagrange reduction; the two successive minima already form a basis
        // in two dimensions, this only normalises the pair.
        while (true) {
            if (squared_length(basis[1]) < squared_length(basis[0])) {
                std::swap(basis[0], basis[1]);
            }
            const Scalar d = dot(basis[0], basis[1]);
            const Scalar n0 = squared_length(basis[0]);
            if (compare(d.abs() + d.abs(), n0) <= 0) {
                break;
            }
            const long k = std::lround(d.to_double() / n0.to_double());
            basis[1] = basis[1] - Scalar::constant(basis[0].x, k) * basis[0];
        }
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Conclusions

std::vector<Verdict> ConclusionsReport::verdicts() const {
    std::string sizes;
    for (const auto& s : side_lengths) {
        sizes += (sizes.empty() ? "" : ",") + s.to_string();
    }
    return {
        {"at_most_three_sizes", few_sizes, std::to_string(side_lengths.size()) + " distinct sizes {" + sizes + "}"},
        {"largest_is_sum", sum_rule, sum_rule ? "a = b + c holds" : "a = b + c fails"},
        {"large_translates", large_translates, std::to_string(large_count) + " large triangles"},
        {"periodic", periods.size() == 2, std::to_string(periods.size()) + " independent periods"},
    };
}

ConclusionsReport conclusions(const TilingPatch& patch) {
    ConclusionsReport report;
    std::vector<Scalar> sides;
    std::vector<std::size_t> large;
    bool irrational = false;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        if (!patch.is_interior(i)) {
            continue;
        }
        try {
            sides.push_back(patch.triangle(i).side());
        } catch (const BackendError&) {
            irrational = true;
        }
        if (classify(patch, i) == TriangleClass::Large) {
            large.push_back(i);
        }
    }
    std::sort(sides.begin(), sides.end(), [](const Scalar& a, const Scalar& b) {
        return a.to_double() < b.to_double();
    });
    for (const auto& s : sides) {
        if (report.side_lengths.empty() || report.side_lengths.back() != s) {
            report.side_lengths.push_back(s);
        }
    }
    const auto& d = report.side_lengths;
    report.few_sizes = !irrational && !d.empty() && d.size() <= 3;
    if (report.few_sizes && d.size() == 3) {
        report.sum_rule = d[2] == d[0] + d[1];
    } else if (report.few_sizes && d.size() == 2) {
        report.sum_rule = d[1] == d[0] + d[0];
    }
    report.large_count = large.size();
    report.large_translates = std::all_of(large.begin(), large.end(), [&](std::size_t i) {
        return same_shape(patch.triangle(i), patch.triangle(large.front()));
    });
    report.periods = detect_periods(patch);
    return report;
}

} // namespace tritile
