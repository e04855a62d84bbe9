#include "tritile/structure.hpp"

#include "tritile/errors.hpp"

#include <algorithm>

namespace tritile {

const char* to_string(TriangleClass c) {
    switch (c) {
    case TriangleClass::Small:
        return "small";
    case TriangleClass::Large:
        return "large";
    case TriangleClass::Improper:
        return "improper";
    case TriangleClass::Other:
        return "other";
    case TriangleClass::Indeterminate:
        return "indeterminate";
    }
    return "?";
}

namespace {

void require_interior(const TilingPatch& patch, std::size_t t) {
    if (!patch.is_interior(t)) {
        throw IndeterminateForBoundary("triangle " + std::to_string(t) + " is a boundary triangle");
    }
}

// Edge ids of the two edges meeting at corner k: the one ending there and the
// one starting there.
std::size_t edge_into(std::size_t corner) { return (corner + 2) % 3; }
std::size_t edge_out_of(std::size_t corner) { return corner; }

} // namespace

namespace unchecked {

EdgeStatus edge_status(const TilingPatch& patch, std::size_t t, std::size_t edge) {
    const Segment s = patch.triangle(t).edge(edge);
    const Point ends[] = {s.a, s.b};
    const Point d = s.b - s.a;
    struct Found {
        Scalar along;
        std::size_t vertex;
    };
    std::vector<Found> found;
    for (std::size_t v : patch.vertices_in_box(padded_box(ends))) {
        const Point& p = patch.vertex(v);
        if (point_in_segment_interior(p, s)) {
            found.push_back({dot(p - s.a, d), v});
        }
    }
    std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
        if (a.along.is_exact()) {
            return compare(a.along.exact_value(), b.along.exact_value()) < 0;
        }
        return a.along.to_double() < b.along.to_double();
    });
    EdgeStatus status;
    for (const auto& f : found) {
        status.interior_vertices.push_back(patch.vertex(f.vertex));
    }
    return status;
}

bool continues_at(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint) {
    if (endpoint != 0 && endpoint != 1) {
        throw PreconditionViolated("endpoint must be 0 or 1");
    }
    const Segment s = patch.triangle(t).edge(edge);
    const Point& a = endpoint == 0 ? s.a : s.b;
    const Point single[] = {a};
    for (std::size_t other : patch.triangles_in_box(padded_box(single))) {
        if (other == t) {
            continue;
        }
        for (std::size_t f = 0; f < 3; ++f) {
            const Segment e = patch.triangle(other).edge(f);
            if (point_in_segment_interior(a, e) && collinear_overlap(e, s)) {
                return true;
            }
        }
    }
    return false;
}

TriangleClass classify(const TilingPatch& patch, std::size_t t) {
    std::array<bool, 3> uncut{};
    for (std::size_t e = 0; e < 3; ++e) {
        uncut[e] = unchecked::edge_status(patch, t, e).uncut();
    }
    const auto n_uncut = std::count(uncut.begin(), uncut.end(), true);
    if (n_uncut == 3) {
        return TriangleClass::Small;
    }
    if (n_uncut == 0) {
        return TriangleClass::Large;
    }
    for (std::size_t e = 0; e < 3; ++e) {
        if (!unchecked::continues_at(patch, t, e, 0) && !unchecked::continues_at(patch, t, e, 1)) {
            return TriangleClass::Improper;
        }
    }
    return TriangleClass::Other;
}

} // namespace unchecked

EdgeStatus edge_status(const TilingPatch& patch, std::size_t t, std::size_t edge) {
    require_interior(patch, t);
    return unchecked::edge_status(patch, t, edge);
}

bool continues_at(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint) {
    require_interior(patch, t);
    return unchecked::continues_at(patch, t, edge, endpoint);
}

TriangleClass classify(const TilingPatch& patch, std::size_t t) {
    if (!patch.is_interior(t)) {
        return TriangleClass::Indeterminate;
    }
    return unchecked::classify(patch, t);
}

std::size_t lemma5_locate(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint) {
    require_interior(patch, t);
    if (edge_status(patch, t, edge).uncut()) {
        throw PreconditionViolated("edge is uncut");
    }
    if (continues_at(patch, t, edge, endpoint)) {
        throw PreconditionViolated("edge continues at the chosen endpoint");
    }
    const Segment s = patch.triangle(t).edge(edge);
    const Segment ab = endpoint == 0 ? s : Segment{s.b, s.a};
    const std::size_t a_id = patch.triangle_vertices(t)[endpoint == 0 ? edge : (edge + 1) % 3];

    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (triangle, corner of D)
    for (std::size_t other : patch.triangles_at_vertex(a_id)) {
        if (other == t) {
            continue;
        }
        for (std::size_t k = 0; k < 3; ++k) {
            if (point_in_segment_interior(patch.triangle(other).vertex(k), ab)) {
                candidates.emplace_back(other, k);
            }
        }
    }
    if (candidates.size() != 1) {
        throw StructureError("expected exactly one triangle ADE with D inside AB, found " +
                             std::to_string(candidates.size()));
    }
    const auto [found, d_corner] = candidates.front();
    // The edge AD of the found triangle: A and D are adjacent corners.
    const auto& ids = patch.triangle_vertices(found);
    const std::size_t a_corner = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), a_id) - ids.begin());
    const std::size_t ad_edge = (a_corner + 1) % 3 == d_corner ? a_corner : d_corner;
    if (!unchecked::edge_status(patch, found, ad_edge).uncut()) {
        throw StructureError("edge AD of the located triangle is subdivided");
    }
    return found;
}

std::optional<std::size_t> edge_host(const TilingPatch& patch, std::size_t t, std::size_t corner) {
    const Point& p = patch.triangle(t).vertex(corner);
    std::optional<std::size_t> host;
    for (const Incidence& inc : incident_triangles(patch, p)) {
        if (inc.role != IncidenceRole::EdgeInterior) {
            continue;
        }
        if (host) {
            throw StructureError("vertex lies inside edges of several triangles");
        }
        host = inc.triangle;
    }
    return host;
}

std::vector<Violation> check_lemma7(const TilingPatch& patch) {
    std::vector<Violation> out;
    for (std::size_t t = 0; t < patch.size(); ++t) {
        if (patch.is_interior(t) && unchecked::classify(patch, t) == TriangleClass::Improper) {
            out.push_back({t, std::nullopt, "improper triangle"});
        }
    }
    return out;
}

std::vector<Violation> check_lemma8(const TilingPatch& patch) {
    std::vector<Violation> out;
    for (std::size_t t = 0; t < patch.size(); ++t) {
        if (!patch.is_interior(t)) {
            continue;
        }
        for (std::size_t k = 0; k < 3; ++k) {
            const std::size_t in = edge_into(k);
            const std::size_t outgoing = edge_out_of(k);
            if (unchecked::continues_at(patch, t, in, 1) && unchecked::edge_status(patch, t, outgoing).subdivided()) {
                out.push_back({t, outgoing, "edge " + std::to_string(in) + " continues at corner " +
                                                std::to_string(k) + " but the next edge is subdivided"});
            }
            if (unchecked::continues_at(patch, t, outgoing, 0) && unchecked::edge_status(patch, t, in).subdivided()) {
                out.push_back({t, in, "edge " + std::to_string(outgoing) + " continues at corner " +
                                          std::to_string(k) + " but the previous edge is subdivided"});
            }
        }
    }
    return out;
}

std::vector<Violation> check_lemma9(const TilingPatch& patch) {
    std::vector<Violation> out;
    for (std::size_t t = 0; t < patch.size(); ++t) {
        if (!patch.is_interior(t)) {
            continue;
        }
        const TriangleClass c = unchecked::classify(patch, t);
        if (c == TriangleClass::Large) {
            for (std::size_t e = 0; e < 3; ++e) {
                const auto n = unchecked::edge_status(patch, t, e).interior_vertices.size();
                if (n != 1) {
                    out.push_back({t, e, "large edge has " + std::to_string(n) + " interior vertices"});
                }
                if (unchecked::continues_at(patch, t, e, 0) || unchecked::continues_at(patch, t, e, 1)) {
                    out.push_back({t, e, "large edge continues"});
                }
            }
        } else if (c == TriangleClass::Small) {
            std::array<int, 3> at{};
            for (std::size_t e = 0; e < 3; ++e) {
                const bool start = unchecked::continues_at(patch, t, e, 0);
                const bool end = unchecked::continues_at(patch, t, e, 1);
                if (start == end) {
                    out.push_back({t, e,
                                   start ? "small edge continues at both endpoints"
                                         : "small edge continues at neither endpoint"});
                    at[e] = -1;
                } else {
                    at[e] = end ? 1 : 0;
                }
            }
            if (at[0] >= 0 && at[1] >= 0 && at[2] >= 0 && !(at[0] == at[1] && at[1] == at[2])) {
                out.push_back({t, std::nullopt, "small triangle edges do not continue cyclically"});
            }
        } else {
            out.push_back({t, std::nullopt, std::string("triangle is ") + to_string(c)});
        }
    }
    return out;
}

Scalar lemma10_deviation(const Scalar& side, const std::array<Scalar, 3>& neighbours) {
    const Scalar mean = (neighbours[0] + neighbours[1] + neighbours[2]) / Scalar::constant(side, 3);
    return (side - mean).abs();
}

Lemma10Report check_lemma10(const TilingPatch& patch) {
    Lemma10Report report;
    for (std::size_t t = 0; t < patch.size(); ++t) {
        if (!patch.is_interior(t) || unchecked::classify(patch, t) != TriangleClass::Large) {
            continue;
        }
        std::array<Scalar, 3> sides;
        bool missing = false;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto host = edge_host(patch, t, k);
            if (!host) {
                missing = true;
                break;
            }
            if (unchecked::classify(patch, *host) != TriangleClass::Large) {
                throw StructureError("vertex of large triangle " + std::to_string(t) +
                                     " lies inside an edge of a non-large triangle");
            }
            sides[k] = patch.triangle(*host).side();
        }
        if (missing) {
            report.skipped.push_back(t);
            continue;
        }
        ++report.checked;
        Scalar deviation = lemma10_deviation(patch.triangle(t).side(), sides);
        if (deviation.sign() != 0) {
            report.violations.push_back({t, std::move(deviation)});
        }
    }
    return report;
}

} // namespace tritile
