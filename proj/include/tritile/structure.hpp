#pragma once

#include "tritile/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tritile {

/// Uncut when empty; otherwise the vertices strictly inside the edge, ordered
/// from its start to its end.
struct EdgeStatus {
    std::vector<Point> interior_vertices;

    bool uncut() const { return interior_vertices.empty(); }
    bool subdivided() const { return !interior_vertices.empty(); }
};

enum class TriangleClass { Small, Large, Improper, Other, Indeterminate };

const char* to_string(TriangleClass c);

/// Edge `edge` of triangle `t` (from vertex(edge) to vertex(edge + 1)).
/// Throws IndeterminateForBoundary for Boundary triangles.
EdgeStatus edge_status(const TilingPatch& patch, std::size_t t, std::size_t edge);

/// Whether the edge continues at its start (endpoint 0) or end (endpoint 1):
/// the endpoint lies inside an edge of another triangle that overlaps this
/// edge in a segment of positive length.
bool continues_at(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint);

/// Small (all uncut) takes precedence over Improper, Large means all three
/// edges subdivided; Boundary triangles are Indeterminate.
TriangleClass classify(const TilingPatch& patch, std::size_t t);

/// For a subdivided edge AB that does not continue at A (A = the chosen
/// endpoint), the unique triangle ADE with D strictly inside AB. Checks that
/// its edge AD is uncut.
std::size_t lemma5_locate(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint);

/// The triangle containing corner `corner` of t in the interior of one of
/// its edges, if present. StructureError when there are several.
std::optional<std::size_t> edge_host(const TilingPatch& patch, std::size_t t, std::size_t corner);

struct Violation {
    std::size_t triangle;
    /// Edge index, when the violation concerns a single edge.
    std::optional<std::size_t> edge;
    std::string reason;
};

/// Interior triangles classified Improper.
std::vector<Violation> check_lemma7(const TilingPatch& patch);
/// Interior triangles where an edge continues at a vertex while the other
/// edge meeting there is subdivided.
std::vector<Violation> check_lemma8(const TilingPatch& patch);
/// Interior triangles that are neither Small nor Large, Large edges without
/// exactly one interior vertex or that continue, and Small triangles whose
/// edges do not each continue at exactly one endpoint in a common cyclic sense.
std::vector<Violation> check_lemma9(const TilingPatch& patch);

struct Lemma10Deviation {
    std::size_t triangle;
    Scalar deviation;
};

struct Lemma10Report {
    /// Large triangles whose side differs from the mean of their neighbours.
    std::vector<Lemma10Deviation> violations;
    /// Large triangles skipped because a neighbour is outside the patch.
    std::vector<std::size_t> skipped;
    std::size_t checked = 0;
};

Lemma10Report check_lemma10(const TilingPatch& patch);

/// |side - (n0 + n1 + n2) / 3|.
Scalar lemma10_deviation(const Scalar& side, const std::array<Scalar, 3>& neighbours);

/// Variants that ignore interiority marks. Only meaningful where the caller
/// knows the triangle's surroundings are present in the patch (e.g. direct
/// neighbours of an Interior triangle).
namespace unchecked {
EdgeStatus edge_status(const TilingPatch& patch, std::size_t t, std::size_t edge);
bool continues_at(const TilingPatch& patch, std::size_t t, std::size_t edge, int endpoint);
TriangleClass classify(const TilingPatch& patch, std::size_t t);
} // namespace unchecked

} // namespace tritile
