#pragma once

#include "tritile/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tritile {

/// One named pass/fail line of a report.
struct Verdict {
    std::string name;
    bool pass;
    std::string detail;
};

bool all_pass(const std::vector<Verdict>& verdicts);

struct HypothesesReport {
    /// First pair (canonical indices) with intersecting interiors.
    std::optional<std::pair<std::size_t, std::size_t>> overlap;
    /// Pairs of triangles sharing a full side.
    std::vector<std::pair<std::size_t, std::size_t>> shared_sides;
    Scalar min_side;
    bool min_side_ok = false;
    /// Area of the coverage region minus the area covered there.
    std::optional<Scalar> coverage_defect;
    Scalar coverage_area;
    bool coverage_ok = false;

    std::vector<Verdict> verdicts() const;
    bool pass() const { return all_pass(verdicts()); }
};

/// Tiling hypotheses on a patch: pairwise interior-disjointness (re-checked
/// with a sweep independent of the patch index), no shared full sides, side
/// lengths at least `delta`, and zero coverage defect.
///
/// Coverage is measured on the window shrunk by the margin; punctured patches
/// use the square inscribed in the outer validity disc minus the square around
/// the inner disc. Exact patches need a zero defect, float patches a defect of
/// at most eps times the region area.
HypothesesReport hypotheses(const TilingPatch& patch, const Scalar& delta);

struct ConclusionsReport {
    /// Distinct side lengths of Interior triangles, ascending.
    std::vector<Scalar> side_lengths;
    bool few_sizes = false;
    bool sum_rule = false;
    std::size_t large_count = 0;
    bool large_translates = false;
    std::vector<Point> periods;

    std::vector<Verdict> verdicts() const;
    bool pass() const { return all_pass(verdicts()); }
};

/// At most three Interior side lengths with the largest equal to the sum of
/// the others (twice the smaller when there are two), all Large triangles
/// translates of each other, and two independent periods.
ConclusionsReport conclusions(const TilingPatch& patch);

/// True iff translating every Interior triangle by v, whenever the image's
/// neighbourhood stays inside the window, lands on a triangle of the patch.
bool is_period(const TilingPatch& patch, const Point& v);

/// Reduced basis of at most two shortest independent periods. Candidates are
/// anchor differences between a reference triangle near the window centre and
/// its translates, taken from the Large Interior triangles (or every Interior
/// triangle when there are fewer than two Large ones).
std::vector<Point> detect_periods(const TilingPatch& patch);

/// Whether two bases generate the same lattice.
bool same_lattice(const std::array<Point, 2>& first, const std::array<Point, 2>& second);

/// Whether v = m * basis[0] + n * basis[1] for integers m, n.
std::optional<std::pair<long, long>> lattice_coordinates(const std::array<Point, 2>& basis, const Point& v);

} // namespace tritile
