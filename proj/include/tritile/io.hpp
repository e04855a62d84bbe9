#pragma once

#include "tritile/model.hpp"
#include "tritile/walk.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tritile {

/// Text format:
///
///   TILING/1 <exact|float> eps=<decimal>
///   WINDOW <xmin> <xmax> <ymin> <ymax>
///   v0x v0y v1x v1y v2x v2y        (one triangle per line)
///
/// Exact tokens are "p/q:r/s" for p/q + (r/s)*sqrt(3); float tokens carry 17
/// significant digits. Lines starting with '#' are comments; "#@margin" and
/// "#@puncture" comments carry the interiority options so that a reloaded
/// patch classifies identically.
void save(const TilingPatch& patch, std::ostream& out);
void save(const TilingPatch& patch, const std::filesystem::path& path);

/// Parses and rebuilds a patch. Throws ParseError (with line number),
/// BackendMismatch for tokens of the wrong backend, and OverlapError when
/// triangles overlap.
TilingPatch load(std::istream& in);
TilingPatch load(const std::filesystem::path& path);

struct SvgStyle {
    /// Width of the canvas in pixels; the height follows the window aspect.
    double width = 800.0;
    bool labels = false;
    bool vertex_markers = false;
    bool subdivision_markers = true;
};

/// One polygon per triangle filled by class. Small triangles whose side is the
/// smallest small side present get the "small-b" colour, other small ones
/// "small-c". Output bytes depend only on the patch and the style.
void render_svg(const TilingPatch& patch, std::ostream& out, const SvgStyle& style = {});

/// key=value lines describing walk statistics at horizons 10^k.
std::string format_stats(const WalkStats& stats);

/// "step,msd,return_freq" rows for every step.
void write_stats_csv(const WalkStats& stats, std::ostream& out);

} // namespace tritile
