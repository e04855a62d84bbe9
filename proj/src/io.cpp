#include "tritile/io.hpp"

#include "tritile/errors.hpp"
#include "tritile/structure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tritile {

namespace {

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::string g17(double value) { return fmt("%.17g", value); }

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string token;
    while (in >> token) {
        out.push_back(token);
    }
    return out;
}

double parse_double(const std::string& token, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || *end != '\0' || !std::isfinite(v)) {
        throw ParseError(line, "malformed number '" + token + "'");
    }
    return v;
}

Scalar parse_scalar(const std::string& token, Backend backend, double eps, std::size_t line) {
    if (backend == Backend::Float && token.find_first_of(":/") != std::string::npos) {
        throw BackendMismatch("line " + std::to_string(line) + ": exact token '" + token + "' in a float file");
    }
    try {
        return Scalar::parse_token(token, backend, eps);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
}

} // namespace

void save(const TilingPatch& patch, std::ostream& out) {
    const bool exact = patch.backend() == Backend::Exact;
    out << "TILING/1 " << (exact ? "exact" : "float") << " eps=" << shortest(patch.epsilon()) << "\n";
    const Window& w = patch.window();
    out << "WINDOW " << w.xmin.to_token() << " " << w.xmax.to_token() << " " << w.ymin.to_token() << " "
        << w.ymax.to_token() << "\n";
    const MarginRule& m = patch.margin();
    out << "#@margin " << (m.kind == MarginRule::Kind::Absolute ? "absolute " : "relative ") << m.value.to_token()
        << "\n";
    if (const auto& p = patch.puncture()) {
        out << "#@puncture " << g17(p->cx) << " " << g17(p->cy) << " " << g17(p->inner_radius) << " "
            << g17(p->outer_radius) << "\n";
    }
    for (const auto& t : patch.triangles()) {
        for (std::size_t k = 0; k < 3; ++k) {
            out << (k ? " " : "") << t.vertex(k).x.to_token() << " " << t.vertex(k).y.to_token();
        }
        out << "\n";
    }
}

void save(const TilingPatch& patch, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    save(patch, out);
    if (!out) {
        throw Error("write to " + path.string() + " failed");
    }
}

TilingPatch load(std::istream& in) {
    std::string line;
    std::size_t number = 0;
    std::optional<Backend> backend;
    double eps = kDefaultEpsilon;
    std::optional<Window> window;
    PatchOptions options;
    std::vector<TrianglePlacement> triangles;
    std::vector<std::string> deferred_margin;
    std::size_t margin_line = 0;

    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!backend) {
            const auto t = split(line);
            if (t.size() != 3 || t[0] != "TILING/1" || (t[1] != "exact" && t[1] != "float") ||
                t[2].rfind("eps=", 0) != 0) {
                throw ParseError(number, "expected header 'TILING/1 <exact|float> eps=<decimal>'");
            }
            backend = t[1] == "exact" ? Backend::Exact : Backend::Float;
            eps = parse_double(t[2].substr(4), number);
            if (!(eps > 0.0)) {
                throw ParseError(number, "eps must be positive");
            }
            options.eps = eps;
            continue;
        }
        if (line.rfind("#", 0) == 0) {
            const auto t = split(line);
            if (!t.empty() && t[0] == "#@margin") {
                if (t.size() != 3 || (t[1] != "absolute" && t[1] != "relative")) {
                    throw ParseError(number, "expected '#@margin <absolute|relative> <value>'");
                }
                deferred_margin = t;
                margin_line = number;
            } else if (!t.empty() && t[0] == "#@puncture") {
                if (t.size() != 5) {
                    throw ParseError(number, "expected '#@puncture cx cy inner outer'");
                }
                options.puncture = Puncture{parse_double(t[1], number), parse_double(t[2], number),
                                            parse_double(t[3], number), parse_double(t[4], number)};
            }
            continue;
        }
        const auto t = split(line);
        if (t.empty()) {
            continue;
        }
        if (!window) {
            if (t.size() != 5 || t[0] != "WINDOW") {
                throw ParseError(number, "expected 'WINDOW xmin xmax ymin ymax'");
            }
            try {
                window = make_window(parse_scalar(t[1], *backend, eps, number), parse_scalar(t[2], *backend, eps, number),
                                     parse_scalar(t[3], *backend, eps, number), parse_scalar(t[4], *backend, eps, number));
            } catch (const DegenerateSpec& e) {
                throw ParseError(number, e.what());
            }
            continue;
        }
        if (t.size() != 6) {
            throw ParseError(number, "expected 6 coordinate tokens, found " + std::to_string(t.size()));
        }
        std::array<Point, 3> v;
        for (std::size_t k = 0; k < 3; ++k) {
            v[k] = Point{parse_scalar(t[2 * k], *backend, eps, number),
                         parse_scalar(t[2 * k + 1], *backend, eps, number)};
        }
        try {
            triangles.emplace_back(v[0], v[1], v[2]);
        } catch (const DegenerateTriangleError& e) {
            throw ParseError(number, e.what());
        }
    }
    if (!backend) {
        throw ParseError(number + 1, "missing header");
    }
    if (!window) {
        throw ParseError(number + 1, "missing WINDOW line");
    }
    if (!deferred_margin.empty()) {
        options.margin = MarginRule{deferred_margin[1] == "absolute" ? MarginRule::Kind::Absolute
                                                                     : MarginRule::Kind::RelativeToSide,
                                    parse_scalar(deferred_margin[2], *backend, eps, margin_line)};
    }
    return build_patch(std::move(triangles), *window, options);
}

TilingPatch load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return load(in);
}

// ---------------------------------------------------------------------------
// SVG

void render_svg(const TilingPatch& patch, std::ostream& out, const SvgStyle& style) {
    const Window& w = patch.window();
    const double x0 = w.xmin.to_double();
    const double y1 = w.ymax.to_double();
    const double span_x = w.xmax.to_double() - x0;
    const double span_y = y1 - w.ymin.to_double();
    const double scale = style.width / span_x;
    const double height = span_y * scale;
    const auto px = [&](const Point& p) {
        return fmt("%.3f", (p.x.to_double() - x0) * scale) + "," + fmt("%.3f", (y1 - p.y.to_double()) * scale);
    };

    std::vector<TriangleClass> classes(patch.size());
    double small_b = HUGE_VAL;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        classes[i] = classify(patch, i);
        if (classes[i] == TriangleClass::Small) {
            small_b = std::min(small_b, patch.triangle(i).side_lengths()[0].to_double());
        }
    }
    const auto fill = [&](std::size_t i) -> const char* {
        switch (classes[i]) {
        case TriangleClass::Large:
            return "#d95f02";
        case TriangleClass::Small: {
            const double s = patch.triangle(i).side_lengths()[0].to_double();
            return std::abs(s - small_b) <= 1e-9 * std::max(1.0, s) ? "#1b9e77" : "#7570b3";
        }
        case TriangleClass::Improper:
            return "#e7298a";
        case TriangleClass::Other:
            return "#e6ab02";
        case TriangleClass::Indeterminate:
            return "#d9d9d9";
        }
        return "#000000";
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt("%.3f", style.width)
        << "\" height=\"" << fmt("%.3f", height) << "\" viewBox=\"0 0 " << fmt("%.3f", style.width) << " "
        << fmt("%.3f", height) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fmt("%.3f", style.width) << "\" height=\"" << fmt("%.3f", height)
        << "\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < patch.size(); ++i) {
        const auto& t = patch.triangle(i);
        const double stroke = std::clamp(0.02 * t.side_lengths()[0].to_double() * scale, 0.05, 1.0);
        out << "<polygon class=\"" << to_string(classes[i]) << "\" points=\"" << px(t.vertex(0)) << " "
            << px(t.vertex(1)) << " " << px(t.vertex(2)) << "\" fill=\"" << fill(i)
            << "\" stroke=\"#222222\" stroke-width=\"" << fmt("%.3f", stroke) << "\"/>\n";
    }
    if (style.vertex_markers) {
        for (std::size_t v = 0; v < patch.vertex_count(); ++v) {
            const std::string c = px(patch.vertex(v));
            const auto comma = c.find(',');
            out << "<circle class=\"vertex\" cx=\"" << c.substr(0, comma) << "\" cy=\"" << c.substr(comma + 1)
                << "\" r=\"1.5\" fill=\"#222222\"/>\n";
        }
    }
    if (style.subdivision_markers) {
        for (std::size_t i = 0; i < patch.size(); ++i) {
            if (!patch.is_interior(i)) {
                continue;
            }
            for (std::size_t e = 0; e < 3; ++e) {
                for (const Point& p : edge_status(patch, i, e).interior_vertices) {
                    const std::string c = px(p);
                    const auto comma = c.find(',');
                    out << "<circle class=\"subdivision\" cx=\"" << c.substr(0, comma) << "\" cy=\""
                        << c.substr(comma + 1) << "\" r=\"2.5\" fill=\"none\" stroke=\"#000000\"/>\n";
                }
            }
        }
    }
    if (style.labels) {
        for (std::size_t i = 0; i < patch.size(); ++i) {
            const auto& t = patch.triangle(i);
            const Point centroid{(t.vertex(0).x + t.vertex(1).x + t.vertex(2).x) / Scalar::constant(t.vertex(0).x, 3),
                                 (t.vertex(0).y + t.vertex(1).y + t.vertex(2).y) / Scalar::constant(t.vertex(0).x, 3)};
            const std::string c = px(centroid);
            const auto comma = c.find(',');
            out << "<text x=\"" << c.substr(0, comma) << "\" y=\"" << c.substr(comma + 1)
                << "\" font-size=\"8\" text-anchor=\"middle\">" << i << "</text>\n";
        }
    }
    out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Walk statistics

std::string format_stats(const WalkStats& stats) {
    std::ostringstream out;
    out << "steps=" << stats.steps << "\n"
        << "trials=" << stats.trials << "\n"
        << "seed=" << stats.seed << "\n"
        << "step_variance=" << g17(stats.step_variance) << "\n";
    for (std::uint64_t n = 1; n <= stats.steps; n *= 10) {
        out << "msd@" << n << "=" << g17(stats.msd[n]) << "\n"
            << "msd_expected@" << n << "=" << g17(static_cast<double>(n) * stats.step_variance) << "\n"
            << "return_freq@" << n << "=" << g17(stats.return_frequency(n)) << "\n";
    }
    out << "msd_final=" << g17(stats.msd.back()) << "\n"
        << "return_freq_final=" << g17(stats.return_frequency(stats.steps)) << "\n"
        << "absorbed=" << stats.absorbed << "\n";
    if (stats.size_at_stop) {
        out << "size_at_stop=" << stats.size_at_stop->to_string() << "\n";
    }
    return out.str();
}

void write_stats_csv(const WalkStats& stats, std::ostream& out) {
    out << "step,msd,return_freq\n";
    std::uint64_t returned = 0;
    for (std::uint64_t n = 0; n <= stats.steps; ++n) {
        if (n > 0) {
            returned += stats.first_returns[n];
        }
        out << n << "," << g17(stats.msd[n]) << "," << g17(static_cast<double>(returned) / stats.trials) << "\n";
    }
}

} // namespace tritile
