#include "cli.hpp"

#include "tritile/errors.hpp"
#include "tritile/generators.hpp"
#include "tritile/io.hpp"
#include "tritile/structure.hpp"
#include "tritile/verify.hpp"
#include "tritile/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace tritile {

namespace {

constexpr int kPass = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scalar exact_arg(const std::string& text, const char* name) {
    try {
        return Scalar::exact(parse_rational(text));
    } catch (const std::exception&) {
        throw UsageError(std::string("--") + name + ": not a rational number: " + text);
    }
}

Window window_arg(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 4) {
        throw UsageError("--window expects X0:X1:Y0:Y1");
    }
    try {
        return make_window(exact_arg(parts[0], "window"), exact_arg(parts[1], "window"),
                           exact_arg(parts[2], "window"), exact_arg(parts[3], "window"));
    } catch (const DegenerateSpec& e) {
        throw UsageError(std::string("--window: ") + e.what());
    }
}

// Reads a length in the file's backend.
Scalar length_arg(const std::string& text, const TilingPatch& patch) {
    if (patch.backend() == Backend::Exact) {
        return exact_arg(text, "delta");
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return Scalar::approx(v, patch.epsilon());
    } catch (const std::exception&) {
        throw UsageError("--delta: not a number: " + text);
    }
}

void write_patch(const TilingPatch& patch, const std::string& path, std::ostream& out) {
    save(patch, std::filesystem::path(path));
    out << "wrote " << patch.size() << " triangles to " << path << "\n";
}

std::string edge_text(const Violation& v) {
    return v.edge ? " edge " + std::to_string(*v.edge) : std::string();
}

int report_violations(const std::string& name, const std::vector<Violation>& found, std::ostream& out) {
    out << name << "=" << (found.empty() ? "pass" : "fail") << " violations=" << found.size() << "\n";
    for (const auto& v : found) {
        out << "  " << name << " triangle " << v.triangle << edge_text(v) << ": " << v.reason << "\n";
    }
    return found.empty() ? kPass : kViolations;
}

int run_verify(const TilingPatch& patch, const Scalar& delta, const std::vector<std::string>& checks,
               std::ostream& out) {
    int code = kPass;
    const auto wants = [&](const char* name) {
        return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
    };
    const auto verdicts = [&](const std::string& prefix, const std::vector<Verdict>& vs) {
        for (const auto& v : vs) {
            out << prefix << "." << v.name << "=" << (v.pass ? "pass" : "fail") << " " << v.detail << "\n";
            if (!v.pass) {
                code = kViolations;
            }
        }
    };
    if (wants("hypotheses")) {
        verdicts("hypotheses", hypotheses(patch, delta).verdicts());
    }
    if (wants("lemma7")) {
        code = std::max(code, report_violations("lemma7", check_lemma7(patch), out));
    }
    if (wants("lemma8")) {
        code = std::max(code, report_violations("lemma8", check_lemma8(patch), out));
    }
    if (wants("lemma9")) {
        code = std::max(code, report_violations("lemma9", check_lemma9(patch), out));
    }
    if (wants("lemma10")) {
        try {
            const Lemma10Report r = check_lemma10(patch);
            out << "lemma10=" << (r.violations.empty() ? "pass" : "fail") << " violations=" << r.violations.size()
                << " checked=" << r.checked << " skipped=" << r.skipped.size() << "\n";
            for (const auto& v : r.violations) {
                out << "  lemma10 triangle " << v.triangle << ": deviation " << v.deviation.to_string() << "\n";
            }
            if (!r.violations.empty()) {
                code = kViolations;
            }
        } catch (const StructureError& e) {
            out << "lemma10=fail " << e.what() << "\n";
            code = kViolations;
        }
    }
    if (wants("conclusions")) {
        verdicts("conclusions", conclusions(patch).verdicts());
    }
    if (wants("periods")) {
        const auto periods = detect_periods(patch);
        out << "periods=" << (periods.size() == 2 ? "pass" : "fail") << " count=" << periods.size() << "\n";
        for (const auto& p : periods) {
            out << "  period " << p.x.to_string() << " " << p.y.to_string() << "\n";
        }
        if (periods.size() != 2) {
            code = kViolations;
        }
    }
    return code;
}

int run_classify(const TilingPatch& patch, bool json, std::ostream& out) {
    std::map<std::string, std::size_t> counts;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        const char* c = to_string(classify(patch, i));
        ++counts[c];
        if (json) {
            rows.push_back({{"index", i}, {"class", c}, {"interior", patch.is_interior(i)}});
        } else {
            text << i << " " << c << "\n";
        }
    }
    if (json) {
        nlohmann::ordered_json doc;
        doc["triangles"] = rows;
        doc["counts"] = counts;
        out << doc.dump(2) << "\n";
    } else {
        out << text.str();
        for (const auto& [name, n] : counts) {
            out << "count." << name << "=" << n << "\n";
        }
    }
    return kPass;
}

int run_walk(const TilingPatch& patch, std::uint64_t steps, std::uint64_t trials, std::uint64_t seed,
             const std::string& csv, std::ostream& out) {
    const LargeAdjacencyGraph graph = extract_graph(patch);
    WalkStats stats;
    if (const auto set = step_set(patch, graph)) {
        // All interior large triangles share one size and one step set: walk
        // on the infinite lattice with that constant size.
        const Scalar& a = graph.nodes.front().side;
        out << "mode=lattice\n";
        stats = simulate(*set, steps, trials, seed, SizeField{a, {1, 0}, a});
    } else {
        std::size_t start = 0;
        while (start < graph.nodes.size() && !(graph.nodes[start].interior && graph.nodes[start].complete())) {
            ++start;
        }
        if (start == graph.nodes.size()) {
            start = 0;
        }
        out << "mode=graph\n";
        stats = simulate(graph, start, steps, trials, seed);
    }
    const auto deviation = martingale_deviation(graph);
    out << format_stats(stats);
    out << "martingale_deviation=" << (deviation ? deviation->to_string() : "none") << "\n";
    if (!csv.empty()) {
        std::ofstream file(csv);
        if (!file) {
            throw Error("cannot open " + csv + " for writing");
        }
        write_stats_csv(stats, file);
    }
    return deviation && deviation->sign() != 0 ? kViolations : kPass;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equilateral triangle tilings: generation, checks and random walks", "tritile"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "write a generated patch to a file");
    generate->require_subcommand(1);
    std::string output;
    std::string b_text, c_text, window_text, chirality = "left";
    auto* periodic = generate->add_subcommand("periodic", "three-size periodic tiling (exact)");
    periodic->add_option("--b", b_text, "small side b (rational)")->required();
    periodic->add_option("--c", c_text, "small side c (rational)")->required();
    periodic->add_option("--window", window_text, "X0:X1:Y0:Y1")->required();
    periodic->add_option("--chirality", chirality)->check(CLI::IsMember({"left", "right"}));
    periodic->add_option("-o,--output", output)->required();

    double px = 0, py = 0, ax = 1, ay = 0, eps = kDefaultEpsilon;
    int imin = -40, imax = 40;
    auto* spiral = generate->add_subcommand("spiral", "spiral tiling of the punctured plane (float)");
    spiral->add_option("--px", px);
    spiral->add_option("--py", py);
    spiral->add_option("--ax", ax);
    spiral->add_option("--ay", ay);
    spiral->add_option("--imin", imin);
    spiral->add_option("--imax", imax);
    spiral->add_option("--eps", eps)->check(CLI::PositiveNumber);
    spiral->add_option("-o,--output", output)->required();

    std::string s_text;
    auto* lattice = generate->add_subcommand("lattice", "uniform triangular lattice (exact)");
    lattice->add_option("--s", s_text, "side (rational)")->required();
    lattice->add_option("--window", window_text, "X0:X1:Y0:Y1")->required();
    lattice->add_option("-o,--output", output)->required();

    std::string file;
    bool json = false;
    auto* classify_cmd = app.add_subcommand("classify", "classify every triangle");
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_flag("--json", json);

    std::string delta_text;
    std::vector<std::string> checks;
    auto* verify_cmd = app.add_subcommand("verify", "check hypotheses, structure and conclusions");
    verify_cmd->add_option("file", file)->required();
    verify_cmd->add_option("--delta", delta_text, "minimum side length")->required();
    verify_cmd->add_option("--checks", checks)
        ->delimiter(',')
        ->check(CLI::IsMember({"hypotheses", "lemma7", "lemma8", "lemma9", "lemma10", "conclusions", "periods"}));

    std::uint64_t steps = 0, trials = 0, seed = 0;
    std::string csv;
    auto* walk_cmd = app.add_subcommand("walk", "random walk on the large triangles");
    walk_cmd->add_option("file", file)->required();
    walk_cmd->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
    walk_cmd->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
    walk_cmd->add_option("--seed", seed)->required();
    walk_cmd->add_option("--csv", csv);

    bool labels = false;
    auto* render_cmd = app.add_subcommand("render", "draw the patch as SVG");
    render_cmd->add_option("file", file)->required();
    render_cmd->add_option("-o,--output", output)->required();
    render_cmd->add_flag("--labels", labels);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (periodic->parsed()) {
            const PeriodicSpec spec{exact_arg(b_text, "b"), exact_arg(c_text, "c"),
                                    chirality == "left" ? Chirality::LeftBFirst : Chirality::RightBFirst};
            write_patch(periodic_three_size(spec, window_arg(window_text)), output, out);
            return kPass;
        }
        if (spiral->parsed()) {
            const SpiralSpec spec{make_point(px, py, eps), make_point(ax, ay, eps), imin, imax};
            write_patch(klaassen_spiral(spec), output, out);
            return kPass;
        }
        if (lattice->parsed()) {
            write_patch(uniform_lattice(exact_arg(s_text, "s"), window_arg(window_text)), output, out);
            return kPass;
        }
        const TilingPatch patch = load(std::filesystem::path(file));
        if (classify_cmd->parsed()) {
            return run_classify(patch, json, out);
        }
        if (verify_cmd->parsed()) {
            return run_verify(patch, length_arg(delta_text, patch), checks, out);
        }
        if (walk_cmd->parsed()) {
            return run_walk(patch, steps, trials, seed, csv, out);
        }
        if (render_cmd->parsed()) {
            std::ofstream svg(output, std::ios::binary);
            if (!svg) {
                throw Error("cannot open " + output + " for writing");
            }
            SvgStyle style;
            style.labels = labels;
            render_svg(patch, svg, style);
            out << "wrote " << output << "\n";
            return kPass;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const OverlapError& e) {
        err << "error: " << e.what() << "\n";
        return kViolations;
    } catch (const StructureError& e) {
        err << "error: " << e.what() << "\n";
        return kViolations;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace tritile
