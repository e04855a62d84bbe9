#include "cli.hpp"

#include "tritile/errors.hpp"
#include "tritile/generators.hpp"
#include "tritile/io.hpp"
#include "tritile/verify.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tritile;

namespace {

Scalar E(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
Window W(long x0, long x1, long y0, long y1) { return make_window(E(x0), E(x1), E(y0), E(y1)); }

TilingPatch round_trip(const TilingPatch& patch) {
    std::ostringstream out;
    save(patch, out);
    std::istringstream in(out.str());
    return load(in);
}

TilingPatch parse(const std::string& text) {
    std::istringstream in(text);
    return load(in);
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "tritile_interface_test";
    std::filesystem::create_directories(dir);
    return dir;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "tritile");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) {
        *out_text = out.str();
    }
    return code;
}

} // namespace

TEST_CASE("round trip of generated patches") {
    const auto periodic = periodic_three_size(PeriodicSpec{E(1), E(2)}, W(0, 12, 0, 12));
    CHECK(round_trip(periodic).identical(periodic));
    const auto right = periodic_three_size(PeriodicSpec{E(2, 3), E(5, 7), Chirality::RightBFirst}, W(-3, 5, 0, 6));
    CHECK(round_trip(right).identical(right));
    const auto lattice = uniform_lattice(E(1), W(0, 6, 0, 6));
    CHECK(round_trip(lattice).identical(lattice));
    const auto spiral = klaassen_spiral(SpiralSpec{make_point(0.1, 0.2), make_point(1.3, -0.4)});
    const auto back = round_trip(spiral);
    CHECK(back.identical(spiral));
    for (std::size_t i = 0; i < spiral.size(); ++i) {
        CHECK(back.is_interior(i) == spiral.is_interior(i));
    }
}

TEST_CASE("file format details") {
    const auto patch = parse(
        "TILING/1 exact eps=1e-9\n"
        "# a comment\n"
        "WINDOW -5/1:0/1 5/1:0/1 -5/1:0/1 5/1:0/1\n"
        "0/1:0/1 0/1:0/1 1/1:0/1 0/1:0/1 1/2:0/1 0/1:1/2\n");
    REQUIRE(patch.size() == 1);
    CHECK(patch.triangle(0).vertex(2).y == Scalar::exact(0, mpq_class(1, 2)));

    std::ostringstream out;
    save(patch, out);
    CHECK(out.str().rfind("TILING/1 exact eps=1e-09\nWINDOW -5/1:0/1 5/1:0/1 -5/1:0/1 5/1:0/1\n", 0) == 0);
}

TEST_CASE("load errors") {
    const std::string header = "TILING/1 exact eps=1e-9\nWINDOW 0/1:0/1 4/1:0/1 0/1:0/1 4/1:0/1\n";
    const std::string tri = "0/1:0/1 0/1:0/1 1/1:0/1 0/1:0/1 1/2:0/1 0/1:1/2\n";
    CHECK_THROWS_AS(parse(header + tri + tri), OverlapError);
    try {
        parse(header + tri + "1 2 3\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    try {
        parse("TILING/2 exact eps=1e-9\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse("TILING/1 float eps=1e-9\nWINDOW 0 4 0 4\n" + tri), BackendMismatch);
    CHECK_THROWS_AS(parse(header + "0/1:0/1 0/1:0/1 1/1:0/1 0/1:0/1 1/2:0/1 0/1:1/3\n"), ParseError);
    CHECK_THROWS_AS(parse(header + "x 0 1 0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse("TILING/1 exact eps=1e-9\n"), ParseError);
}

TEST_CASE("svg output") {
    const auto patch = periodic_three_size(PeriodicSpec{E(1), E(2)}, W(0, 24, 0, 24));
    std::ostringstream a, b;
    render_svg(patch, a);
    render_svg(patch, b);
    CHECK(a.str() == b.str());
    const std::string svg = a.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("class=\"large\"") != std::string::npos);
    CHECK(svg.find("#1b9e77") != std::string::npos);
    CHECK(svg.find("#7570b3") != std::string::npos);
    CHECK(svg.find("class=\"subdivision\"") != std::string::npos);
    std::size_t polygons = 0;
    for (std::size_t p = svg.find("<polygon"); p != std::string::npos; p = svg.find("<polygon", p + 1)) {
        ++polygons;
    }
    CHECK(polygons == patch.size());

    const auto empty = build_patch({}, W(0, 1, 0, 1), {});
    std::ostringstream e;
    render_svg(empty, e);
    CHECK(e.str().find("<polygon") == std::string::npos);
    CHECK(e.str().find("</svg>") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    const auto dir = scratch_dir();
    const std::string periodic = (dir / "periodic.til").string();
    const std::string lattice = (dir / "lattice.til").string();
    const std::string spiral = (dir / "spiral.til").string();
    CHECK(cli({"generate", "periodic", "--b", "1", "--c", "2", "--window", "0:20:0:20", "-o", periodic}) == 0);
    CHECK(cli({"generate", "lattice", "--s", "1", "--window", "0:10:0:10", "-o", lattice}) == 0);
    CHECK(cli({"generate", "spiral", "--imin", "-30", "--imax", "30", "-o", spiral}) == 0);

    std::string text;
    CHECK(cli({"verify", periodic, "--delta", "1"}, &text) == 0);
    CHECK(text.find("fail") == std::string::npos);
    CHECK(cli({"verify", lattice, "--delta", "1"}, &text) == 1);
    CHECK(text.find("hypotheses.no_shared_side=fail") != std::string::npos);
    CHECK(cli({"verify", spiral, "--delta", "1e-6", "--checks", "lemma7"}) == 1);
    CHECK(cli({"verify", periodic, "--delta", "1", "--bogus"}) == 2);
    CHECK(cli({"verify", (dir / "missing.til").string(), "--delta", "1"}) == 2);
    CHECK(cli({"frobnicate"}) == 2);

    CHECK(cli({"classify", periodic, "--json"}, &text) == 0);
    CHECK(text.find("\"counts\"") != std::string::npos);

    const std::string svg = (dir / "p.svg").string();
    CHECK(cli({"render", periodic, "-o", svg, "--labels"}) == 0);
    CHECK(std::filesystem::file_size(svg) > 1000);

    std::string first, second;
    CHECK(cli({"walk", periodic, "--steps", "200", "--trials", "50", "--seed", "9"}, &first) == 0);
    CHECK(cli({"walk", periodic, "--steps", "200", "--trials", "50", "--seed", "9"}, &second) == 0);
    CHECK(first == second);
    CHECK(first.find("size_at_stop=3") != std::string::npos);
}

TEST_CASE("cli verdicts equal library verdicts") {
    const auto dir = scratch_dir();
    const std::string file = (dir / "verdicts.til").string();
    REQUIRE(cli({"generate", "periodic", "--b", "2", "--c", "3", "--window", "0:30:0:30", "-o", file}) == 0);
    std::string text;
    REQUIRE(cli({"verify", file, "--delta", "2", "--checks", "hypotheses"}, &text) == 0);
    const auto patch = load(std::filesystem::path(file));
    for (const auto& v : hypotheses(patch, E(2)).verdicts()) {
        CHECK(text.find("hypotheses." + v.name + "=" + (v.pass ? "pass " : "fail ") + v.detail) != std::string::npos);
    }
}
