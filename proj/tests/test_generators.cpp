#include "oracle.hpp"

#include "tritile/errors.hpp"
#include "tritile/generators.hpp"
#include "tritile/structure.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace tritile;

namespace {

Scalar E(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
Window W(long x0, long x1, long y0, long y1) { return make_window(E(x0), E(x1), E(y0), E(y1)); }

std::set<std::string> distinct_sides(const TilingPatch& patch) {
    std::set<std::string> out;
    for (const auto& t : patch.triangles()) {
        out.insert(t.side().to_string());
    }
    return out;
}

} // namespace

TEST_CASE("lattice vectors pass the 3x3 brute force") {
    for (const auto& [b, c] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}, {2, 3}, {3, 5}, {1, 10}, {7, 2}}) {
        CAPTURE(b);
        CAPTURE(c);
        const auto check = oracle::lattice_check(PeriodicSpec{E(b), E(c)});
        CHECK(check.determinant_matches);
        CHECK(check.determinant_matches_side_form);
        CHECK(check.overlap_free);
        CHECK(check.defect == E(0));
        const auto mirrored = oracle::lattice_check(PeriodicSpec{E(b), E(c), Chirality::RightBFirst});
        CHECK(mirrored.overlap_free);
        CHECK(mirrored.defect == E(0));
    }
}

TEST_CASE("periodic cell coordinates") {
    const auto cell = periodic_cell(PeriodicSpec{E(1), E(2)});
    const Point o = make_point(mpq_class(0), mpq_class(0));
    CHECK(cell[0].same_as(TrianglePlacement::upward(o, E(3))));
    CHECK(cell[1].same_as(TrianglePlacement::downward(o, E(1))));
    CHECK(cell[2].same_as(TrianglePlacement::downward(make_point(mpq_class(1), mpq_class(0)), E(2))));
}

TEST_CASE("periodic side lengths") {
    CHECK(distinct_sides(periodic_three_size(PeriodicSpec{E(1), E(1)}, W(0, 8, 0, 8))) ==
          std::set<std::string>{"1", "2"});
    CHECK(distinct_sides(periodic_three_size(PeriodicSpec{E(1), E(2)}, W(0, 8, 0, 8))) ==
          std::set<std::string>{"1", "2", "3"});
}

TEST_CASE("periodic generator rejects bad input") {
    CHECK_THROWS_AS(periodic_three_size(PeriodicSpec{E(0), E(1)}, W(0, 8, 0, 8)), NonPositiveSide);
    CHECK_THROWS_AS(periodic_three_size(PeriodicSpec{Scalar::approx(1), Scalar::approx(2)}, W(0, 8, 0, 8)),
                    BackendError);
}

TEST_CASE("large triangle density approaches the cell area") {
    const PeriodicSpec spec{E(1), E(2)};
    const double cell = std::sqrt(3.0) / 2.0 * (1 + 2 + 4);
    double previous_error = 1.0;
    for (long w : {20, 40, 80}) {
        const auto patch = periodic_three_size(spec, W(0, w, 0, w));
        std::size_t large = 0;
        for (const auto& t : patch.triangles()) {
            large += t.side() == E(3) ? 1 : 0;
        }
        const double error = std::abs(static_cast<double>(large) / (w * w / cell) - 1.0);
        CHECK(error < previous_error);
        previous_error = error;
    }
    CHECK(previous_error < 0.15);
}

TEST_CASE("spiral ratio") {
    const double alpha = spiral_ratio();
    const long double reference = oracle::plastic_reciprocal();
    CHECK(std::abs(alpha * alpha * alpha + alpha * alpha - 1.0) <= 1e-14);
    CHECK(std::abs(static_cast<long double>(alpha) - reference) <= 1e-15L);
    CHECK(std::abs(alpha - 0.7548776662466927) <= 1e-15);
}

TEST_CASE("spiral geometry") {
    const SpiralSpec spec{make_point(0.3, -0.2), make_point(1.7, 0.4), -40, 40};
    const double alpha = spiral_ratio();
    const auto seed = spiral_seed(spec);
    // The third vertex lies on the fixed point's side of the line A phi(A).
    const Point a = spec.start;
    const Point fa = spiral_map(spec, a, 1);
    bool has_a = false, has_fa = false;
    Point third = a;
    for (const auto& v : seed.vertices()) {
        if (v == a) {
            has_a = true;
        } else if (v == fa) {
            has_fa = true;
        } else {
            third = v;
        }
    }
    CHECK(has_a);
    CHECK(has_fa);
    CHECK(orient(a, fa, third) == orient(a, fa, spec.fixed_point));

    // phi^6 is a pure scaling about the fixed point.
    const Point q = make_point(2.5, 1.25);
    const Point q6 = spiral_map(spec, q, 6);
    const double s6 = std::pow(alpha, 6);
    CHECK(q6.x.to_double() == doctest::Approx(0.3 + s6 * 2.2).epsilon(1e-12));
    CHECK(q6.y.to_double() == doctest::Approx(-0.2 + s6 * 1.45).epsilon(1e-12));

    std::vector<TrianglePlacement> tiles;
    for (int i = spec.i_min; i <= spec.i_max; ++i) {
        const auto& v = seed.vertices();
        tiles.emplace_back(spiral_map(spec, v[0], i), spiral_map(spec, v[1], i), spiral_map(spec, v[2], i));
    }
    for (std::size_t i = 0; i + 1 < tiles.size(); ++i) {
        const double ratio = tiles[i + 1].side().to_double() / tiles[i].side().to_double();
        CHECK(std::abs(ratio / alpha - 1.0) <= 1e-12);
        CHECK_FALSE(interiors_intersect(tiles[i], tiles[i + 1]));
    }
    const auto patch = klaassen_spiral(spec);
    CHECK(patch.size() == 81);
}

// The long edge of T_i carries one vertex and is covered by edges of T_{i+1}
// and T_{i+5}, whose sides add up to side(T_i) since alpha + alpha^5 = 1.
TEST_CASE("spiral long edge is flanked by T(i+1) and T(i+5)") {
    const SpiralSpec spec{make_point(0.0, 0.0), make_point(1.0, 0.0), -40, 40};
    const double alpha = spiral_ratio();
    CHECK(std::abs(alpha + std::pow(alpha, 5) - 1.0) <= 1e-14);

    const auto seed = spiral_seed(spec);
    const auto tile = [&](int i) {
        const auto& v = seed.vertices();
        return TrianglePlacement(spiral_map(spec, v[0], i), spiral_map(spec, v[1], i), spiral_map(spec, v[2], i));
    };
    for (int i = -5; i <= 5; ++i) {
        const auto ti = tile(i);
        const auto t1 = tile(i + 1);
        const auto t5 = tile(i + 5);
        int flanked = 0;
        for (std::size_t e = 0; e < 3; ++e) {
            const Segment long_edge = ti.edge(e);
            bool by1 = false, by5 = false;
            for (std::size_t f = 0; f < 3; ++f) {
                const auto o1 = collinear_overlap(long_edge, t1.edge(f));
                const auto o5 = collinear_overlap(long_edge, t5.edge(f));
                by1 = by1 || (o1 && squared_length(o1->b - o1->a) == t1.squared_side());
                by5 = by5 || (o5 && squared_length(o5->b - o5->a) == t5.squared_side());
            }
            if (by1 && by5) {
                ++flanked;
                const double sum = t1.side().to_double() + t5.side().to_double();
                CHECK(std::abs(sum / ti.side().to_double() - 1.0) <= 1e-9);
            }
        }
        CHECK(flanked == 1);
    }
}

TEST_CASE("spiral rejects degenerate and oversized input") {
    CHECK_THROWS_AS(klaassen_spiral(SpiralSpec{make_point(1.0, 1.0), make_point(1.0, 1.0)}), DegenerateSpec);
    CHECK_THROWS_AS(klaassen_spiral(SpiralSpec{make_point(0.0, 0.0), make_point(1.0, 0.0), -200, 0}), RangeError);
}

TEST_CASE("uniform lattice density") {
    const auto patch = uniform_lattice(E(1), W(0, 10, 0, 10));
    const double expected = 2.0 * 100.0 / (std::sqrt(3.0) / 2.0);
    CHECK(std::abs(static_cast<double>(patch.size()) / expected - 1.0) < 0.3);
}
