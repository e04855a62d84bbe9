#include "tritile/errors.hpp"
#include "tritile/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <random>

using namespace tritile;
using boost::multiprecision::cpp_bin_float_50;

namespace {

QSqrt3 q(long un, long ud, long vn = 0, long vd = 1) { return QSqrt3(mpq_class(un, ud), mpq_class(vn, vd)); }

cpp_bin_float_50 wide(const mpq_class& r) {
    return cpp_bin_float_50(r.get_num().get_str()) / cpp_bin_float_50(r.get_den().get_str());
}

} // namespace

TEST_CASE("tokens") {
    CHECK(QSqrt3::parse_token("1/2:0/1") == q(1, 2));
    const QSqrt3 r3 = QSqrt3::parse_token("0/1:1/1");
    CHECK(r3 == QSqrt3::sqrt3());
    CHECK(r3.to_double() == doctest::Approx(1.7320508075688772).epsilon(1e-15));
    CHECK(q(-6, 4, 2, 6).to_token() == "-3/2:1/3");
    CHECK(q(0, 1).to_token() == "0/1:0/1");
    CHECK(parse_rational("0.125") == mpq_class(1, 8));
    CHECK(parse_rational("-3e2") == mpq_class(-300));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("field arithmetic folds sqrt3 squared") {
    const QSqrt3 r3 = QSqrt3::sqrt3();
    CHECK(r3 * r3 == q(3, 1));
    const QSqrt3 x = q(2, 1, 1, 1);
    CHECK(x * x.conjugate() == q(1, 1));
    CHECK(x / x == q(1, 1));
    CHECK(q(1, 1) / x == x.conjugate());
    CHECK_THROWS_AS(x / q(0, 1), std::domain_error);
}

TEST_CASE("exact sign cases") {
    CHECK(q(0, 1).sign() == 0);
    CHECK(q(1, 1, -1, 2).sign() > 0);   // 1 - 0.866
    CHECK(q(1, 1, -1, 1).sign() < 0);   // 1 - 1.732
    CHECK(q(-2, 1, 1, 1).sign() < 0);   // -2 + 1.732
    CHECK(q(-1, 1, 1, 1).sign() > 0);
    CHECK(q(3, 1, -1, 1).sign() > 0);
}

TEST_CASE("exact sign agrees with 50-digit evaluation on random inputs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    const cpp_bin_float_50 r3 = boost::multiprecision::sqrt(cpp_bin_float_50(3));
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        mpq_class u(num(rng), den(rng));
        mpq_class v(num(rng), den(rng));
        u.canonicalize();
        v.canonicalize();
        if (i % 10 == 0) {
            // Near-cancelling inputs: u close to -v*sqrt3.
            v = mpq_class(num(rng), 1000);
            v.canonicalize();
            const double guess = -v.get_d() * 1.7320508075688772;
            u = mpq_class(static_cast<long>(guess * 1e6), 1000000);
            u.canonicalize();
        }
        const cpp_bin_float_50 value = wide(u) + wide(v) * r3;
        const int expected = value > 0 ? 1 : (value < 0 ? -1 : 0);
        disagreements += QSqrt3(u, v).sign() != expected ? 1 : 0;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("exact square roots") {
    CHECK(q(4, 1, 2, 1).sqrt() == q(1, 1, 1, 1));  // (1 + sqrt3)^2
    CHECK(q(9, 4).sqrt() == q(3, 2));
    CHECK(q(3, 1).sqrt() == QSqrt3::sqrt3());
    CHECK_FALSE(q(2, 1).sqrt().has_value());
    CHECK_THROWS_AS(Scalar::exact(2).sqrt(), BackendError);
    CHECK(Scalar::approx(2.0).sqrt().to_double() == doctest::Approx(1.4142135623730951));
}

TEST_CASE("float tolerance is relative with floor 1") {
    const double eps = 1e-9;
    CHECK(Scalar::approx(1.0, eps) == Scalar::approx(1.0 + 5e-10, eps));
    CHECK(Scalar::approx(1.0, eps) != Scalar::approx(1.0 + 2e-9, eps));
    CHECK(Scalar::approx(1e6, eps) == Scalar::approx(1e6 + 5e-4, eps));
    CHECK(Scalar::approx(1e6, eps) != Scalar::approx(1e6 + 2e-3, eps));
    CHECK(Scalar::approx(1e-12, eps) == Scalar::approx(0.0, eps));
    CHECK(Scalar::approx(1e-12, eps).sign() == 0);
}

TEST_CASE("backends do not mix") {
    CHECK_THROWS_AS(Scalar::exact(1) + Scalar::approx(1.0), BackendMismatch);
    CHECK_THROWS_AS((void)(Scalar::exact(1) < Scalar::approx(1.0)), BackendMismatch);
    CHECK_THROWS_AS(Scalar::approx(1.0).exact_value(), BackendError);
    CHECK(Scalar::constant(Scalar::approx(0.0, 1e-6), mpq_class(1, 4)).epsilon() == 1e-6);
}

TEST_CASE("scalar tokens round trip") {
    const Scalar e = Scalar::exact(mpq_class(-7, 3), mpq_class(5, 11));
    CHECK(Scalar::parse_token(e.to_token(), Backend::Exact, 1e-9).identical(e));
    const Scalar f = Scalar::approx(0.1 + 0.2);
    CHECK(Scalar::parse_token(f.to_token(), Backend::Float, 1e-9).identical(f));
}
