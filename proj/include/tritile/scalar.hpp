#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>

namespace tritile {

enum class Backend { Exact, Float };

const char* to_string(Backend backend);

inline constexpr double kDefaultEpsilon = 1e-9;

/**
 * An element u + v*sqrt(3) of the real quadratic field Q(sqrt 3).
 *
 * Components are GMP rationals, so repeated lattice translation never
 * overflows. A double approximation and a magnitude bound |u| + |v|*sqrt(3)
 * are cached on every update; predicates use them as a floating-point filter
 * before falling back to exact evaluation.
 */
class QSqrt3 {
public:
    QSqrt3() = default;
    QSqrt3(mpq_class rational, mpq_class radical = 0);
    QSqrt3(long value) : QSqrt3(mpq_class(value)) {}

    static QSqrt3 sqrt3() { return QSqrt3(0, 1); }

    const mpq_class& rational() const { return u_; }
    const mpq_class& radical() const { return v_; }

    /// Exact sign, no floating point involved.
    int sign() const;
    bool is_zero() const { return sgn(u_) == 0 && sgn(v_) == 0; }
    bool is_rational() const { return sgn(v_) == 0; }

    double to_double() const { return approx_; }
    /// Upper bound on |value|, used for filter error bounds.
    double magnitude() const { return mag_; }

    /// Field norm u^2 - 3 v^2.
    mpq_class norm() const { return u_ * u_ - 3 * v_ * v_; }
    QSqrt3 conjugate() const { return QSqrt3(u_, -v_); }
    QSqrt3 abs() const { return sign() < 0 ? -*this : *this; }

    /// The nonnegative square root when it lies in Q(sqrt 3).
    std::optional<QSqrt3> sqrt() const;

    QSqrt3 operator-() const { return QSqrt3(-u_, -v_); }
    QSqrt3& operator+=(const QSqrt3& rhs);
    QSqrt3& operator-=(const QSqrt3& rhs);
    QSqrt3& operator*=(const QSqrt3& rhs);
    QSqrt3& operator/=(const QSqrt3& rhs);

    friend QSqrt3 operator+(QSqrt3 lhs, const QSqrt3& rhs) { return lhs += rhs; }
    friend QSqrt3 operator-(QSqrt3 lhs, const QSqrt3& rhs) { return lhs -= rhs; }
    friend QSqrt3 operator*(QSqrt3 lhs, const QSqrt3& rhs) { return lhs *= rhs; }
    friend QSqrt3 operator/(QSqrt3 lhs, const QSqrt3& rhs) { return lhs /= rhs; }

    friend bool operator==(const QSqrt3& a, const QSqrt3& b) { return a.u_ == b.u_ && a.v_ == b.v_; }
    friend bool operator!=(const QSqrt3& a, const QSqrt3& b) { return !(a == b); }
    friend bool operator<(const QSqrt3& a, const QSqrt3& b) { return compare(a, b) < 0; }
    friend bool operator<=(const QSqrt3& a, const QSqrt3& b) { return compare(a, b) <= 0; }
    friend bool operator>(const QSqrt3& a, const QSqrt3& b) { return compare(a, b) > 0; }
    friend bool operator>=(const QSqrt3& a, const QSqrt3& b) { return compare(a, b) >= 0; }

    friend int compare(const QSqrt3& a, const QSqrt3& b);

    /// Token form "p/q:r/s" (lowest terms, positive denominators).
    std::string to_token() const;
    static QSqrt3 parse_token(const std::string& token);

private:
    void refresh();

    mpq_class u_;
    mpq_class v_;
    double approx_ = 0.0;
    double mag_ = 0.0;
};

/// Parses "p", "p/q" or a plain decimal ("-1.25", "3e-2") into an exact rational.
mpq_class parse_rational(const std::string& text);

/// A number in one of the two backends. All arithmetic between different
/// backends raises BackendMismatch.
///
/// Float values carry their comparison tolerance; two floats compare equal
/// when |x - y| <= eps * max(1, |x|, |y|). Results of arithmetic inherit the
/// larger tolerance of the operands.
class Scalar {
public:
    /// Exact zero.
    Scalar() : rep_(QSqrt3()) {}
    Scalar(QSqrt3 value) : rep_(std::move(value)) {}

    static Scalar exact(const mpq_class& rational, const mpq_class& radical = 0) {
        return Scalar(QSqrt3(rational, radical));
    }
    static Scalar approx(double value, double eps = kDefaultEpsilon) { return Scalar(Real{value, eps}); }

    /// A constant in the same backend (and tolerance) as `like`.
    static Scalar constant(const Scalar& like, const mpq_class& value);

    Backend backend() const { return rep_.index() == 0 ? Backend::Exact : Backend::Float; }
    bool is_exact() const { return backend() == Backend::Exact; }

    /// Exact value; raises BackendError for floats.
    const QSqrt3& exact_value() const;
    /// Double approximation in either backend.
    double to_double() const;
    /// Comparison tolerance (0 for exact values).
    double epsilon() const;

    int sign() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    /// Exact square roots must exist in Q(sqrt 3), otherwise BackendError.
    Scalar sqrt() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    /// Three-way comparison honouring the float tolerance.
    friend int compare(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

    /// Bit-level identity: exact components equal, or identical doubles.
    bool identical(const Scalar& other) const;

    /// File token: "p/q:r/s" for exact values, 17 significant digits for floats.
    std::string to_token() const;
    static Scalar parse_token(const std::string& token, Backend backend, double eps);

    /// Short human-readable form ("3", "1/2+3/4*sqrt3", "0.75487766624669271").
    std::string to_string() const;

private:
    struct Real {
        double value;
        double eps;
    };
    explicit Scalar(Real value) : rep_(value) {}

    const Real& real() const { return std::get<Real>(rep_); }
    void require_same_backend(const Scalar& other) const;

    std::variant<QSqrt3, Real> rep_;
};

bool tolerant_equal(double a, double b, double eps);

} // namespace tritile
