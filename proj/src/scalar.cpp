#include "tritile/scalar.hpp"

#include "tritile/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace tritile {

namespace {

const double kSqrt3 = std::sqrt(3.0);

int sgn_of(const mpq_class& q) { return sgn(q); }

// Exact nonnegative rational square root, if any.
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

std::string rational_token(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace

const char* to_string(Backend backend) {
    return backend == Backend::Exact ? "exact" : "float";
}

// ---------------------------------------------------------------------------
// QSqrt3

QSqrt3::QSqrt3(mpq_class rational, mpq_class radical) : u_(std::move(rational)), v_(std::move(radical)) {
    u_.canonicalize();
    v_.canonicalize();
    refresh();
}

void QSqrt3::refresh() {
    const double u = u_.get_d();
    const double v = v_.get_d();
    approx_ = u + v * kSqrt3;
    mag_ = std::abs(u) + std::abs(v) * kSqrt3;
}

int QSqrt3::sign() const {
    const int su = sgn_of(u_);
    const int sv = sgn_of(v_);
    if (sv == 0) {
        return su;
    }
    if (su == 0 || su == sv) {
        return sv == 0 ? su : sv;
    }
    // Opposite signs: compare u^2 against 3 v^2.
    const int c = cmp(u_ * u_, 3 * v_ * v_);
    return su > 0 ? c : -c;
}

int compare(const QSqrt3& a, const QSqrt3& b) {
    const double da = a.approx_;
    const double db = b.approx_;
    const double bound = 1e-12 * (a.mag_ + b.mag_);
    if (da - db > bound) {
        return 1;
    }
    if (db - da > bound) {
        return -1;
    }
    return (a - b).sign();
}

QSqrt3& QSqrt3::operator+=(const QSqrt3& rhs) {
    u_ += rhs.u_;
    v_ += rhs.v_;
    refresh();
    return *this;
}

QSqrt3& QSqrt3::operator-=(const QSqrt3& rhs) {
    u_ -= rhs.u_;
    v_ -= rhs.v_;
    refresh();
    return *this;
}

QSqrt3& QSqrt3::operator*=(const QSqrt3& rhs) {
    if (rhs.is_rational()) {
        u_ *= rhs.u_;
        v_ *= rhs.u_;
    } else if (is_rational()) {
        v_ = u_ * rhs.v_;
        u_ *= rhs.u_;
    } else {
        mpq_class u = u_ * rhs.u_ + 3 * v_ * rhs.v_;
        mpq_class v = u_ * rhs.v_ + v_ * rhs.u_;
        u_ = std::move(u);
        v_ = std::move(v);
    }
    refresh();
    return *this;
}

QSqrt3& QSqrt3::operator/=(const QSqrt3& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("division by zero in Q(sqrt 3)");
    }
    if (rhs.is_rational()) {
        u_ /= rhs.u_;
        v_ /= rhs.u_;
        refresh();
        return *this;
    }
    const mpq_class n = rhs.norm();
    *this *= rhs.conjugate();
    u_ /= n;
    v_ /= n;
    refresh();
    return *this;
}

std::optional<QSqrt3> QSqrt3::sqrt() const {
    const int s = sign();
    if (s < 0) {
        return std::nullopt;
    }
    if (s == 0) {
        return QSqrt3();
    }
    // (x + y sqrt3)^2 = x^2 + 3y^2 + 2xy sqrt3, so x^2 + 3y^2 = u, 2xy = v and
    // the norm u^2 - 3v^2 = (x^2 - 3y^2)^2 must be a rational square.
    const auto n = rational_sqrt(norm());
    if (!n) {
        return std::nullopt;
    }
    for (const mpq_class& candidate : {mpq_class((u_ + *n) / 2), mpq_class((u_ - *n) / 2)}) {
        const auto x = rational_sqrt(candidate);
        if (!x) {
            continue;
        }
        QSqrt3 root;
        if (sgn(*x) == 0) {
            // x = 0: u = 3y^2.
            const auto y = rational_sqrt(mpq_class(u_ / 3));
            if (!y || sgn(v_) != 0) {
                continue;
            }
            root = QSqrt3(0, *y);
        } else {
            root = QSqrt3(*x, mpq_class(v_ / (2 * *x)));
        }
        if (root * root == *this) {
            return root.abs();
        }
    }
    return std::nullopt;
}

std::string QSqrt3::to_token() const { return rational_token(u_) + ":" + rational_token(v_); }

QSqrt3 QSqrt3::parse_token(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
        return QSqrt3(parse_rational(token));
    }
    return QSqrt3(parse_rational(token.substr(0, colon)), parse_rational(token.substr(colon + 1)));
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num;
        mpz_class den;
        const std::string ns = text.substr(0, slash);
        const std::string ds = text.substr(slash + 1);
        const auto plain = [](const std::string& s, bool allow_sign) {
            if (s.empty()) {
                return false;
            }
            std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) {
                return false;
            }
            return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                               [](unsigned char c) { return std::isdigit(c) != 0; });
        };
        if (!plain(ns, true) || !plain(ds, false)) {
            throw std::invalid_argument("malformed rational '" + text + "'");
        }
        num.set_str(ns[0] == '+' ? ns.substr(1) : ns, 10);
        den.set_str(ds, 10);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + text + "'");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    // Decimal with optional exponent, converted exactly.
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                ++scale;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("malformed number '" + text + "'");
    }
    long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') {
            throw std::invalid_argument("malformed number '" + text + "'");
        }
        const std::string rest = text.substr(i + 1);
        char* end = nullptr;
        exponent = std::strtol(rest.c_str(), &end, 10);
        if (rest.empty() || *end != '\0') {
            throw std::invalid_argument("malformed exponent in '" + text + "'");
        }
    }
    mpz_class num(digits, 10);
    if (negative) {
        num = -num;
    }
    const long shift = exponent - scale;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Scalar

bool tolerant_equal(double a, double b, double eps) {
    return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

Scalar Scalar::constant(const Scalar& like, const mpq_class& value) {
    if (like.is_exact()) {
        return Scalar(QSqrt3(value));
    }
    return approx(value.get_d(), like.real().eps);
}

const QSqrt3& Scalar::exact_value() const {
    if (!is_exact()) {
        throw BackendError("exact value requested from a float scalar");
    }
    return std::get<QSqrt3>(rep_);
}

double Scalar::to_double() const {
    return is_exact() ? std::get<QSqrt3>(rep_).to_double() : real().value;
}

double Scalar::epsilon() const { return is_exact() ? 0.0 : real().eps; }

void Scalar::require_same_backend(const Scalar& other) const {
    if (rep_.index() != other.rep_.index()) {
        throw BackendMismatch("cannot combine exact and float scalars");
    }
}

int Scalar::sign() const {
    if (is_exact()) {
        return std::get<QSqrt3>(rep_).sign();
    }
    const double v = real().value;
    if (tolerant_equal(v, 0.0, real().eps)) {
        return 0;
    }
    return v > 0 ? 1 : -1;
}

Scalar Scalar::sqrt() const {
    if (is_exact()) {
        auto root = std::get<QSqrt3>(rep_).sqrt();
        if (!root) {
            throw BackendError("square root of " + to_string() + " is not in Q(sqrt 3)");
        }
        return Scalar(std::move(*root));
    }
    return approx(std::sqrt(std::max(0.0, real().value)), real().eps);
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        return Scalar(-std::get<QSqrt3>(rep_));
    }
    return approx(-real().value, real().eps);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_backend(rhs);
    if (is_exact()) {
        std::get<QSqrt3>(rep_) += std::get<QSqrt3>(rhs.rep_);
    } else {
        auto& r = std::get<Real>(rep_);
        r.value += rhs.real().value;
        r.eps = std::max(r.eps, rhs.real().eps);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    require_same_backend(rhs);
    if (is_exact()) {
        std::get<QSqrt3>(rep_) -= std::get<QSqrt3>(rhs.rep_);
    } else {
        auto& r = std::get<Real>(rep_);
        r.value -= rhs.real().value;
        r.eps = std::max(r.eps, rhs.real().eps);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_backend(rhs);
    if (is_exact()) {
        std::get<QSqrt3>(rep_) *= std::get<QSqrt3>(rhs.rep_);
    } else {
        auto& r = std::get<Real>(rep_);
        r.value *= rhs.real().value;
        r.eps = std::max(r.eps, rhs.real().eps);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_backend(rhs);
    if (is_exact()) {
        std::get<QSqrt3>(rep_) /= std::get<QSqrt3>(rhs.rep_);
    } else {
        auto& r = std::get<Real>(rep_);
        if (rhs.real().value == 0.0) {
            throw std::domain_error("division by zero");
        }
        r.value /= rhs.real().value;
        r.eps = std::max(r.eps, rhs.real().eps);
    }
    return *this;
}

int compare(const Scalar& a, const Scalar& b) {
    a.require_same_backend(b);
    if (a.is_exact()) {
        return compare(std::get<QSqrt3>(a.rep_), std::get<QSqrt3>(b.rep_));
    }
    const double x = a.real().value;
    const double y = b.real().value;
    if (tolerant_equal(x, y, std::max(a.real().eps, b.real().eps))) {
        return 0;
    }
    return x < y ? -1 : 1;
}

bool Scalar::identical(const Scalar& other) const {
    if (rep_.index() != other.rep_.index()) {
        return false;
    }
    if (is_exact()) {
        return std::get<QSqrt3>(rep_) == std::get<QSqrt3>(other.rep_);
    }
    return real().value == other.real().value;
}

std::string Scalar::to_token() const {
    if (is_exact()) {
        return std::get<QSqrt3>(rep_).to_token();
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", real().value);
    return buffer;
}

Scalar Scalar::parse_token(const std::string& token, Backend backend, double eps) {
    if (backend == Backend::Exact) {
        return Scalar(QSqrt3::parse_token(token));
    }
    if (token.find(':') != std::string::npos || token.find('/') != std::string::npos) {
        throw std::invalid_argument("exact token '" + token + "' in a float file");
    }
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (token.empty() || *end != '\0' || !std::isfinite(value)) {
        throw std::invalid_argument("malformed float token '" + token + "'");
    }
    return approx(value, eps);
}

std::string Scalar::to_string() const {
    if (!is_exact()) {
        return to_token();
    }
    const QSqrt3& q = std::get<QSqrt3>(rep_);
    if (q.is_rational()) {
        return q.rational().get_str();
    }
    std::ostringstream out;
    if (sgn(q.rational()) != 0) {
        out << q.rational().get_str() << (sgn(q.radical()) > 0 ? "+" : "");
    }
    out << q.radical().get_str() << "*sqrt3";
    return out.str();
}

} // namespace tritile
