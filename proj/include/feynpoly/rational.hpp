#ifndef FEYNPOLY_RATIONAL_HPP
#define FEYNPOLY_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <iosfwd>

namespace feynpoly {

struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::int64_t checked_i64(__int128 v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw overflow_error(std::string("integer overflow in ") + ctx);
    return static_cast<std::int64_t>(v);
}

} // namespace detail

/// Exact rational over int64, denominator kept positive, always reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// Parses "a", "-a" or "a/b".
    static Rational parse(const std::string& s);

    Rational operator-() const { return Rational(-num_, den_, unreduced_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d, "rational add");
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.num_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d, "rational mul");
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        __int128 n = (__int128)a.num_ * b.den_;
        __int128 d = (__int128)a.den_ * b.num_;
        return from128(n, d, "rational div");
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    /// Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const { return -((-*this).floor()); }

    std::string str() const;

private:
    struct unreduced_tag {};
    Rational(std::int64_t n, std::int64_t d, unreduced_tag) : num_(n), den_(d) {}

    static Rational from128(__int128 n, __int128 d, const char* ctx) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rational(detail::checked_i64(n, ctx), detail::checked_i64(d, ctx), unreduced_tag{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Complex number with exact rational components.
struct RatC {
    Rational re, im;

    RatC() = default;
    RatC(Rational r) : re(r) {}
    RatC(std::int64_t r) : re(r) {}
    RatC(Rational r, Rational i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    RatC operator-() const { return {-re, -im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatC operator/(const RatC& a, const RatC& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n.is_zero()) throw std::domain_error("complex rational division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }
};

/// Affine function a + b*eps of the regulator with exact complex-rational coefficients.
struct AffineEps {
    RatC a, b;

    AffineEps() = default;
    AffineEps(RatC c) : a(c) {}
    AffineEps(RatC c, RatC slope) : a(c), b(slope) {}
    AffineEps(std::int64_t c) : a(Rational(c)) {}

    bool is_constant() const { return b.is_zero(); }

    friend AffineEps operator+(const AffineEps& x, const AffineEps& y) { return {x.a + y.a, x.b + y.b}; }
    friend AffineEps operator-(const AffineEps& x, const AffineEps& y) { return {x.a - y.a, x.b - y.b}; }
    AffineEps operator-() const { return {-a, -b}; }
    friend AffineEps operator*(const Rational& s, const AffineEps& x) {
        return {RatC(s) * x.a, RatC(s) * x.b};
    }
    friend bool operator==(const AffineEps& x, const AffineEps& y) { return x.a == y.a && x.b == y.b; }
};

} // namespace feynpoly

#endif
