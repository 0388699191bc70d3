#ifndef FEYNPOLY_TSERIES_HPP
#define FEYNPOLY_TSERIES_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace feynpoly {

using cplx = std::complex<double>;

/// Truncated multivariate power series over complex<double>.
///
/// Variables have individual order caps; coefficients are stored densely in
/// mixed-radix order (last variable fastest). Used as jet arithmetic for the
/// regulator expansion and for Taylor subtraction in sector variables.
class TSeries {
public:
    TSeries() : caps_{}, coeff_{cplx(0.0)} {}

    explicit TSeries(std::vector<int> caps, cplx constant = cplx(0.0))
        : caps_(std::move(caps)), coeff_(size_of(caps_), cplx(0.0)) {
        coeff_[0] = constant;
    }

    static TSeries constant(const std::vector<int>& caps, cplx value) { return TSeries(caps, value); }

    /// The generator x_i (plus an optional constant term).
    static TSeries variable(const std::vector<int>& caps, std::size_t i, cplx base = cplx(0.0)) {
        TSeries s(caps, base);
        if (caps[i] >= 1) {
            std::vector<int> e(caps.size(), 0);
            e[i] = 1;
            s.at(e) = cplx(1.0);
        }
        return s;
    }

    const std::vector<int>& caps() const { return caps_; }
    std::size_t nvars() const { return caps_.size(); }

    cplx& at(const std::vector<int>& exp) { return coeff_[index_of(exp)]; }
    const cplx& at(const std::vector<int>& exp) const { return coeff_[index_of(exp)]; }

    cplx value() const { return coeff_[0]; }

    const std::vector<cplx>& raw() const { return coeff_; }
    std::vector<cplx>& raw() { return coeff_; }

    bool compatible(const TSeries& o) const { return caps_ == o.caps_; }

    friend TSeries operator+(const TSeries& a, const TSeries& b) {
        a.check(b);
        TSeries r(a.caps_);
        for (std::size_t i = 0; i < r.coeff_.size(); ++i) r.coeff_[i] = a.coeff_[i] + b.coeff_[i];
        return r;
    }
    friend TSeries operator-(const TSeries& a, const TSeries& b) {
        a.check(b);
        TSeries r(a.caps_);
        for (std::size_t i = 0; i < r.coeff_.size(); ++i) r.coeff_[i] = a.coeff_[i] - b.coeff_[i];
        return r;
    }
    TSeries operator-() const {
        TSeries r(caps_);
        for (std::size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] = -coeff_[i];
        return r;
    }
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    friend TSeries operator*(cplx s, const TSeries& a) {
        TSeries r(a.caps_);
        for (std::size_t i = 0; i < a.coeff_.size(); ++i) r.coeff_[i] = s * a.coeff_[i];
        return r;
    }

    TSeries& operator+=(const TSeries& o) { return *this = *this + o; }
    TSeries& operator-=(const TSeries& o) { return *this = *this - o; }
    TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

    /// Nilpotent part (constant term removed).
    TSeries nilpotent() const {
        TSeries r = *this;
        r.coeff_[0] = cplx(0.0);
        return r;
    }

    bool is_nilpotent_zero() const {
        for (std::size_t i = 1; i < coeff_.size(); ++i)
            if (coeff_[i] != cplx(0.0)) return false;
        return true;
    }

    /// Extract the one-variable series in var i at outer exponent k
    /// (a series in the remaining variables with unchanged caps for those).
    TSeries coefficient_of(std::size_t var, int k) const;

    int total_cap() const {
        int t = 0;
        for (int c : caps_) t += c;
        return t;
    }

private:
    static std::size_t size_of(const std::vector<int>& caps) {
        std::size_t s = 1;
        for (int c : caps) s *= std::size_t(c + 1);
        return s;
    }
    std::size_t index_of(const std::vector<int>& exp) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < caps_.size(); ++i) idx = idx * std::size_t(caps_[i] + 1) + std::size_t(exp[i]);
        return idx;
    }
    void check(const TSeries& o) const {
        if (caps_ != o.caps_) throw std::logic_error("TSeries cap mismatch");
    }

    std::vector<int> caps_;
    std::vector<cplx> coeff_;
};

TSeries exp(const TSeries& s);
TSeries log(const TSeries& s);
TSeries recip(const TSeries& s);
/// s^e via exp(e*log(s)); requires nonzero constant term in s.
TSeries pow(const TSeries& s, const TSeries& e);
TSeries pow(const TSeries& s, cplx e);

} // namespace feynpoly

#endif
