#include "feynpoly/eps_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace feynpoly {

int EpsSeries::pole_order() const {
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        int p = lead + int(i);
        if (p >= 0) return 0;
        if (std::abs(coeff[i]) > 100.0 * err[i] + 1e-300) return -p;
    }
    return 0;
}

EpsSeries EpsSeries::truncated(int max_power) const {
    EpsSeries s = *this;
    int keep = max_power - lead + 1;
    if (keep < 0) keep = 0;
    if (std::size_t(keep) < s.coeff.size()) {
        s.coeff.resize(std::size_t(keep));
        s.err.resize(std::size_t(keep));
    }
    return s;
}

EpsSeries EpsSeries::shifted(int delta) const {
    EpsSeries s = *this;
    s.lead += delta;
    return s;
}

EpsSeries operator+(const EpsSeries& a, const EpsSeries& b) {
    if (a.coeff.empty()) return b;
    if (b.coeff.empty()) return a;
    EpsSeries s;
    s.lead = std::min(a.lead, b.lead);
    int top = std::min(a.order_max(), b.order_max()); // the shorter tail truncates
    s.coeff.assign(std::size_t(top - s.lead + 1), cplx(0.0));
    s.err.assign(s.coeff.size(), 0.0);
    for (int p = s.lead; p <= top; ++p) {
        s.coeff[std::size_t(p - s.lead)] = a.at(p) + b.at(p);
        s.err[std::size_t(p - s.lead)] = a.err_at(p) + b.err_at(p);
    }
    return s;
}

EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    if (a.coeff.empty() || b.coeff.empty()) return EpsSeries{0, {}, {}};
    EpsSeries s;
    s.lead = a.lead + b.lead;
    int top = std::min(a.order_max() + b.lead, b.order_max() + a.lead);
    s.coeff.assign(std::size_t(top - s.lead + 1), cplx(0.0));
    s.err.assign(s.coeff.size(), 0.0);
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        for (std::size_t j = 0; j < b.coeff.size(); ++j) {
            int p = a.lead + int(i) + b.lead + int(j);
            if (p > top) continue;
            std::size_t k = std::size_t(p - s.lead);
            s.coeff[k] += a.coeff[i] * b.coeff[j];
            s.err[k] += std::abs(a.coeff[i]) * b.err[j] + a.err[i] * std::abs(b.coeff[j]) +
                        a.err[i] * b.err[j];
        }
    return s;
}

EpsSeries operator*(cplx c, const EpsSeries& a) {
    EpsSeries s = a;
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        s.coeff[i] *= c;
        s.err[i] *= std::abs(c);
    }
    return s;
}

int RatFunEps::pole_order() const {
    int p = 0;
    for (const auto& d : den)
        if (d.a.is_zero()) ++p;
    return p;
}

EpsSeries RatFunEps::expand(int max_power) const {
    int poles = pole_order();
    int len = max_power + poles; // coefficients needed above the lead
    if (len < 0) len = 0;
    // exact expansion over complex rationals
    std::vector<RatC> acc(std::size_t(len) + 1, RatC(Rational(0)));
    acc[0] = pref;
    int lead = 0;
    auto mul_affine = [&](const AffineEps& f) {
        std::vector<RatC> next(acc.size(), RatC(Rational(0)));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] = next[i] + acc[i] * f.a;
            if (i + 1 < acc.size()) next[i + 1] = next[i + 1] + acc[i] * f.b;
        }
        acc = std::move(next);
    };
    auto div_affine = [&](const AffineEps& f) {
        if (f.a.is_zero()) {
            if (f.b.is_zero()) throw std::domain_error("division by the zero affine factor");
            // 1/(b eps): shift lead down, scale by 1/b
            lead -= 1;
            for (auto& c : acc) c = c / f.b;
            return;
        }
        // 1/(a + b eps): geometric series
        std::vector<RatC> next(acc.size(), RatC(Rational(0)));
        RatC inv_a = RatC(Rational(1)) / f.a;
        RatC ratio = f.b / f.a; // (a+b eps)^-1 = a^-1 sum (-ratio eps)^k
        for (std::size_t i = 0; i < acc.size(); ++i) {
            RatC g = acc[i] * inv_a;
            RatC sign(Rational(1));
            for (std::size_t k = 0; i + k < acc.size(); ++k) {
                next[i + k] = next[i + k] + g * sign;
                sign = sign * (-ratio);
            }
        }
        acc = std::move(next);
    };
    for (const auto& f : num) mul_affine(f);
    for (const auto& f : den) div_affine(f);
    EpsSeries out;
    out.lead = lead;
    out.coeff.reserve(acc.size());
    for (const auto& c : acc) out.coeff.push_back(cplx(c.re.to_double(), c.im.to_double()));
    out.err.assign(acc.size(), 0.0);
    return out.truncated(max_power);
}

} // namespace feynpoly
