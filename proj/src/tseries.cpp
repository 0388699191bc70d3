#include "feynpoly/tseries.hpp"

#include <cmath>

namespace feynpoly {

TSeries operator*(const TSeries& a, const TSeries& b) {
    a.check(b);
    // scalar fast paths
    if (a.is_nilpotent_zero()) return a.value() * b;
    if (b.is_nilpotent_zero()) return b.value() * a;
    const auto& caps = a.caps_;
    const std::size_t nv = caps.size();
    TSeries r(caps);
    std::vector<int> ea(nv, 0), eb(nv, 0), ec(nv);
    // iterate exponents of a and b, truncating sums beyond each cap
    std::size_t na = a.coeff_.size();
    for (std::size_t ia = 0; ia < na; ++ia) {
        if (a.coeff_[ia] != cplx(0.0)) {
            std::fill(eb.begin(), eb.end(), 0);
            std::size_t nb = b.coeff_.size();
            for (std::size_t ib = 0; ib < nb; ++ib) {
                if (b.coeff_[ib] != cplx(0.0)) {
                    bool ok = true;
                    for (std::size_t v = 0; v < nv; ++v) {
                        ec[v] = ea[v] + eb[v];
                        if (ec[v] > caps[v]) { ok = false; break; }
                    }
                    if (ok) r.at(ec) += a.coeff_[ia] * b.coeff_[ib];
                }
                // increment eb mixed-radix (last var fastest)
                for (std::size_t v = nv; v-- > 0;) {
                    if (++eb[v] <= caps[v]) break;
                    eb[v] = 0;
                }
            }
        }
        for (std::size_t v = nv; v-- > 0;) {
            if (++ea[v] <= caps[v]) break;
            ea[v] = 0;
        }
    }
    return r;
}

TSeries TSeries::coefficient_of(std::size_t var, int k) const {
    std::vector<int> rcaps = caps_;
    rcaps.erase(rcaps.begin() + long(var));
    TSeries r(rcaps);
    const std::size_t nv = caps_.size();
    std::vector<int> e(nv, 0), re(nv - 1);
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
        if (e[var] == k && coeff_[i] != cplx(0.0)) {
            std::size_t j = 0;
            for (std::size_t v = 0; v < nv; ++v)
                if (v != var) re[j++] = e[v];
            r.at(re) = coeff_[i];
        }
        for (std::size_t v = nv; v-- > 0;) {
            if (++e[v] <= caps_[v]) break;
            e[v] = 0;
        }
    }
    return r;
}

TSeries exp(const TSeries& s) {
    TSeries n = s.nilpotent();
    TSeries acc = TSeries::constant(s.caps(), cplx(1.0));
    TSeries term = acc;
    int tmax = s.total_cap();
    for (int k = 1; k <= tmax; ++k) {
        term = (cplx(1.0 / k)) * (term * n);
        if (term.is_nilpotent_zero() && term.value() == cplx(0.0)) break;
        acc += term;
    }
    return std::exp(s.value()) * acc;
}

TSeries log(const TSeries& s) {
    cplx c = s.value();
    if (c == cplx(0.0)) throw std::domain_error("log of series with zero constant term");
    TSeries u = (cplx(1.0) / c) * s.nilpotent();
    TSeries acc = TSeries::constant(s.caps(), std::log(c));
    TSeries upow = TSeries::constant(s.caps(), cplx(1.0));
    int tmax = s.total_cap();
    for (int k = 1; k <= tmax; ++k) {
        upow *= u;
        if (upow.is_nilpotent_zero() && upow.value() == cplx(0.0)) break;
        acc += (cplx((k % 2 == 1) ? 1.0 / k : -1.0 / k)) * upow;
    }
    return acc;
}

TSeries recip(const TSeries& s) {
    cplx c = s.value();
    if (c == cplx(0.0)) throw std::domain_error("reciprocal of series with zero constant term");
    TSeries u = (cplx(-1.0) / c) * s.nilpotent();
    TSeries acc = TSeries::constant(s.caps(), cplx(1.0));
    TSeries upow = acc;
    int tmax = s.total_cap();
    for (int k = 1; k <= tmax; ++k) {
        upow *= u;
        if (upow.is_nilpotent_zero() && upow.value() == cplx(0.0)) break;
        acc += upow;
    }
    return (cplx(1.0) / c) * acc;
}

TSeries pow(const TSeries& s, const TSeries& e) { return exp(e * log(s)); }

TSeries pow(const TSeries& s, cplx e) {
    return exp(e * log(s));
}

} // namespace feynpoly
