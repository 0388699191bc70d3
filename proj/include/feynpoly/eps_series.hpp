#ifndef FEYNPOLY_EPS_SERIES_HPP
#define FEYNPOLY_EPS_SERIES_HPP

#include <complex>
#include <vector>

#include "feynpoly/rational.hpp"
#include "feynpoly/tseries.hpp"

namespace feynpoly {

/// Finite Laurent series in the regulator with error bars on the coefficients.
struct EpsSeries {
    int lead = 0;              // power of the first stored coefficient
    std::vector<cplx> coeff;   // from eps^lead upward
    std::vector<double> err;   // absolute error estimates, same length

    static EpsSeries zero(int order) {
        EpsSeries s;
        s.lead = 0;
        s.coeff.assign(std::size_t(order) + 1, cplx(0.0));
        s.err.assign(std::size_t(order) + 1, 0.0);
        return s;
    }
    static EpsSeries constant(cplx v, int order) {
        EpsSeries s = zero(order);
        s.coeff[0] = v;
        return s;
    }

    int order_max() const { return lead + int(coeff.size()) - 1; }
    cplx at(int power) const {
        int i = power - lead;
        return (i >= 0 && i < int(coeff.size())) ? coeff[std::size_t(i)] : cplx(0.0);
    }
    double err_at(int power) const {
        int i = power - lead;
        return (i >= 0 && i < int(coeff.size())) ? err[std::size_t(i)] : 0.0;
    }
    /// Smallest power with a coefficient distinguishable from zero.
    int pole_order() const;

    EpsSeries truncated(int max_power) const;
    EpsSeries shifted(int delta) const; // multiply by eps^delta

    friend EpsSeries operator+(const EpsSeries& a, const EpsSeries& b);
    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b);
    friend EpsSeries operator*(cplx s, const EpsSeries& a);
};

/// Exact Laurent expansion of pref * prod(num_i) / prod(den_i) where every
/// factor is affine in the regulator; den factors with vanishing constant
/// part each contribute a first-order pole.
struct RatFunEps {
    RatC pref{Rational(1)};
    std::vector<AffineEps> num;
    std::vector<AffineEps> den;

    int pole_order() const;
    /// Laurent coefficients through eps^max_power (exact, then rounded).
    EpsSeries expand(int max_power) const;
};

} // namespace feynpoly

#endif
