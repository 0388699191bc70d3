#include "feynpoly/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace feynpoly {

namespace {

const double PI = 3.14159265358979323846264338327950288;

// Lanczos g=7, n=9 (double precision)
const double lanczos_g = 7.0;
const double lanczos_c[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_2, B_4, ..., B_20
const double bernoulli[10] = {
    1.0 / 6,    -1.0 / 30,    1.0 / 42,    -1.0 / 30,    5.0 / 66,
    -691.0 / 2730, 7.0 / 6,   -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
};

bool nonpositive_integer(cplx z, long* n_out) {
    if (z.imag() != 0.0) return false;
    double r = std::round(z.real());
    if (r > 0.5 || std::abs(z.real() - r) > 1e-12) return false;
    *n_out = long(-r);
    return true;
}

} // namespace

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection; fine away from the poles on the real axis
        return std::log(PI / std::sin(PI * z)) - log_gamma(cplx(1.0) - z);
    }
    cplx x = lanczos_c[0];
    cplx zm1 = z - cplx(1.0);
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (zm1 + cplx(double(i)));
    cplx t = zm1 + cplx(lanczos_g + 0.5);
    return 0.5 * std::log(2.0 * PI) + (zm1 + cplx(0.5)) * std::log(t) - t + std::log(x);
}

cplx gamma_fn(cplx z) {
    long n;
    if (nonpositive_integer(z, &n)) throw std::domain_error("gamma pole at nonpositive integer");
    if (z.real() < 0.5) return PI / (std::sin(PI * z) * gamma_fn(cplx(1.0) - z));
    return std::exp(log_gamma(z));
}

cplx digamma(cplx z) { return polygamma(0, z); }

cplx polygamma(int m, cplx z) {
    if (m < 0) throw std::invalid_argument("polygamma order must be nonnegative");
    long n;
    if (nonpositive_integer(z, &n)) throw std::domain_error("polygamma pole at nonpositive integer");
    // recurrence up to a region where the asymptotic series is accurate
    cplx acc(0.0);
    double fact_m = 1.0;
    for (int i = 1; i <= m; ++i) fact_m *= i;
    double sign = (m % 2 == 0) ? 1.0 : -1.0; // (-1)^m
    while (z.real() < 20.0) {
        // psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! / z^(m+1)
        acc -= sign * fact_m / std::pow(z, double(m + 1));
        z += 1.0;
    }
    cplx res;
    if (m == 0) {
        res = std::log(z) - 0.5 / z;
        cplx z2 = z * z, p = z2;
        for (int k = 0; k < 10; ++k) {
            res -= bernoulli[k] / (2.0 * (k + 1) * p);
            p *= z2;
        }
    } else {
        // (-1)^(m+1) psi^(m)(z) = (m-1)!/z^m + m!/(2 z^(m+1))
        //                       + sum_k B_2k (2k+m-1)!/(2k)! z^(2k+m)
        double fact_m1 = fact_m / m;
        cplx s = fact_m1 / std::pow(z, double(m)) + fact_m / (2.0 * std::pow(z, double(m + 1)));
        for (int k = 1; k <= 10; ++k) {
            double r = 1.0; // (2k+m-1)! / (2k)!
            for (int j = 2 * k + 1; j <= 2 * k + m - 1; ++j) r *= j;
            s += bernoulli[k - 1] * r / std::pow(z, double(2 * k + m));
        }
        res = -sign * s; // (-1)^(m+1) s with sign = (-1)^m
    }
    return res + acc;
}

namespace {

EpsSeries gamma_series_regular(cplx z0, int order) {
    // Gamma(z0+eps) = Gamma(z0) exp(sum_k psi^(k-1)(z0) eps^k / k!)
    TSeries arg(std::vector<int>{order}, cplx(0.0));
    double fact = 1.0;
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        std::vector<int> e = {k};
        arg.at(e) = polygamma(k - 1, z0) / fact;
    }
    TSeries g = exp(arg);
    EpsSeries out = EpsSeries::zero(order);
    cplx g0 = gamma_fn(z0);
    for (int k = 0; k <= order; ++k) {
        out.coeff[std::size_t(k)] = g0 * g.at({k});
        out.err[std::size_t(k)] = std::abs(out.coeff[std::size_t(k)]) * 1e-12;
    }
    return out;
}

} // namespace

EpsSeries gamma_series(cplx z0, int order) {
    if (order > 12) throw std::invalid_argument("gamma series order capped at 12");
    long n;
    if (!nonpositive_integer(z0, &n)) return gamma_series_regular(z0, order);
    // Gamma(eps - n) = Gamma(1+eps) / (eps (eps-1) ... (eps-n))
    EpsSeries s = gamma_series_regular(cplx(1.0), order + 1);
    s = s.shifted(-1); // divide by eps
    for (long j = 1; j <= n; ++j) {
        // 1/(eps - j) = -(1/j)(1 + eps/j + eps^2/j^2 + ...)
        EpsSeries inv = EpsSeries::zero(order + 1);
        double p = -1.0 / double(j);
        for (int k = 0; k <= order + 1; ++k) {
            inv.coeff[std::size_t(k)] = p;
            p /= double(j);
        }
        s = s * inv;
    }
    return s.truncated(order);
}

EpsSeries gamma_series(cplx z0, const Rational& slope, int order) {
    EpsSeries out = gamma_series(z0, order);
    double h = slope.to_double();
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
        double f = std::pow(h, out.lead + int(i));
        out.coeff[i] *= f;
        out.err[i] *= std::abs(f);
    }
    return out;
}

} // namespace feynpoly
