#include "doctest.h"

#include "feynpoly/gamma.hpp"

using namespace feynpoly;

namespace {
const double EULER = 0.57721566490153286060651209;
const double PI = 3.14159265358979323846;
}

TEST_CASE("gamma function values") {
    CHECK(gamma_fn(cplx(1.0)).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(cplx(5.0)).real() == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(cplx(0.5)).real() == doctest::Approx(std::sqrt(PI)).epsilon(1e-13));
    CHECK(gamma_fn(cplx(-0.5)).real() == doctest::Approx(-2.0 * std::sqrt(PI)).epsilon(1e-12));
    CHECK_THROWS(gamma_fn(cplx(0.0)));
    CHECK_THROWS(gamma_fn(cplx(-3.0)));
    // complex point: |Gamma(1+i)| = sqrt(pi / sinh(pi))
    cplx g = gamma_fn(cplx(1.0, 1.0));
    CHECK(g.real() == doctest::Approx(0.49801566811835604).epsilon(1e-12));
    CHECK(std::abs(g) == doctest::Approx(std::sqrt(PI / std::sinh(PI))).epsilon(1e-12));
}

TEST_CASE("digamma and polygamma") {
    CHECK(digamma(cplx(1.0)).real() == doctest::Approx(-EULER).epsilon(1e-12));
    CHECK(digamma(cplx(2.0)).real() == doctest::Approx(1.0 - EULER).epsilon(1e-12));
    CHECK(digamma(cplx(0.5)).real() == doctest::Approx(-EULER - 2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(polygamma(1, cplx(1.0)).real() == doctest::Approx(PI * PI / 6.0).epsilon(1e-12));
    CHECK(polygamma(2, cplx(1.0)).real() == doctest::Approx(-2.4041138063191885708).epsilon(1e-11));
    CHECK(polygamma(1, cplx(0.5)).real() == doctest::Approx(PI * PI / 2.0).epsilon(1e-12));
}

TEST_CASE("gamma series at regular points") {
    auto s = gamma_series(cplx(1.0), 3);
    CHECK(s.lead == 0);
    CHECK(s.at(0).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.at(1).real() == doctest::Approx(-EULER).epsilon(1e-10));
    CHECK(s.at(2).real() == doctest::Approx(0.5 * (EULER * EULER + PI * PI / 6.0)).epsilon(1e-10));

    auto s2 = gamma_series(cplx(2.0), 2);
    CHECK(s2.at(0).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s2.at(1).real() == doctest::Approx(1.0 - EULER).epsilon(1e-10));
}

TEST_CASE("gamma series at the poles") {
    auto s = gamma_series(cplx(0.0), 3);
    CHECK(s.lead == -1);
    CHECK(s.at(-1).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.at(0).real() == doctest::Approx(-EULER).epsilon(1e-10));

    auto m1 = gamma_series(cplx(-1.0), 2);
    CHECK(m1.at(-1).real() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(m1.at(0).real() == doctest::Approx(EULER - 1.0).epsilon(1e-10));

    // numeric consistency at small eps
    double eps = 1e-4;
    auto m2 = gamma_series(cplx(-2.0), 4);
    cplx approx(0.0);
    for (int k = m2.lead; k <= m2.order_max(); ++k) approx += m2.at(k) * std::pow(eps, k);
    cplx exact = gamma_fn(cplx(-2.0 + eps));
    CHECK(std::abs(approx - exact) / std::abs(exact) < 1e-12);
}

TEST_CASE("gamma series with slope") {
    // Gamma(eps' ) with eps' = 2 eps
    auto s = gamma_series(cplx(0.0), Rational(2), 2);
    CHECK(s.at(-1).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.at(0).real() == doctest::Approx(-EULER).epsilon(1e-10));
}

TEST_CASE("rational eps function expansion") {
    // (c + eps) / (eps * (1 - eps)) has a simple pole
    RatFunEps f;
    f.num.push_back(AffineEps(RatC(Rational(3)), RatC(Rational(1))));
    f.den.push_back(AffineEps(RatC(Rational(0)), RatC(Rational(1))));
    f.den.push_back(AffineEps(RatC(Rational(1)), RatC(Rational(-1))));
    CHECK(f.pole_order() == 1);
    auto s = f.expand(2);
    // (3+eps)(1/eps)(1+eps+eps^2+...) = 3/eps + 4 + 4 eps + ...
    CHECK(s.at(-1).real() == doctest::Approx(3.0));
    CHECK(s.at(0).real() == doctest::Approx(4.0));
    CHECK(s.at(1).real() == doctest::Approx(4.0));
}
