#ifndef FEYNPOLY_GAMMA_HPP
#define FEYNPOLY_GAMMA_HPP

#include "feynpoly/eps_series.hpp"

namespace feynpoly {

cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx digamma(cplx z);
/// m-th derivative of digamma (m = 0 gives digamma itself).
cplx polygamma(int m, cplx z);

/// Laurent series of Gamma(z0 + eps) through eps^order.
/// z0 at a nonpositive integer produces the simple pole through the
/// recurrence Gamma(eps - n) = Gamma(1 + eps) / (eps (eps-1) ... (eps-n)).
EpsSeries gamma_series(cplx z0, int order);

/// Gamma(z0 + slope*eps) as a series in eps.
EpsSeries gamma_series(cplx z0, const Rational& slope, int order);

} // namespace feynpoly

#endif
