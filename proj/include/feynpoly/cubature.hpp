#ifndef FEYNPOLY_CUBATURE_HPP
#define FEYNPOLY_CUBATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "feynpoly/tseries.hpp"

namespace feynpoly {

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& w) : std::runtime_error(w) {}
};

/// Vector-valued integrand on the open unit cube: writes ncomp values at x.
using CubeIntegrand = std::function<void(const double* x, cplx* out)>;

struct CubatureResult {
    std::vector<cplx> value;
    std::vector<double> error;
    std::size_t evaluations = 0;
    bool converged = true;
};

struct CubatureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_evaluations = 1000000;
    bool throw_on_budget = true;
};

/// Deterministic adaptive integration over [0,1]^dim.
/// dim 0 evaluates once, dim 1 uses Gauss-Kronrod 7-15, dim >= 2 uses the
/// Genz-Malik degree-7 rule with bisection along the largest fourth-difference axis.
CubatureResult integrate_cube(std::size_t dim, std::size_t ncomp, const CubeIntegrand& f,
                              const CubatureOptions& opt = {});

/// Pairwise (tree) summation in index order; reproducible reduction.
std::vector<cplx> pairwise_sum(std::vector<std::vector<cplx>> rows);

} // namespace feynpoly

#endif
