#ifndef FEYNPOLY_MELLIN_HPP
#define FEYNPOLY_MELLIN_HPP

#include <optional>

#include "feynpoly/cubature.hpp"
#include "feynpoly/eps_series.hpp"
#include "feynpoly/poly.hpp"

namespace feynpoly {

/// Mellin transform of a product of Laurent polynomial powers:
///   integral over the positive torus of t^s g(t) prod_i f_i(t)^(-c_i) dt/t,
/// with s and c affine in the regulator.
struct MellinProblem {
    std::size_t rank = 0;
    std::vector<NumericPoly> factors;
    std::vector<AffineEps> exponents; // c_i
    NumericPoly numerator;            // g; empty means 1
    std::vector<AffineEps> s;

    /// Verifies the half-plane condition on every factor's coefficients.
    void validate() const;
    NumericPoly numerator_or_one() const;
    LatticePolytope newton_sum() const; // P(f_1 ... f_k)
    bool degenerate() const;            // newton_sum not full-dimensional
};

struct ConvergenceReport {
    bool degenerate = false; // never converges for any parameters
    bool convergent = false;
    std::vector<Vec> violated_rays;
};
ConvergenceReport convergence_check(const MellinProblem& p, double eps_value);

/// One integration sector attached to a maximal cone of a simplicial
/// refinement of the Newton fan.
struct Sector {
    Cone cone;
    std::vector<Vec> rays;                 // generators in canonical order
    std::vector<Vec> factor_vertex;        // m_{sigma,i} per factor
    std::vector<NumericPoly> local_factor; // f_{sigma,i}, constant term present
    NumericPoly local_numerator;           // g with per-coordinate minima pulled out
    std::vector<std::int64_t> numerator_shift; // d_{u_j}(g)
    std::vector<AffineEps> leading;        // A_j: the x_j exponent is A_j - 1
    std::int64_t det_weight = 1;           // |det(u_1..u_n)|: cube Jacobian, 1 for smooth cones
};

struct refinement_error : std::runtime_error {
    Cone witness;
    refinement_error(const std::string& w, Cone c) : std::runtime_error(w), witness(std::move(c)) {}
};

std::vector<Sector> sector_decompose(const MellinProblem& p, const Fan& fan);

/// Default integration fan: simplicial refinement of the Newton normal fan.
Fan default_fan(const MellinProblem& p);

struct EvalOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_evaluations = 1000000;
    int threads = 1;
};

/// Numeric value at a convergent parameter point.
cplx evaluate_numeric(const MellinProblem& p, const Fan& fan, double eps_value,
                      const EvalOptions& opt = {});

/// Scaling derivative h_rho entering the partial-integration identity.
NumericPoly ibp_derivative(const NumericPoly& h, const Vec& ray);

struct ContinuationTerm {
    RatFunEps prefactor;               // L_beta
    NumericPoly numerator;             // g_beta
    std::vector<std::int64_t> shift;   // n_beta
    std::vector<std::pair<std::size_t, std::int64_t>> pole_tags; // (ray index, offset)
};

struct ContinuationSum {
    std::vector<ContinuationTerm> terms;
    std::vector<Vec> rays;     // rays of the Newton fan, fixed order
    std::size_t steps = 0;

    /// Distinct pole loci hit by the prefactors, as (ray index, offset) tags.
    std::vector<std::pair<std::size_t, std::int64_t>> poles() const;
};

/// Iterated partial integration until every term converges in a
/// neighbourhood of eps = 0 (Re of every slack positive at eps = 0).
ContinuationSum continue_to(const MellinProblem& p, std::size_t max_steps = 400);

/// Evaluate the continued transform at a small nonzero regulator value.
cplx evaluate_continuation(const MellinProblem& p, const ContinuationSum& sum, const Fan& fan,
                           double eps_value, const EvalOptions& opt = {});

/// Epsilon expansion of the continued transform: exact prefactor Laurent
/// series times per-term jet cubature over the sector cover.
EpsSeries expand_continuation(const MellinProblem& p, const ContinuationSum& sum, const Fan& fan,
                              int order, const EvalOptions& opt = {});

/// Convergence slack <s,u> - d_u(c) + d_u(g) of a term at a given ray.
AffineEps term_slack(const MellinProblem& p, const ContinuationTerm& t, const Vec& ray);

} // namespace feynpoly

#endif
