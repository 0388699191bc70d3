#ifndef FEYNPOLY_DIMREG_HPP
#define FEYNPOLY_DIMREG_HPP

#include "feynpoly/gamma.hpp"
#include "feynpoly/graph.hpp"
#include "feynpoly/mellin.hpp"

namespace feynpoly {

/// Regularization point: exact analytic powers and D = D0 - 2*eps.
struct RegulatorPoint {
    std::vector<Rational> lambda0; // one per edge, in edge order
    Rational D0;

    static RegulatorPoint unit(const FeynmanGraph& g, Rational D0);
};

enum class FanStrategy { Hepp, Smirnov, Motic };
FanStrategy parse_strategy(const std::string& name);
std::string strategy_name(FanStrategy s);

/// Smooth refinement of the Feynman normal fan in the projective lattice.
/// Smirnov/Motic need an s-irreducible graph; callers fall back to Hepp.
Fan sector_fan(const FeynmanGraph& g, FanStrategy strategy);

/// omega data: per-subgraph superficial degrees as affine functions of eps.
struct OmegaData {
    AffineEps omega_G;
    std::vector<Subset> facets;            // F_G, ascending masks
    std::vector<bool> facet_mm;            // delta^mm per facet
    std::vector<AffineEps> omega_tilde;    // per facet
    std::vector<AffineEps> omega_sub;      // omega_gamma per facet
    std::vector<AffineEps> omega_quot;     // omega_{G/gamma} per facet
};
OmegaData omega_data(const FeynmanGraph& g, const RegulatorPoint& reg);

/// Convergence domain from the facet structure: omega_gamma > 0 on the
/// non-mass-momentum facets and omega_{G/gamma} < 0 on the mass-momentum ones.
struct ConvergenceDomain {
    bool s_irreducible = false;            // domain nonempty iff true
    std::vector<Subset> hollow;            // H_G: constraints omega_gamma > 0
    std::vector<Subset> mass_spanning;     // S_G: constraints omega_{G/gamma} < 0
};
ConvergenceDomain feynman_convergence_domain(const FeynmanGraph& g);
bool domain_contains(const FeynmanGraph& g, const ConvergenceDomain& dom,
                     const std::vector<Rational>& lambda, const Rational& D);

/// Projective Mellin problem of the parametric representation (factors psi
/// and Phi in the chart dropping the last edge coordinate).
MellinProblem feynman_mellin_problem(const FeynmanGraph& g, const KinematicAssignment& kin,
                                     const RegulatorPoint& reg);

struct AmplitudeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_evaluations = 1000000;
    int threads = 1;
};

/// Numeric amplitude at an interior point of the convergence domain (eps = 0).
cplx parametric_amplitude(const FeynmanGraph& g, const Fan& fan,
                          const std::vector<Rational>& lambda, const Rational& D,
                          const KinematicAssignment& kin, const AmplitudeOptions& opt = {});

/// Expansion around D0 by sector Taylor subtraction.
EpsSeries eps_expand_sector(const FeynmanGraph& g, const Fan& fan, const RegulatorPoint& reg,
                            const KinematicAssignment& kin, int order,
                            const AmplitudeOptions& opt = {});

/// Expansion around D0 by iterated partial integration (mellin continuation).
EpsSeries eps_expand_ibp(const FeynmanGraph& g, const RegulatorPoint& reg,
                         const KinematicAssignment& kin, int order,
                         FanStrategy strategy = FanStrategy::Smirnov,
                         const AmplitudeOptions& opt = {});

} // namespace feynpoly

#endif
