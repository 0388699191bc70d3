#include "feynpoly/dimreg.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace feynpoly {

RegulatorPoint RegulatorPoint::unit(const FeynmanGraph& g, Rational D0) {
    RegulatorPoint r;
    r.lambda0.assign(g.num_edges(), Rational(1));
    r.D0 = D0;
    return r;
}

FanStrategy parse_strategy(const std::string& name) {
    if (name == "hepp") return FanStrategy::Hepp;
    if (name == "smirnov") return FanStrategy::Smirnov;
    if (name == "motic") return FanStrategy::Motic;
    throw std::invalid_argument("unknown strategy '" + name + "' (hepp|smirnov|motic)");
}

std::string strategy_name(FanStrategy s) {
    switch (s) {
        case FanStrategy::Hepp: return "hepp";
        case FanStrategy::Smirnov: return "smirnov";
        case FanStrategy::Motic: return "motic";
    }
    return "?";
}

Fan sector_fan(const FeynmanGraph& g, FanStrategy strategy) {
    std::size_t n = g.num_edges();
    if (strategy == FanStrategy::Hepp || n == 1) return hepp_fan(n);
    if (!g.s_irreducible())
        throw domain_error_code("smirnov/motic sector fans require an s-irreducible graph");
    std::vector<Subset> members;
    if (strategy == FanStrategy::Smirnov) {
        auto z = g.s_function();
        for (Subset I : z.building_set())
            if (I != z.full_set()) members.push_back(I);
    } else {
        for (Subset I = 1; I < g.full_edge_set(); ++I)
            if (g.classify_subgraph(I).motic) members.push_back(I);
    }
    return nested_set_fan(make_building_set(n, std::move(members)));
}

OmegaData omega_data(const FeynmanGraph& g, const RegulatorPoint& reg) {
    if (reg.lambda0.size() != g.num_edges())
        throw std::invalid_argument("lambda vector length mismatch");
    auto omega_of = [&](Subset I, std::size_t loops) {
        Rational lam(0);
        for (std::size_t e = 0; e < g.num_edges(); ++e)
            if (I & (Subset(1) << e)) lam += reg.lambda0[e];
        // omega = sum lambda - (D0/2 - eps) h1
        AffineEps a;
        a.a = RatC(lam - reg.D0 / Rational(2) * Rational(std::int64_t(loops)));
        a.b = RatC(Rational(std::int64_t(loops)));
        return a;
    };
    OmegaData od;
    od.omega_G = omega_of(g.full_edge_set(), g.h1());
    auto z = g.s_function();
    if (z.irreducible()) od.facets = z.facet_subsets();
    for (Subset I : od.facets) {
        bool mm = g.mass_momentum_spanning(I);
        od.facet_mm.push_back(mm);
        AffineEps sub = omega_of(I, g.h1(I));
        AffineEps quot = od.omega_G - sub;
        od.omega_sub.push_back(sub);
        od.omega_quot.push_back(quot);
        od.omega_tilde.push_back(mm ? -quot : sub);
    }
    return od;
}

ConvergenceDomain feynman_convergence_domain(const FeynmanGraph& g) {
    ConvergenceDomain dom;
    dom.s_irreducible = g.s_irreducible();
    if (!dom.s_irreducible) return dom;
    auto z = g.s_function();
    for (Subset I : z.facet_subsets())
        (g.mass_momentum_spanning(I) ? dom.mass_spanning : dom.hollow).push_back(I);
    return dom;
}

bool domain_contains(const FeynmanGraph& g, const ConvergenceDomain& dom,
                     const std::vector<Rational>& lambda, const Rational& D) {
    if (!dom.s_irreducible) return false;
    auto omega = [&](Subset I) {
        Rational lam(0);
        for (std::size_t e = 0; e < g.num_edges(); ++e)
            if (I & (Subset(1) << e)) lam += lambda[e];
        return lam - D / Rational(2) * Rational(std::int64_t(g.h1(I)));
    };
    Rational total = omega(g.full_edge_set());
    for (Subset I : dom.hollow)
        if (!(omega(I) > Rational(0))) return false;
    for (Subset I : dom.mass_spanning)
        if (!(total - omega(I) < Rational(0))) return false;
    return true;
}

namespace {

SymbolicLaurentPolynomial drop_last_var(const SymbolicLaurentPolynomial& p) {
    SymbolicLaurentPolynomial out(p.nvars() - 1);
    for (const auto& [e, coeff] : p.terms()) {
        Vec d(e.begin(), e.end() - 1);
        for (const auto& [s, c] : coeff) out.add_term(d, s, c);
    }
    return out;
}

Rational lambda_sum(const RegulatorPoint& reg) {
    Rational s(0);
    for (const auto& l : reg.lambda0) s += l;
    return s;
}

} // namespace

MellinProblem feynman_mellin_problem(const FeynmanGraph& g, const KinematicAssignment& kin,
                                     const RegulatorPoint& reg) {
    if (!g.connected()) throw domain_error_code("parametric representation requires a connected graph");
    if (!kin.generic_euclidean())
        throw domain_error_code("kinematics must be generic euclidean (Re q^2 > 0, Re(q^2)+Re(m^2) > 0)");
    auto s = symanzik(g);
    if (s.Phi.zero()) throw domain_error_code("scaleless graph: second Symanzik polynomial vanishes");
    std::size_t n = g.num_edges();

    MellinProblem p;
    p.rank = n - 1;
    p.factors.push_back(evaluate(drop_last_var(s.psi), kin));
    p.factors.push_back(evaluate(drop_last_var(s.Phi), kin));

    Rational h1(std::int64_t(g.h1()));
    AffineEps omega(RatC(lambda_sum(reg) - reg.D0 / Rational(2) * h1), RatC(h1));
    AffineEps half_D(RatC(reg.D0 / Rational(2)), RatC(Rational(-1)));
    p.exponents.push_back(half_D - omega); // psi^(omega - D/2) = psi^(-(D/2 - omega))
    p.exponents.push_back(omega);          // Phi^(-omega)

    for (std::size_t e = 0; e + 1 < n; ++e) p.s.push_back(AffineEps(RatC(reg.lambda0[e])));
    p.validate();
    return p;
}

cplx parametric_amplitude(const FeynmanGraph& g, const Fan& fan,
                          const std::vector<Rational>& lambda, const Rational& D,
                          const KinematicAssignment& kin, const AmplitudeOptions& opt) {
    auto dom = feynman_convergence_domain(g);
    if (!domain_contains(g, dom, lambda, D))
        throw domain_error_code("(lambda, D) lies outside the convergence domain");
    RegulatorPoint reg{lambda, D};
    MellinProblem p = feynman_mellin_problem(g, kin, reg);
    EvalOptions eopt{opt.abs_tol, opt.rel_tol, opt.max_evaluations, opt.threads};
    cplx mellin = evaluate_numeric(p, fan, 0.0, eopt);
    Rational h1(std::int64_t(g.h1()));
    Rational omega0 = lambda_sum(reg) - D / Rational(2) * h1;
    cplx pref = gamma_fn(cplx(omega0.to_double()));
    for (const auto& l : lambda) pref /= gamma_fn(cplx(l.to_double()));
    return pref * mellin;
}

// ---------------------------------------------------------------------------
// Sector Taylor expansion

namespace {

struct integer_lambda_error : domain_error_code {
    integer_lambda_error() : domain_error_code("sector expansion requires integer lambda >= 1") {}
};

void require_integer_lambda(const RegulatorPoint& reg) {
    for (const auto& l : reg.lambda0)
        if (!l.is_integer() || l < Rational(1)) throw integer_lambda_error();
}

// Gamma(omega_G)/prod Gamma(lambda_e) as a series
EpsSeries prefactor_series(const FeynmanGraph& g, const RegulatorPoint& reg, int order) {
    Rational h1(std::int64_t(g.h1()));
    Rational omega0 = lambda_sum(reg) - reg.D0 / Rational(2) * h1;
    EpsSeries s = gamma_series(cplx(omega0.to_double()), h1, order);
    double denom = 1.0;
    for (const auto& l : reg.lambda0) denom *= gamma_fn(cplx(l.to_double())).real();
    return (cplx(1.0 / denom)) * s;
}

int gamma_pole_order(const FeynmanGraph& g, const RegulatorPoint& reg) {
    Rational h1(std::int64_t(g.h1()));
    Rational omega0 = lambda_sum(reg) - reg.D0 / Rational(2) * h1;
    return (omega0.is_integer() && omega0 <= Rational(0) && !h1.is_zero()) ? 1 : 0;
}

// one leaf of the per-variable subtraction: extracted variables are
// integrated exactly, remainder variables keep a Taylor-subtracted integrand
struct Leaf {
    std::vector<std::pair<std::size_t, int>> extracted; // (var, order)
    std::vector<std::size_t> remainder;                 // subtracted vars kept in the cube
    RatFunEps prefactor;                                // prod 1/(A_j + k_j)
};

void build_leaves(const std::vector<std::size_t>& singular, const std::vector<int>& alpha,
                  const std::vector<AffineEps>& leading, std::size_t idx, Leaf cur,
                  std::vector<Leaf>& out) {
    if (idx == singular.size()) {
        out.push_back(std::move(cur));
        return;
    }
    std::size_t j = singular[idx];
    for (int k = 0; k <= alpha[j]; ++k) {
        Leaf next = cur;
        next.extracted.push_back({j, k});
        next.prefactor.den.push_back(leading[j] + AffineEps(RatC(Rational(k))));
        build_leaves(singular, alpha, leading, idx + 1, std::move(next), out);
    }
    Leaf rem = std::move(cur);
    rem.remainder.push_back(j);
    build_leaves(singular, alpha, leading, idx + 1, std::move(rem), out);
}

// evaluate prod f_i(X)^{-c_i(eps)} * g(X) where X_j are truncated series
TSeries eval_sector_function(const Sector& sec, const std::vector<AffineEps>& exponents,
                             const std::vector<TSeries>& X, const std::vector<int>& caps) {
    // power tables per coordinate, up to the largest exponent in any factor
    std::vector<std::vector<TSeries>> pows(X.size());
    for (std::size_t j = 0; j < X.size(); ++j) pows[j].push_back(TSeries::constant(caps, cplx(1.0)));
    auto xpow = [&](std::size_t j, std::int64_t k) -> const TSeries& {
        while (std::int64_t(pows[j].size()) <= k) pows[j].push_back(pows[j].back() * X[j]);
        return pows[j][std::size_t(k)];
    };
    auto poly_at = [&](const NumericPoly& f) {
        TSeries acc(caps, cplx(0.0));
        for (const auto& [m, c] : f.terms) {
            TSeries term = TSeries::constant(caps, c);
            for (std::size_t j = 0; j < X.size(); ++j)
                if (m[j] > 0) term *= xpow(j, m[j]);
            acc += term;
        }
        return acc;
    };
    TSeries acc = poly_at(sec.local_numerator);
    for (std::size_t i = 0; i < sec.local_factor.size(); ++i) {
        TSeries expo = TSeries::constant(caps, cplx(-exponents[i].a.re.to_double(),
                                                    -exponents[i].a.im.to_double()));
        if (caps[0] >= 1) {
            std::vector<int> e1(caps.size(), 0);
            e1[0] = 1;
            expo.at(e1) = cplx(-exponents[i].b.re.to_double(), -exponents[i].b.im.to_double());
        }
        acc *= pow(poly_at(sec.local_factor[i]), expo);
    }
    return acc;
}

EpsSeries sector_series(const MellinProblem& p, const Sector& sec, int order,
                        const AmplitudeOptions& opt) {
    std::size_t n = sec.rays.size();
    // subtraction orders
    std::vector<int> alpha(n, 0);
    std::vector<std::size_t> singular;
    for (std::size_t j = 0; j < n; ++j) {
        const AffineEps& A = sec.leading[j];
        if (!A.a.im.is_zero()) continue;
        if (A.a.re > Rational(0)) continue;
        if (A.b.is_zero())
            throw domain_error_code(
                "sector exponent with nonpositive constant part and no regulator slope: "
                "the integral is not regularized at this point");
        alpha[j] = int((-A.a.re).floor()) + 1;
        singular.push_back(j);
    }

    std::vector<Leaf> leaves;
    build_leaves(singular, alpha, sec.leading, 0, Leaf{}, leaves);

    EpsSeries total = EpsSeries::zero(order);
    for (const auto& leaf : leaves) {
        int lp = leaf.prefactor.pole_order();
        int inner = order + lp;
        EpsSeries L = leaf.prefactor.expand(order);

        // cube variables: everything not extracted
        std::vector<std::size_t> cube_vars;
        std::vector<bool> is_extracted(n, false), is_remainder(n, false);
        for (auto [j, k] : leaf.extracted) is_extracted[j] = true;
        for (auto j : leaf.remainder) is_remainder[j] = true;
        for (std::size_t j = 0; j < n; ++j)
            if (!is_extracted[j]) cube_vars.push_back(j);

        std::size_t ncomp = std::size_t(inner) + 1;
        // softening powers per cube variable
        std::vector<int> soft(cube_vars.size(), 1);
        for (std::size_t v = 0; v < cube_vars.size(); ++v) {
            std::size_t j = cube_vars[v];
            double a_eff = sec.leading[j].a.re.to_double() + (is_remainder[j] ? alpha[j] + 1 : 0);
            if (a_eff < 2.5) soft[v] = std::min(24, std::max(1, int(std::ceil(2.5 / std::max(a_eff, 0.05)))));
        }

        CubeIntegrand f = [&](const double* y, cplx* out) {
            // x values for cube vars after softening
            std::vector<double> x(n, 0.0);
            TSeries mono({int(inner)}, cplx(1.0));
            std::vector<int> ecaps = {int(inner)};
            for (std::size_t v = 0; v < cube_vars.size(); ++v) {
                std::size_t j = cube_vars[v];
                double yy = std::min(std::max(y[v], 1e-300), 1.0);
                x[j] = std::pow(yy, double(soft[v]));
                cplx a0(sec.leading[j].a.re.to_double(), sec.leading[j].a.im.to_double());
                cplx sl(sec.leading[j].b.re.to_double(), sec.leading[j].b.im.to_double());
                cplx base = double(soft[v]) * std::pow(cplx(yy), double(soft[v]) * a0 - cplx(1.0));
                TSeries lg = TSeries::variable(ecaps, 0);
                lg = (sl * double(soft[v]) * std::log(yy)) * lg;
                mono *= base * exp(lg);
            }

            // inclusion-exclusion over remainder subsets
            std::size_t nr = leaf.remainder.size();
            TSeries g_total({int(inner)}, cplx(0.0));
            for (std::uint32_t B = 0; B < (1u << nr); ++B) {
                // jets: eps + extracted vars + remainder vars in B
                std::vector<int> caps = {int(inner)};
                std::vector<std::size_t> jet_vars;
                std::vector<int> jet_orders;
                for (auto [j, k] : leaf.extracted) {
                    jet_vars.push_back(j);
                    jet_orders.push_back(k);
                    caps.push_back(k);
                }
                std::vector<std::size_t> b_vars;
                for (std::size_t b = 0; b < nr; ++b)
                    if (B & (1u << b)) {
                        std::size_t j = leaf.remainder[b];
                        jet_vars.push_back(j);
                        jet_orders.push_back(alpha[j]);
                        caps.push_back(alpha[j]);
                        b_vars.push_back(j);
                    }
                std::vector<TSeries> X;
                for (std::size_t j = 0; j < n; ++j) {
                    auto it = std::find(jet_vars.begin(), jet_vars.end(), j);
                    if (it != jet_vars.end()) {
                        std::size_t pos = std::size_t(it - jet_vars.begin()) + 1;
                        X.push_back(TSeries::variable(caps, pos));
                    } else {
                        X.push_back(TSeries::constant(caps, cplx(x[j], 0.0)));
                    }
                }
                TSeries F = eval_sector_function(sec, p.exponents, X, caps);
                // collapse the jet coefficients one variable at a time, last first:
                // extracted vars pick their fixed order, B vars sum orders 0..alpha
                // against the truncation monomial x^k
                std::function<void(std::size_t, TSeries)> collapse = [&](std::size_t vi, TSeries t) {
                    if (vi == jet_vars.size()) {
                        g_total += ((B == 0 || __builtin_popcount(B) % 2 == 0) ? 1.0 : -1.0) * t;
                        return;
                    }
                    // jets are collapsed from the last variable backwards
                    std::size_t rev = jet_vars.size() - 1 - vi;
                    std::size_t var_index = rev + 1; // position in caps
                    std::size_t j = jet_vars[rev];
                    bool fixed = rev < leaf.extracted.size();
                    if (fixed) {
                        collapse(vi + 1, t.coefficient_of(var_index, jet_orders[rev]));
                    } else {
                        for (int k = 0; k <= jet_orders[rev]; ++k) {
                            double monom = std::pow(x[j], double(k));
                            collapse(vi + 1, monom * t.coefficient_of(var_index, k));
                        }
                    }
                };
                collapse(0, F);
            }
            TSeries result = mono * g_total;
            for (std::size_t k = 0; k < ncomp; ++k) out[k] = result.at({int(k)});
        };

        CubatureOptions copt;
        copt.abs_tol = opt.abs_tol;
        copt.rel_tol = opt.rel_tol;
        copt.max_evaluations = opt.max_evaluations;
        auto res = integrate_cube(cube_vars.size(), ncomp, f, copt);
        double detw = double(sec.det_weight); // 1 on the smooth fans this path requires
        EpsSeries C = EpsSeries::zero(inner);
        for (int k = 0; k <= inner; ++k) {
            C.coeff[std::size_t(k)] = detw * res.value[std::size_t(k)];
            C.err[std::size_t(k)] = detw * res.error[std::size_t(k)];
        }
        total = total + (L * C).truncated(order);
    }
    return total;
}

} // namespace

EpsSeries eps_expand_sector(const FeynmanGraph& g, const Fan& fan, const RegulatorPoint& reg,
                            const KinematicAssignment& kin, int order,
                            const AmplitudeOptions& opt) {
    if (!g.connected()) throw domain_error_code("expansion requires a connected graph");
    if (!g.s_irreducible()) return EpsSeries::zero(order); // scaleless component: exact zero
    require_integer_lambda(reg);

    int gp = gamma_pole_order(g, reg);
    int inner = order + gp;
    MellinProblem p = feynman_mellin_problem(g, kin, reg);
    auto sectors = sector_decompose(p, fan);
    for (const auto& sec : sectors)
        if (!is_smooth_cone(sec.cone))
            throw refinement_error("sector expansion requires a smooth fan", sec.cone);

    std::vector<EpsSeries> parts(sectors.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= sectors.size()) return;
            parts[i] = sector_series(p, sectors[i], inner, opt);
        }
    };
    if (opt.threads > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < opt.threads - 1; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    } else {
        worker();
    }
    EpsSeries sum = EpsSeries::zero(inner);
    for (auto& part : parts) sum = sum + part;

    int need = inner - std::min(0, sum.lead);
    EpsSeries pref = prefactor_series(g, reg, need);
    return (pref * sum).truncated(order);
}

EpsSeries eps_expand_ibp(const FeynmanGraph& g, const RegulatorPoint& reg,
                         const KinematicAssignment& kin, int order, FanStrategy strategy,
                         const AmplitudeOptions& opt) {
    if (!g.connected()) throw domain_error_code("expansion requires a connected graph");
    if (!g.s_irreducible()) return EpsSeries::zero(order); // conventional zero (warned by callers)
    require_integer_lambda(reg);

    int gp = gamma_pole_order(g, reg);
    int inner = order + gp;
    MellinProblem p = feynman_mellin_problem(g, kin, reg);
    Fan fan = sector_fan(g, strategy);
    ContinuationSum sum = continue_to(p);
    EvalOptions eopt{opt.abs_tol, opt.rel_tol, opt.max_evaluations, opt.threads};
    EpsSeries mellin = expand_continuation(p, sum, fan, inner, eopt);

    int need = inner - std::min(0, mellin.lead);
    EpsSeries pref = prefactor_series(g, reg, need);
    return (pref * mellin).truncated(order);
}

} // namespace feynpoly
