#include "feynpoly/mellin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace feynpoly {

namespace {

std::int64_t d_min(const NumericPoly& f, const Vec& u) {
    bool first = true;
    std::int64_t best = 0;
    for (const auto& [m, c] : f.terms) {
        std::int64_t v = dot(m, u);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

double re_at(const AffineEps& a, double eps) {
    return a.a.re.to_double() + eps * a.b.re.to_double();
}

cplx value_at(const AffineEps& a, double eps) {
    return cplx(a.a.re.to_double() + eps * a.b.re.to_double(),
                a.a.im.to_double() + eps * a.b.im.to_double());
}

} // namespace

void MellinProblem::validate() const {
    if (factors.size() != exponents.size())
        throw std::invalid_argument("factor/exponent count mismatch");
    if (s.size() != rank) throw std::invalid_argument("s must have one entry per torus variable");
    for (const auto& f : factors) {
        if (f.zero()) throw std::domain_error("zero factor polynomial");
        // open half-plane condition: angular spread of the coefficients < pi
        std::vector<double> args;
        for (const auto& [m, c] : f.terms) args.push_back(std::arg(c));
        std::sort(args.begin(), args.end());
        double gap = 0.0;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) gap = std::max(gap, args[i + 1] - args[i]);
        double wrap = 2.0 * 3.14159265358979323846 - (args.back() - args.front());
        gap = std::max(gap, wrap);
        double spread = 2.0 * 3.14159265358979323846 - gap;
        if (!(spread < 3.14159265358979323846 - 1e-12))
            throw std::domain_error("factor coefficients do not lie in an open half-plane");
    }
}

NumericPoly MellinProblem::numerator_or_one() const {
    if (!numerator.terms.empty()) return numerator;
    NumericPoly one;
    one.nvars = rank;
    one.terms.emplace(Vec(rank, 0), cplx(1.0));
    return one;
}

LatticePolytope MellinProblem::newton_sum() const {
    LatticePolytope acc = newton_polytope(factors.at(0));
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = minkowski_sum(acc, newton_polytope(factors[i]));
    return acc;
}

bool MellinProblem::degenerate() const { return newton_sum().dim() < rank; }

ConvergenceReport convergence_check(const MellinProblem& p, double eps_value) {
    p.validate();
    ConvergenceReport rep;
    LatticePolytope P = p.newton_sum();
    if (P.dim() < p.rank) {
        rep.degenerate = true;
        return rep;
    }
    NumericPoly g = p.numerator_or_one();
    rep.convergent = true;
    for (const auto& f : P.facets()) {
        const Vec& u = f.normal;
        double lhs = 0.0;
        for (std::size_t j = 0; j < p.rank; ++j) lhs += re_at(p.s[j], eps_value) * double(u[j]);
        double rhs = 0.0;
        for (std::size_t i = 0; i < p.factors.size(); ++i)
            rhs += re_at(p.exponents[i], eps_value) * double(d_min(p.factors[i], u));
        rhs -= double(d_min(g, u));
        if (!(lhs > rhs)) {
            rep.convergent = false;
            rep.violated_rays.push_back(u);
        }
    }
    return rep;
}

std::vector<Sector> sector_decompose(const MellinProblem& p, const Fan& fan) {
    p.validate();
    std::vector<Sector> sectors;
    if (p.rank == 0) {
        Sector s;
        s.cone = Cone::make({}, 0);
        s.local_factor = p.factors;
        s.local_numerator = p.numerator_or_one();
        s.factor_vertex.assign(p.factors.size(), Vec{});
        sectors.push_back(std::move(s));
        return sectors;
    }
    std::vector<LatticePolytope> newtons;
    for (const auto& f : p.factors) newtons.push_back(newton_polytope(f));
    NumericPoly g = p.numerator_or_one();

    for (const auto& cone : fan.maximal_cones()) {
        if (!is_simplicial_cone(cone))
            throw refinement_error("integration fan has a non-simplicial cone", cone);
        Sector sec;
        sec.cone = cone;
        sec.rays = cone.generators();
        std::size_t n = sec.rays.size();
        if (n != p.rank) throw refinement_error("integration fan cone is not full-dimensional", cone);

        for (std::size_t i = 0; i < p.factors.size(); ++i) {
            auto v = vertex_for_cone(newtons[i], cone);
            if (!v)
                throw refinement_error("fan does not refine the Newton fan of factor " +
                                           std::to_string(i),
                                       cone);
            sec.factor_vertex.push_back(*v);
            NumericPoly local;
            local.nvars = n;
            for (const auto& [m, c] : p.factors[i].terms) {
                Vec e(n);
                for (std::size_t j = 0; j < n; ++j) {
                    e[j] = dot(m, sec.rays[j]) - dot(*v, sec.rays[j]);
                    if (e[j] < 0) throw std::logic_error("negative sector exponent");
                }
                local.add(e, c);
            }
            sec.local_factor.push_back(std::move(local));
        }

        sec.numerator_shift.assign(n, 0);
        for (std::size_t j = 0; j < n; ++j) sec.numerator_shift[j] = d_min(g, sec.rays[j]);
        NumericPoly gl;
        gl.nvars = n;
        for (const auto& [m, c] : g.terms) {
            Vec e(n);
            for (std::size_t j = 0; j < n; ++j) e[j] = dot(m, sec.rays[j]) - sec.numerator_shift[j];
            gl.add(e, c);
        }
        sec.local_numerator = std::move(gl);

        // real change of variables t = x^U carries the |det U| Jacobian; it is 1
        // exactly for smooth cones
        std::int64_t detw = 1;
        for (auto d : smith_divisors(sec.rays)) detw = detail::checked_i64((__int128)detw * (d < 0 ? -d : d), "sector det");
        sec.det_weight = detw;

        for (std::size_t j = 0; j < n; ++j) {
            AffineEps acc; // <s, u_j> - d_{u_j}(c) + d_{u_j}(g)
            for (std::size_t t = 0; t < p.rank; ++t)
                acc = acc + Rational(sec.rays[j][t]) * p.s[t];
            for (std::size_t i = 0; i < p.factors.size(); ++i)
                acc = acc - Rational(dot(sec.factor_vertex[i], sec.rays[j])) * p.exponents[i];
            acc = acc + AffineEps(RatC(Rational(sec.numerator_shift[j])));
            sec.leading.push_back(acc);
        }
        sectors.push_back(std::move(sec));
    }
    std::sort(sectors.begin(), sectors.end(),
              [](const Sector& a, const Sector& b) { return a.cone < b.cone; });
    return sectors;
}

Fan default_fan(const MellinProblem& p) {
    LatticePolytope P = p.newton_sum();
    if (P.dim() < p.rank)
        throw std::domain_error("degenerate Newton polytope: no complete integration fan");
    if (p.rank == 0) return Fan({Cone::make({}, 0)}, 0, "point", true);
    return simplicial_refine(normal_fan(P));
}

namespace {

// substitution x_j = y_j^{p_j} softening the boundary singularity
std::vector<int> softening_powers(const Sector& sec, double eps_value) {
    std::vector<int> p;
    for (const auto& a : sec.leading) {
        double re = re_at(a, eps_value);
        int q = 1;
        if (re < 2.5) q = std::min(24, std::max(1, int(std::ceil(2.5 / std::max(re, 0.05)))));
        p.push_back(q);
    }
    return p;
}

cplx eval_poly(const NumericPoly& f, const std::vector<double>& x) {
    cplx acc(0.0);
    for (const auto& [m, c] : f.terms) {
        double mono = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            for (std::int64_t k = 0; k < m[j]; ++k) mono *= x[j];
        }
        acc += c * mono;
    }
    return acc;
}

cplx sector_value(const MellinProblem& p, const Sector& sec, double eps_value,
                  const EvalOptions& opt) {
    std::size_t n = sec.rays.size();
    double detw = double(sec.det_weight);
    if (n == 0) {
        cplx v = eval_poly(sec.local_numerator, {});
        for (std::size_t i = 0; i < p.factors.size(); ++i)
            v *= std::pow(eval_poly(sec.local_factor[i], {}), -value_at(p.exponents[i], eps_value));
        return v;
    }
    auto powers = softening_powers(sec, eps_value);
    std::vector<cplx> cexp(n);
    for (std::size_t j = 0; j < n; ++j) cexp[j] = value_at(sec.leading[j], eps_value);
    std::vector<cplx> fexp(p.factors.size());
    for (std::size_t i = 0; i < fexp.size(); ++i) fexp[i] = -value_at(p.exponents[i], eps_value);

    CubeIntegrand f = [&](const double* y, cplx* out) {
        std::vector<double> x(n);
        cplx w(1.0);
        for (std::size_t j = 0; j < n; ++j) {
            double yy = std::min(std::max(y[j], 1e-300), 1.0);
            x[j] = std::pow(yy, double(powers[j]));
            // x^(A_j - 1) dx = p y^(p A_j - 1) dy
            w *= double(powers[j]) * std::pow(cplx(yy), double(powers[j]) * cexp[j] - cplx(1.0));
        }
        cplx v = w * eval_poly(sec.local_numerator, x);
        for (std::size_t i = 0; i < sec.local_factor.size(); ++i)
            v *= std::pow(eval_poly(sec.local_factor[i], x), fexp[i]);
        out[0] = v;
    };
    CubatureOptions copt;
    copt.abs_tol = opt.abs_tol;
    copt.rel_tol = opt.rel_tol;
    copt.max_evaluations = opt.max_evaluations;
    auto res = integrate_cube(n, 1, f, copt);
    return detw * res.value[0];
}

template <typename T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

} // namespace

cplx evaluate_numeric(const MellinProblem& p, const Fan& fan, double eps_value,
                      const EvalOptions& opt) {
    auto rep = convergence_check(p, eps_value);
    if (rep.degenerate) throw std::domain_error("degenerate Newton polytope: transform never converges");
    if (!rep.convergent) throw std::domain_error("parameters outside the convergence domain");
    auto sectors = sector_decompose(p, fan);
    std::function<cplx(std::size_t)> one = [&](std::size_t i) {
        return sector_value(p, sectors[i], eps_value, opt);
    };
    auto vals = parallel_map<cplx>(sectors.size(), opt.threads, one);
    std::vector<std::vector<cplx>> rows;
    for (auto v : vals) rows.push_back({v});
    return pairwise_sum(std::move(rows))[0];
}

NumericPoly ibp_derivative(const NumericPoly& h, const Vec& ray) {
    NumericPoly out;
    out.nvars = h.nvars;
    if (h.terms.empty()) return out;
    std::int64_t d = d_min(h, ray);
    for (const auto& [m, c] : h.terms) {
        std::int64_t k = dot(m, ray) - d;
        if (k != 0) out.terms.emplace(m, c * double(k));
    }
    return out;
}

AffineEps term_slack(const MellinProblem& p, const ContinuationTerm& t, const Vec& ray) {
    AffineEps acc;
    for (std::size_t j = 0; j < p.rank; ++j) acc = acc + Rational(ray[j]) * p.s[j];
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
        AffineEps ci = p.exponents[i] + AffineEps(RatC(Rational(t.shift[i])));
        acc = acc - Rational(d_min(p.factors[i], ray)) * ci;
    }
    acc = acc + AffineEps(RatC(Rational(d_min(t.numerator, ray))));
    return acc;
}

std::vector<std::pair<std::size_t, std::int64_t>> ContinuationSum::poles() const {
    std::vector<std::pair<std::size_t, std::int64_t>> all;
    for (const auto& t : terms)
        for (const auto& tag : t.pole_tags) all.push_back(tag);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

ContinuationSum continue_to(const MellinProblem& p, std::size_t max_steps) {
    p.validate();
    LatticePolytope P = p.newton_sum();
    if (P.dim() < p.rank)
        throw std::domain_error("degenerate Newton polytope: no meromorphic continuation");

    ContinuationSum sum;
    for (const auto& f : P.facets()) sum.rays.push_back(f.normal);
    if (p.rank == 0) sum.rays.clear();

    ContinuationTerm root;
    root.numerator = p.numerator_or_one();
    root.shift.assign(p.factors.size(), 0);
    sum.terms.push_back(std::move(root));

    auto slack_const = [&](const ContinuationTerm& t, const Vec& ray) {
        return term_slack(p, t, ray).a.re;
    };

    for (;;) {
        // most negative slack across terms and rays
        std::size_t best_term = SIZE_MAX, best_ray = SIZE_MAX;
        Rational best(0);
        for (std::size_t ti = 0; ti < sum.terms.size(); ++ti) {
            if (sum.terms[ti].numerator.terms.empty()) continue;
            for (std::size_t ri = 0; ri < sum.rays.size(); ++ri) {
                Rational sc = slack_const(sum.terms[ti], sum.rays[ri]);
                if (sc > Rational(0)) continue;
                if (best_term == SIZE_MAX || sc < best) {
                    best = sc;
                    best_term = ti;
                    best_ray = ri;
                }
            }
        }
        if (best_term == SIZE_MAX) break;
        if (++sum.steps > max_steps)
            throw budget_error("partial integration step budget exceeded");

        ContinuationTerm t = sum.terms[best_term];
        sum.terms.erase(sum.terms.begin() + long(best_term));
        const Vec& u = sum.rays[best_ray];
        AffineEps K = term_slack(p, t, u);

        // pole bookkeeping: K as a function of (s,c) is tagged by the ray and
        // the integer d_u(g_beta) - sum_i n_i d_u(f_i)
        std::int64_t tag_off = d_min(t.numerator, u);
        for (std::size_t i = 0; i < p.factors.size(); ++i)
            tag_off -= t.shift[i] * d_min(p.factors[i], u);
        std::pair<std::size_t, std::int64_t> tag{best_ray, tag_off};
        for (const auto& old : t.pole_tags)
            if (old == tag)
                throw std::logic_error("repeated pole factor: continuation poles not simple");

        // M(g) = (-1/K) M(g_rho) + sum_i (c_i + n_i)/K M(g f_{i,rho}, c+e_i)
        NumericPoly g_rho = ibp_derivative(t.numerator, u);
        if (!g_rho.terms.empty()) {
            ContinuationTerm child = t;
            child.prefactor.pref = child.prefactor.pref * RatC(Rational(-1));
            child.prefactor.den.push_back(K);
            child.pole_tags.push_back(tag);
            child.numerator = std::move(g_rho);
            sum.terms.push_back(std::move(child));
        }
        for (std::size_t i = 0; i < p.factors.size(); ++i) {
            NumericPoly f_rho = ibp_derivative(p.factors[i], u);
            if (f_rho.terms.empty()) continue;
            ContinuationTerm child = t;
            child.prefactor.num.push_back(p.exponents[i] + AffineEps(RatC(Rational(t.shift[i]))));
            child.prefactor.den.push_back(K);
            child.pole_tags.push_back(tag);
            child.numerator = t.numerator * f_rho;
            if (child.numerator.terms.empty()) continue;
            child.shift[i] += 1;
            sum.terms.push_back(std::move(child));
        }
    }
    return sum;
}

namespace {

MellinProblem shifted_problem(const MellinProblem& p, const ContinuationTerm& t) {
    MellinProblem q = p;
    q.numerator = t.numerator;
    for (std::size_t i = 0; i < q.exponents.size(); ++i)
        q.exponents[i] = q.exponents[i] + AffineEps(RatC(Rational(t.shift[i])));
    return q;
}

} // namespace

cplx evaluate_continuation(const MellinProblem& p, const ContinuationSum& sum, const Fan& fan,
                           double eps_value, const EvalOptions& opt) {
    std::vector<std::vector<cplx>> rows;
    for (const auto& t : sum.terms) {
        MellinProblem q = shifted_problem(p, t);
        cplx L(1.0);
        L *= cplx(t.prefactor.pref.re.to_double(), t.prefactor.pref.im.to_double());
        for (const auto& f : t.prefactor.num) L *= value_at(f, eps_value);
        for (const auto& f : t.prefactor.den) L /= value_at(f, eps_value);
        rows.push_back({L * evaluate_numeric(q, fan, eps_value, opt)});
    }
    if (rows.empty()) return cplx(0.0);
    return pairwise_sum(std::move(rows))[0];
}

namespace {

// eps-jet cubature of one convergent term over the sector cover
EpsSeries term_series(const MellinProblem& p, const Sector& sec, int order,
                      const EvalOptions& opt) {
    std::size_t n = sec.rays.size();
    std::size_t ncomp = std::size_t(order) + 1;
    std::vector<int> caps = {order};

    if (n == 0) {
        TSeries v = TSeries::constant(caps, cplx(1.0));
        cplx g0 = sec.local_numerator.terms.empty() ? cplx(1.0)
                                                    : sec.local_numerator.terms.begin()->second;
        v = g0 * v;
        for (std::size_t i = 0; i < p.factors.size(); ++i) {
            cplx base = sec.local_factor[i].terms.begin()->second;
            TSeries expo = TSeries::constant(caps, value_at(-p.exponents[i], 0.0));
            if (order >= 1)
                expo.at({1}) = cplx(-p.exponents[i].b.re.to_double(), -p.exponents[i].b.im.to_double());
            v *= pow(TSeries::constant(caps, base), expo);
        }
        EpsSeries out = EpsSeries::zero(order);
        for (int k = 0; k <= order; ++k) out.coeff[std::size_t(k)] = v.at({k});
        return out;
    }

    auto powers = softening_powers(sec, 0.0);
    CubeIntegrand f = [&](const double* y, cplx* out) {
        std::vector<double> x(n);
        TSeries w = TSeries::constant(caps, cplx(1.0));
        for (std::size_t j = 0; j < n; ++j) {
            double yy = std::min(std::max(y[j], 1e-300), 1.0);
            x[j] = std::pow(yy, double(powers[j]));
            cplx a0c(sec.leading[j].a.re.to_double(), sec.leading[j].a.im.to_double());
            cplx slope(sec.leading[j].b.re.to_double(), sec.leading[j].b.im.to_double());
            // p y^(p A - 1) = p y^(p a0 - 1) exp(eps * p slope log y)
            cplx base = double(powers[j]) * std::pow(cplx(yy), double(powers[j]) * a0c - cplx(1.0));
            TSeries lg = TSeries::variable(caps, 0);
            lg = (slope * double(powers[j]) * std::log(yy)) * lg;
            w *= base * exp(lg);
        }
        w *= TSeries::constant(caps, eval_poly(sec.local_numerator, x));
        for (std::size_t i = 0; i < sec.local_factor.size(); ++i) {
            cplx base = eval_poly(sec.local_factor[i], x);
            TSeries expo = TSeries::constant(caps, value_at(-p.exponents[i], 0.0));
            if (order >= 1)
                expo.at({1}) = cplx(-p.exponents[i].b.re.to_double(), -p.exponents[i].b.im.to_double());
            w *= pow(TSeries::constant(caps, base), expo);
        }
        for (std::size_t k = 0; k < ncomp; ++k) out[k] = w.at({int(k)});
    };
    CubatureOptions copt;
    copt.abs_tol = opt.abs_tol;
    copt.rel_tol = opt.rel_tol;
    copt.max_evaluations = opt.max_evaluations;
    auto res = integrate_cube(n, ncomp, f, copt);
    EpsSeries out = EpsSeries::zero(order);
    double detw = double(sec.det_weight);
    for (int k = 0; k <= order; ++k) {
        out.coeff[std::size_t(k)] = detw * res.value[std::size_t(k)];
        out.err[std::size_t(k)] = detw * res.error[std::size_t(k)];
    }
    return out;
}

} // namespace

EpsSeries expand_continuation(const MellinProblem& p, const ContinuationSum& sum, const Fan& fan,
                              int order, const EvalOptions& opt) {
    EpsSeries total = EpsSeries::zero(order);
    int max_pole = 0;
    for (const auto& t : sum.terms) max_pole = std::max(max_pole, t.prefactor.pole_order());

    for (const auto& t : sum.terms) {
        MellinProblem q = shifted_problem(p, t);
        int pole = t.prefactor.pole_order();
        int inner_order = order + pole;
        EpsSeries L = t.prefactor.expand(order);

        auto sectors = sector_decompose(q, fan);
        std::function<EpsSeries(std::size_t)> one = [&](std::size_t i) {
            return term_series(q, sectors[i], inner_order, opt);
        };
        auto parts = parallel_map<EpsSeries>(sectors.size(), opt.threads, one);
        EpsSeries I = EpsSeries::zero(inner_order);
        for (const auto& part : parts) I = I + part;
        total = total + (L * I).truncated(order);
    }
    return total.truncated(order);
}

} // namespace feynpoly
