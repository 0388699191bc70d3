#include "feynpoly/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace feynpoly {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1]
const double gk_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
const double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
const double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Region {
    std::vector<double> lo, hi;
    std::vector<cplx> value;
    std::vector<double> error;
    std::size_t split_dim = 0;
    double max_error = 0.0;
};

void eval_gk15(const CubeIntegrand& f, std::size_t ncomp, Region& r, std::size_t& evals) {
    double c = 0.5 * (r.lo[0] + r.hi[0]);
    double h = 0.5 * (r.hi[0] - r.lo[0]);
    std::vector<cplx> fk(ncomp, cplx(0.0)), fg(ncomp, cplx(0.0)), tmp(ncomp);
    for (int i = 0; i < 8; ++i) {
        for (int sign = -1; sign <= 1; sign += 2) {
            if (i == 7 && sign == 1) continue;
            double x = c + sign * h * gk_x[i];
            f(&x, tmp.data());
            ++evals;
            for (std::size_t k = 0; k < ncomp; ++k) {
                fk[k] += gk_wk[i] * tmp[k];
                if (i % 2 == 1) fg[k] += gk_wg[i / 2] * tmp[k];
            }
        }
    }
    r.value.assign(ncomp, cplx(0.0));
    r.error.assign(ncomp, 0.0);
    r.max_error = 0.0;
    for (std::size_t k = 0; k < ncomp; ++k) {
        r.value[k] = h * fk[k];
        double diff = std::abs(h * (fk[k] - fg[k]));
        // QUADPACK-style sharpened estimate
        r.error[k] = diff;
        r.max_error = std::max(r.max_error, r.error[k]);
    }
    r.split_dim = 0;
}

// Genz-Malik degree-7 rule with embedded degree-5 error estimate
struct GMRule {
    std::size_t dim;
    double w[5], we[4], ratio;
    double l2, l4, l5;

    explicit GMRule(std::size_t d) : dim(d) {
        double D = double(d);
        w[0] = (12824.0 - (9120.0 - 400.0 * D) * D) / 19683.0;
        w[1] = 980.0 / 6561.0;
        w[2] = (1820.0 - 400.0 * D) / 19683.0;
        w[3] = 200.0 / 19683.0;
        w[4] = (6859.0 / 19683.0) / double(1u << d);
        we[0] = (729.0 - 950.0 * D + 50.0 * D * D) / 729.0;
        we[1] = 245.0 / 486.0;
        we[2] = (265.0 - 100.0 * D) / 1458.0;
        we[3] = 25.0 / 729.0;
        l2 = std::sqrt(9.0 / 70.0);
        l4 = std::sqrt(9.0 / 10.0);
        l5 = std::sqrt(9.0 / 19.0);
    }
};

void eval_genz_malik(const CubeIntegrand& f, std::size_t ncomp, const GMRule& rule, Region& r,
                     std::size_t& evals) {
    std::size_t d = rule.dim;
    std::vector<double> c(d), h(d), x(d);
    double vol = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        c[i] = 0.5 * (r.lo[i] + r.hi[i]);
        h[i] = 0.5 * (r.hi[i] - r.lo[i]);
        vol *= h[i];
    }
    std::vector<cplx> tmp(ncomp);
    std::vector<cplx> s1(ncomp, cplx(0.0)), s2(ncomp, cplx(0.0)), s3(ncomp, cplx(0.0)),
        s4(ncomp, cplx(0.0)), s5(ncomp, cplx(0.0));
    std::vector<double> fourth_diff(d, 0.0);

    auto eval_at = [&](std::vector<cplx>& acc) {
        f(x.data(), tmp.data());
        ++evals;
        for (std::size_t k = 0; k < ncomp; ++k) acc[k] += tmp[k];
    };

    x = c;
    std::vector<cplx> f0(ncomp, cplx(0.0));
    eval_at(f0);
    for (std::size_t k = 0; k < ncomp; ++k) s1[k] = f0[k];

    for (std::size_t i = 0; i < d; ++i) {
        std::vector<cplx> a2(ncomp, cplx(0.0)), a3(ncomp, cplx(0.0));
        x = c;
        x[i] = c[i] - rule.l2 * h[i];
        eval_at(a2);
        x[i] = c[i] + rule.l2 * h[i];
        eval_at(a2);
        x[i] = c[i] - rule.l4 * h[i];
        eval_at(a3);
        x[i] = c[i] + rule.l4 * h[i];
        eval_at(a3);
        for (std::size_t k = 0; k < ncomp; ++k) {
            s2[k] += a2[k];
            s3[k] += a3[k];
        }
        double diff = 0.0;
        for (std::size_t k = 0; k < ncomp; ++k)
            diff = std::max(diff, std::abs(a2[k] - 2.0 * f0[k] -
                                           (rule.l2 * rule.l2) / (rule.l4 * rule.l4) *
                                               (a3[k] - 2.0 * f0[k])));
        fourth_diff[i] = diff;
        x[i] = c[i];
    }

    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    x = c;
                    x[i] = c[i] + si * rule.l4 * h[i];
                    x[j] = c[j] + sj * rule.l4 * h[j];
                    eval_at(s4);
                }

    std::vector<int> corner(d, -1);
    for (;;) {
        x = c;
        for (std::size_t i = 0; i < d; ++i) x[i] = c[i] + corner[i] * rule.l5 * h[i];
        eval_at(s5);
        std::size_t i = 0;
        while (i < d && corner[i] == 1) corner[i++] = -1;
        if (i == d) break;
        corner[i] = 1;
    }

    double scale = vol * double(1u << d); // rule weights are for [-1,1]^d
    r.value.assign(ncomp, cplx(0.0));
    r.error.assign(ncomp, 0.0);
    r.max_error = 0.0;
    for (std::size_t k = 0; k < ncomp; ++k) {
        cplx v7 = rule.w[0] * s1[k] + rule.w[1] * s2[k] + rule.w[2] * s3[k] + rule.w[3] * s4[k] +
                  rule.w[4] * s5[k];
        cplx v5 = rule.we[0] * s1[k] + rule.we[1] * s2[k] + rule.we[2] * s3[k] + rule.we[3] * s4[k];
        r.value[k] = scale * v7;
        r.error[k] = std::abs(scale * (v7 - v5));
        r.max_error = std::max(r.max_error, r.error[k]);
    }
    r.split_dim = std::size_t(std::max_element(fourth_diff.begin(), fourth_diff.end()) -
                              fourth_diff.begin());
}

} // namespace

CubatureResult integrate_cube(std::size_t dim, std::size_t ncomp, const CubeIntegrand& f,
                              const CubatureOptions& opt) {
    CubatureResult res;
    res.value.assign(ncomp, cplx(0.0));
    res.error.assign(ncomp, 0.0);

    if (dim == 0) {
        f(nullptr, res.value.data());
        res.evaluations = 1;
        return res;
    }

    GMRule rule(dim >= 2 ? dim : 2);
    std::size_t evals = 0;

    auto eval_region = [&](Region& r) {
        if (dim == 1) eval_gk15(f, ncomp, r, evals);
        else eval_genz_malik(f, ncomp, rule, r, evals);
    };

    Region root;
    root.lo.assign(dim, 0.0);
    root.hi.assign(dim, 1.0);
    eval_region(root);

    struct Ranked {
        double err;
        std::size_t seq;
        std::size_t idx;
        bool operator<(const Ranked& o) const {
            if (err != o.err) return err < o.err;
            return seq > o.seq;
        }
    };
    std::vector<Region> pool;
    std::priority_queue<Ranked> heap;
    pool.push_back(std::move(root));
    heap.push({pool[0].max_error, 0, 0});
    std::vector<cplx> total = pool[0].value;
    std::vector<double> toterr = pool[0].error;
    std::size_t seq = 1;

    auto done = [&]() {
        for (std::size_t k = 0; k < ncomp; ++k)
            if (toterr[k] > std::max(opt.abs_tol, opt.rel_tol * std::abs(total[k]))) return false;
        return true;
    };

    while (!done()) {
        if (evals >= opt.max_evaluations || heap.empty()) {
            if (opt.throw_on_budget && evals >= opt.max_evaluations)
                throw budget_error("cubature evaluation budget exceeded");
            res.converged = false;
            break;
        }
        Ranked top = heap.top();
        heap.pop();
        Region r = pool[top.idx];
        if (r.max_error <= 0.0) { // nothing left to gain
            res.converged = false;
            break;
        }
        std::size_t sd = r.split_dim;
        double mid = 0.5 * (r.lo[sd] + r.hi[sd]);
        Region left = r, right = r;
        left.hi[sd] = mid;
        right.lo[sd] = mid;
        eval_region(left);
        eval_region(right);
        for (std::size_t k = 0; k < ncomp; ++k) {
            total[k] += left.value[k] + right.value[k] - r.value[k];
            toterr[k] += left.error[k] + right.error[k] - r.error[k];
        }
        pool[top.idx] = std::move(left);
        heap.push({pool[top.idx].max_error, seq++, top.idx});
        pool.push_back(std::move(right));
        heap.push({pool.back().max_error, seq++, pool.size() - 1});
    }

    res.value = std::move(total);
    res.error = std::move(toterr);
    res.evaluations = evals;
    return res;
}

std::vector<cplx> pairwise_sum(std::vector<std::vector<cplx>> rows) {
    if (rows.empty()) return {};
    while (rows.size() > 1) {
        std::vector<std::vector<cplx>> next;
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
            std::vector<cplx> s(rows[i].size(), cplx(0.0));
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = rows[i][k] + rows[i + 1][k];
            next.push_back(std::move(s));
        }
        if (rows.size() % 2 == 1) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    return rows[0];
}

} // namespace feynpoly
