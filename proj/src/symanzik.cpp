#include "feynpoly/graph.hpp"

#include <algorithm>
#include <numeric>

namespace feynpoly {

namespace {

struct UF {
    std::vector<std::size_t> p;
    explicit UF(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};

Vec complement_monomial(Subset kept, Subset domain, std::size_t n) {
    Vec e(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if ((domain & (Subset(1) << i)) && !(kept & (Subset(1) << i))) e[i] = 1;
    return e;
}

// per-component spanning tree / 2-tree polynomials over the full variable set
struct ComponentPolys {
    SymbolicLaurentPolynomial psi, phi;
};

ComponentPolys component_symanzik(const FeynmanGraph& g, const std::vector<std::size_t>& verts,
                                  Subset edge_mask) {
    std::size_t n = g.num_edges();
    ComponentPolys out{SymbolicLaurentPolynomial(n), SymbolicLaurentPolynomial(n)};
    std::size_t nv = verts.size();
    std::vector<std::size_t> vindex(g.num_vertices(), SIZE_MAX);
    for (std::size_t i = 0; i < nv; ++i) vindex[verts[i]] = i;

    Subset m = edge_mask;
    for (;;) {
        std::size_t k = std::size_t(__builtin_popcount(m));
        if (k + 1 == nv || k + 2 == nv) {
            UF uf(nv);
            bool acyclic = true;
            for (std::size_t i = 0; i < n && acyclic; ++i)
                if (m & (Subset(1) << i))
                    acyclic = uf.unite(vindex[g.edges()[i].v1], vindex[g.edges()[i].v2]);
            if (acyclic && k + 1 == nv) {
                out.psi.add_term(complement_monomial(m, edge_mask, n), KinSymbol::one(), Rational(1));
            } else if (acyclic && k + 2 == nv) {
                std::size_t root0 = uf.find(0);
                std::set<std::string> side;
                for (std::size_t i = 0; i < nv; ++i)
                    if (uf.find(i) == root0) {
                        const auto& labels = g.momenta_at(verts[i]);
                        side.insert(labels.begin(), labels.end());
                    }
                if (auto key = g.sq_key(side))
                    out.phi.add_term(complement_monomial(m, edge_mask, n), KinSymbol::sq(*key), Rational(1));
            }
        }
        if (m == 0) break;
        m = (m - 1) & edge_mask;
    }
    return out;
}

} // namespace

Symanzik symanzik(const FeynmanGraph& g) {
    std::size_t n = g.num_edges();
    // components over all vertices (isolated vertices contribute psi = 1)
    std::vector<int> comp(g.num_vertices(), -1);
    {
        UF uf(g.num_vertices());
        for (const auto& e : g.edges()) uf.unite(e.v1, e.v2);
        std::map<std::size_t, int> roots;
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            std::size_t r = uf.find(v);
            auto [it, fresh] = roots.emplace(r, int(roots.size()));
            comp[v] = it->second;
        }
    }
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<std::size_t>> verts{std::size_t(ncomp)};
    verts.assign(std::size_t(ncomp), {});
    std::vector<Subset> masks(std::size_t(ncomp), 0);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) verts[std::size_t(comp[v])].push_back(v);
    for (std::size_t i = 0; i < n; ++i) masks[std::size_t(comp[g.edges()[i].v1])] |= Subset(1) << i;

    std::vector<ComponentPolys> parts;
    for (int c = 0; c < ncomp; ++c) parts.push_back(component_symanzik(g, verts[std::size_t(c)], masks[std::size_t(c)]));

    Symanzik s{SymbolicLaurentPolynomial(n), SymbolicLaurentPolynomial(n), SymbolicLaurentPolynomial(n)};
    SymbolicLaurentPolynomial one(n);
    one.add_term(Vec(n, 0), KinSymbol::one(), Rational(1));
    s.psi = one;
    for (const auto& p : parts) s.psi = s.psi * p.psi;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        SymbolicLaurentPolynomial t = parts[i].phi;
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != i) t = t * parts[j].psi;
        s.phi = s.phi + t;
    }
    SymbolicLaurentPolynomial mass(n);
    for (std::size_t i = 0; i < n; ++i)
        if (g.edges()[i].massive) {
            Vec e(n, 0);
            e[i] = 1;
            mass.add_term(e, KinSymbol::m2(g.edges()[i].id), Rational(1));
        }
    s.Phi = s.phi + mass * s.psi;
    return s;
}

// ---------------------------------------------------------------------------
// Matrix-tree determinant (Bareiss over integer multivariate polynomials)

namespace {

using IPoly = std::map<Vec, std::int64_t>;

IPoly ip_zero() { return {}; }
IPoly ip_one(std::size_t n) { return {{Vec(n, 0), 1}}; }

IPoly ip_add(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    for (const auto& [e, c] : b) {
        auto it = r.find(e);
        if (it == r.end()) r.emplace(e, c);
        else {
            it->second = detail::checked_i64((__int128)it->second + c, "ipoly add");
            if (it->second == 0) r.erase(it);
        }
    }
    return r;
}

IPoly ip_neg(const IPoly& a) {
    IPoly r;
    for (const auto& [e, c] : a) r.emplace(e, -c);
    return r;
}

IPoly ip_mul(const IPoly& a, const IPoly& b) {
    IPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Vec e = add(ea, eb);
            auto it = r.find(e);
            std::int64_t prod = detail::checked_i64((__int128)ca * cb, "ipoly mul");
            if (it == r.end()) r.emplace(std::move(e), prod);
            else {
                it->second = detail::checked_i64((__int128)it->second + prod, "ipoly mul");
                if (it->second == 0) r.erase(it);
            }
        }
    return r;
}

// exact division by greedy leading-term elimination (lex order of the map)
IPoly ip_divexact(IPoly a, const IPoly& b) {
    if (b.empty()) throw std::logic_error("ipoly division by zero");
    IPoly q;
    const auto& [eb, cb] = *b.rbegin(); // lex-largest term of divisor
    while (!a.empty()) {
        const auto& [ea, ca] = *a.rbegin();
        Vec e(ea.size());
        for (std::size_t i = 0; i < ea.size(); ++i) {
            e[i] = ea[i] - eb[i];
            if (e[i] < 0) throw std::logic_error("ipoly division not exact (exponent)");
        }
        if (ca % cb != 0) throw std::logic_error("ipoly division not exact (coefficient)");
        std::int64_t c = ca / cb;
        q.emplace(e, c);
        IPoly t = ip_mul(IPoly{{e, c}}, b);
        a = ip_add(a, ip_neg(t));
    }
    return q;
}

} // namespace

SymbolicLaurentPolynomial kirchhoff_psi(const FeynmanGraph& g) {
    if (!g.connected()) throw domain_error_code("kirchhoff psi requires a connected graph");
    std::size_t n = g.num_edges();
    std::size_t nv = g.num_vertices();
    if (nv == 1) {
        // no reduced Laplacian; the empty tree is the only spanning tree
        SymbolicLaurentPolynomial psi(n);
        psi.add_term(complement_monomial(0, g.full_edge_set(), n), KinSymbol::one(), Rational(1));
        return psi;
    }
    std::size_t d = nv - 1;
    std::vector<std::vector<IPoly>> L(d, std::vector<IPoly>(d, ip_zero()));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = g.edges()[i];
        if (e.v1 == e.v2) continue;
        Vec mono(n, 0);
        mono[i] = 1;
        IPoly y{{mono, 1}};
        if (e.v1 > 0) L[e.v1 - 1][e.v1 - 1] = ip_add(L[e.v1 - 1][e.v1 - 1], y);
        if (e.v2 > 0) L[e.v2 - 1][e.v2 - 1] = ip_add(L[e.v2 - 1][e.v2 - 1], y);
        if (e.v1 > 0 && e.v2 > 0) {
            L[e.v1 - 1][e.v2 - 1] = ip_add(L[e.v1 - 1][e.v2 - 1], ip_neg(y));
            L[e.v2 - 1][e.v1 - 1] = ip_add(L[e.v2 - 1][e.v1 - 1], ip_neg(y));
        }
    }
    // Bareiss fraction-free elimination
    IPoly prev = ip_one(n);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (L[k][k].empty()) {
            std::size_t swap_row = k + 1;
            while (swap_row < d && L[swap_row][k].empty()) ++swap_row;
            if (swap_row == d) return SymbolicLaurentPolynomial(n); // singular: no trees
            std::swap(L[k], L[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j) {
                IPoly t = ip_add(ip_mul(L[k][k], L[i][j]), ip_neg(ip_mul(L[i][k], L[k][j])));
                L[i][j] = ip_divexact(std::move(t), prev);
            }
        prev = L[k][k];
    }
    IPoly det = L[d - 1][d - 1];
    SymbolicLaurentPolynomial psi(n);
    for (const auto& [e, c] : det) {
        Subset kept = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (e[i] == 1) kept |= Subset(1) << i;
        psi.add_term(complement_monomial(kept, g.full_edge_set(), n), KinSymbol::one(), Rational(sign * c));
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Brown factorization

namespace {

// lift a polynomial on a reindexed edge set back to the parent variables
SymbolicLaurentPolynomial lift(const SymbolicLaurentPolynomial& p, const std::vector<std::size_t>& to_parent,
                               std::size_t parent_vars) {
    SymbolicLaurentPolynomial r(parent_vars);
    for (const auto& [e, coeff] : p.terms()) {
        Vec pe(parent_vars, 0);
        for (std::size_t i = 0; i < e.size(); ++i) pe[to_parent[i]] = e[i];
        for (const auto& [s, c] : coeff) r.add_term(pe, s, c);
    }
    return r;
}

std::vector<std::size_t> index_map(const FeynmanGraph& g, Subset subset) {
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (subset & (Subset(1) << i)) map.push_back(i);
    return map;
}

} // namespace

BrownSplit brown_split(const FeynmanGraph& g, Subset edge_subset) {
    if (edge_subset == g.full_edge_set())
        throw std::invalid_argument("brown split requires a proper edge subset");
    std::size_t n = g.num_edges();
    FeynmanGraph sub = g.subgraph_with_kinematics(edge_subset);
    FeynmanGraph quo = g.quotient(edge_subset);
    Symanzik s_full = symanzik(g);
    Symanzik s_sub = symanzik(sub);
    Symanzik s_quo = symanzik(quo);

    auto sub_map = index_map(g, edge_subset);
    auto quo_map = index_map(g, g.full_edge_set() & ~edge_subset);

    BrownSplit out;
    SymbolicLaurentPolynomial psi_s = lift(s_sub.psi, sub_map, n);
    SymbolicLaurentPolynomial psi_q = lift(s_quo.psi, quo_map, n);
    out.psi_split = psi_s * psi_q;
    if (g.mass_momentum_spanning(edge_subset)) {
        out.phi_split = lift(s_sub.phi, sub_map, n) * psi_q;
        out.Phi_split = lift(s_sub.Phi, sub_map, n) * psi_q;
    } else {
        out.phi_split = psi_s * lift(s_quo.phi, quo_map, n);
        out.Phi_split = psi_s * lift(s_quo.Phi, quo_map, n);
    }
    out.r_psi = s_full.psi - out.psi_split;
    out.r_phi = s_full.phi - out.phi_split;
    out.r_Phi = s_full.Phi - out.Phi_split;
    return out;
}

NumericPoly evaluate(const SymbolicLaurentPolynomial& p, const KinematicAssignment& kin) {
    NumericPoly r;
    r.nvars = p.nvars();
    for (const auto& [e, coeff] : p.terms()) {
        cplx v = kin.eval(coeff);
        if (v != cplx(0.0)) r.terms.emplace(e, v);
    }
    return r;
}

} // namespace feynpoly
