#include "feynpoly/lattice.hpp"
#include "feynpoly/seed.hpp"

#include <atomic>

#include <algorithm>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

namespace feynpoly {

namespace {
std::atomic<std::uint64_t> g_seed{0};
}

void set_sampling_seed(std::uint64_t seed) { g_seed.store(seed); }
std::uint64_t sampling_seed() { return g_seed.load(); }

std::int64_t dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::logic_error("dot: dimension mismatch");
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (__int128)a[i] * b[i];
    return detail::checked_i64(s, "dot");
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = detail::checked_i64((__int128)a[i] + b[i], "vec add");
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = detail::checked_i64((__int128)a[i] - b[i], "vec sub");
    return r;
}

Vec scale(std::int64_t s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = detail::checked_i64((__int128)s * a[i], "vec scale");
    return r;
}

bool is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

Vec primitive(Vec a) {
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (auto& x : a) x /= g;
    return a;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string vec_str(const Vec& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << a[i];
    }
    os << ')';
    return os.str();
}

Vec indicator(std::uint32_t mask, std::size_t n) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) v[i] = 1;
    return v;
}

Vec project_ray(const Vec& v) {
    if (v.empty()) throw std::logic_error("project_ray: empty vector");
    Vec r(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        r[i] = detail::checked_i64((__int128)v[i] - v.back(), "project_ray");
    return r;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over rationals

namespace {

using QMat = std::vector<std::vector<Rational>>;

QMat to_qmat(const std::vector<Vec>& rows) {
    QMat m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Rational> q(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) q[i] = Rational(r[i]);
        m.push_back(std::move(q));
    }
    return m;
}

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && !m[i][c].is_zero()) {
                Rational f = m[i][c];
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Vec q_to_primitive_int(const std::vector<Rational>& q) {
    std::int64_t lcm = 1;
    for (const auto& x : q) lcm = std::lcm(lcm, x.den());
    Vec v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        v[i] = detail::checked_i64((__int128)q[i].num() * (lcm / q[i].den()), "q_to_int");
    return primitive(std::move(v));
}

} // namespace

std::size_t rank_of(const std::vector<Vec>& rows) {
    QMat m = to_qmat(rows);
    return rref(m).size();
}

// Integer basis of {x : rows * x = 0}, canonical via RREF free columns.
static std::vector<Vec> nullspace(const std::vector<Vec>& rows, std::size_t dim) {
    QMat m = to_qmat(rows);
    auto pivots = rref(m);
    std::vector<bool> is_pivot(dim, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> sol(dim, Rational(0));
        sol[f] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = -m[r][f];
        basis.push_back(q_to_primitive_int(sol));
    }
    return basis;
}

std::vector<std::int64_t> smith_divisors(std::vector<Vec> a) {
    if (a.empty() || a[0].empty()) return {};
    std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::int64_t> divisors;
    std::size_t t = 0;
    auto nonzero_at = [&](std::size_t from) -> bool {
        for (std::size_t i = from; i < rows; ++i)
            for (std::size_t j = from; j < cols; ++j)
                if (a[i][j] != 0) return true;
        return false;
    };
    while (t < rows && t < cols && nonzero_at(t)) {
        // move the smallest nonzero entry to (t,t)
        for (;;) {
            std::size_t bi = t, bj = t;
            std::int64_t best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    std::int64_t v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                    if (v != 0 && (best == 0 || v < best)) { best = v; bi = i; bj = j; }
                }
            std::swap(a[bi], a[t]);
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][bj], a[i][t]);
            if (a[t][t] < 0)
                for (std::size_t j = t; j < cols; ++j) a[t][j] = -a[t][j];
            bool again = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                std::int64_t q = a[i][t] / a[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < cols; ++j)
                        a[i][j] = detail::checked_i64((__int128)a[i][j] - (__int128)q * a[t][j], "smith");
                if (a[i][t] != 0) again = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                std::int64_t q = a[t][j] / a[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < rows; ++i)
                        a[i][j] = detail::checked_i64((__int128)a[i][j] - (__int128)q * a[i][t], "smith");
                if (a[t][j] != 0) again = true;
            }
            if (!again) break;
        }
        divisors.push_back(a[t][t]);
        ++t;
    }
    // divisibility chain is not enforced; only the set matters for smoothness
    return divisors;
}

// ---------------------------------------------------------------------------
// Double description

namespace {

struct DDRay {
    Vec v;
    std::vector<std::uint64_t> zero; // bitset over processed inequality indices
};

bool zero_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

int zero_popcount(const std::vector<std::uint64_t>& a) {
    int n = 0;
    for (auto w : a) n += __builtin_popcountll(w);
    return n;
}

Vec combine(std::int64_t cp, const Vec& p, std::int64_t cq, const Vec& q) {
    Vec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = detail::checked_i64((__int128)cp * p[i] + (__int128)cq * q[i], "dd combine");
    return primitive(std::move(r));
}

} // namespace

DDResult double_description(const std::vector<Vec>& rows, std::size_t dim) {
    std::size_t words = rows.size() / 64 + 1;
    std::vector<Vec> lineality;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, 0);
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<DDRay> rays;

    for (std::size_t t = 0; t < rows.size(); ++t) {
        const Vec& a = rows[t];
        std::size_t pivot = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(a, lineality[i]) != 0) { pivot = i; break; }

        if (pivot < lineality.size()) {
            Vec l = lineality[pivot];
            if (dot(a, l) < 0) l = scale(-1, l);
            std::int64_t al = dot(a, l);
            std::vector<Vec> new_lin;
            for (std::size_t i = 0; i < lineality.size(); ++i) {
                if (i == pivot) continue;
                new_lin.push_back(combine(al, lineality[i], -dot(a, lineality[i]), l));
            }
            lineality = std::move(new_lin);
            for (auto& r : rays) {
                r.v = combine(al, r.v, -dot(a, r.v), l);
                r.zero[t / 64] |= 1ull << (t % 64);
            }
            DDRay nr;
            nr.v = primitive(std::move(l));
            nr.zero.assign(words, 0);
            for (std::size_t s = 0; s < t; ++s) nr.zero[s / 64] |= 1ull << (s % 64);
            rays.push_back(std::move(nr));
            continue;
        }

        std::vector<std::size_t> plus, zero, minus;
        std::vector<std::int64_t> vals(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = dot(a, rays[i].v);
            if (vals[i] > 0) plus.push_back(i);
            else if (vals[i] < 0) minus.push_back(i);
            else zero.push_back(i);
        }
        if (minus.empty()) {
            for (auto i : zero) rays[i].zero[t / 64] |= 1ull << (t % 64);
            continue;
        }

        std::vector<DDRay> combos;
        int need = int(dim) - int(lineality.size()) - 2;
        for (auto p : plus) {
            for (auto q : minus) {
                std::vector<std::uint64_t> z(words);
                for (std::size_t w = 0; w < words; ++w) z[w] = rays[p].zero[w] & rays[q].zero[w];
                if (zero_popcount(z) < need) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (zero_subset(z, rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                DDRay nr;
                nr.v = combine(vals[p], rays[q].v, -vals[q], rays[p].v);
                z[t / 64] |= 1ull << (t % 64);
                nr.zero = std::move(z);
                combos.push_back(std::move(nr));
            }
        }
        std::vector<DDRay> next;
        next.reserve(plus.size() + zero.size() + combos.size());
        for (auto i : plus) next.push_back(std::move(rays[i]));
        for (auto i : zero) {
            rays[i].zero[t / 64] |= 1ull << (t % 64);
            next.push_back(std::move(rays[i]));
        }
        for (auto& nr : combos) next.push_back(std::move(nr));
        rays = std::move(next);
    }

    DDResult res;
    for (auto& r : rays) res.rays.push_back(primitive(std::move(r.v)));
    std::sort(res.rays.begin(), res.rays.end(), lex_less);
    res.rays.erase(std::unique(res.rays.begin(), res.rays.end()), res.rays.end());
    res.lineality = std::move(lineality);
    return res;
}

// ---------------------------------------------------------------------------
// LatticePolytope

LatticePolytope LatticePolytope::hull(std::vector<Vec> points) {
    if (points.empty()) throw std::invalid_argument("empty polytope");
    std::size_t n = points[0].size();
    for (const auto& p : points)
        if (p.size() != n) throw std::invalid_argument("polytope points of mixed rank");
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    LatticePolytope P;
    P.rank_ = n;

    // homogenize: inequalities beta + <u,p> >= 0 on (beta,u) space
    std::vector<Vec> rows;
    rows.reserve(points.size());
    for (const auto& p : points) {
        Vec row(n + 1);
        row[0] = 1;
        for (std::size_t i = 0; i < n; ++i) row[i + 1] = p[i];
        rows.push_back(std::move(row));
    }
    DDResult dd = double_description(rows, n + 1);

    // ambient equations from the lineality of the dual cone (canonicalized via RREF)
    if (!dd.lineality.empty()) {
        QMat m = to_qmat(dd.lineality);
        rref(m);
        for (const auto& rowq : m) {
            bool allzero = std::all_of(rowq.begin(), rowq.end(), [](const Rational& x) { return x.is_zero(); });
            if (allzero) continue;
            Vec w = q_to_primitive_int(rowq);
            Vec normal(w.begin() + 1, w.end());
            if (is_zero(normal)) continue; // beta-only row cannot occur for nonempty P
            std::int64_t beta = w[0];
            std::int64_t g = 0;
            for (auto x : normal) g = std::gcd(g, x < 0 ? -x : x);
            Vec pn = primitive(normal);
            Rational level(-beta, g == 0 ? 1 : g); // <m, normal/g> = -beta/g
            auto first_nz = std::find_if(pn.begin(), pn.end(), [](std::int64_t x) { return x != 0; });
            if (first_nz != pn.end() && *first_nz < 0) {
                pn = scale(-1, pn);
                level = -level;
            }
            P.ambient_.push_back({std::move(pn), level});
        }
    }

    for (const auto& r : dd.rays) {
        Vec normal(r.begin() + 1, r.end());
        if (is_zero(normal)) continue;
        P.facets_.push_back({std::move(normal), r[0]});
    }
    std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) {
        return a.normal != b.normal ? lex_less(a.normal, b.normal) : a.offset < b.offset;
    });

    // vertices: points whose tight facets together with the ambient equations have full rank
    std::vector<Vec> amb_normals;
    for (const auto& h : P.ambient_) amb_normals.push_back(h.normal);
    for (const auto& p : points) {
        std::vector<Vec> tight = amb_normals;
        for (const auto& f : P.facets_)
            if (dot(p, f.normal) == -f.offset) tight.push_back(f.normal);
        if (rank_of(tight) == n) P.vertices_.push_back(p);
    }
    if (P.vertices_.empty()) P.vertices_ = {points.front()}; // single point case
    return P;
}

bool LatticePolytope::in_all_ones_hyperplane() const {
    for (const auto& h : ambient_) {
        bool all_ones = std::all_of(h.normal.begin(), h.normal.end(), [](std::int64_t x) { return x == 1; });
        if (all_ones) return true;
    }
    return false;
}

LatticePolytope LatticePolytope::projectivize() const {
    if (!in_all_ones_hyperplane())
        throw std::domain_error("projective mode requires the polytope to lie in a sum(m)=d hyperplane");
    std::vector<Vec> pts;
    for (const auto& v : vertices_) pts.emplace_back(v.begin(), v.end() - 1);
    return hull(std::move(pts));
}

std::string LatticePolytope::dump() const {
    std::ostringstream os;
    os << "polytope rank " << rank_ << " dim " << dim() << "\n";
    for (const auto& v : vertices_) os << "  vertex " << vec_str(v) << "\n";
    for (const auto& f : facets_) os << "  facet " << vec_str(f.normal) << " >= " << -f.offset << "\n";
    for (const auto& h : ambient_) os << "  ambient " << vec_str(h.normal) << " = " << h.level << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Cone

Cone Cone::make(std::vector<Vec> generators, std::size_t rank, bool allow_lines) {
    for (auto& g : generators) {
        if (g.size() != rank) throw std::invalid_argument("cone generator rank mismatch");
        g = primitive(std::move(g));
    }
    generators.erase(std::remove_if(generators.begin(), generators.end(),
                                    [](const Vec& v) { return is_zero(v); }),
                     generators.end());
    std::sort(generators.begin(), generators.end(), lex_less);
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    Cone c;
    c.rank_ = rank;
    if (generators.empty()) {
        c.dim_ = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            Vec e(rank, 0);
            e[i] = 1;
            c.span_eqs_.push_back(std::move(e));
        }
        return c;
    }

    DDResult dd = double_description(generators, rank);
    c.dual_ = dd.rays;
    c.span_eqs_ = nullspace(generators, rank);
    c.dim_ = rank - c.span_eqs_.size();

    // lineality of the cone itself: kernel of dual inequalities within the span
    std::vector<Vec> all = c.dual_;
    for (const auto& e : c.span_eqs_) all.push_back(e);
    if (rank_of(all) < rank) {
        if (!allow_lines) throw std::domain_error("cone is not strongly convex");
        c.lineality_ = nullspace(all, rank);
    }

    // keep only extreme generators (rays): tight constraints must cut down to dimension 1
    if (c.lineality_.empty()) {
        std::vector<Vec> extreme;
        for (const auto& g : generators) {
            std::vector<Vec> tight = c.span_eqs_;
            for (const auto& w : c.dual_)
                if (dot(w, g) == 0) tight.push_back(w);
            if (rank_of(tight) == rank - 1) extreme.push_back(g);
        }
        if (!extreme.empty()) c.gens_ = std::move(extreme);
        else c.gens_ = std::move(generators); // dim 0 handled above; defensive
    } else {
        c.gens_ = std::move(generators);
    }
    return c;
}

bool Cone::contains(const Vec& x) const {
    for (const auto& e : span_eqs_)
        if (dot(e, x) != 0) return false;
    for (const auto& w : dual_)
        if (dot(w, x) < 0) return false;
    return true;
}

std::vector<std::vector<std::size_t>> Cone::facet_generator_sets() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& w : dual_) {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (dot(w, gens_[i]) == 0) f.push_back(i);
        if (!f.empty()) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Cone::operator<(const Cone& o) const {
    return std::lexicographical_compare(gens_.begin(), gens_.end(), o.gens_.begin(), o.gens_.end(), lex_less);
}

std::string Cone::dump() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) os << ' ';
        os << vec_str(gens_[i]);
    }
    return os.str();
}

bool is_simplicial_cone(const Cone& c) {
    if (!c.strongly_convex()) return false;
    return rank_of(c.generators()) == c.generators().size();
}

bool is_smooth_cone(const Cone& c) {
    if (!is_simplicial_cone(c)) return false;
    auto div = smith_divisors(c.generators());
    return std::all_of(div.begin(), div.end(), [](std::int64_t d) { return d == 1 || d == -1; });
}

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(std::vector<Cone> maximal, std::size_t rank, std::string label, bool complete)
    : cones_(std::move(maximal)), rank_(rank), label_(std::move(label)), complete_(complete) {
    std::sort(cones_.begin(), cones_.end());
    cones_.erase(std::unique(cones_.begin(), cones_.end(),
                             [](const Cone& a, const Cone& b) { return a == b; }),
                 cones_.end());
}

std::vector<Vec> Fan::rays() const {
    std::vector<Vec> out;
    for (const auto& c : cones_)
        for (const auto& g : c.generators()) out.push_back(g);
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Fan::dump() const {
    std::ostringstream os;
    os << "fan '" << label_ << "' rank " << rank_ << " (" << cones_.size() << " maximal cones)\n";
    for (const auto& c : cones_) os << "  " << c.dump() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Operations

MinPairing min_pairing(const std::vector<Vec>& support, const Vec& u) {
    if (support.empty()) throw std::invalid_argument("empty polytope");
    MinPairing mp;
    mp.value = dot(support[0], u);
    for (const auto& m : support) mp.value = std::min(mp.value, dot(m, u));
    for (const auto& m : support)
        if (dot(m, u) == mp.value) mp.argmin.push_back(m);
    std::sort(mp.argmin.begin(), mp.argmin.end(), lex_less);
    return mp;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.rank() != q.rank()) throw std::invalid_argument("minkowski sum rank mismatch");
    std::vector<Vec> pts;
    pts.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) pts.push_back(add(a, b));
    return LatticePolytope::hull(std::move(pts));
}

Fan normal_fan(const LatticePolytope& p) {
    std::size_t n = p.rank();
    bool generalized = !p.full_dimensional();
    std::vector<Cone> cones;
    for (const auto& v : p.vertices()) {
        std::vector<Vec> gens;
        for (const auto& f : p.facets())
            if (dot(v, f.normal) == -f.offset) gens.push_back(f.normal);
        if (generalized) {
            for (const auto& h : p.ambient()) {
                gens.push_back(h.normal);
                gens.push_back(scale(-1, h.normal));
            }
        }
        cones.push_back(Cone::make(std::move(gens), n, generalized));
    }
    return Fan(std::move(cones), n, "normal fan", true);
}

std::optional<Vec> vertex_for_cone(const LatticePolytope& p, const Cone& sigma) {
    if (!sigma.strongly_convex()) throw std::domain_error("vertex_for_cone: cone is not strongly convex");
    if (sigma.dim() != sigma.rank()) throw std::domain_error("vertex_for_cone: cone is not full-dimensional");
    std::vector<Vec> common = p.vertices();
    for (const auto& u : sigma.generators()) {
        MinPairing mp = min_pairing(p.vertices(), u);
        std::vector<Vec> keep;
        for (const auto& v : common)
            if (std::binary_search(mp.argmin.begin(), mp.argmin.end(), v, lex_less)) keep.push_back(v);
        common = std::move(keep);
        if (common.empty()) return std::nullopt;
    }
    if (common.size() == 1) return common[0];
    return std::nullopt;
}

namespace {

bool covers_samples(const Fan& fan) {
    // seeded sample coverage check; boundaries land inside some cone anyway
    std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (sampling_seed() * 0x2545f4914f6cdd1dull);
    if (state == 0) state = 1;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    std::size_t n = fan.rank();
    for (int trial = 0; trial < 256; ++trial) {
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::int64_t(next() % 19) - 9;
        bool inside = false;
        for (const auto& c : fan.maximal_cones())
            if (c.contains(x)) { inside = true; break; }
        if (!inside) return false;
    }
    return true;
}

} // namespace

RefinesResult refines(const Fan& fine, const LatticePolytope& coarse) {
    if (fine.rank() != coarse.rank()) throw std::invalid_argument("refines: rank mismatch");
    for (const auto& c : fine.maximal_cones())
        if (c.dim() != fine.rank()) return {false, c};
    if (!fine.constructed_complete() && !covers_samples(fine)) return {false, std::nullopt};
    for (const auto& c : fine.maximal_cones())
        if (!vertex_for_cone(coarse, c)) return {false, c};
    return {true, std::nullopt};
}

RefinesResult refines(const Fan& fine, const Fan& coarse) {
    if (fine.rank() != coarse.rank()) throw std::invalid_argument("refines: rank mismatch");
    for (const auto& cf : fine.maximal_cones()) {
        bool inside_some = false;
        for (const auto& cc : coarse.maximal_cones()) {
            bool all = true;
            for (const auto& g : cf.generators())
                if (!cc.contains(g)) { all = false; break; }
            if (all) { inside_some = true; break; }
        }
        if (!inside_some) return {false, cf};
    }
    return {true, std::nullopt};
}

Fan star_subdivision(const Fan& fan, const Vec& nu) {
    if (primitive(nu) != nu || is_zero(nu)) throw std::invalid_argument("star subdivision vector must be primitive");
    bool in_support = false;
    std::vector<Cone> out;
    for (const auto& sigma : fan.maximal_cones()) {
        if (!sigma.contains(nu)) {
            out.push_back(sigma);
            continue;
        }
        in_support = true;
        if (sigma.dim() <= 1) { // a ray containing nu is the ray of nu itself
            out.push_back(sigma);
            continue;
        }
        const auto& gens = sigma.generators();
        for (const auto& fidx : sigma.facet_generator_sets()) {
            std::vector<Vec> fg;
            for (auto i : fidx) fg.push_back(gens[i]);
            Cone face = Cone::make(fg, fan.rank());
            if (face.contains(nu)) continue;
            fg.push_back(nu);
            Cone piece = Cone::make(std::move(fg), fan.rank());
            if (piece.dim() == sigma.dim()) out.push_back(std::move(piece));
        }
    }
    if (!in_support) throw std::domain_error("star subdivision vector lies outside the fan support");
    return Fan(std::move(out), fan.rank(), fan.label() + "*", fan.constructed_complete());
}

Fan simplicial_refine(const Fan& fan) {
    Fan cur = fan;
    for (int pass = 0; pass < 4; ++pass) {
        bool all_simplicial = std::all_of(cur.maximal_cones().begin(), cur.maximal_cones().end(),
                                          [](const Cone& c) { return is_simplicial_cone(c); });
        if (all_simplicial) break;
        for (const auto& r : cur.rays()) cur = star_subdivision(cur, r);
    }
    for (const auto& c : cur.maximal_cones())
        if (!is_simplicial_cone(c)) throw std::logic_error("simplicial_refine failed to terminate");
    return Fan(cur.maximal_cones(), cur.rank(), fan.label() + " (simplicial)", fan.constructed_complete());
}

} // namespace feynpoly
