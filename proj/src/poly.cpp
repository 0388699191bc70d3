#include "feynpoly/poly.hpp"

#include <algorithm>
#include <sstream>

namespace feynpoly {

std::string KinSymbol::str() const {
    switch (kind) {
        case Kind::One: return "1";
        case Kind::Sq: return "sq:" + key;
        case Kind::M2: return "m2:" + key;
    }
    return "?";
}

void SymbolicLaurentPolynomial::add_term(const Vec& exponent, const KinSymbol& s, const Rational& c) {
    if (exponent.size() != nvars_) throw std::logic_error("exponent width mismatch");
    if (c.is_zero()) return;
    auto& coeff = terms_[exponent];
    coeff[s] += c;
    if (coeff[s].is_zero()) coeff.erase(s);
    if (coeff.empty()) terms_.erase(exponent);
}

void SymbolicLaurentPolynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? terms_.erase(it) : std::next(it);
    }
}

SymbolicLaurentPolynomial operator+(const SymbolicLaurentPolynomial& a, const SymbolicLaurentPolynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::logic_error("polynomial variable count mismatch");
    SymbolicLaurentPolynomial r = a;
    for (const auto& [e, coeff] : b.terms_)
        for (const auto& [s, c] : coeff) r.add_term(e, s, c);
    return r;
}

SymbolicLaurentPolynomial operator-(const SymbolicLaurentPolynomial& a, const SymbolicLaurentPolynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::logic_error("polynomial variable count mismatch");
    SymbolicLaurentPolynomial r = a;
    for (const auto& [e, coeff] : b.terms_)
        for (const auto& [s, c] : coeff) r.add_term(e, s, -c);
    return r;
}

SymbolicLaurentPolynomial operator*(const SymbolicLaurentPolynomial& a, const SymbolicLaurentPolynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::logic_error("polynomial variable count mismatch");
    SymbolicLaurentPolynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Vec e = add(ea, eb);
            for (const auto& [sa, ra] : ca)
                for (const auto& [sb, rb] : cb) {
                    KinSymbol s;
                    if (sa.kind == KinSymbol::Kind::One) s = sb;
                    else if (sb.kind == KinSymbol::Kind::One) s = sa;
                    else throw std::logic_error("product of two non-constant kinematic symbols");
                    r.add_term(e, s, ra * rb);
                }
        }
    return r;
}

std::vector<Vec> SymbolicLaurentPolynomial::support() const {
    std::vector<Vec> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
}

std::int64_t SymbolicLaurentPolynomial::degree_in(std::uint32_t mask) const {
    std::int64_t best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::int64_t d = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (mask & (1u << i)) d += e[i];
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

std::int64_t SymbolicLaurentPolynomial::min_degree_in(std::uint32_t mask) const {
    std::int64_t best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::int64_t d = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (mask & (1u << i)) d += e[i];
        if (first || d < best) best = d;
        first = false;
    }
    return best;
}

bool SymbolicLaurentPolynomial::homogeneous(std::int64_t* degree_out) const {
    bool first = true;
    std::int64_t deg = 0;
    for (const auto& [e, c] : terms_) {
        std::int64_t d = 0;
        for (auto x : e) d += x;
        if (first) deg = d;
        else if (d != deg) return false;
        first = false;
    }
    if (degree_out) *degree_out = deg;
    return true;
}

std::string SymbolicLaurentPolynomial::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [e, coeff] : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        os << '(';
        bool fs = true;
        for (const auto& [s, c] : coeff) {
            if (!fs) os << " + ";
            fs = false;
            if (!(c == Rational(1)) || s.kind == KinSymbol::Kind::One) os << c.str();
            if (s.kind != KinSymbol::Kind::One) {
                if (!(c == Rational(1))) os << '*';
                os << s.str();
            }
        }
        os << ')';
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << '*' << (i < var_names.size() ? var_names[i] : "x" + std::to_string(i));
            if (e[i] != 1) os << '^' << e[i];
        }
    }
    return os.str();
}

LatticePolytope newton_polytope(const SymbolicLaurentPolynomial& f) {
    if (f.zero()) throw std::domain_error("newton polytope of the zero polynomial");
    return LatticePolytope::hull(f.support());
}

LatticePolytope newton_polytope(const NumericPoly& f) {
    if (f.zero()) throw std::domain_error("newton polytope of the zero polynomial");
    return LatticePolytope::hull(f.support());
}

std::vector<Vec> NumericPoly::support() const {
    std::vector<Vec> s;
    s.reserve(terms.size());
    for (const auto& [e, c] : terms) s.push_back(e);
    return s;
}

void NumericPoly::add(const Vec& e, cplx c, double drop_tol) {
    auto it = terms.find(e);
    if (it == terms.end()) {
        if (std::abs(c) > drop_tol) terms.emplace(e, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= drop_tol) terms.erase(it);
}

NumericPoly operator*(const NumericPoly& a, const NumericPoly& b) {
    NumericPoly r;
    r.nvars = a.nvars;
    double scale = 0.0;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) scale = std::max(scale, std::abs(ca * cb));
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add(add(ea, eb), ca * cb);
    // drop exact-cancellation residue
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = (std::abs(it->second) <= 1e-14 * scale) ? r.terms.erase(it) : std::next(it);
    return r;
}

} // namespace feynpoly
