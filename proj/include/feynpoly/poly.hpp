#ifndef FEYNPOLY_POLY_HPP
#define FEYNPOLY_POLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "feynpoly/lattice.hpp"
#include "feynpoly/rational.hpp"

namespace feynpoly {

using cplx = std::complex<double>;

/// Kinematic symbol: 1, q_I^2 (keyed by canonical external-label subset) or m_e^2.
struct KinSymbol {
    enum class Kind { One, Sq, M2 };
    Kind kind = Kind::One;
    std::string key;

    static KinSymbol one() { return {Kind::One, ""}; }
    static KinSymbol sq(std::string k) { return {Kind::Sq, std::move(k)}; }
    static KinSymbol m2(std::string k) { return {Kind::M2, std::move(k)}; }

    friend bool operator<(const KinSymbol& a, const KinSymbol& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.key < b.key;
    }
    friend bool operator==(const KinSymbol& a, const KinSymbol& b) {
        return a.kind == b.kind && a.key == b.key;
    }
    std::string str() const;
};

/// Exact linear combination of kinematic symbols.
using SymCoeff = std::map<KinSymbol, Rational>;

/// Laurent polynomial with exact symbolic coefficients over fixed-width
/// exponent vectors.
class SymbolicLaurentPolynomial {
public:
    SymbolicLaurentPolynomial() = default;
    explicit SymbolicLaurentPolynomial(std::size_t nvars) : nvars_(nvars) {}

    std::size_t nvars() const { return nvars_; }
    bool zero() const { return terms_.empty(); }
    const std::map<Vec, SymCoeff>& terms() const { return terms_; }

    void add_term(const Vec& exponent, const KinSymbol& s, const Rational& c);

    friend SymbolicLaurentPolynomial operator+(const SymbolicLaurentPolynomial& a,
                                               const SymbolicLaurentPolynomial& b);
    friend SymbolicLaurentPolynomial operator-(const SymbolicLaurentPolynomial& a,
                                               const SymbolicLaurentPolynomial& b);
    /// Product; symbol monomials multiply only against the constant symbol.
    friend SymbolicLaurentPolynomial operator*(const SymbolicLaurentPolynomial& a,
                                               const SymbolicLaurentPolynomial& b);

    std::vector<Vec> support() const;

    /// Maximum over the support of the total degree in the masked variables.
    std::int64_t degree_in(std::uint32_t mask) const;
    /// Minimum over the support of the total degree in the masked variables.
    std::int64_t min_degree_in(std::uint32_t mask) const;

    bool homogeneous(std::int64_t* degree_out = nullptr) const;

    std::string str(const std::vector<std::string>& var_names) const;

private:
    void prune();
    std::size_t nvars_ = 0;
    std::map<Vec, SymCoeff> terms_;
};

/// Convex hull of the support; throws on the zero polynomial.
LatticePolytope newton_polytope(const SymbolicLaurentPolynomial& f);

/// Laurent polynomial with numeric coefficients, the mellin engine currency.
struct NumericPoly {
    std::size_t nvars = 0;
    std::map<Vec, cplx> terms;

    bool zero() const { return terms.empty(); }
    std::vector<Vec> support() const;
    void add(const Vec& e, cplx c, double drop_tol = 0.0);

    friend NumericPoly operator*(const NumericPoly& a, const NumericPoly& b);
};

LatticePolytope newton_polytope(const NumericPoly& f);

} // namespace feynpoly

#endif
