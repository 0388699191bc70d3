#ifndef FEYNPOLY_LATTICE_HPP
#define FEYNPOLY_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "feynpoly/rational.hpp"

namespace feynpoly {

/// Lattice vector with exact integer coordinates.
using Vec = std::vector<std::int64_t>;

std::int64_t dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(std::int64_t s, const Vec& a);
bool is_zero(const Vec& a);
/// Divides by the gcd of the coordinates (gcd 1 afterwards); zero stays zero.
Vec primitive(Vec a);
bool lex_less(const Vec& a, const Vec& b);
std::string vec_str(const Vec& a);

/// Indicator vector of a subset given as a bitmask over n coordinates.
Vec indicator(std::uint32_t mask, std::size_t n);

/// Quotient map Z^n -> Z^n/Z(1,..,1) with the "drop the last coordinate" basis.
Vec project_ray(const Vec& v);

/// Rank of a set of integer vectors (exact).
std::size_t rank_of(const std::vector<Vec>& rows);

/// Elementary divisors of the matrix with the given rows (Smith normal form diagonal).
std::vector<std::int64_t> smith_divisors(std::vector<Vec> rows);

struct Hyperplane {
    Vec normal;      // primitive
    Rational level;  // <m, normal> = level on the affine hull
};

struct Facet {
    Vec normal;          // u_F, primitive, inward
    std::int64_t offset; // a_F with <m, u_F> >= -a_F
};

/// Result of the double description run on a system of homogeneous inequalities.
struct DDResult {
    std::vector<Vec> rays;      // extreme rays, primitive, canonically sorted
    std::vector<Vec> lineality; // basis of the lineality space
};

/// Extreme rays (modulo lineality) of {x : <row_i, x> >= 0}.
DDResult double_description(const std::vector<Vec>& rows, std::size_t dim);

class Cone;

/// Lattice polytope: vertex set plus an exact irredundant facet presentation.
class LatticePolytope {
public:
    LatticePolytope() = default;

    /// Convex hull of a nonempty set of lattice points.
    static LatticePolytope hull(std::vector<Vec> points);

    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Hyperplane>& ambient() const { return ambient_; }

    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return rank_ - ambient_.size(); }
    bool full_dimensional() const { return ambient_.empty(); }

    /// True when the polytope lies in a hyperplane sum(m)=d; required for projective mode.
    bool in_all_ones_hyperplane() const;

    /// Drop the last coordinate of every vertex; valid when in_all_ones_hyperplane().
    LatticePolytope projectivize() const;

    bool operator==(const LatticePolytope& o) const {
        return vertices_ == o.vertices_ && rank_ == o.rank_;
    }

    std::string dump() const;

private:
    std::vector<Vec> vertices_;      // canonically sorted
    std::vector<Facet> facets_;      // canonically sorted by normal
    std::vector<Hyperplane> ambient_;
    std::size_t rank_ = 0;
};

/// Rational polyhedral cone given by primitive, deduplicated, sorted generators.
class Cone {
public:
    Cone() = default;
    /// Canonicalizes: reduces to extreme rays, checks strong convexity unless allow_lines.
    static Cone make(std::vector<Vec> generators, std::size_t rank, bool allow_lines = false);

    const std::vector<Vec>& generators() const { return gens_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return dim_; }
    bool strongly_convex() const { return lineality_.empty(); }
    const std::vector<Vec>& lineality() const { return lineality_; }
    /// Facet inequalities of the cone inside its span (from the dual description).
    const std::vector<Vec>& dual_inequalities() const { return dual_; }
    /// Equations cutting out the span of the cone.
    const std::vector<Vec>& span_equations() const { return span_eqs_; }

    bool contains(const Vec& x) const;
    /// Faces as generator index subsets, one entry per proper face plus the cone itself.
    std::vector<std::vector<std::size_t>> facet_generator_sets() const;

    bool operator==(const Cone& o) const { return gens_ == o.gens_ && rank_ == o.rank_; }
    bool operator<(const Cone& o) const;

    std::string dump() const;

private:
    std::vector<Vec> gens_;
    std::vector<Vec> dual_;     // facet normals of the cone within its span
    std::vector<Vec> span_eqs_; // orthogonal complement basis of span(gens)
    std::vector<Vec> lineality_;
    std::size_t rank_ = 0;
    std::size_t dim_ = 0;
};

bool is_simplicial_cone(const Cone& c);
bool is_smooth_cone(const Cone& c);

/// Fan stored by its maximal cones.
class Fan {
public:
    Fan() = default;
    Fan(std::vector<Cone> maximal, std::size_t rank, std::string label, bool complete);

    const std::vector<Cone>& maximal_cones() const { return cones_; }
    std::size_t rank() const { return rank_; }
    const std::string& label() const { return label_; }
    bool constructed_complete() const { return complete_; }

    /// Primitive generators of all rays of the fan, sorted.
    std::vector<Vec> rays() const;

    std::string dump() const;

private:
    std::vector<Cone> cones_;
    std::size_t rank_ = 0;
    std::string label_;
    bool complete_ = false;
};

/// min over the support of <m,u> together with the argmin subset.
struct MinPairing {
    std::int64_t value;
    std::vector<Vec> argmin;
};
MinPairing min_pairing(const std::vector<Vec>& support, const Vec& u);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

/// Normal fan of a full-dimensional polytope. Lower-dimensional input throws;
/// use projectivize() first for polytopes in the sum(m)=d hyperplane.
Fan normal_fan(const LatticePolytope& p);

/// The unique vertex minimizing every generator pairing, if it exists.
std::optional<Vec> vertex_for_cone(const LatticePolytope& p, const Cone& sigma);

struct RefinesResult {
    bool ok;
    std::optional<Cone> witness; // violating cone when !ok
};
RefinesResult refines(const Fan& fine, const LatticePolytope& coarse);
RefinesResult refines(const Fan& fine, const Fan& coarse);

Fan star_subdivision(const Fan& fan, const Vec& nu);
Fan simplicial_refine(const Fan& fan);

} // namespace feynpoly

#endif
