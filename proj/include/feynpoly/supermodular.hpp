#ifndef FEYNPOLY_SUPERMODULAR_HPP
#define FEYNPOLY_SUPERMODULAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "feynpoly/lattice.hpp"

namespace feynpoly {

using Subset = std::uint32_t; // bitmask over the ground set

/// Exact integer set function z on 2^E with z(empty)=0 and
/// z(I)+z(J) <= z(I cap J)+z(I cup J); verified at construction.
class SupermodularFunction {
public:
    SupermodularFunction(std::vector<std::string> labels, std::vector<std::int64_t> table);

    std::size_t ground_size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    Subset full_set() const { return (Subset(1) << labels_.size()) - 1; }

    std::int64_t operator()(Subset I) const { return table_[I]; }

    SupermodularFunction restrict_to(Subset I) const;
    SupermodularFunction contract_by(Subset I) const;

    /// True when no proper nonempty S splits z additively (z(S)+z(E\S)=z(E)).
    bool irreducible() const;
    bool restriction_irreducible(Subset I) const;
    bool contraction_irreducible(Subset I) const;

    /// Unique finest partition E = union I_k with z = sum of restrictions.
    std::vector<Subset> irreducible_decomposition() const;

    /// Facet subsets of P(z): proper I with both z|_I and z/_I irreducible.
    /// Requires z irreducible.
    std::vector<Subset> facet_subsets() const;

    /// Building set {I : z|_I irreducible} (includes E when z is irreducible).
    std::vector<Subset> building_set() const;

    /// Vertices from all maximal flags, deduplicated; lies in <m,e^E> = z(E).
    LatticePolytope base_polytope() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::int64_t> table_;
};

/// Building set on a ground set; reduced form (E excluded) plus all singletons.
struct BuildingSet {
    std::size_t ground_size = 0;
    std::vector<Subset> members; // sorted, deduplicated

    bool is_building_set() const;
    bool contains(Subset I) const;
};

BuildingSet make_building_set(std::size_t n, std::vector<Subset> members);

/// Maximal nested sets of a reduced building set, one per class of total orders.
std::vector<std::vector<Subset>> maximal_nested_sets(const BuildingSet& g);

bool is_nested(const BuildingSet& g, const std::vector<Subset>& members);

/// Fan with maximal cones pos([e^I] : I in N) over maximal nested sets,
/// in the projective lattice N_E of rank n-1.
Fan nested_set_fan(const BuildingSet& g);

/// Normal fan of the permutahedron: one smooth cone per total order of E.
Fan hepp_fan(std::size_t n);

/// Sector coordinate map of a Hepp cone: alpha_i = prod_{j <= i} x_j
/// for the order encoded by the flag; exposed as the list of flag subsets.
std::vector<Subset> hepp_flag(const std::vector<std::size_t>& order);

} // namespace feynpoly

#endif
