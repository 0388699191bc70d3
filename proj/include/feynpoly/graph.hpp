#ifndef FEYNPOLY_GRAPH_HPP
#define FEYNPOLY_GRAPH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "feynpoly/poly.hpp"
#include "feynpoly/supermodular.hpp"

namespace feynpoly {

struct domain_error_code : std::runtime_error {
    explicit domain_error_code(const std::string& w) : std::runtime_error(w) {}
};

struct GraphEdge {
    std::string id;
    std::size_t v1 = 0, v2 = 0;
    bool massive = false;
    Rational lambda = Rational(1);
};

/// Numeric kinematic point: values for the q_I^2 and m_e^2 symbols.
struct KinematicAssignment {
    std::map<std::string, cplx> sq; // canonical subset key -> value
    std::map<std::string, cplx> m2; // edge id -> value

    cplx value(const KinSymbol& s) const;
    cplx eval(const SymCoeff& c) const;

    /// Re(q_I^2) > 0 and Re(q_I^2) + Re(m_e^2) > 0; with no momenta, Re(m_e^2) > 0.
    bool generic_euclidean() const;
};

/// Scalar Feynman graph: labelled vertices and edges, external momentum labels
/// per vertex, massive edge subset.
class FeynmanGraph {
public:
    FeynmanGraph() = default;
    FeynmanGraph(std::vector<std::string> vertices, std::vector<GraphEdge> edges,
                 std::map<std::string, std::set<std::string>> external);

    std::size_t num_vertices() const { return vertex_names_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    /// Momentum labels attached to vertex v.
    const std::set<std::string>& momenta_at(std::size_t v) const { return external_[v]; }
    std::set<std::string> all_momentum_labels() const;
    bool has_external() const;

    Subset full_edge_set() const { return (Subset(1) << edges_.size()) - 1; }
    Subset massive_edges() const;

    bool connected() const;
    std::size_t h1(Subset edge_subset) const;
    std::size_t h1() const { return h1(full_edge_set()); }

    bool momentum_spanning(Subset edge_subset) const;
    bool mass_momentum_spanning(Subset edge_subset) const;

    /// Canonical q_I^2 key for the labels on one side of a 2-tree; empty when
    /// the pairing vanishes by momentum conservation.
    std::optional<std::string> sq_key(const std::set<std::string>& side_labels) const;

    std::vector<Subset> spanning_trees() const;
    struct TwoTree {
        Subset edges;
        std::vector<std::size_t> side1; // vertices of T1
    };
    std::vector<TwoTree> spanning_2trees() const;

    /// Edge partition into 1-vertex-irreducible components (blocks);
    /// every self-loop forms its own block.
    std::vector<Subset> blocks() const;

    /// Every block carries a mass or routes external momentum.
    bool s_irreducible() const;

    struct SubgraphClass {
        std::size_t h1 = 0;
        bool momentum_spanning = false;
        bool mass_momentum_spanning = false;
        bool motic = false;
        bool s_irreducible = false;
    };
    SubgraphClass classify_subgraph(Subset edge_subset) const;

    std::int64_t s_value(Subset edge_subset) const;
    SupermodularFunction s_function() const;

    FeynmanGraph quotient(Subset edge_subset) const;
    FeynmanGraph subgraph_with_kinematics(Subset edge_subset) const;

    LatticePolytope feynman_polytope() const;

private:
    void check_subset(Subset s) const;
    std::size_t components(Subset edge_subset, bool all_vertices,
                           std::vector<int>* comp_out = nullptr) const;

    std::vector<std::string> vertex_names_;
    std::vector<GraphEdge> edges_;
    std::vector<std::set<std::string>> external_;
};

/// Symanzik triple with symbolic coefficients over the edge variables.
struct Symanzik {
    SymbolicLaurentPolynomial psi, phi, Phi;
};

/// Spanning-tree/2-tree enumeration; handles disconnected graphs by the
/// disjoint-union product formulas.
Symanzik symanzik(const FeynmanGraph& g);

/// Matrix-tree determinant route to psi; independent of the enumeration.
SymbolicLaurentPolynomial kirchhoff_psi(const FeynmanGraph& g);

struct BrownSplit {
    SymbolicLaurentPolynomial psi_split, r_psi;
    SymbolicLaurentPolynomial phi_split, r_phi;
    SymbolicLaurentPolynomial Phi_split, r_Phi;
};
BrownSplit brown_split(const FeynmanGraph& g, Subset edge_subset);

/// Environment-overridable guard used by the exhaustive subset routines.
std::size_t max_edge_guard();

/// Coefficient-evaluate a symbolic polynomial at a kinematic point.
NumericPoly evaluate(const SymbolicLaurentPolynomial& p, const KinematicAssignment& kin);

} // namespace feynpoly

#endif
