#ifndef FEYNPOLY_IO_HPP
#define FEYNPOLY_IO_HPP

#include <string>

#include "json.hpp"

#include "feynpoly/dimreg.hpp"
#include "feynpoly/seed.hpp"

namespace feynpoly {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& w) : std::runtime_error(w) {}
};

struct GraphFile {
    FeynmanGraph graph;
    KinematicAssignment kinematics;
};

/// Graph schema: {"vertices": [...], "edges": [{"id","ends",["mass"],["lambda"]}],
/// "external": {vertex: label-or-labels}, "kinematics": {"sq:<labels>": num, "m2:<id>": num}}.
GraphFile parse_graph(const nlohmann::json& j);
GraphFile load_graph(const std::string& path);

/// Mellin schema: {"torus_rank": n, "factors": [{"exponent": affine, "terms": [...]}],
/// ["numerator": {...}], "s": [affine...]} with affine = number-string or {"const","eps"}.
MellinProblem parse_mellin(const nlohmann::json& j);
MellinProblem load_mellin(const std::string& path);

nlohmann::ordered_json polytope_report(const FeynmanGraph& g);
nlohmann::ordered_json sectors_report(const FeynmanGraph& g, const KinematicAssignment& kin,
                                      FanStrategy strategy, bool* fell_back);
nlohmann::ordered_json series_report(const EpsSeries& s, std::size_t sectors, double wall_ms);
nlohmann::ordered_json domain_report(const FeynmanGraph& g, const ConvergenceDomain& dom);

std::string edge_subset_names(const FeynmanGraph& g, Subset I);

} // namespace feynpoly

#endif
