#ifndef FEYNPOLY_TEST_GRAPHS_CORPUS_HPP
#define FEYNPOLY_TEST_GRAPHS_CORPUS_HPP

// Desk-scale graph collection shared by the unit and acceptance suites.

#include <functional>
#include <vector>

#include "feynpoly/graph.hpp"

namespace corpus {

using namespace feynpoly;

inline GraphEdge edge(std::string id, std::size_t a, std::size_t b, bool massive = false) {
    return GraphEdge{std::move(id), a, b, massive, Rational(1)};
}

inline FeynmanGraph bubble() {
    return FeynmanGraph({"a", "b"}, {edge("e1", 0, 1), edge("e2", 0, 1)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph bubble_massive() {
    return FeynmanGraph({"a", "b"}, {edge("e1", 0, 1), edge("e2", 0, 1, true)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph massive_tadpole() {
    return FeynmanGraph({"a"}, {edge("e1", 0, 0, true)}, {});
}

inline FeynmanGraph massless_tadpole() {
    return FeynmanGraph({"a"}, {edge("e1", 0, 0)}, {});
}

inline FeynmanGraph sunrise_massless() {
    return FeynmanGraph({"a", "b"}, {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 0, 1)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph sunrise_massive() {
    return FeynmanGraph({"a", "b"},
                        {edge("e1", 0, 1, true), edge("e2", 0, 1, true), edge("e3", 0, 1, true)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph triangle() {
    return FeynmanGraph({"a", "b", "c"}, {edge("e1", 0, 1), edge("e2", 1, 2), edge("e3", 2, 0)},
                        {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p3"}}});
}

inline FeynmanGraph triangle_massive() {
    return FeynmanGraph({"a", "b", "c"},
                        {edge("e1", 0, 1, true), edge("e2", 1, 2), edge("e3", 2, 0)},
                        {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p3"}}});
}

inline FeynmanGraph box() {
    return FeynmanGraph(
        {"a", "b", "c", "d"},
        {edge("e1", 0, 1), edge("e2", 1, 2), edge("e3", 2, 3), edge("e4", 3, 0)},
        {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p3"}}, {"d", {"p4"}}});
}

inline FeynmanGraph double_bubble_chain() {
    return FeynmanGraph(
        {"a", "m", "b"},
        {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 1, 2), edge("e4", 1, 2)},
        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph triple_bubble_chain() {
    return FeynmanGraph({"v0", "v1", "v2", "v3"},
                        {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 1, 2), edge("e4", 1, 2),
                         edge("e5", 2, 3), edge("e6", 2, 3)},
                        {{"v0", {"p"}}, {"v3", {"q"}}});
}

inline FeynmanGraph banana4() {
    return FeynmanGraph({"a", "b"},
                        {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 0, 1), edge("e4", 0, 1)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph bubble_with_massive_tadpole() {
    return FeynmanGraph({"a", "b"}, {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 0, 0, true)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph bubble_with_massless_tadpole() {
    return FeynmanGraph({"a", "b"}, {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 0, 0)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

inline FeynmanGraph two_triangles() {
    // triangles acb and adb sharing the edge ab
    return FeynmanGraph({"a", "b", "c", "d"},
                        {edge("e1", 0, 2), edge("e2", 2, 1), edge("e3", 0, 1), edge("e4", 0, 3),
                         edge("e5", 3, 1)},
                        {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p3"}}, {"d", {"p4"}}});
}

inline FeynmanGraph dumbbell_massive() {
    // bubble on (a,b), massive bridge b-c, far bubble on (c,d) with one mass
    return FeynmanGraph({"a", "b", "c", "d"},
                        {edge("e1", 0, 1), edge("e2", 0, 1), edge("e3", 1, 2, true),
                         edge("e4", 2, 3, true), edge("e5", 2, 3)},
                        {{"a", {"p"}}, {"b", {"q"}}});
}

/// Deterministic generic-euclidean kinematics: distinct positive q_I^2, m_e^2.
inline KinematicAssignment standard_kinematics(const FeynmanGraph& g) {
    KinematicAssignment kin;
    auto labels = g.all_momentum_labels();
    std::vector<std::string> ls(labels.begin(), labels.end());
    std::size_t n = ls.size();
    int k = 0;
    for (std::uint32_t I = 1; n > 0 && I + 1 < (1u << n); ++I) {
        std::set<std::string> side;
        for (std::size_t b = 0; b < n; ++b)
            if (I & (1u << b)) side.insert(ls[b]);
        auto key = g.sq_key(side);
        if (key && !kin.sq.count(*key)) kin.sq[*key] = cplx(1.0 + 0.25 * k++, 0.0);
    }
    int j = 0;
    for (const auto& e : g.edges())
        if (e.massive) kin.m2[e.id] = cplx(1.0 + 0.125 * j++, 0.0);
    return kin;
}

/// Unit kinematics: every invariant 1.
inline KinematicAssignment unit_kinematics(const FeynmanGraph& g) {
    KinematicAssignment kin = standard_kinematics(g);
    for (auto& [k, v] : kin.sq) v = cplx(1.0, 0.0);
    for (auto& [k, v] : kin.m2) v = cplx(1.0, 0.0);
    return kin;
}

struct Entry {
    std::string name;
    FeynmanGraph graph;
};

/// The connected corpus (all s-irreducible except the flagged ones).
inline const std::vector<Entry>& all() {
    static const std::vector<Entry> entries = {
        {"bubble", bubble()},
        {"bubble_massive", bubble_massive()},
        {"massive_tadpole", massive_tadpole()},
        {"massless_tadpole", massless_tadpole()},
        {"sunrise_massless", sunrise_massless()},
        {"sunrise_massive", sunrise_massive()},
        {"banana4", banana4()},
        {"triangle", triangle()},
        {"triangle_massive", triangle_massive()},
        {"box", box()},
        {"double_bubble_chain", double_bubble_chain()},
        {"triple_bubble_chain", triple_bubble_chain()},
        {"bubble_with_massive_tadpole", bubble_with_massive_tadpole()},
        {"bubble_with_massless_tadpole", bubble_with_massless_tadpole()},
        {"two_triangles", two_triangles()},
        {"dumbbell_massive", dumbbell_massive()},
    };
    return entries;
}

} // namespace corpus

#endif
