#include "doctest.h"

#include <cstdlib>

#include "feynpoly/graph.hpp"
#include "graphs_corpus.hpp"

using namespace feynpoly;

TEST_CASE("spanning trees of small graphs") {
    auto g = corpus::bubble();
    auto trees = g.spanning_trees();
    CHECK(trees == std::vector<Subset>{0b01, 0b10});

    auto tri = corpus::triangle();
    CHECK(tri.spanning_trees().size() == 3);

    auto loop = corpus::massive_tadpole();
    CHECK(loop.spanning_trees() == std::vector<Subset>{0});

    auto disconnected = FeynmanGraph({"a", "b"}, {}, {});
    CHECK_THROWS(disconnected.spanning_trees());
}

TEST_CASE("spanning 2-trees carry the bipartition") {
    auto g = corpus::bubble();
    auto tts = g.spanning_2trees();
    REQUIRE(tts.size() == 1);
    CHECK(tts[0].edges == 0);
    CHECK(tts[0].side1.size() == 1);

    CHECK(corpus::massive_tadpole().spanning_2trees().empty());
    CHECK(corpus::triangle().spanning_2trees().size() == 3);
}

TEST_CASE("symanzik polynomials of the bubble") {
    auto s = symanzik(corpus::bubble());
    CHECK(s.psi.terms().size() == 2); // a1 + a2
    CHECK(s.phi.terms().size() == 1); // q^2 a1 a2
    CHECK(s.phi.terms().begin()->first == Vec{1, 1});
    std::int64_t d = 0;
    CHECK(s.psi.homogeneous(&d));
    CHECK(d == 1);
    CHECK(s.Phi.homogeneous(&d));
    CHECK(d == 2);
}

TEST_CASE("symanzik of the massive self-loop") {
    auto s = symanzik(corpus::massive_tadpole());
    CHECK(s.psi.terms().size() == 1);
    CHECK(s.psi.terms().begin()->first == Vec{1});
    CHECK(s.phi.zero());
    CHECK(s.Phi.terms().size() == 1);
    CHECK(s.Phi.terms().begin()->first == Vec{2}); // m^2 a^2
}

TEST_CASE("symanzik of the triangle") {
    auto s = symanzik(corpus::triangle());
    CHECK(s.psi.terms().size() == 3);
    CHECK(s.phi.terms().size() == 3); // sum_cyc q_i^2 a_j a_k
    for (const auto& [e, c] : s.phi.terms()) {
        std::int64_t sum = 0;
        for (auto x : e) sum += x;
        CHECK(sum == 2);
        REQUIRE(c.size() == 1);
        CHECK(c.begin()->first.kind == KinSymbol::Kind::Sq);
    }
}

TEST_CASE("kirchhoff determinant equals tree enumeration") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        auto s = symanzik(entry.graph);
        auto k = kirchhoff_psi(entry.graph);
        CHECK((s.psi - k).zero());
    }
}

TEST_CASE("tree graph psi is 1") {
    FeynmanGraph path({"a", "b", "c"},
                      {{"e1", 0, 1, false, Rational(1)}, {"e2", 1, 2, false, Rational(1)}},
                      {{"a", {"p"}}, {"c", {"q"}}});
    auto k = kirchhoff_psi(path);
    REQUIRE(k.terms().size() == 1);
    CHECK(k.terms().begin()->first == Vec{0, 0});
}

TEST_CASE("classify subgraphs of the bubble") {
    auto g = corpus::bubble();
    auto c1 = g.classify_subgraph(0b01);
    CHECK(c1.h1 == 0);
    CHECK(c1.mass_momentum_spanning);
    CHECK(c1.s_irreducible);
    auto c2 = g.classify_subgraph(0b11);
    CHECK(c2.h1 == 1);
    CHECK(c2.motic);
}

TEST_CASE("self-loop component without kinematics is not s-irreducible") {
    auto g = corpus::bubble_with_massless_tadpole();
    auto c = g.classify_subgraph(0b100); // the self-loop
    CHECK(!c.s_irreducible);
    CHECK(!g.s_irreducible());
    CHECK(corpus::bubble().s_irreducible());
    CHECK(corpus::bubble_with_massive_tadpole().s_irreducible());
}

TEST_CASE("s function values") {
    auto g = corpus::bubble();
    auto z = g.s_function();
    CHECK(z(0b01) == 1);
    CHECK(z(0b10) == 1);
    CHECK(z(0b11) == 3);

    CHECK(corpus::massive_tadpole().s_function()(1) == 3);
    CHECK(corpus::massless_tadpole().s_function()(1) == 2);
}

TEST_CASE("s function restriction and contraction match derived graphs") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        const auto& g = entry.graph;
        auto z = g.s_function();
        for (Subset I = 1; I < g.full_edge_set(); ++I) {
            auto zr = z.restrict_to(I);
            auto sub = g.subgraph_with_kinematics(I);
            // the subgraph may be disconnected; compare value-wise on its table
            std::vector<std::size_t> pos;
            for (std::size_t b = 0; b < g.num_edges(); ++b)
                if (I & (1u << b)) pos.push_back(b);
            for (Subset J = 0; J < (Subset(1) << pos.size()); ++J) {
                Subset lift = 0;
                for (std::size_t b = 0; b < pos.size(); ++b)
                    if (J & (1u << b)) lift |= 1u << pos[b];
                CHECK(zr(J) == sub.s_value(J));
            }
            auto zc = z.contract_by(I);
            auto quo = g.quotient(I);
            Subset rest = g.full_edge_set() & ~I;
            std::vector<std::size_t> qpos;
            for (std::size_t b = 0; b < g.num_edges(); ++b)
                if (rest & (1u << b)) qpos.push_back(b);
            for (Subset J = 0; J < (Subset(1) << qpos.size()); ++J)
                CHECK(zc(J) == quo.s_value(J));
        }
    }
}

TEST_CASE("quotient graphs") {
    auto g = corpus::bubble();
    auto q = g.quotient(0b01); // contract one edge: self-loop, scaleless
    CHECK(q.num_vertices() == 1);
    CHECK(q.num_edges() == 1);
    CHECK(!q.has_external());

    auto sunrise = corpus::sunrise_massless();
    auto q2 = sunrise.quotient(0b011);
    CHECK(q2.num_vertices() == 1);
    CHECK(q2.num_edges() == 1);
    CHECK(q2.h1(1) == 1);
}

TEST_CASE("brown split identities and degree bounds") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        const auto& g = entry.graph;
        auto s = symanzik(g);
        for (Subset I = 1; I < g.full_edge_set(); ++I) {
            auto bs = brown_split(g, I);
            CHECK((s.psi - bs.psi_split - bs.r_psi).zero());
            CHECK((s.phi - bs.phi_split - bs.r_phi).zero());
            CHECK((s.Phi - bs.Phi_split - bs.r_Phi).zero());
            std::uint32_t mask = I;
            auto cls = g.classify_subgraph(I);
            if (!bs.psi_split.zero())
                CHECK(bs.psi_split.degree_in(mask) == std::int64_t(cls.h1));
            if (!bs.r_psi.zero())
                CHECK(bs.r_psi.min_degree_in(mask) > std::int64_t(cls.h1));
            if (!bs.Phi_split.zero())
                CHECK(bs.Phi_split.degree_in(mask) ==
                      std::int64_t(cls.h1) + (cls.mass_momentum_spanning ? 1 : 0));
            if (!bs.r_Phi.zero())
                CHECK(bs.r_Phi.min_degree_in(mask) >
                      std::int64_t(cls.h1) + (cls.mass_momentum_spanning ? 1 : 0));
            // explicit R^Phi assembly from the factorization
            SymbolicLaurentPolynomial mass_in(g.num_edges()), mass_all(g.num_edges());
            for (std::size_t b = 0; b < g.num_edges(); ++b) {
                if (!g.edges()[b].massive) continue;
                Vec e(g.num_edges(), 0);
                e[b] = 1;
                mass_all.add_term(e, KinSymbol::m2(g.edges()[b].id), Rational(1));
                if (I & (1u << b)) mass_in.add_term(e, KinSymbol::m2(g.edges()[b].id), Rational(1));
            }
            SymbolicLaurentPolynomial expect =
                cls.mass_momentum_spanning
                    ? bs.r_phi + bs.r_psi * mass_all
                    : bs.r_phi + bs.psi_split * mass_in + bs.r_psi * mass_all;
            CHECK((bs.r_Phi - expect).zero());
        }
    }
}

TEST_CASE("brown split vanishing rest term for 1VI unions with full tree intersection") {
    // two bubbles joined at a vertex: each bubble is a union of 1VI components
    auto g = corpus::double_bubble_chain();
    auto bs = brown_split(g, 0b0011); // first bubble
    CHECK(bs.r_psi.zero());
}

TEST_CASE("feynman polytope equals the newton polytope of psi*Phi") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        const auto& g = entry.graph;
        auto s = symanzik(g);
        if (s.Phi.zero()) continue; // scaleless: no parametric oracle
        auto P = g.feynman_polytope();
        auto N = newton_polytope(s.psi * s.Phi);
        CHECK(P.vertices() == N.vertices());
    }
}

TEST_CASE("bubble and tadpole polytopes") {
    auto P = corpus::bubble().feynman_polytope();
    CHECK(P.vertices() == std::vector<Vec>{{1, 2}, {2, 1}});
    auto T = corpus::massive_tadpole().feynman_polytope();
    CHECK(T.vertices() == std::vector<Vec>{{3}});
    auto tri = corpus::triangle().feynman_polytope();
    CHECK(tri.vertices().size() == 6);
}

TEST_CASE("polytope dimension detects s-irreducibility") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        const auto& g = entry.graph;
        if (symanzik(g).Phi.zero()) continue; // no generic kinematics exist at all
        auto P = g.feynman_polytope();
        CHECK((P.dim() == g.num_edges() - 1) == g.s_irreducible());
    }
}

TEST_CASE("motic subgraphs are closed under overlapping unions") {
    for (const auto& entry : corpus::all()) {
        CAPTURE(entry.name);
        const auto& g = entry.graph;
        std::vector<Subset> motic;
        for (Subset I = 1; I <= g.full_edge_set(); ++I)
            if (g.classify_subgraph(I).motic) motic.push_back(I);
        for (Subset a : motic)
            for (Subset b : motic)
                if (a & b) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CHECK(g.classify_subgraph(a | b).motic);
                }
    }
}

TEST_CASE("edge guard is environment-overridable") {
    std::vector<GraphEdge> edges;
    for (int i = 0; i < 5; ++i)
        edges.push_back({"e" + std::to_string(i), 0, 1, false, Rational(1)});
    setenv("FEYNPOLY_MAX_EDGES", "4", 1);
    CHECK_THROWS_AS(FeynmanGraph({"a", "b"}, edges, {}), domain_error_code);
    setenv("FEYNPOLY_MAX_EDGES", "8", 1);
    CHECK_NOTHROW(FeynmanGraph({"a", "b"}, edges, {}));
    unsetenv("FEYNPOLY_MAX_EDGES");
}

TEST_CASE("debug dumps are line oriented") {
    auto g = corpus::bubble();
    auto P = g.feynman_polytope();
    CHECK(P.dump().find("vertex (1,2)") != std::string::npos);
    Fan h = hepp_fan(2);
    CHECK(h.dump().find("(1)") != std::string::npos);
    CHECK(h.dump().find("(-1)") != std::string::npos);
}

TEST_CASE("generic euclidean check") {
    KinematicAssignment kin;
    kin.sq["p"] = cplx(1.0, 0.0);
    CHECK(kin.generic_euclidean());
    kin.m2["e1"] = cplx(-0.5, 0.0);
    CHECK(kin.generic_euclidean()); // 1 - 0.5 > 0
    kin.m2["e2"] = cplx(-2.0, 0.0);
    CHECK(!kin.generic_euclidean());
    KinematicAssignment bad;
    bad.sq["p"] = cplx(-1.0, 0.0);
    CHECK(!bad.generic_euclidean());
}

TEST_CASE("evaluation under kinematics") {
    auto g = corpus::bubble();
    auto s = symanzik(g);
    KinematicAssignment kin;
    kin.sq["p"] = cplx(2.0, 0.0);
    auto phi = evaluate(s.phi, kin);
    REQUIRE(phi.terms.size() == 1);
    CHECK(phi.terms.begin()->second.real() == doctest::Approx(2.0));
    KinematicAssignment missing;
    CHECK_THROWS(evaluate(s.phi, missing));
}
