#include "doctest.h"

#include "feynpoly/supermodular.hpp"
#include "oracles.hpp"

using namespace feynpoly;

namespace {

// bubble s_G: z({1})=z({2})=1, z(E)=3
SupermodularFunction bubble_s() {
    return SupermodularFunction({"e1", "e2"}, {0, 1, 1, 3});
}

} // namespace

TEST_CASE("constructor rejects non-supermodular tables") {
    CHECK_THROWS(SupermodularFunction({"a", "b"}, {0, 2, 2, 3}));
    CHECK_THROWS(SupermodularFunction({"a"}, {1, 0}));
}

TEST_CASE("base polytope of the bubble function") {
    auto P = bubble_s().base_polytope();
    CHECK(P.vertices() == std::vector<Vec>{{1, 2}, {2, 1}});
    CHECK(P.in_all_ones_hyperplane());
}

TEST_CASE("base polytope of the zero function is the origin") {
    SupermodularFunction z({"a", "b", "c"}, std::vector<std::int64_t>(8, 0));
    auto P = z.base_polytope();
    CHECK(P.vertices() == std::vector<Vec>{{0, 0, 0}});
}

TEST_CASE("counting function of all nonempty subsets gives the permutahedron type") {
    // z(I) = #{nonempty J subseteq I}
    std::vector<std::int64_t> t(8);
    for (Subset I = 0; I < 8; ++I) t[I] = (std::int64_t(1) << __builtin_popcount(I)) - 1;
    SupermodularFunction z({"a", "b", "c"}, t);
    auto P = z.base_polytope();
    CHECK(P.vertices().size() == 6);
}

TEST_CASE("base polytope matches the inequality-system oracle") {
    auto check = [](const SupermodularFunction& z) {
        auto P = z.base_polytope();
        auto expect = oracles::base_polytope_vertices(
            z.ground_size(), [&](std::uint32_t I) { return z(Subset(I)); });
        std::set<Vec> got(P.vertices().begin(), P.vertices().end());
        CHECK(got == expect);
    };
    check(bubble_s());
    // triangle-like and sunrise-like tables
    check(SupermodularFunction({"a", "b", "c"}, {0, 0, 0, 1, 0, 1, 1, 3}));
    check(SupermodularFunction({"a", "b", "c"}, {0, 1, 1, 3, 1, 3, 3, 5}));
    // a 4-element supermodular function: z = (#I)^2
    std::vector<std::int64_t> t(16);
    for (Subset I = 0; I < 16; ++I) t[I] = std::int64_t(__builtin_popcount(I)) * __builtin_popcount(I);
    check(SupermodularFunction({"a", "b", "c", "d"}, t));
}

TEST_CASE("restrict and contract") {
    auto z = bubble_s();
    auto zr = z.restrict_to(0b01);
    CHECK(zr(1) == 1);
    auto zc = z.contract_by(0b01);
    CHECK(zc(1) == 3 - 1); // self-loop quotient: 2h1 + mm = 2
    auto id = z.contract_by(0);
    CHECK(id(0b11) == z(0b11));
    CHECK(id(0b01) == z(0b01));
}

TEST_CASE("irreducible decomposition") {
    SupermodularFunction additive({"a", "b"}, {0, 1, 2, 3});
    CHECK(additive.irreducible_decomposition() == std::vector<Subset>{0b01, 0b10});
    CHECK(!additive.irreducible());

    CHECK(bubble_s().irreducible());
    CHECK(bubble_s().irreducible_decomposition() == std::vector<Subset>{0b11});

    SupermodularFunction two_parts({"a", "b"}, {0, 1, 1, 2});
    CHECK(two_parts.irreducible_decomposition() == std::vector<Subset>{0b01, 0b10});
}

TEST_CASE("facet subsets") {
    CHECK(bubble_s().facet_subsets() == std::vector<Subset>{0b01, 0b10});
    SupermodularFunction single({"a"}, {0, 2});
    CHECK(single.facet_subsets().empty());
    SupermodularFunction additive({"a", "b"}, {0, 1, 2, 3});
    CHECK_THROWS(additive.facet_subsets());

    // triangle s_G: singles 0, pairs 1, E 3: all six proper subsets are facets
    SupermodularFunction tri({"a", "b", "c"}, {0, 0, 0, 1, 0, 1, 1, 3});
    CHECK(tri.facet_subsets().size() == 6);
}

TEST_CASE("facet subsets match the geometric facets") {
    SupermodularFunction tri({"a", "b", "c"}, {0, 0, 0, 1, 0, 1, 1, 3});
    auto P = tri.base_polytope();
    CHECK(P.facets().size() == tri.facet_subsets().size());
}

TEST_CASE("supermodular faces factor through restriction and contraction") {
    // face minimized by e^I equals P(z|_I) x P(z/_I) on the vertex level
    auto check = [](const SupermodularFunction& z) {
        Subset full = z.full_set();
        for (Subset I = 1; I < full; ++I) {
            auto P = z.base_polytope();
            Vec u = indicator(I, z.ground_size());
            auto mp = min_pairing(P.vertices(), u);
            std::set<Vec> face(mp.argmin.begin(), mp.argmin.end());

            auto PR = z.restrict_to(I).base_polytope();
            auto PC = z.contract_by(I).base_polytope();
            std::set<Vec> prod;
            std::vector<std::size_t> ipos, cpos;
            for (std::size_t b = 0; b < z.ground_size(); ++b)
                (I & (1u << b) ? ipos : cpos).push_back(b);
            for (const auto& a : PR.vertices())
                for (const auto& c : PC.vertices()) {
                    Vec v(z.ground_size());
                    for (std::size_t b = 0; b < ipos.size(); ++b) v[ipos[b]] = a[b];
                    for (std::size_t b = 0; b < cpos.size(); ++b) v[cpos[b]] = c[b];
                    prod.insert(std::move(v));
                }
            CHECK(face == prod);
        }
    };
    check(bubble_s());
    check(SupermodularFunction({"a", "b", "c"}, {0, 0, 0, 1, 0, 1, 1, 3}));
    check(SupermodularFunction({"a", "b", "c"}, {0, 1, 1, 3, 1, 3, 3, 5}));
}

TEST_CASE("building set of the bubble") {
    auto bs = bubble_s().building_set();
    CHECK(bs == std::vector<Subset>{0b01, 0b10, 0b11});
}

TEST_CASE("building set of an additive function stays small") {
    SupermodularFunction additive({"a", "b"}, {0, 1, 2, 3});
    CHECK(additive.building_set() == std::vector<Subset>{0b01, 0b10});
}

TEST_CASE("nested set fan for singleton building set is the projective fan") {
    auto g = make_building_set(3, {});
    Fan f = nested_set_fan(g);
    CHECK(f.maximal_cones().size() == 3);
    for (const auto& c : f.maximal_cones()) {
        CHECK(is_smooth_cone(c));
        CHECK(c.generators().size() == 2);
    }
}

TEST_CASE("nested set fan for the full building set matches flags") {
    std::vector<Subset> all;
    for (Subset s = 1; s < 7; ++s) all.push_back(s);
    auto g = make_building_set(3, all);
    Fan f = nested_set_fan(g);
    CHECK(f.maximal_cones().size() == 6);
    Fan h = hepp_fan(3);
    CHECK(h.maximal_cones().size() == 6);
    CHECK(refines(f, h).ok);
    CHECK(refines(h, f).ok);
}

TEST_CASE("bigger building sets refine smaller ones") {
    auto g1 = make_building_set(3, {});
    auto g2 = make_building_set(3, {0b011});
    std::vector<Subset> all;
    for (Subset s = 1; s < 7; ++s) all.push_back(s);
    auto g3 = make_building_set(3, all);
    Fan f1 = nested_set_fan(g1), f2 = nested_set_fan(g2), f3 = nested_set_fan(g3);
    CHECK(f2.maximal_cones().size() == 4); // blow-up of one point of P2
    CHECK(refines(f2, f1).ok);
    CHECK(refines(f3, f2).ok);
    CHECK(refines(f3, f1).ok);
    CHECK(!refines(f1, f2).ok);
}

TEST_CASE("hepp fan counts and smoothness") {
    CHECK(hepp_fan(1).maximal_cones().size() == 1);
    CHECK(hepp_fan(2).maximal_cones().size() == 2);
    Fan h3 = hepp_fan(3);
    CHECK(h3.maximal_cones().size() == 6);
    for (const auto& c : h3.maximal_cones()) CHECK(is_smooth_cone(c));
    Fan h4 = hepp_fan(4);
    CHECK(h4.maximal_cones().size() == 24);
    for (const auto& c : h4.maximal_cones()) CHECK(is_smooth_cone(c));
}

TEST_CASE("hepp fan refines the bubble polytope") {
    auto P = bubble_s().base_polytope().projectivize();
    CHECK(refines(hepp_fan(2), P).ok);
}

TEST_CASE("nested set fan of the building set of z refines the normal fan") {
    auto check = [](const SupermodularFunction& z) {
        REQUIRE(z.irreducible());
        std::vector<Subset> reduced;
        for (Subset I : z.building_set())
            if (I != z.full_set()) reduced.push_back(I);
        Fan f = nested_set_fan(make_building_set(z.ground_size(), reduced));
        auto P = z.base_polytope().projectivize();
        CHECK(refines(f, P).ok);
        for (const auto& c : f.maximal_cones()) CHECK(is_smooth_cone(c));
    };
    check(bubble_s());
    check(SupermodularFunction({"a", "b", "c"}, {0, 0, 0, 1, 0, 1, 1, 3}));
    check(SupermodularFunction({"a", "b", "c"}, {0, 1, 1, 3, 1, 3, 3, 5}));
}

TEST_CASE("matroid sanity: cycle matroid polytope edges are root directions") {
    // z = r^#(I) = r(E) - r(E \ I) for the triangle graph's cycle matroid
    auto r = [](Subset I) -> std::int64_t { // rank of subset of triangle edges
        int k = __builtin_popcount(I);
        return k >= 2 ? 2 : k;
    };
    std::vector<std::int64_t> t(8);
    for (Subset I = 0; I < 8; ++I) t[I] = 2 - r(7 & ~I);
    SupermodularFunction z({"a", "b", "c"}, t);
    auto P = z.base_polytope();
    // every edge of P(z) is parallel to some e_i - e_j
    const auto& V = P.vertices();
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j) {
            Vec d = sub(V[i], V[j]);
            // only check actual edges: for a matroid polytope all vertex pairs
            // at hamming distance 2 with +-1 entries are edges
            int nz = 0;
            bool pm1 = true;
            for (auto x : d) {
                if (x != 0) ++nz;
                if (x != 0 && x != 1 && x != -1) pm1 = false;
            }
            if (nz > 0 && nz <= 2) CHECK((pm1 && nz == 2));
        }
}
