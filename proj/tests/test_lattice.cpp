#include "doctest.h"

#include <random>

#include "feynpoly/lattice.hpp"
#include "feynpoly/tseries.hpp"

using namespace feynpoly;

TEST_CASE("rational arithmetic") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(-3, 2).floor() == -2);
    CHECK(Rational(-3, 2).ceil() == -1);
    CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("min pairing over a support") {
    std::vector<Vec> support = {{1, 0}, {0, 1}};
    CHECK(min_pairing(support, {1, 1}).value == 1);
    CHECK(min_pairing(support, {1, 0}).value == 0);
    auto mp = min_pairing({{2, 1}, {1, 2}}, {1, 0});
    CHECK(mp.value == 1);
    REQUIRE(mp.argmin.size() == 1);
    CHECK(mp.argmin[0] == Vec{1, 2});
    CHECK_THROWS(min_pairing({}, {1}));
}

TEST_CASE("hull of the bubble support") {
    // psi*Phi for the bubble: q^2(a1^2 a2 + a1 a2^2)
    auto P = LatticePolytope::hull({{2, 1}, {1, 2}});
    CHECK(P.vertices() == std::vector<Vec>{{1, 2}, {2, 1}});
    CHECK(P.dim() == 1);
    CHECK(P.in_all_ones_hyperplane());
    auto Q = P.projectivize();
    CHECK(Q.dim() == 1);
    CHECK(Q.rank() == 1);
    CHECK(Q.vertices() == std::vector<Vec>{{1}, {2}});
}

TEST_CASE("hull prunes interior and non-extreme points") {
    auto P = LatticePolytope::hull({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}});
    CHECK(P.vertices() == std::vector<Vec>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
    CHECK(P.facets().size() == 4);
    CHECK(P.full_dimensional());
}

TEST_CASE("hull of a single point") {
    auto P = LatticePolytope::hull({{3}});
    CHECK(P.vertices() == std::vector<Vec>{{3}});
    CHECK(P.dim() == 0);
    CHECK(P.facets().empty());
    REQUIRE(P.ambient().size() == 1);
    CHECK(P.ambient()[0].level == Rational(3));
}

TEST_CASE("minkowski sum identities") {
    auto seg1 = LatticePolytope::hull({{0, 0}, {1, 0}});
    auto seg2 = LatticePolytope::hull({{0, 0}, {0, 1}});
    auto square = minkowski_sum(seg1, seg2);
    CHECK(square.vertices().size() == 4);

    auto point = LatticePolytope::hull({{5, 7}});
    auto moved = minkowski_sum(square, point);
    CHECK(moved.vertices() == std::vector<Vec>{{5, 7}, {5, 8}, {6, 7}, {6, 8}});

    auto seg = LatticePolytope::hull({{1, 0}, {0, 1}});
    auto pt = LatticePolytope::hull({{1, 1}});
    auto s = minkowski_sum(seg, pt);
    CHECK(s.vertices() == std::vector<Vec>{{1, 2}, {2, 1}});
}

TEST_CASE("normal fan of a segment and a square") {
    auto seg = LatticePolytope::hull({{0}, {2}});
    Fan f = normal_fan(seg);
    REQUIRE(f.maximal_cones().size() == 2);
    CHECK(f.rays() == std::vector<Vec>{{-1}, {1}});

    auto square = LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Fan fs = normal_fan(square);
    CHECK(fs.maximal_cones().size() == 4);
    for (const auto& c : fs.maximal_cones()) CHECK(is_smooth_cone(c));
}

TEST_CASE("projective normal fan of the bubble polytope") {
    auto P = LatticePolytope::hull({{2, 1}, {1, 2}}).projectivize();
    Fan f = normal_fan(P);
    REQUIRE(f.maximal_cones().size() == 2);
    // quotient basis: [e^1] = +1, [e^2] = -1
    CHECK(f.rays() == std::vector<Vec>{{-1}, {1}});
}

TEST_CASE("vertex_for_cone") {
    auto P = LatticePolytope::hull({{2, 1}, {1, 2}}).projectivize();
    Cone plus = Cone::make({{1}}, 1);
    auto v = vertex_for_cone(P, plus);
    REQUIRE(v.has_value());
    CHECK(*v == Vec{1});

    auto square = LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto w = vertex_for_cone(square, Cone::make({{1, 0}, {0, 1}}, 2));
    REQUIRE(w.has_value());
    CHECK(*w == Vec{0, 0});

    // cone straddling two normal cones has no single minimizing vertex
    auto none = vertex_for_cone(square, Cone::make({{1, 0}, {-1, 2}}, 2));
    CHECK(!none.has_value());

    CHECK_THROWS(Cone::make({{1, 0}, {-1, 0}}, 2));
}

TEST_CASE("smooth and simplicial cones") {
    CHECK(is_smooth_cone(Cone::make({{1, 0}, {1, 1}}, 2)));
    Cone c = Cone::make({{1, 0}, {1, 2}}, 2);
    CHECK(is_simplicial_cone(c));
    CHECK(!is_smooth_cone(c));
    Cone over_square = Cone::make({{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}}, 3);
    CHECK(!is_simplicial_cone(over_square));
    CHECK(over_square.generators().size() == 4);
}

TEST_CASE("smith divisors") {
    auto d = smith_divisors({{1, 0}, {1, 2}});
    REQUIRE(d.size() == 2);
    std::int64_t prod = 1;
    for (auto x : d) prod *= x;
    CHECK((prod == 2 || prod == -2));
}

TEST_CASE("star subdivision of the P2 fan at e1+e2") {
    std::vector<Cone> cones = {
        Cone::make({{1, 0}, {0, 1}}, 2),
        Cone::make({{1, 0}, {-1, -1}}, 2),
        Cone::make({{0, 1}, {-1, -1}}, 2),
    };
    Fan p2(cones, 2, "P2", true);
    Fan blown = star_subdivision(p2, {1, 1});
    CHECK(blown.maximal_cones().size() == 4);
    for (const auto& c : blown.maximal_cones()) CHECK(is_smooth_cone(c));

    // subdividing at an existing ray of a simplicial fan changes nothing
    Fan same = star_subdivision(p2, {1, 0});
    CHECK(same.maximal_cones().size() == 3);
    CHECK(refines(same, p2).ok);
    CHECK(refines(p2, same).ok);

    CHECK_THROWS(star_subdivision(p2, {2, 2}));
}

TEST_CASE("star subdivision of the cone over a square") {
    Cone c = Cone::make({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, 3);
    Fan f({c}, 3, "cone over square", false);
    Fan g = star_subdivision(f, {0, 0, 1}); // interior vector: 4 simplicial pieces
    CHECK(g.maximal_cones().size() == 4);
    for (const auto& piece : g.maximal_cones()) CHECK(is_simplicial_cone(piece));
}

TEST_CASE("simplicial refinement keeps rays") {
    Cone c = Cone::make({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, 3);
    Fan f({c}, 3, "cone over square", false);
    Fan s = simplicial_refine(f);
    CHECK(s.maximal_cones().size() == 2);
    CHECK(s.rays() == f.rays());
    CHECK(refines(s, f).ok);

    // already simplicial: unchanged
    std::vector<Cone> cones = {Cone::make({{1, 0}, {0, 1}}, 2), Cone::make({{1, 0}, {0, -1}}, 2)};
    Fan simp(cones, 2, "half", false);
    Fan s2 = simplicial_refine(simp);
    CHECK(s2.maximal_cones().size() == 2);
}

TEST_CASE("refines against a polytope") {
    auto P = LatticePolytope::hull({{2, 1}, {1, 2}}).projectivize();
    std::vector<Cone> cones = {Cone::make({{1}}, 1), Cone::make({{-1}}, 1)};
    Fan f(cones, 1, "", true);
    CHECK(refines(f, P).ok);

    Fan incomplete({Cone::make({{1}}, 1)}, 1, "", false);
    CHECK(!refines(incomplete, P).ok);
}

TEST_CASE("normal fan of a minkowski sum refines both factors") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec> pa, pb;
        for (int i = 0; i < 5; ++i) {
            pa.push_back({std::int64_t(rng() % 7) - 3, std::int64_t(rng() % 7) - 3});
            pb.push_back({std::int64_t(rng() % 7) - 3, std::int64_t(rng() % 7) - 3});
        }
        auto A = LatticePolytope::hull(pa), B = LatticePolytope::hull(pb);
        if (!A.full_dimensional() || !B.full_dimensional()) continue;
        auto S = minkowski_sum(A, B);
        Fan fs = normal_fan(S);
        CHECK(refines(fs, A).ok);
        CHECK(refines(fs, B).ok);
        CHECK(refines(fs, normal_fan(A)).ok);
    }
}

TEST_CASE("normal fan cones tile the plane") {
    auto square = LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Fan f = normal_fan(square);
    std::mt19937 rng(3);
    for (int t = 0; t < 200; ++t) {
        Vec x = {std::int64_t(rng() % 41) - 20, std::int64_t(rng() % 41) - 20};
        int hits = 0;
        for (const auto& c : f.maximal_cones())
            if (c.contains(x)) ++hits;
        CHECK(hits >= 1);
        if (x[0] != 0 && x[1] != 0) CHECK(hits == 1);
    }
}

TEST_CASE("star subdivision preserves support") {
    std::vector<Cone> cones = {
        Cone::make({{1, 0}, {0, 1}}, 2),
        Cone::make({{1, 0}, {-1, -1}}, 2),
        Cone::make({{0, 1}, {-1, -1}}, 2),
    };
    Fan p2(cones, 2, "P2", true);
    Fan blown = star_subdivision(p2, {1, 1});
    std::mt19937 rng(11);
    for (int t = 0; t < 300; ++t) {
        Vec x = {std::int64_t(rng() % 31) - 15, std::int64_t(rng() % 31) - 15};
        bool covered = false;
        for (const auto& c : blown.maximal_cones())
            if (c.contains(x)) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("truncated series arithmetic") {
    TSeries eps = TSeries::variable({4}, 0); // eps with cap 4
    TSeries e = exp(eps);
    CHECK(e.at({0}).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.at({2}).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.at({3}).real() == doctest::Approx(1.0 / 6).epsilon(1e-14));

    TSeries l = log(TSeries::variable({4}, 0, cplx(1.0)));
    CHECK(l.at({1}).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l.at({2}).real() == doctest::Approx(-0.5).epsilon(1e-14));

    TSeries x = TSeries::variable({4}, 0, cplx(2.0));
    TSeries p = pow(x, cplx(0.5));
    // sqrt(2+eps) = sqrt(2)(1 + eps/4 - eps^2/32 + ...)
    CHECK(p.at({0}).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(p.at({1}).real() == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-14));

    TSeries r = recip(x);
    CHECK(r.at({0}).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.at({1}).real() == doctest::Approx(-0.25).epsilon(1e-14));

    // two-variable jet: coefficient extraction
    TSeries u = TSeries::variable({2, 3}, 0, cplx(1.0));
    TSeries v = TSeries::variable({2, 3}, 1);
    TSeries w = u * v + v * v;
    TSeries c1 = w.coefficient_of(1, 1);
    CHECK(c1.at({0}) == cplx(1.0));
    CHECK(c1.at({1}) == cplx(1.0));
    TSeries c2 = w.coefficient_of(1, 2);
    CHECK(c2.at({0}) == cplx(1.0));
}
