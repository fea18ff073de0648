#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdyn/degree_growth.hpp"
#include "pdyn/exceptional.hpp"

using namespace pdyn;

namespace {

Hypersurface diagonal_surface() {
    MultiPoly h(4);
    h.add_term({1, 0, 0, 1}, Rat(1));
    h.add_term({0, 1, 1, 0}, Rat(-1));
    return Hypersurface::make(2, h);
}

// {1} x P^1 as a hypersurface of (P^1)^2
Hypersurface vertical_line() {
    MultiPoly h(4);
    h.add_term({1, 0, 0, 0}, Rat(1));
    h.add_term({0, 1, 0, 0}, Rat(-1));
    return Hypersurface::make(2, h);
}

// ({0,inf} x P^1) u (P^1 x {0,inf}): invariant under any pair of power maps
Hypersurface coordinate_cross() {
    MultiPoly h(4);
    h.add_term({1, 1, 1, 1}, Rat(1));  // X1 Y1 X2 Y2
    return Hypersurface::make(2, h);
}

}  // namespace

TEST_CASE("restricted_degree: spec examples", "[degree]") {
    auto r1 = restricted_degree(diagonal_surface(), SplitMap({power_map(2), power_map(2)}));
    CHECK(r1.consistent);
    CHECK(r1.degree == 2);
    CHECK(r1.witnesses == std::vector<int>{0, 1});

    auto r2 = restricted_degree(vertical_line(), SplitMap({power_map(2), power_map(3)}));
    CHECK(r2.consistent);
    CHECK(r2.degree == 3);
    CHECK(r2.witnesses == std::vector<int>{0});

    CHECK_THROWS_AS(restricted_degree(diagonal_surface(), SplitMap({power_map(2), power_map(3)})),
                    NotInvariant);
}

TEST_CASE("equal_degree_check: spec examples", "[degree]") {
    auto v1 = equal_degree_check(diagonal_surface(), SplitMap({power_map(2), power_map(2)}));
    CHECK(v1.equal);
    CHECK(v1.degree == 2);

    // a dominant-everywhere forward-invariant hypersurface with unequal
    // degrees certifies the contradiction
    auto v2 = equal_degree_check(coordinate_cross(), SplitMap({power_map(2), power_map(3)}));
    CHECK(!v2.equal);
    CHECK(v2.witness == std::pair<int, int>{0, 1});

    CHECK_THROWS_AS(equal_degree_check(vertical_line(), SplitMap({power_map(2), power_map(3)})),
                    PreconditionFailed);
}

TEST_CASE("degree_growth_profile: spec examples", "[degree]") {
    auto p1 = degree_growth_profile(diagonal_surface(), SplitMap({power_map(2), power_map(2)}), 4);
    REQUIRE(p1.entries.size() == 4);
    CHECK(p1.entries[0] == std::pair<long, Int>{1, 2});
    CHECK(p1.entries[1] == std::pair<long, Int>{2, 4});
    CHECK(p1.entries[2] == std::pair<long, Int>{3, 8});
    CHECK(p1.entries[3] == std::pair<long, Int>{4, 16});

    auto p2 = degree_growth_profile(vertical_line(), SplitMap({power_map(2), power_map(3)}), 3);
    REQUIRE(p2.entries.size() == 3);
    CHECK(p2.entries[2] == std::pair<long, Int>{3, 27});

    auto p0 = degree_growth_profile(diagonal_surface(), SplitMap({power_map(2), power_map(2)}), 0);
    REQUIRE(p0.entries.size() == 1);
    CHECK(p0.entries[0] == std::pair<long, Int>{0, 1});
}

TEST_CASE("restricted degree is multiplicative under iteration", "[degree][property]") {
    SplitMap f({power_map(2), power_map(2)});
    Int base = restricted_degree(diagonal_surface(), f).degree;
    Int dm = 1;
    for (unsigned m = 1; m <= 4; ++m) {
        dm *= base;
        CHECK(restricted_degree(diagonal_surface(), f.iterated(m)).degree == dm);
    }
}

TEST_CASE("block products multiply restricted degrees", "[degree][property]") {
    // V = {1} x P^1 under (x^2, x^3): deg(f|_V) = 3 = deg of the block map
    // on the free factor; the product against a transverse factor in the
    // second coordinate multiplies the other way.
    auto vert = restricted_degree(vertical_line(), SplitMap({power_map(2), power_map(3)}));
    CHECK(vert.degree == 3);
    MultiPoly h(4);  // {1} x {+-1}-style product: (X1 - Y1) has md (1,0); add second block
    h.add_term({1, 0, 1, 1}, Rat(1));  // (X1 - Y1) * X2 Y2 expanded:
    h.add_term({0, 1, 1, 1}, Rat(-1));
    auto cross = restricted_degree(Hypersurface::make(2, h), SplitMap({power_map(2), power_map(3)}));
    // witnesses: j=0 gives c2 = 3, j=1 gives c1 = 2: inconsistent input is flagged
    CHECK(!cross.consistent);
}

TEST_CASE("equal_degree_check never passes a non-constant degree vector", "[degree][property]") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> d(2, 5);
    for (int t = 0; t < 50; ++t) {
        std::vector<long> degs{d(rng), d(rng), d(rng)};
        bool constant = degs[0] == degs[1] && degs[1] == degs[2];
        // pure-route check on the arithmetic core
        auto routes = pushforward_routes({1, 1, 1}, degs);
        CHECK(routes.consistent == constant);
    }
}

TEST_CASE("route agreement matches brute force on random instances", "[degree][oracle]") {
    std::mt19937 rng(161803);
    std::uniform_int_distribution<int> nd(2, 4), deg(1, 4), md(0, 4);
    for (int t = 0; t < 200; ++t) {
        int n = nd(rng);
        std::vector<long> a(n), c(n);
        bool any = false;
        for (int i = 0; i < n; ++i) {
            a[i] = md(rng);
            c[i] = deg(rng);
            any = any || a[i] > 0;
        }
        if (!any) a[0] = 1;
        auto routes = pushforward_routes(a, c);
        // brute force: all products over complements of positive entries
        std::set<Int> values;
        for (int j = 0; j < n; ++j) {
            if (a[j] <= 0) continue;
            Int p = 1;
            for (int i = 0; i < n; ++i)
                if (i != j) p *= c[i];
            values.insert(p);
        }
        CHECK(routes.consistent == (values.size() <= 1));
        if (routes.consistent && !values.empty()) CHECK(routes.degree == *values.begin());
    }
}

TEST_CASE("lemma21 replay reproduces the contradiction pattern", "[replay]") {
    // n = 2, k = 1, V of bidegree (2,3), c = (4,1): routes must disagree
    IntersectionTable t;
    t.n = 2;
    t.k = 1;
    t.degrees = {4, 1};
    t.dim_v = 1;
    t.d2 = 1;       // pi_2(V) is dominant since a_1 = 2 > 0
    t.d1_prime = 1; // V' = V projects onto the first axis since a_2 = 3 > 0
    t.values[{0}] = 3;  // V . beta_1 = a_2
    t.values[{1}] = 2;  // V . beta_2 = a_1
    auto rep = lemma21_replay(t, 3);
    CHECK(!rep.all_agree);
    CHECK(rep.rows[0].route1 == Rat(4));
    CHECK(rep.rows[0].route2 == Rat(1));
    CHECK(rep.rows[2].route1 == Rat(64));

    // all degrees 1: both routes collapse to 1 and agree
    IntersectionTable t2 = t;
    t2.degrees = {1, 1};
    CHECK(lemma21_replay(t2, 3).all_agree);

    // missing data surfaces as a vanishing denominator
    IntersectionTable t3 = t;
    t3.values.clear();
    t3.values[{0}] = 0;
    t3.values[{1}] = 0;
    CHECK_THROWS_AS(lemma21_replay(t3, 1), PreconditionFailed);
}

TEST_CASE("block products over three factors multiply degrees", "[degree][property]") {
    // V = {1} x (P^1)^2 in (P^1)^3: deg(f|_V) = c2 * c3, the degree of the
    // free block, matching the factor decomposition V1 x full space.
    MultiPoly h(6);
    h.add_term({1, 0, 0, 0, 0, 0}, Rat(1));
    h.add_term({0, 1, 0, 0, 0, 0}, Rat(-1));
    Hypersurface v = Hypersurface::make(3, h);
    for (long c2 : {2L, 3L})
        for (long c3 : {2L, 5L}) {
            SplitMap f({power_map(2), power_map(c2), power_map(c3)});
            auto rd = restricted_degree(v, f);
            REQUIRE(rd.consistent);
            CHECK(rd.degree == c2 * c3);
        }
}
