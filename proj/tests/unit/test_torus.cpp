#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "pdyn/torus.hpp"

using namespace pdyn;

namespace {

// independent totient oracle: count units
Int phi_oracle(long k) {
    long c = 0;
    for (long i = 1; i <= k; ++i)
        if (std::gcd(i, k) == 1) ++c;
    return Int(c);
}

std::set<Int> brutal_orders(long d, long B) {
    // phi(k) >= sqrt(k/2), so k <= 2 B^2 bounds the search exactly
    std::set<Int> out;
    Int rd = radical(Int(d));
    for (long k = 1; k <= 2 * B * B + 2; ++k) {
        if (phi_oracle(k) > B) continue;
        if (radical(Int(k)) == 0) continue;
        Int rk = radical(Int(k));
        if (rd % rk != 0) continue;
        out.insert(Int(k));
    }
    return out;
}

TorusTranslate unit_translate(std::vector<long> exps, long eps_order) {
    return TorusTranslate(MonomialCharacter(std::move(exps)), Int(eps_order));
}

}  // namespace

TEST_CASE("euler_phi: spec examples and oracle", "[torus]") {
    CHECK(euler_phi(Int(1)) == 1);
    CHECK(euler_phi(Int(8)) == 4);
    CHECK(euler_phi(Int(12)) == 4);
    for (long k = 1; k <= 60; ++k) CHECK(euler_phi(Int(k)) == phi_oracle(k));
    CHECK_THROWS(euler_phi(Int(0)));
}

TEST_CASE("bounded_degree_torsion_orders: spec examples", "[torus]") {
    CHECK(bounded_degree_torsion_orders(2, Int(2)).orders == std::set<Int>{1, 2, 4});
    CHECK(bounded_degree_torsion_orders(2, Int(4)).orders == std::set<Int>{1, 2, 4, 8});
    CHECK(bounded_degree_torsion_orders(6, Int(4)).orders ==
          std::set<Int>{1, 2, 3, 4, 6, 8, 12});
}

TEST_CASE("bounded_degree_torsion_orders equals brute force for d,B <= 12", "[torus][oracle]") {
    for (long d = 2; d <= 12; ++d)
        for (long B = 1; B <= 12; ++B)
            CHECK(bounded_degree_torsion_orders(d, Int(B)).orders == brutal_orders(d, B));
}

TEST_CASE("s1_bound: spec examples", "[torus]") {
    CHECK(s1_bound(2, Int(2)) == 2);
    CHECK(s1_bound(2, Int(4)) == 3);
    CHECK(s1_bound(3, Int(2)) == 1);
    CHECK(s1_bound(6, Int(4)) == 3);
}

TEST_CASE("s1_bound monotonicity and the d vs d^2 relation", "[torus][property]") {
    for (long d : {2L, 3L, 6L, 10L}) {
        long prev = 0;
        for (long B = 1; B <= 16; ++B) {
            long cur = s1_bound(d, Int(B));
            CHECK(cur >= prev);
            prev = cur;
        }
    }
    // min{m : k | 4^m} = ceil(min{m : k | 2^m} / 2) for k = 2^e
    for (unsigned e = 0; e <= 10; ++e) {
        Int k = int_pow(Int(2), e);
        CHECK(power_absorption_index(k, 4) == (power_absorption_index(k, 2) + 1) / 2);
    }
}

TEST_CASE("translate_preimage_orders: spec examples", "[torus]") {
    auto lv = translate_preimage_orders(unit_translate({1, 1}, 1), 2, 2);
    REQUIRE(lv.size() == 3);
    CHECK(lv[0] == std::set<Int>{1});
    CHECK(lv[1] == std::set<Int>{1, 2});
    CHECK(lv[2] == std::set<Int>{1, 2, 4});

    // epsilon of order 3 needs 3 | d - 1, e.g. d = 4
    auto lw = translate_preimage_orders(unit_translate({2, -1}, 3), 4, 1);
    REQUIRE(lw.size() == 2);
    CHECK(lw[0] == std::set<Int>{3});
    CHECK(lw[1] == std::set<Int>{3, 6, 12});

    auto l0 = translate_preimage_orders(unit_translate({1}, 5), 6, 0);
    REQUIRE(l0.size() == 1);
    CHECK(l0[0] == std::set<Int>{5});

    // the constraint ord(epsilon) | d - 1 is a hard error
    CHECK_THROWS_AS(translate_preimage_orders(unit_translate({1}, 3), 2, 1), PreconditionFailed);
}

TEST_CASE("level sets are nested under divisibility closure", "[torus][property]") {
    for (long d : {2L, 3L, 6L}) {
        auto lv = translate_preimage_orders(unit_translate({1, 0, 2}, 1), d, 5);
        for (std::size_t s = 0; s + 1 < lv.size(); ++s)
            for (const Int& k : lv[s]) CHECK(lv[s + 1].count(k) == 1);
    }
}

TEST_CASE("torus_stabilization_level: spec examples and cross-check", "[torus]") {
    CHECK(torus_stabilization_level(unit_translate({1, 1}, 1), 2, Int(2)) == 2);
    CHECK(torus_stabilization_level(unit_translate({1, 1}, 1), 3, Int(2)) == 1);
    CHECK(torus_stabilization_level(unit_translate({1, 1}, 1), 2, Int(1)) == 1);
    // stabilization equals s1_bound for epsilon = 1 across a small sweep
    for (long d : {2L, 3L, 5L, 6L})
        for (long B : {1L, 2L, 4L, 8L})
            CHECK(torus_stabilization_level(unit_translate({1}, 1), d, Int(B)) == s1_bound(d, Int(B)));
}

TEST_CASE("type validation", "[torus]") {
    CHECK_THROWS_AS(MonomialCharacter({0, 0, 0}), InvariantViolation);
    CHECK_THROWS_AS(TorusTranslate(MonomialCharacter({1}), Int(0)), InvariantViolation);
    CHECK(MonomialCharacter({4, -6, 0}).support_gcd == 2);
    CHECK(extension_degree_bound(2, 2) == 64);
    CHECK(extension_degree_bound(2, 1) == 4);
}

TEST_CASE("degenerate s1 = 0 when the order set collapses", "[torus]") {
    // d = 3, B = 1: phi(3) = 2 > 1, so the only admissible order is 1
    CHECK(bounded_degree_torsion_orders(3, Int(1)).orders == std::set<Int>{1});
    CHECK(s1_bound(3, Int(1)) == 0);
    CHECK(torus_stabilization_level(TorusTranslate(MonomialCharacter({1}), Int(1)), 3, Int(1)) == 0);
}
