#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "pdyn/intfactor.hpp"
#include "pdyn/matrix.hpp"
#include "pdyn/multipoly.hpp"
#include "pdyn/rootfind.hpp"
#include "pdyn/unipoly.hpp"

using namespace pdyn;

namespace {

UniPoly up(std::initializer_list<long> coeffs) {
    std::vector<Rat> v;
    for (long c : coeffs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

// Exhaustive rational-root oracle: tries every p/q in lowest terms up to
// the stated bound, with exact integer evaluation.
std::set<Rat> roots_by_exhaustion(const UniPoly& p) {
    std::vector<Int> c = p.primitive_int();
    Int maxc = 0;
    for (auto& x : c) maxc = std::max(maxc, int_abs(x));
    long bound = static_cast<long>(Int(1 + maxc * p.degree()));
    auto eval_pq = [&](const Int& pn, const Int& qd) {
        Int r = 0, pp = 1;
        std::vector<Int> qpow(c.size());
        qpow[0] = 1;
        for (std::size_t i = 1; i < c.size(); ++i) qpow[i] = qpow[i - 1] * qd;
        for (std::size_t i = 0; i < c.size(); ++i) {
            r += c[i] * pp * qpow[c.size() - 1 - i];
            pp *= pn;
        }
        return r;
    };
    std::set<Rat> out;
    if (c.front() == 0) out.insert(Rat(0));
    for (long qd = 1; qd <= bound; ++qd)
        for (long pn = 1; pn <= bound; ++pn) {
            if (std::gcd(pn, qd) != 1) continue;
            if (eval_pq(Int(pn), Int(qd)) == 0) out.insert(Rat(pn, qd));
            if (eval_pq(Int(-pn), Int(qd)) == 0) out.insert(make_rat(Int(-pn), Int(qd)));
        }
    return out;
}

// Independent rank oracle: plain rational Gauss elimination with column
// pivot search order reversed relative to the library's.
std::size_t rank_oracle(RatMatrix m) {
    std::size_t r = 0;
    std::size_t R = m.rows(), C = m.cols();
    for (std::size_t c = C; c-- > 0 && r < R;) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        for (std::size_t j = 0; j < C; ++j) std::swap(m.at(piv, j), m.at(r, j));
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) / m.at(r, c);
            for (std::size_t j = 0; j < C; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("rational arithmetic is canonical and round-trips", "[rat]") {
    Rat r = make_rat(6, -8);
    CHECK(num(r) == -3);
    CHECK(den(r) == 4);
    CHECK(rat_to_string(r) == "-3/4");
    CHECK(rat_from_string("-3/4") == r);
    CHECK(rat_from_string("42") == Rat(42));

    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        long a = d(rng), b = d(rng) ? d(rng) : 1, c = d(rng), e = d(rng) ? d(rng) : 1;
        if (b == 0) b = 3;
        if (e == 0) e = 7;
        Rat x = make_rat(a, b), y = make_rat(c, e);
        CHECK(x + y == y + x);
        CHECK((x + y) - y == x);
        if (y != 0) CHECK((x / y) * y == x);
        CHECK(rat_from_string(rat_to_string(x)) == x);
        CHECK(den(x) > 0);
        CHECK(int_gcd(int_abs(num(x)), den(x)) == 1);
    }
}

TEST_CASE("integer factorization helpers", "[intfactor]") {
    auto f = factorize(Int(2) * 2 * 2 * 3 * 7 * 7);
    CHECK(f[Int(2)] == 3);
    CHECK(f[Int(3)] == 1);
    CHECK(f[Int(7)] == 2);
    CHECK(radical(Int(72)) == 6);
    CHECK(valuation(Int(48), Int(2)) == 4);
    // a 2^64-scale semiprime exercises the rho path
    Int p("1000003"), q("999983");
    auto g = factorize(p * q);
    CHECK(g[p] == 1);
    CHECK(g[q] == 1);
    CHECK(divisors(factorize(Int(12))) == std::vector<Int>({1, 2, 3, 4, 6, 12}));
    CHECK(exact_nth_root(Int(729), 6).value() == 3);
    CHECK(!exact_nth_root(Int(730), 6).has_value());
    CHECK(exact_nth_root(Rat(8, 27), 3).value() == Rat(2, 3));
}

TEST_CASE("unipoly arithmetic, gcd and squarefree", "[unipoly]") {
    UniPoly a = up({1, 2, 1});   // (x+1)^2
    UniPoly b = up({-1, 0, 1});  // x^2-1
    CHECK(gcd(a, b) == up({1, 1}));
    CHECK(squarefree_part(a) == up({1, 1}));
    auto [quo, rem] = UniPoly::divmod(a * b, a);
    CHECK(rem.is_zero());
    CHECK(quo == b);
    CHECK(a.compose(up({0, 2})) == up({1, 4, 4}));  // (2x+1)^2
    CHECK(up({0, 0, 0}).is_zero());
    CHECK(a.derivative() == up({2, 2}));
}

TEST_CASE("rational_roots matches the spec examples", "[roots]") {
    CHECK(rational_roots(up({1, -3, 2})) == std::set<Rat>{Rat(1), Rat(1, 2)});
    CHECK(rational_roots(up({1, 0, 1})).empty());
    CHECK(rational_roots(up({0, 0, 0, 1})) == std::set<Rat>{Rat(0)});
    CHECK_THROWS_AS(rational_roots(UniPoly()), ZeroPolynomial);
}

TEST_CASE("rational_roots agrees with exhaustive search on random polynomials", "[roots][oracle]") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<int> deg(1, 4), coeff(-5, 5), root(-2, 2);
    int compared = 0;
    while (compared < 200) {
        std::vector<Rat> c(deg(rng) + 1);
        for (auto& x : c) x = Rat(coeff(rng));
        UniPoly p{std::vector<Rat>(c)};
        if (p.is_zero() || p.degree() < 1) continue;
        // bias some instances toward having roots (degree stays <= 6)
        if (compared % 3 == 0) p = p * up({-root(rng), 1});
        if (compared % 5 == 0) p = p * up({-1, 2});  // root 1/2
        CHECK(rational_roots(p) == roots_by_exhaustion(p));
        ++compared;
    }
}

TEST_CASE("rational_roots big-coefficient fast paths stay exact", "[roots]") {
    // x^64 = (20/3)^64 has exactly the roots +-20/3
    Int a = int_pow(Int(20), 64), b = int_pow(Int(3), 64);
    std::vector<Rat> c(65, Rat(0));
    c[0] = Rat(-a);
    c[64] = Rat(b);
    CHECK(rational_roots(UniPoly(std::move(c))) == std::set<Rat>{Rat(20, 3), Rat(-20, 3)});

    // quadratic with large discriminant
    UniPoly quad({Rat(Int("-94450938996894946884987")), Rat(0), Rat(1)});
    CHECK(rational_roots(quad).empty());

    // dense general path with prime factors needing rho, root is 1000003/999983
    UniPoly lin({Rat(Int(-1000003)), Rat(Int(999983))});
    UniPoly noise = up({3, 1, 0, 2, 1});
    auto roots = rational_roots(lin * noise);
    CHECK(roots.count(Rat(Int(1000003), Int(999983))) == 1);
}

TEST_CASE("multiplicity-aware roots and form roots", "[roots]") {
    UniPoly p = up({1, 1}) * up({1, 1}) * up({-2, 1});  // (x+1)^2 (x-2)
    auto m = rational_roots_with_multiplicity(p);
    CHECK(m.at(Rat(-1)) == 2);
    CHECK(m.at(Rat(2)) == 1);

    // X^2 Y (roots: 0 twice, infinity once)
    BinForm f({Rat(0), Rat(0), Rat(1), Rat(0)});
    auto fr = form_rational_roots(f);
    CHECK(fr.infinity_multiplicity == 1);
    CHECK(fr.affine.at(Rat(0)) == 2);
}

TEST_CASE("matrix rank: spec examples and pivoting oracle", "[rank]") {
    CHECK(rank(RatMatrix::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}})) == 2);
    CHECK(rank(RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}})) == 1);
    CHECK(rank(RatMatrix::from_rows({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}})) == 0);

    std::mt19937 rng(13579);
    std::uniform_int_distribution<int> dim(1, 6), coeff(-4, 4), pick(0, 3);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = pick(rng) == 0 ? Rat(0) : Rat(coeff(rng), 1 + (coeff(rng) & 3));
        CHECK(rank(m) == rank_oracle(m));
    }
}

TEST_CASE("multipoly arithmetic and exact division", "[multipoly]") {
    // vars: x=0, y=1
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    MultiPoly one = MultiPoly::constant(2, Rat(1));
    MultiPoly p = x * y - one;
    MultiPoly q = x + y;
    CHECK(exact_div(p * q, q) == p);
    CHECK(divides(q, p * q));
    CHECK(!divides(q, p));
    CHECK((p * q).degree(0) == 2);
    CHECK(p.total_degree() == 2);
    CHECK(gcd(p * q, p * p) == p.normalized());
    CHECK(content_in(x * y + y, 0) == y.normalized());
}

TEST_CASE("resultant: spec examples", "[resultant]") {
    // vars: (t, x): eliminate x (index 1)
    MultiPoly x = MultiPoly::variable(2, 1), t = MultiPoly::variable(2, 0);
    MultiPoly one = MultiPoly::constant(2, Rat(1));
    MultiPoly res = resultant(x * x + one, x - t, 1);
    // expected t^2 + 1 in the remaining variable
    MultiPoly t1 = MultiPoly::variable(1, 0);
    CHECK(res == t1 * t1 + MultiPoly::constant(1, Rat(1)));

    // vars: (a, b, x): res(x - a, x - b) = b - a under p-then-q row order
    MultiPoly a3 = MultiPoly::variable(3, 0), b3 = MultiPoly::variable(3, 1),
              x3 = MultiPoly::variable(3, 2);
    MultiPoly r = resultant(x3 - a3, x3 - b3, 2);
    MultiPoly a2 = MultiPoly::variable(2, 0), b2 = MultiPoly::variable(2, 1);
    CHECK(r == b2 - a2);

    // res(x^2, x) = 0 (shared root), univariate operands
    MultiPoly x1 = MultiPoly::variable(1, 0);
    CHECK(resultant(x1 * x1, x1, 0).is_zero());

    CHECK_THROWS_AS(resultant(MultiPoly(2), x * x, 1), ZeroPolynomial);
    CHECK_THROWS_AS(resultant(t, x, 1), VariableAbsent);
}

TEST_CASE("resultant vanishes iff common factor, via independent determinant", "[resultant][oracle]") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto rand_poly = [&](int arity, int degx, int degt) {
        MultiPoly p(arity);
        for (int i = 0; i <= degx; ++i)
            for (int j = 0; j <= degt; ++j) {
                int c = coeff(rng);
                if (c) p.add_term({j, i}, Rat(c));
            }
        return p;
    };
    int done = 0;
    while (done < 40) {
        MultiPoly p = rand_poly(2, 2, 1), q = rand_poly(2, 2, 1);
        if (p.degree(1) < 1 || q.degree(1) < 1) continue;
        MultiPoly s = rand_poly(2, 1, 1);
        bool share = (done % 2 == 0) && s.degree(1) >= 1;
        if (share) {
            p = p * s;
            q = q * s;
        }
        MultiPoly r = resultant(p, q, 1);
        MultiPoly g = gcd(p, q);
        CHECK(r.is_zero() == (g.degree(1) >= 1));
        ++done;
    }

    // numeric cross-check of res(x^2+1, x-t) against a plain integer
    // determinant of the specialized Sylvester matrix
    for (long t0 = -3; t0 <= 3; ++t0) {
        std::vector<std::vector<Int>> syl = {
            {1, 0, 1}, {-t0, 1, 0}, {0, -t0, 1}};
        CHECK(int_determinant(syl) == t0 * t0 + 1);
    }
}

TEST_CASE("squarefree_part: spec examples", "[squarefree]") {
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    MultiPoly one = MultiPoly::constant(2, Rat(1));
    // (x-1)^2 -> x-1
    MultiPoly p = (x - one) * (x - one);
    CHECK(squarefree_part(p, 0) == (x - one).normalized());
    // x^2 y -> x y after both variables
    CHECK(squarefree_part_all(x * x * y) == (x * y).normalized());
    // already squarefree
    CHECK(squarefree_part(x * x + one, 0) == (x * x + one).normalized());
    CHECK_THROWS_AS(squarefree_part(MultiPoly(2), 0), ZeroPolynomial);
}
