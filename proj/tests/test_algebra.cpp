#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hecke/algebra.hpp"

using namespace hecke;

namespace {

Element random_basis_element(const Algebra& alg, std::mt19937_64& rng) {
    std::vector<BasisKey> keys = alg.basis();
    return alg.basis_element(keys[rng() % keys.size()]);
}

}  // namespace

TEST_CASE("generators") {
    Algebra alg(default_binding(2, 3));
    CHECK(alg.identity().terms.size() == 1);
    CHECK(alg.tau(alg.identity()) == 0);

    Element x3 = alg.gen_x(3);
    REQUIRE(x3.terms.size() == 1);
    const auto& [k, c] = *x3.terms.begin();
    CHECK(c == 1);
    CHECK(int(k.exps[2]) == 1);

    CHECK(alg.gen_s(0) == alg.gen_x(1));
    CHECK_THROWS_AS(alg.gen_s(3), IndexError);
    CHECK_THROWS_AS(alg.gen_x(0), IndexError);
}

TEST_CASE("multiplication on small cases") {
    Algebra alg(default_binding(2, 3));
    Element s1 = alg.gen_s(1);
    CHECK(alg.mul(s1, s1) == alg.identity());
    CHECK(alg.mul(s1, alg.gen_x(1)) == alg.mul(alg.gen_x(2), s1) - alg.identity());

    SECTION("cyclotomic reduction at (2,1), q = (0,7)") {
        Algebra a(make_binding(2, 1, {Rational(0), Rational(7)}));
        Element x1 = a.gen_x(1);
        CHECK(a.mul(x1, x1) == x1 * Rational(7));
    }

    SECTION("m = 1 collapses x_1 to q_1") {
        Algebra a(make_binding(1, 3, {Rational(4)}));
        CHECK(a.gen_x(1) == a.identity() * Rational(4));
        // x_2 = s_1 x_1 s_1 + s_1 = q_1 + s_1
        CHECK(a.gen_x(2) == a.identity() * Rational(4) + a.gen_s(1));
    }

    SECTION("associativity on random triples") {
        Algebra a(default_binding(2, 3));
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 30; ++trial) {
            Element x = random_basis_element(a, rng);
            Element y = random_basis_element(a, rng);
            Element z = random_basis_element(a, rng);
            CHECK(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)));
        }
    }

    SECTION("JM recursion x_{k+1} = s_k x_k s_k + s_k") {
        Algebra a(default_binding(3, 3));
        for (int k = 1; k < 3; ++k) {
            Element sk = a.gen_s(k);
            CHECK(a.gen_x(k + 1) == a.mul(a.mul(sk, a.gen_x(k)), sk) + sk);
        }
    }

    SECTION("binding mismatch is rejected") {
        Algebra a(default_binding(2, 2));
        Algebra b(make_binding(2, 2, {Rational(0), Rational(9)}));
        CHECK_THROWS_AS(a.mul(a.identity(), b.identity()), BindingMismatchError);
    }
}

TEST_CASE("star anti-automorphism") {
    Algebra alg(default_binding(2, 3));
    CHECK(alg.star(alg.gen_s(1)) == alg.gen_s(1));
    Element poly = alg.mul(alg.gen_x(1), alg.gen_x(3)) * Rational(5);
    CHECK(alg.star(poly) == poly);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        Element a = random_basis_element(alg, rng);
        Element b = random_basis_element(alg, rng);
        Element e = a + b * Rational(3);
        CHECK(alg.star(alg.star(e)) == e);
        CHECK(alg.star(alg.mul(a, b)) == alg.mul(alg.star(b), alg.star(a)));
    }
}

TEST_CASE("trace form") {
    SECTION("(2,1): tau(x1) = 1, tau(1) = 0") {
        Algebra a(make_binding(2, 1, {Rational(0), Rational(7)}));
        CHECK(a.tau(a.gen_x(1)) == 1);
        CHECK(a.tau(a.identity()) == 0);
    }

    SECTION("m = 1: tau(w) = [w = id]") {
        Algebra a(default_binding(1, 3));
        for (const Perm& w : all_perms(3))
            CHECK(a.tau(a.perm_element(w)) == (w.is_identity() ? 1 : 0));
    }

    SECTION("tau(x^{m-1} w v) = [w = v^{-1}]") {
        Algebra a(default_binding(2, 3));
        Element top = a.identity();
        for (int k = 1; k <= 3; ++k) top = a.mul_left_x(k, top);
        for (const Perm& w : all_perms(3))
            for (const Perm& v : all_perms(3)) {
                Element e = a.mul(a.mul(top, a.perm_element(w)), a.perm_element(v));
                CHECK(a.tau(e) == ((w * v).is_identity() ? 1 : 0));
            }
    }

    SECTION("trace property on random pairs") {
        Algebra a(default_binding(3, 2));
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            Element x = random_basis_element(a, rng);
            Element y = random_basis_element(a, rng);
            CHECK(a.tau(a.mul(x, y)) == a.tau(a.mul(y, x)));
        }
    }
}

TEST_CASE("inner product") {
    Algebra a21(make_binding(2, 1, {Rational(0), Rational(7)}));
    CHECK(a21.inner(a21.identity(), a21.identity()) == 0);
    CHECK(a21.inner(a21.gen_x(1), a21.identity()) == 1);

    Algebra a11(default_binding(1, 1));
    CHECK(a11.inner(a11.identity(), a11.identity()) == 1);

    Algebra alg(default_binding(2, 2));
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        Element a = random_basis_element(alg, rng);
        Element b = random_basis_element(alg, rng);
        CHECK(alg.inner(a, b) == alg.inner(b, a));
    }
}

TEST_CASE("basis closure and dimension") {
    Algebra alg(default_binding(2, 2));
    std::vector<BasisKey> keys = alg.basis();
    REQUIRE(long(keys.size()) == alg.dimension());
    CHECK(alg.dimension() == 8);
    for (const auto& ka : keys)
        for (const auto& kb : keys) {
            Element p = alg.mul(alg.basis_element(ka), alg.basis_element(kb));
            for (const auto& [k, c] : p.terms) {
                for (int i = 0; i < alg.n(); ++i) CHECK(int(k.exps[size_t(i)]) < alg.m());
                CHECK(c != 0);
            }
        }
}

TEST_CASE("reduction tables") {
    // RED(j) really is the normal form of x_j^m: multiply back and compare
    Algebra alg(default_binding(2, 3));
    for (int j = 1; j <= 3; ++j) {
        Element xj = alg.gen_x(j);
        Element pow = alg.mul(xj, xj);  // x_j^2 with m = 2
        CHECK(pow == alg.reduction_table(j));
    }

    SECTION("filtration degree never grows past (m-1)n") {
        Algebra a(default_binding(3, 2));
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 50; ++trial) {
            Element x = random_basis_element(a, rng);
            Element y = random_basis_element(a, rng);
            CHECK(a.mul(x, y).filtration_degree(a.n()) <= (a.m() - 1) * a.n());
        }
    }
}

TEST_CASE("algebra size guard") {
    ParamBinding b = default_binding(2, 3);
    b.n = 13;
    CHECK_THROWS_AS(Algebra(b), RangeError);
}
