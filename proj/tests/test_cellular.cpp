#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hecke/seminormal.hpp"

using namespace hecke;

TEST_CASE("m_lambda") {
    SECTION("m = 1, full row: sum over S_n") {
        Algebra a(default_binding(1, 3));
        Element e = m_lambda(a, parse_shape("3"));
        CHECK(e.terms.size() == 6);
        for (const Perm& w : all_perms(3)) CHECK(e.coefficient([&] {
                  BasisKey k;
                  for (int i = 0; i < 3; ++i) k.perm[size_t(i)] = uint8_t(w.img[size_t(i)] - 1);
                  return k;
              }()) == 1);
    }

    Algebra a21(make_binding(2, 1, {Rational(0), Rational(7)}));
    CHECK(m_lambda(a21, parse_shape("1|0")) == a21.gen_x(1) - a21.identity() * Rational(7));
    CHECK(m_lambda(a21, parse_shape("0|1")) == a21.identity());

    SECTION("x_lambda and u+ commute") {
        Algebra a(default_binding(2, 3));
        for (const auto& shape : multipartitions(2, 3)) {
            Element xl = a.zero();
            for (const Perm& w : row_stabilizer(shape)) xl += a.perm_element(w);
            Element up = a.identity();
            std::vector<int> al = shape.a_list();
            for (int i = 2; i <= 2; ++i)
                for (int k = 1; k <= al[size_t(i) - 1]; ++k)
                    up = a.mul_left_x_shift(k, a.binding().q_at(i), up);
            CHECK(a.mul(xl, up) == a.mul(up, xl));
            CHECK(a.mul(xl, up) == m_lambda(a, shape));
        }
    }
}

TEST_CASE("m_st") {
    Algebra alg(default_binding(2, 2));
    SECTION("m_{t^lambda t^lambda} = m_lambda") {
        for (const auto& shape : multipartitions(2, 2)) {
            Tableau top = row_reading_tableau(shape);
            CHECK(m_st(alg, top, top) == m_lambda(alg, shape));
        }
    }

    SECTION("star symmetry") {
        for (const auto& shape : multipartitions(2, 2)) {
            auto tabs = standard_tableaux(shape);
            for (const auto& s : tabs)
                for (const auto& t : tabs)
                    CHECK(alg.star(m_st(alg, s, t)) == m_st(alg, t, s));
        }
    }

    SECTION("worked 2x2 case") {
        Multipartition shape = parse_shape("1|1");
        auto tabs = standard_tableaux(shape);
        Element expect = alg.mul(alg.gen_x(1) - alg.identity() * alg.binding().q_at(2),
                                 alg.gen_s(1));
        CHECK(m_st(alg, tabs[0], tabs[1]) == expect);
    }

    CHECK_THROWS_AS(m_st(alg, row_reading_tableau(parse_shape("2|0")),
                         row_reading_tableau(parse_shape("1|1"))),
                    ShapeMismatchError);
}

TEST_CASE("cellular expansion") {
    Algebra alg(default_binding(2, 2));
    CellularBasis cb(alg);
    REQUIRE(cb.dim() == 8);

    SECTION("unit vectors") {
        for (int idx = 0; idx < cb.dim(); ++idx) {
            CellularIndex ci = cb.unflatten(idx);
            std::vector<Rational> c = cb.expand(cb.m_st_at(ci.shape, ci.s, ci.t));
            for (int i = 0; i < cb.dim(); ++i) CHECK(c[size_t(i)] == (i == idx ? 1 : 0));
        }
    }

    SECTION("identity reassembles") {
        std::vector<Rational> c = cb.expand(alg.identity());
        Element back = alg.zero();
        for (int i = 0; i < cb.dim(); ++i) {
            CellularIndex ci = cb.unflatten(i);
            back += cb.m_st_at(ci.shape, ci.s, ci.t) * c[size_t(i)];
        }
        CHECK(back == alg.identity());
    }

    SECTION("linearity on random combinations") {
        std::mt19937_64 rng(11);
        std::vector<BasisKey> keys = alg.basis();
        for (int trial = 0; trial < 10; ++trial) {
            Element a = alg.basis_element(keys[rng() % keys.size()]) * Rational(3);
            Element b = alg.basis_element(keys[rng() % keys.size()]) * Rational(-2);
            std::vector<Rational> ca = cb.expand(a), cbv = cb.expand(b), cs = cb.expand(a + b);
            for (int i = 0; i < cb.dim(); ++i)
                CHECK(cs[size_t(i)] == ca[size_t(i)] + cbv[size_t(i)]);
        }
    }
}

TEST_CASE("cellular triangularity") {
    Algebra alg(default_binding(2, 2));
    CellularBasis cb(alg);
    // g . m_st lives in column t of shape lambda plus strictly dominant shapes
    for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
        int d = int(cb.tableaux(sh).size());
        for (int i = 0; i < alg.n(); ++i) {
            Element g = alg.gen_s(i);
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) {
                    std::vector<Rational> c = cb.expand(alg.mul(g, cb.m_st_at(sh, s, t)));
                    for (int idx = 0; idx < cb.dim(); ++idx) {
                        if (c[size_t(idx)] == 0) continue;
                        CellularIndex ci = cb.unflatten(idx);
                        if (ci.shape == sh) {
                            CHECK(ci.t == t);
                        } else {
                            CHECK(dominates(cb.shapes()[size_t(ci.shape)],
                                            cb.shapes()[size_t(sh)]));
                        }
                    }
                }
        }
    }
}

TEST_CASE("bilinear form") {
    SECTION("(2,1): <m, m> = q1 - q2") {
        Algebra a(make_binding(2, 1, {Rational(0), Rational(7)}));
        CellularBasis cb(a);
        int sh = cb.shape_index(parse_shape("1|0"));
        CHECK(bilinear_form(cb, sh, 0, 0) == Rational(-7));
    }

    Algebra alg(default_binding(2, 2));
    CellularBasis cb(alg);

    SECTION("dominance-maximal shape gives gamma of t^lambda") {
        int sh = 0;  // canonical order puts the maximal shape first
        GammaTable gt = gamma_seminormal(cb.shapes()[0], &alg.binding());
        CHECK(bilinear_form(cb, sh, 0, 0) == gt.value[0]);
    }

    SECTION("symmetry") {
        for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
            int d = int(cb.tableaux(sh).size());
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t)
                    CHECK(bilinear_form(cb, sh, s, t) == bilinear_form(cb, sh, t, s));
        }
    }
}

TEST_CASE("specht action") {
    Algebra alg(default_binding(2, 2));
    CellularBasis cb(alg);
    for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
        SpechtData sd = specht_action(cb, sh);
        int d = int(sd.tableaux.size());
        CHECK(d == int(standard_tableaux(sd.shape).size()));
        // diagonal of x_k = residues, upper triangular
        for (int k = 1; k <= alg.n(); ++k) {
            const Matrix& mx = sd.jm_x[size_t(k) - 1];
            for (int col = 0; col < d; ++col) {
                CHECK(mx.at(col, col) ==
                      alg.binding().residue_value(sd.tableaux[size_t(col)].residue(k)));
                for (int row = col + 1; row < d; ++row) CHECK(mx.at(row, col) == 0);
            }
        }
        // defining relations on the matrices
        Matrix id = Matrix::identity(d);
        Matrix cyc = id;
        for (int i = 1; i <= alg.m(); ++i)
            cyc = cyc * (sd.jm_x[0] - id.scaled(alg.binding().q_at(i)));
        CHECK(cyc.is_zero());
        for (int i = 1; i < alg.n(); ++i)
            CHECK(sd.gen_s[size_t(i)] * sd.gen_s[size_t(i)] == id);
    }
}

TEST_CASE("gram determinants") {
    SECTION("worked case ((1);(1)) at q=(0,7)") {
        Algebra a(make_binding(2, 2, {Rational(0), Rational(7)}));
        CellularBasis cb(a);
        auto [mat, det] = gram(cb, cb.shape_index(parse_shape("1|1")));
        CHECK(det == 48);
    }

    SECTION("1x1 shapes: det is the single inner product") {
        Algebra a(default_binding(2, 2));
        CellularBasis cb(a);
        int sh = cb.shape_index(parse_shape("2|0"));
        auto [mat, det] = gram(cb, sh);
        REQUIRE(mat.rows() == 1);
        CHECK(det == mat.at(0, 0));
        CHECK(det == bilinear_form(cb, sh, 0, 0));
    }

    SECTION("det = prod gamma at (2,2) and (3,2)") {
        for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
            Algebra a(default_binding(m, n));
            CellularBasis cb(a);
            for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
                auto [mat, det] = gram(cb, sh);
                GammaTable gt = gamma_seminormal(cb.shapes()[size_t(sh)], &a.binding());
                Rational prod = 1;
                for (const auto& v : gt.value) prod *= v;
                CHECK(det == prod);
                CHECK(det != 0);
            }
        }
    }
}
