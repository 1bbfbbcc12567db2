#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hecke/seminormal.hpp"

using namespace hecke;

TEST_CASE("spectral projectors F_t") {
    SECTION("(2,1) closed form") {
        Algebra a(make_binding(2, 1, {Rational(0), Rational(7)}));
        auto rs = residue_sets(2, 1);
        Tableau t = row_reading_tableau(parse_shape("1|0"));
        Element f = f_projector(a, rs, t);
        CHECK(f == (a.gen_x(1) - a.identity() * Rational(7)) * Rational(-1, 7));
    }

    Algebra alg(default_binding(2, 2));
    auto rs = residue_sets(2, 2);
    auto idem = idempotents(alg, rs);

    SECTION("partition of unity") {
        Element sum = alg.zero();
        for (const auto& fl : idem.f_lambda) sum += fl;
        CHECK(sum == alg.identity());
    }

    SECTION("orthogonal idempotents") {
        std::vector<const Element*> flat;
        for (const auto& per : idem.f_t)
            for (const auto& f : per) flat.push_back(&f);
        for (size_t i = 0; i < flat.size(); ++i)
            for (size_t j = 0; j < flat.size(); ++j) {
                Element p = alg.mul(*flat[i], *flat[j]);
                if (i == j) CHECK(p == *flat[i]);
                else CHECK(p.is_zero());
            }
    }

    SECTION("non-separating binding is rejected") {
        // q = (0,1) at n = 2 collides residue values across components
        ParamBinding b = make_binding(2, 2, {Rational(0), Rational(1)});
        Algebra a(b);
        CHECK_THROWS_AS(f_projector(a, rs, row_reading_tableau(parse_shape("1|1"))),
                        NonGenericBindingError);
        CHECK_THROWS_AS(check_residue_separation(b, rs), NonGenericBindingError);
    }
}

TEST_CASE("orthogonal basis f_st") {
    Algebra alg(default_binding(2, 2));
    CellularBasis cb(alg);
    auto rs = residue_sets(2, 2);

    SECTION("f at the dominance-maximal shape is m_lambda") {
        // shape 0 in canonical order dominates everything, so no corrections
        CHECK(f_st(cb, rs, 0, 0, 0) == cb.m_lambda_of(0));
    }

    SECTION("x_k f_st = res_s(k) f_st") {
        for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
            int d = int(cb.tableaux(sh).size());
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) {
                    Element f = f_st(cb, rs, sh, s, t);
                    for (int k = 1; k <= alg.n(); ++k) {
                        Rational res = alg.binding().residue_value(
                            cb.tableaux(sh)[size_t(s)].residue(k));
                        CHECK(alg.mul_left_x(k, f) == f * res);
                    }
                }
        }
    }

    SECTION("unitriangular against the cellular basis") {
        for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
            int d = int(cb.tableaux(sh).size());
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) {
                    std::vector<Rational> c = cb.expand(f_st(cb, rs, sh, s, t));
                    CHECK(c[size_t(cb.flat_index(sh, s, t))] == 1);
                    for (int idx = 0; idx < cb.dim(); ++idx) {
                        if (c[size_t(idx)] == 0) continue;
                        CellularIndex ci = cb.unflatten(idx);
                        if (ci.shape == sh) {
                            bool same = ci.s == s && ci.t == t;
                            bool dominatesPair =
                                tableau_dominates(cb.tableaux(sh)[size_t(ci.s)],
                                                  cb.tableaux(sh)[size_t(s)]) &&
                                tableau_dominates(cb.tableaux(sh)[size_t(ci.t)],
                                                  cb.tableaux(sh)[size_t(t)]);
                            CHECK((same || dominatesPair));
                        } else {
                            CHECK(dominates(cb.shapes()[size_t(ci.shape)],
                                            cb.shapes()[size_t(sh)]));
                        }
                    }
                }
        }
    }

    SECTION("matrix-unit law, exhaustively at (2,2)") {
        GammaTable gt0;
        std::vector<Element> fb(size_t(cb.dim()));
        std::vector<Rational> gam(size_t(cb.dim()));
        for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
            GammaTable gt = gamma_seminormal(cb.shapes()[size_t(sh)], &alg.binding());
            int d = int(cb.tableaux(sh).size());
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) {
                    fb[size_t(cb.flat_index(sh, s, t))] = f_st(cb, rs, sh, s, t);
                    gam[size_t(cb.flat_index(sh, s, t))] = gt.value[size_t(t)];
                }
        }
        for (int i = 0; i < cb.dim(); ++i)
            for (int j = 0; j < cb.dim(); ++j) {
                CellularIndex a = cb.unflatten(i), c = cb.unflatten(j);
                Element prod = alg.mul(fb[size_t(i)], fb[size_t(j)]);
                if (a.shape == c.shape && a.t == c.s) {
                    CHECK(prod == fb[size_t(cb.flat_index(a.shape, a.s, c.t))] * gam[size_t(i)]);
                } else {
                    CHECK(prod.is_zero());
                }
            }
    }
}

TEST_CASE("gamma coefficients") {
    SECTION("worked value for (3.1|1)") {
        Multipartition mp = parse_shape("3.1|1");
        FactoredScalar expect(Rational(6));
        expect.mul_factor(-1, 1, 2);
        expect.mul_factor(0, 1, 2);
        expect.mul_factor(1, 1, 2);
        expect.mul_factor(2, 1, 2);
        GammaTable gt = gamma_seminormal(mp);
        CHECK(gt.symbolic[0] == expect);
        CHECK(gamma_closed(row_reading_tableau(mp)) == expect);
    }

    SECTION("m = 1 single row: n!") {
        GammaTable gt = gamma_seminormal(parse_shape("4"));
        CHECK(gt.symbolic[0] == FactoredScalar(Rational(24)));
    }

    SECTION("one recursion step at ((1);(1))") {
        GammaTable gt = gamma_seminormal(parse_shape("1|1"));
        REQUIRE(gt.tableaux.size() == 2);
        // gamma_{t'} = ((q2-q1)^2 - 1)(q1-q2)/(q2-q1)^2
        FactoredScalar expect(Rational(-1));
        expect.mul_factor(1, 2, 1);
        expect.mul_factor(-1, 2, 1);
        expect.mul_factor(0, 2, 1, -1);
        CHECK(gt.symbolic[1] == expect);
        ParamBinding b = make_binding(2, 2, {Rational(0), Rational(7)});
        CHECK(gt.symbolic[1].evaluate(b) == Rational(-48, 7));
        CHECK(gamma_closed(gt.tableaux[1]) == gt.symbolic[1]);
    }

    SECTION("three routes at (2,2) and (3,2)") {
        for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
            Algebra alg(default_binding(m, n));
            CellularBasis cb(alg);
            auto rs = residue_sets(m, n);
            for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
                GammaTable gt = gamma_seminormal(cb.shapes()[size_t(sh)], &alg.binding());
                for (size_t ti = 0; ti < gt.tableaux.size(); ++ti) {
                    CHECK(gamma_closed(gt.tableaux[ti]) == gt.symbolic[ti]);
                    Element ftt = f_st(cb, rs, sh, int(ti), int(ti));
                    CHECK(gamma_direct(alg, ftt) == gt.value[ti]);
                    CHECK(gt.value[ti] != 0);
                }
            }
        }
    }
}

TEST_CASE("seminormal representation") {
    SECTION("m = 1 one-box rows and columns") {
        ParamBinding b = default_binding(1, 2);
        SeminormalRep row = seminormal_rep(parse_shape("2"), b);
        CHECK(row.rho_s[1].at(0, 0) == 1);
        SeminormalRep col = seminormal_rep(parse_shape("1.1"), b);
        CHECK(col.rho_s[1].at(0, 0) == -1);
    }

    SECTION("((1);(1)) at q=(0,7): pinned matrix") {
        ParamBinding b = make_binding(2, 2, {Rational(0), Rational(7)});
        SeminormalRep rep = seminormal_rep(parse_shape("1|1"), b);
        // columns are images of (f_{t^lambda}, f_{t'}); the same data in the
        // reversed basis order is the display [[-1/7,1],[48/49,1/7]]
        CHECK(rep.rho_s[1].at(0, 0) == Rational(1, 7));
        CHECK(rep.rho_s[1].at(1, 0) == 1);
        CHECK(rep.rho_s[1].at(0, 1) == Rational(48, 49));
        CHECK(rep.rho_s[1].at(1, 1) == Rational(-1, 7));
        // x_2 = s_1 x_1 s_1 + s_1 holds on the matrices
        Matrix x2 = rep.rho_s[1] * rep.rho_x[0] * rep.rho_s[1] + rep.rho_s[1];
        CHECK(x2 == rep.rho_x[1]);
    }

    SECTION("defining relations at (3,2)") {
        ParamBinding b = default_binding(3, 2);
        for (const auto& shape : multipartitions(3, 2)) {
            SeminormalRep rep = seminormal_rep(shape, b);
            int d = rep.dim();
            Matrix id = Matrix::identity(d);
            Matrix cyc = id;
            for (int i = 1; i <= 3; ++i) cyc = cyc * (rep.rho_s[0] - id.scaled(b.q_at(i)));
            CHECK(cyc.is_zero());
            CHECK(rep.rho_s[1] * rep.rho_s[1] == id);
            Matrix t = rep.rho_s[1] * rep.rho_s[0] * rep.rho_s[1] + rep.rho_s[1];
            CHECK(rep.rho_s[0] * t == t * rep.rho_s[0]);
        }
    }

    SECTION("homomorphism oracle against the rewriting engine") {
        Algebra alg(default_binding(2, 2));
        std::mt19937_64 rng(3);
        std::vector<BasisKey> keys = alg.basis();
        std::vector<SeminormalRep> reps;
        for (const auto& shape : multipartitions(2, 2))
            reps.push_back(seminormal_rep(shape, alg.binding()));
        for (int trial = 0; trial < 60; ++trial) {
            Element a = alg.basis_element(keys[rng() % keys.size()]);
            Element b = alg.basis_element(keys[rng() % keys.size()]);
            Element p = alg.mul(a, b);
            for (const auto& rep : reps)
                CHECK(rep.of_element(p) == rep.of_element(a) * rep.of_element(b));
        }
    }
}

TEST_CASE("JM spectral structure") {
    SECTION("(2,1): minimal polynomial") {
        Algebra a(make_binding(2, 1, {Rational(0), Rational(7)}));
        auto rs = residue_sets(2, 1);
        auto idem = idempotents(a, rs);
        JmSpectralReport rep = jm_spectral(a, rs, idem);
        CHECK(rep.min_poly_vanishes);
        CHECK(rep.min_poly_minimal);
        CHECK(rep.reassembly);
    }

    SECTION("(2,2): reassembly of x_2 from idempotents") {
        Algebra a(default_binding(2, 2));
        auto rs = residue_sets(2, 2);
        auto idem = idempotents(a, rs);
        Element sum = a.zero();
        long terms = 0;
        for (size_t sh = 0; sh < idem.shapes.size(); ++sh)
            for (size_t ti = 0; ti < idem.tableaux[sh].size(); ++ti) {
                sum += idem.f_t[sh][ti] *
                       a.binding().residue_value(idem.tableaux[sh][ti].residue(2));
                ++terms;
            }
        CHECK(terms == 6);  // sum over shapes of |Std(lambda)|
        CHECK(sum == a.gen_x(2));
        JmSpectralReport rep = jm_spectral(a, rs, idem);
        CHECK(rep.min_poly_vanishes);
        CHECK(rep.min_poly_minimal);
    }
}

TEST_CASE("characters") {
    Algebra alg(default_binding(2, 2));
    auto rs = residue_sets(2, 2);

    SECTION("chi(1) = dim") {
        for (const auto& shape : multipartitions(2, 2)) {
            SeminormalRep rep = seminormal_rep(shape, alg.binding());
            CHECK(character(rep, alg.identity()) == long(standard_tableaux(shape).size()));
        }
    }

    SECTION("chi is a trace") {
        std::mt19937_64 rng(13);
        std::vector<BasisKey> keys = alg.basis();
        for (const auto& shape : multipartitions(2, 2)) {
            SeminormalRep rep = seminormal_rep(shape, alg.binding());
            for (int trial = 0; trial < 20; ++trial) {
                Element a = alg.basis_element(keys[rng() % keys.size()]);
                Element b = alg.basis_element(keys[rng() % keys.size()]);
                CHECK(character(rep, alg.mul(a, b)) == character(rep, alg.mul(b, a)));
            }
        }
    }
}
