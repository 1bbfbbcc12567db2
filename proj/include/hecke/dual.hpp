#pragma once

#include "hecke/seminormal.hpp"

namespace hecke {

// n_lambda = y_lambda u_lambda^- with y_lambda = sum (-1)^{l(w)} w over the
// row stabilizer and u_lambda^- = (-1)^{n(lambda)} prod_{i=2}^m
// prod_{k=1}^{a_i} (x_k - q_{m-i+1}).
inline Element n_lambda(const Algebra& alg, const Multipartition& mp) {
    if (mp.size() != alg.n() || mp.m() != alg.m())
        throw ShapeMismatchError("n_lambda: shape does not match algebra");
    Element e = alg.zero();
    for (const Perm& w : row_stabilizer(mp)) {
        Element pw = alg.perm_element(w);
        e += (w.length() % 2 == 0) ? pw : -pw;
    }
    std::vector<int> a = mp.a_list();
    for (int i = 2; i <= mp.m(); ++i)
        for (int k = 1; k <= a[size_t(i) - 1]; ++k)
            e = alg.mul_left_x_shift(k, alg.binding().q_at(mp.m() - i + 1), e);
    if (mp.n_stat() % 2 != 0) e = -e;
    return e;
}

// n_st = bar(d(s))* n_lambda bar(d(t)) = (-1)^{l(s)+l(t)} d(s)* n_lambda d(t).
inline Element n_st(const Algebra& alg, const Element& nlam, const Tableau& s, const Tableau& t) {
    if (s.shape != t.shape) throw ShapeMismatchError("n_st: shapes differ");
    Perm ds = d_perm(s), dt = d_perm(t);
    Element e = alg.mul(alg.perm_element(ds.inverse()), nlam);
    e = alg.mul(e, alg.perm_element(dt));
    if ((ds.length() + dt.length()) % 2 != 0) e = -e;
    return e;
}

inline Element n_st(const Algebra& alg, const Tableau& s, const Tableau& t) {
    return n_st(alg, n_lambda(alg, s.shape), s, t);
}

// g_st = F_{conj(s)} n_st F_{conj(t)}, a scalar multiple of f_{conj(s) conj(t)}.
struct GstResult {
    Element g;
    Rational alpha;  // g = alpha * f_{conj(s) conj(t)}
};

inline GstResult g_st(const CellularBasis& cb, const std::vector<std::vector<Residue>>& rsets,
                      int shape, int s, int t) {
    const Algebra& alg = cb.algebra();
    const auto& tabs = cb.tableaux(shape);
    Tableau sbar = conjugate(tabs[size_t(s)]);
    Tableau tbar = conjugate(tabs[size_t(t)]);
    Element e = alg.mul(f_projector(alg, rsets, sbar),
                        n_st(alg, tabs[size_t(s)], tabs[size_t(t)]));
    e = alg.mul(e, f_projector(alg, rsets, tbar));

    int shapeBar = cb.shape_index(conjugate(cb.shapes()[size_t(shape)]));
    int sb = cb.tableau_index(shapeBar, sbar);
    int tb = cb.tableau_index(shapeBar, tbar);
    Element f = f_st(cb, rsets, shapeBar, sb, tb);
    GstResult res;
    res.g = e;
    if (f.is_zero()) throw ZeroTraceError("g_st: reference f vanished");
    const auto& [k0, c0] = *f.terms.begin();
    res.alpha = e.coefficient(k0) / c0;
    if (e != f * res.alpha) throw HeckeError("g_st is not proportional to f_{conj(s) conj(t)}");
    return res;
}

// z_lambda = m_lambda w_lambda n_{conj(lambda)}.
inline Element z_lambda(const Algebra& alg, const Multipartition& mp) {
    SpecialTableaux sp = special_tableaux(mp);
    Element e = alg.mul(m_lambda(alg, mp), alg.perm_element(sp.w_lambda));
    return alg.mul(e, n_lambda(alg, conjugate(mp)));
}

// ---------------------------------------------------------------------------
// Phi/Psi elements along the canonical reduced word of d(t).

struct PhiPsi {
    Element phi;
    Element psi;
};

inline PhiPsi phi_psi(const Algebra& alg, const Tableau& t) {
    const ParamBinding& b = alg.binding();
    PhiPsi r{alg.identity(), alg.identity()};
    Tableau cur = row_reading_tableau(t.shape);
    for (int letter : d_perm(t).reduced_word()) {
        Tableau next = cur.swap_entries(letter);
        if (!next.standard()) throw HeckeError("phi_psi chain left the standard tableaux");
        Rational delta = b.residue_value(next.residue(letter)) - b.residue_value(cur.residue(letter));
        if (delta == 0) {
            Residue rt = next.residue(letter), rs = cur.residue(letter);
            throw NonGenericBindingError(LinearFactor{rt.d - rs.d, rt.c, rs.c}.to_string());
        }
        Rational alpha = 1 / delta;
        Element si = alg.gen_s(letter);
        r.phi = alg.mul(r.phi, si - alg.identity() * alpha);
        r.psi = alg.mul(r.psi, si + alg.identity() * alpha);
        cur = next;
    }
    return r;
}

// ---------------------------------------------------------------------------
// tau(z_lambda w_{conj(lambda)}): valid for every binding.  The sign is
// measured, never assumed; the report compares it against both candidate
// closed forms.

struct TauZReport {
    Multipartition shape;
    int n_lambda = 0;
    int n_lambda_bar = 0;
    Rational value;
    bool unit = false;           // |value| == 1
    bool matches_n = false;      // value == (-1)^{n(lambda)}
    bool matches_n_bar = false;  // value == (-1)^{n(conj(lambda))}
};

inline TauZReport tau_z(const Algebra& alg, const Multipartition& mp) {
    TauZReport rep;
    rep.shape = mp;
    rep.n_lambda = mp.n_stat();
    rep.n_lambda_bar = conjugate(mp).n_stat();
    Element z = z_lambda(alg, mp);
    Perm wbar = special_tableaux(conjugate(mp)).w_lambda;
    rep.value = alg.tau(alg.mul(z, alg.perm_element(wbar)));
    rep.unit = rep.value == 1 || rep.value == -1;
    Rational sn = rep.n_lambda % 2 == 0 ? 1 : -1;
    Rational snb = rep.n_lambda_bar % 2 == 0 ? 1 : -1;
    rep.matches_n = rep.value == sn;
    rep.matches_n_bar = rep.value == snb;
    return rep;
}

// ---------------------------------------------------------------------------
// Leading-term check in a commutative polynomial model.  Variables commute
// and the permutation acts by relabelling indices; this is the associated
// graded picture, so it is independent of the rewriting engine.

namespace poly {

using Monomial = std::vector<int>;

struct Polynomial {
    int n = 0;
    std::map<Monomial, Rational> terms;

    static Polynomial constant(int n, const Rational& c) {
        Polynomial p;
        p.n = n;
        if (c != 0) p.terms[Monomial(size_t(n), 0)] = c;
        return p;
    }

    // x_k - c
    static Polynomial linear(int n, int k, const Rational& c) {
        Polynomial p;
        p.n = n;
        Monomial x(size_t(n), 0);
        x[size_t(k) - 1] = 1;
        p.terms[x] = 1;
        if (c != 0) p.terms[Monomial(size_t(n), 0)] = -c;
        return p;
    }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        r.n = n;
        for (const auto& [ma, ca] : terms)
            for (const auto& [mb, cb] : o.terms) {
                Monomial m(size_t(n), 0);
                for (int i = 0; i < n; ++i) m[size_t(i)] = ma[size_t(i)] + mb[size_t(i)];
                Rational& c = r.terms[m];
                c += ca * cb;
                if (c == 0) r.terms.erase(m);
            }
        return r;
    }

    // relabel variable k -> sigma(k)
    Polynomial relabel(const Perm& sigma) const {
        Polynomial r;
        r.n = n;
        for (const auto& [m, c] : terms) {
            Monomial m2(size_t(n), 0);
            for (int k = 1; k <= n; ++k) m2[size_t(sigma(k)) - 1] = m[size_t(k) - 1];
            r.terms[m2] = c;
        }
        return r;
    }

    Polynomial graded_part(int degree) const {
        Polynomial r;
        r.n = n;
        for (const auto& [m, c] : terms) {
            int d = std::accumulate(m.begin(), m.end(), 0);
            if (d == degree) r.terms[m] = c;
        }
        return r;
    }
};

}  // namespace poly

// u_lambda^+ as a commutative polynomial.
inline poly::Polynomial u_plus_poly(const Multipartition& mp, const ParamBinding& b) {
    int n = mp.size();
    poly::Polynomial p = poly::Polynomial::constant(n, 1);
    std::vector<int> a = mp.a_list();
    for (int i = 2; i <= mp.m(); ++i)
        for (int k = 1; k <= a[size_t(i) - 1]; ++k)
            p = p * poly::Polynomial::linear(n, k, b.q_at(i));
    return p;
}

// u_lambda^- as a commutative polynomial (includes the (-1)^{n(lambda)} sign).
inline poly::Polynomial u_minus_poly(const Multipartition& mp, const ParamBinding& b) {
    int n = mp.size();
    poly::Polynomial p = poly::Polynomial::constant(n, mp.n_stat() % 2 == 0 ? 1 : -1);
    std::vector<int> a = mp.a_list();
    for (int i = 2; i <= mp.m(); ++i)
        for (int k = 1; k <= a[size_t(i) - 1]; ++k)
            p = p * poly::Polynomial::linear(n, k, b.q_at(mp.m() - i + 1));
    return p;
}

struct LeadingTermReport {
    Multipartition shape;
    bool is_signed_monomial = false;  // top component == eps * x_1^{m-1}..x_n^{m-1}
    bool orders_agree = false;
    int eps = 0;
    bool matches_n = false;
    bool matches_n_bar = false;
};

inline LeadingTermReport leading_term_check(const Multipartition& mp, const ParamBinding& b) {
    LeadingTermReport rep;
    rep.shape = mp;
    int n = mp.size();
    int m = mp.m();
    Multipartition bar = conjugate(mp);
    SpecialTableaux sp = special_tableaux(mp);
    SpecialTableaux spBar = special_tableaux(bar);
    // the group element w acts on the polynomial model through w^{-1}
    Perm sigma = sp.w_lambda.inverse();
    Perm sigmaBar = spBar.w_lambda.inverse();

    poly::Polynomial up = u_plus_poly(mp, b);
    poly::Polynomial um = u_minus_poly(bar, b);
    poly::Polynomial p1 = up * um.relabel(sigma);
    poly::Polynomial p2 = up.relabel(sigmaBar) * um;

    int degree = (m - 1) * n;
    poly::Polynomial top1 = p1.graded_part(degree);
    poly::Polynomial top2 = p2.graded_part(degree);

    poly::Monomial target(size_t(n), m - 1);
    auto signed_monomial = [&](const poly::Polynomial& p, int& eps) {
        if (p.terms.size() != 1) return false;
        const auto& [mono, c] = *p.terms.begin();
        if (mono != target) return false;
        if (c == 1) eps = 1;
        else if (c == -1) eps = -1;
        else return false;
        return true;
    };
    int e1 = 0, e2 = 0;
    bool ok1 = signed_monomial(top1, e1);
    bool ok2 = signed_monomial(top2, e2);
    rep.is_signed_monomial = ok1 && ok2;
    rep.orders_agree = ok1 && ok2 && e1 == e2;
    rep.eps = ok1 ? e1 : 0;
    rep.matches_n = rep.is_signed_monomial && ((mp.n_stat() % 2 == 0) == (rep.eps == 1));
    rep.matches_n_bar = rep.is_signed_monomial && ((bar.n_stat() % 2 == 0) == (rep.eps == 1));
    return rep;
}

// The z-based idempotent: eps . z_lambda w_{conj(lambda)} / (gamma_{t_lambda}
// bar(gamma_{t^{conj(lambda)}})) squares to itself for a measured eps in
// {-1, +1}.  Whether it moreover equals F_{t^lambda} is measured, not assumed;
// the report also measures z_lambda against gamma-bar f_{t^lambda t_lambda}
// and the variant with Psi_{t_lambda}* in place of its Bruhat-leading term
// w_{conj(lambda)}, which restores the equality when the two differ.
struct ZIdempotentReport {
    Multipartition shape;
    int eps = 0;                  // idempotency sign; 0 when no sign works
    bool equals_f = false;        // eps * z w_bar / (g g_bar) == F_{t^lambda}
    int z_sign = 0;               // z == z_sign * bar(gamma) * f_{t^lambda t_lambda}
    bool psi_star_equals_f = false;  // z_sign * z Psi_{t_lambda}* / (g g_bar) == F
};

inline ZIdempotentReport z_idempotent(const Algebra& alg,
                                      const std::vector<std::vector<Residue>>& rsets,
                                      const Multipartition& mp) {
    ZIdempotentReport rep;
    rep.shape = mp;
    const ParamBinding& b = alg.binding();
    Multipartition bar = conjugate(mp);
    Tableau ttop = row_reading_tableau(mp);
    Tableau tbot = column_reading_tableau(mp);
    Rational gtl = gamma_closed(tbot).evaluate(b);
    Rational gbar = bar_scalar(gamma_base(bar), alg.m()).evaluate(b);
    Rational denom = gtl * gbar;
    if (denom == 0) throw NonGenericBindingError("gamma_{t_lambda} * bar(gamma) vanishes");
    Element z = z_lambda(alg, mp);
    Perm wbar = special_tableaux(bar).w_lambda;
    Element y = alg.mul(z, alg.perm_element(wbar)) * (1 / denom);
    Element ysq = alg.mul(y, y);
    if (ysq == y) rep.eps = 1;
    else if (ysq == -y) rep.eps = -1;
    Element f = f_projector(alg, rsets, ttop);
    if (rep.eps != 0) rep.equals_f = (y * Rational(rep.eps)) == f;

    // z against its f-slot, and the Phi* variant
    Element fmix = alg.mul(alg.mul(m_lambda(alg, mp), alg.perm_element(d_perm(tbot))),
                           f_projector(alg, rsets, tbot));
    fmix = alg.mul(f, fmix);
    Element ref = fmix * gbar;
    if (z == ref) rep.z_sign = 1;
    else if (z == -ref) rep.z_sign = -1;
    if (rep.z_sign != 0) {
        Element psiStar = alg.star(phi_psi(alg, tbot).psi);
        Element yc = alg.mul(z, psiStar) * (Rational(rep.z_sign) / denom);
        rep.psi_star_equals_f = yc == f;
    }
    return rep;
}

}  // namespace hecke
