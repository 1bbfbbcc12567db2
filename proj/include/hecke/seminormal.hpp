#pragma once

#include "hecke/cellular.hpp"

namespace hecke {

// R(k) for k = 1..n in one enumeration pass over all shapes and tableaux.
inline std::vector<std::vector<Residue>> residue_sets(int m, int n) {
    std::vector<std::set<Residue>> acc{size_t(n)};
    for (const auto& shape : multipartitions(m, n))
        for (const auto& t : standard_tableaux(shape))
            for (int k = 1; k <= n; ++k) acc[size_t(k) - 1].insert(t.residue(k));
    std::vector<std::vector<Residue>> out;
    out.reserve(size_t(n));
    for (auto& s : acc) out.emplace_back(s.begin(), s.end());
    return out;
}

// Residue separation: distinct (d, c) pairs in each R(k) must evaluate to
// distinct rationals, otherwise the spectral projectors are undefined.
inline void check_residue_separation(const ParamBinding& b,
                                     const std::vector<std::vector<Residue>>& rsets) {
    for (const auto& rk : rsets) {
        for (size_t i = 0; i < rk.size(); ++i)
            for (size_t j = i + 1; j < rk.size(); ++j) {
                if (b.residue_value(rk[i]) == b.residue_value(rk[j])) {
                    LinearFactor f{rk[i].d - rk[j].d, rk[i].c, rk[j].c};
                    throw NonGenericBindingError(f.to_string());
                }
            }
    }
}

// F_t = prod_k prod_{c in R(k), c != res_t(k)} (x_k - c)/(res_t(k) - c),
// built factor by factor with intermediate normalization.
inline Element f_projector(const Algebra& alg, const std::vector<std::vector<Residue>>& rsets,
                           const Tableau& t) {
    const ParamBinding& b = alg.binding();
    Element e = alg.identity();
    for (int k = 1; k <= alg.n(); ++k) {
        Residue rt = t.residue(k);
        Rational vt = b.residue_value(rt);
        for (const Residue& c : rsets[size_t(k) - 1]) {
            if (c == rt) continue;
            Rational vc = b.residue_value(c);
            if (vt == vc) {
                LinearFactor f{rt.d - c.d, rt.c, c.c};
                throw NonGenericBindingError(f.to_string());
            }
            e = alg.mul_left_x_shift(k, vc, e) * (1 / (vt - vc));
        }
    }
    return e;
}

inline Element f_st(const CellularBasis& cb, const std::vector<std::vector<Residue>>& rsets,
                    int shape, int s, int t) {
    const Algebra& alg = cb.algebra();
    const auto& tabs = cb.tableaux(shape);
    Element fs = f_projector(alg, rsets, tabs[size_t(s)]);
    Element ft = f_projector(alg, rsets, tabs[size_t(t)]);
    return alg.mul(alg.mul(fs, cb.m_st_at(shape, s, t)), ft);
}

// ---------------------------------------------------------------------------
// Gamma coefficients.

// Base value gamma_{t^lambda} = lambda! prod_{s<t} prod_{(i,j) in lambda^s}
// (j - i + q_s - q_t).
inline FactoredScalar gamma_base(const Multipartition& mp) {
    FactoredScalar g(mp.factorial_stat());
    for (int s = 1; s <= mp.m(); ++s) {
        const Partition& p = mp.comps[size_t(s) - 1];
        for (int r = 1; r <= int(p.size()); ++r)
            for (int j = 1; j <= p[size_t(r) - 1]; ++j)
                for (int t = s + 1; t <= mp.m(); ++t) g.mul_factor(j - r, s, t);
    }
    return g;
}

// One recursion step: s = t(i,i+1) dominates t, and
// gamma_t = (D+1)(D-1)/D^2 gamma_s with D = res_t(i) - res_s(i).
inline FactoredScalar gamma_step(const Tableau& s, const Tableau& t, int i) {
    Residue rt = t.residue(i), rs = s.residue(i);
    int dd = rt.d - rs.d;
    FactoredScalar f = FactoredScalar::one();
    f.mul_factor(dd + 1, rt.c, rs.c);
    f.mul_factor(dd - 1, rt.c, rs.c);
    f.mul_factor(dd, rt.c, rs.c, -2);
    return f;
}

struct GammaTable {
    Multipartition shape;
    std::vector<Tableau> tableaux;
    std::vector<FactoredScalar> symbolic;
    std::vector<Rational> value;  // evaluated at the binding (empty if unbound)
};

// Symbolic gamma for every standard tableau, walking the chain of adjacent
// transpositions along the canonical reduced word of d(t).
inline GammaTable gamma_seminormal(const Multipartition& mp, const ParamBinding* binding = nullptr) {
    GammaTable gt;
    gt.shape = mp;
    gt.tableaux = standard_tableaux(mp);
    FactoredScalar base = gamma_base(mp);
    for (const Tableau& t : gt.tableaux) {
        std::vector<int> word = d_perm(t).reduced_word();
        FactoredScalar g = base;
        Tableau cur = row_reading_tableau(mp);
        for (int letter : word) {
            Tableau next = cur.swap_entries(letter);
            if (!next.standard())
                throw HeckeError("gamma chain left the standard tableaux");
            g = g * gamma_step(cur, next, letter);
            cur = next;
        }
        if (cur != t) throw HeckeError("gamma chain did not reach target tableau");
        gt.symbolic.push_back(std::move(g));
    }
    if (binding) {
        for (const auto& g : gt.symbolic) gt.value.push_back(g.evaluate(*binding));
    }
    return gt;
}

// Closed addable/removable product for gamma_t.
inline FactoredScalar gamma_closed(const Tableau& t) {
    FactoredScalar g = FactoredScalar::one();
    for (int i = 1; i <= t.n(); ++i) {
        Residue ri = t.residue(i);
        AddableRemovable ar = addable_removable(t, i);
        for (const Node& x : ar.addable) g.mul_residue_diff(ri, node_residue(x));
        for (const Node& y : ar.removable) g.mul_residue_diff(ri, node_residue(y), -1);
    }
    return g;
}

// gamma_t extracted from f_tt . f_tt = gamma_t f_tt.
inline Rational gamma_direct(const Algebra& alg, const Element& ftt) {
    if (ftt.is_zero()) throw ZeroTraceError("gamma_direct: f_tt vanished");
    Element sq = alg.mul(ftt, ftt);
    const auto& [k0, c0] = *ftt.terms.begin();
    Rational g = sq.coefficient(k0) / c0;
    if (sq != ftt * g) throw HeckeError("gamma_direct: f_tt^2 not proportional to f_tt");
    return g;
}

// ---------------------------------------------------------------------------
// The seminormal representation, built from tableau combinatorics alone.

struct SeminormalRep {
    Multipartition shape;
    std::vector<Tableau> tableaux;
    std::vector<Matrix> rho_s;  // rho(s_0) .. rho(s_{n-1}); rho(s_0) = rho(x_1)
    std::vector<Matrix> rho_x;  // rho(x_1) .. rho(x_n), diagonal

    int dim() const { return int(tableaux.size()); }

    Matrix of_perm(const Perm& w) const {
        Matrix m = Matrix::identity(dim());
        for (int letter : w.reduced_word()) m = m * rho_s[size_t(letter)];
        return m;
    }

    Matrix of_element(const Element& e) const {
        const Algebra& alg = *e.alg;
        Matrix acc(dim(), dim());
        for (const auto& [key, c] : e.terms) {
            Matrix term = Matrix::identity(dim());
            for (int k = 1; k <= alg.n(); ++k)
                for (int p = 0; p < int(key.exps[size_t(k) - 1]); ++p) term = term * rho_x[size_t(k) - 1];
            term = term * of_perm(alg.unpack_perm(key));
            acc = acc + term.scaled(c);
        }
        return acc;
    }
};

inline SeminormalRep seminormal_rep(const Multipartition& mp, const ParamBinding& b) {
    SeminormalRep rep;
    rep.shape = mp;
    rep.tableaux = standard_tableaux(mp);
    int d = rep.dim();
    int n = mp.size();
    for (int k = 1; k <= n; ++k) {
        Matrix m(d, d);
        for (int idx = 0; idx < d; ++idx)
            m.at(idx, idx) = b.residue_value(rep.tableaux[size_t(idx)].residue(k));
        rep.rho_x.push_back(std::move(m));
    }
    rep.rho_s.push_back(rep.rho_x[0]);  // s_0 acts as x_1
    std::map<std::vector<Node>, int> index;
    for (int idx = 0; idx < d; ++idx) index[rep.tableaux[size_t(idx)].pos] = idx;
    for (int i = 1; i < n; ++i) {
        Matrix m(d, d);
        for (int sidx = 0; sidx < d; ++sidx) {
            const Tableau& s = rep.tableaux[size_t(sidx)];
            Node n1 = s.node_of(i), n2 = s.node_of(i + 1);
            Tableau t = s.swap_entries(i);
            if (!t.standard()) {
                bool same_row = n1.comp == n2.comp && n1.row == n2.row;
                m.at(sidx, sidx) = same_row ? 1 : -1;
                continue;
            }
            int tidx = index.at(t.pos);
            Rational delta = b.residue_value(t.residue(i)) - b.residue_value(s.residue(i));
            if (delta == 0) {
                Residue rt = t.residue(i), rs = s.residue(i);
                throw NonGenericBindingError(LinearFactor{rt.d - rs.d, rt.c, rs.c}.to_string());
            }
            m.at(sidx, sidx) = 1 / delta;
            bool s_dominant = d_perm(s).length() < d_perm(t).length();
            m.at(tidx, sidx) = s_dominant ? Rational(1) : (delta * delta - 1) / (delta * delta);
        }
        rep.rho_s.push_back(std::move(m));
    }
    return rep;
}

inline Rational character(const SeminormalRep& rep, const Element& h) {
    Matrix m = rep.of_element(h);
    Rational tr;
    for (int i = 0; i < rep.dim(); ++i) tr += m.at(i, i);
    return tr;
}

// ---------------------------------------------------------------------------
// Idempotent bundle over all standard tableaux of P(m, n).

struct IdempotentSet {
    std::vector<Multipartition> shapes;
    std::vector<std::vector<Tableau>> tableaux;   // per shape
    std::vector<std::vector<Element>> f_t;        // per shape, per tableau: F_t
    std::vector<Element> f_lambda;                // per shape: sum of F_t
};

inline IdempotentSet idempotents(const Algebra& alg,
                                 const std::vector<std::vector<Residue>>& rsets) {
    IdempotentSet out;
    out.shapes = multipartitions(alg.m(), alg.n());
    out.tableaux.resize(out.shapes.size());
    out.f_t.resize(out.shapes.size());
    out.f_lambda.assign(out.shapes.size(), alg.zero());
    for (size_t sh = 0; sh < out.shapes.size(); ++sh)
        out.tableaux[sh] = standard_tableaux(out.shapes[sh]);
    parallel_for(out.shapes.size(), [&](size_t sh) {
        for (const Tableau& t : out.tableaux[sh]) {
            Element f = f_projector(alg, rsets, t);
            out.f_lambda[sh] += f;
            out.f_t[sh].push_back(std::move(f));
        }
    });
    return out;
}

// Spectral facts about the JM elements: the product over R(k) annihilates,
// dropping any factor does not, and sum res_t(k) F_t reassembles x_k.
struct JmSpectralReport {
    bool min_poly_vanishes = true;
    bool min_poly_minimal = true;
    bool reassembly = true;
};

inline JmSpectralReport jm_spectral(const Algebra& alg,
                                    const std::vector<std::vector<Residue>>& rsets,
                                    const IdempotentSet& idem) {
    JmSpectralReport rep;
    for (int k = 1; k <= alg.n(); ++k) {
        const auto& rk = rsets[size_t(k) - 1];
        Element full = alg.identity();
        for (const Residue& c : rk) full = alg.mul_left_x_shift(k, alg.binding().residue_value(c), full);
        if (!full.is_zero()) rep.min_poly_vanishes = false;
        for (size_t drop = 0; drop < rk.size(); ++drop) {
            Element part = alg.identity();
            for (size_t j = 0; j < rk.size(); ++j) {
                if (j == drop) continue;
                part = alg.mul_left_x_shift(k, alg.binding().residue_value(rk[j]), part);
            }
            if (part.is_zero()) rep.min_poly_minimal = false;
        }
        Element sum = alg.zero();
        for (size_t sh = 0; sh < idem.shapes.size(); ++sh)
            for (size_t ti = 0; ti < idem.tableaux[sh].size(); ++ti)
                sum += idem.f_t[sh][ti] * alg.binding().residue_value(idem.tableaux[sh][ti].residue(k));
        if (sum != alg.gen_x(k)) rep.reassembly = false;
    }
    return rep;
}

}  // namespace hecke
