#pragma once

#include "hecke/dual.hpp"

namespace hecke {

// s_lambda(Q) = 1/tau(F_{t^lambda}).
inline Rational schur_via_tau(const Algebra& alg,
                              const std::vector<std::vector<Residue>>& rsets,
                              const Multipartition& mp) {
    Element f = f_projector(alg, rsets, row_reading_tableau(mp));
    Rational t = alg.tau(f);
    if (t == 0) throw ZeroTraceError("tau(F_{t^lambda}) = 0");
    return 1 / t;
}

// s_lambda(Q) = (-1)^{n(lambda)} gamma_{t_lambda} bar(gamma_{t^{conj(lambda)}}),
// with gamma_{t_lambda} by the addable/removable product and the barred factor
// from the base formula at the conjugate shape.
inline FactoredScalar schur_via_gamma(const Multipartition& mp) {
    Multipartition bar = conjugate(mp);
    FactoredScalar g = gamma_closed(column_reading_tableau(mp));
    FactoredScalar gb = bar_scalar(gamma_base(bar), mp.m());
    FactoredScalar s = g * gb;
    if (mp.n_stat() % 2 != 0) s.scale(-1);
    return s;
}

// Hook/leg closed formula for gamma_{t_lambda}: prod h/leg over the diagram
// times, per node (i,j,s) and component t > s, the tail
//   (j-i+q_s-lambda^t_1-q_t)
//   prod_{k=1}^{lambda^t_1} (j-i+q_s-k+1+conj(lambda^t)_k-q_t)
//                          /(j-i+q_s-k+conj(lambda^t)_k-q_t).
inline FactoredScalar gamma_tlam_closed(const Multipartition& mp) {
    FactoredScalar g = FactoredScalar::one();
    int m = mp.m();
    std::vector<Partition> conj_comps;
    conj_comps.reserve(size_t(m));
    for (const auto& p : mp.comps) conj_comps.push_back(conjugate_partition(p));
    for (int s = 1; s <= m; ++s) {
        const Partition& p = mp.comps[size_t(s) - 1];
        for (int i = 1; i <= int(p.size()); ++i) {
            for (int j = 1; j <= p[size_t(i) - 1]; ++j) {
                auto [h, leg] = hooks(mp, Node{i, j, s});
                g.mul_factor(h, 0, 0);
                g.mul_factor(leg, 0, 0, -1);
                for (int t = s + 1; t <= m; ++t) {
                    const Partition& pt = mp.comps[size_t(t) - 1];
                    const Partition& ct = conj_comps[size_t(t) - 1];
                    int top = pt.empty() ? 0 : pt[0];
                    g.mul_factor(j - i - top, s, t);
                    for (int k = 1; k <= top; ++k) {
                        int col = ct[size_t(k) - 1];
                        g.mul_factor(j - i - k + 1 + col, s, t);
                        g.mul_factor(j - i - k + col, s, t, -1);
                    }
                }
            }
        }
    }
    return g;
}

// The closed Schur formula: hook product times the cross-component factors
//   X_{st} = prod_{(k,l) in lambda^t} (l-k+q_t-q_s)
//            prod_{(i,j) in lambda^s} (j-i+q_s-lambda^t_1-q_t)
//              prod_{r=1}^{lambda^t_1} (j-i+q_s-r+1+conj(lambda^t)_r-q_t)
//                                     /(j-i+q_s-r+conj(lambda^t)_r-q_t).
inline FactoredScalar schur_closed(const Multipartition& mp) {
    FactoredScalar s = FactoredScalar::one();
    int m = mp.m();
    for (const Node& nd : mp.nodes()) s.mul_factor(hooks(mp, nd).first, 0, 0);
    std::vector<Partition> conj_comps;
    conj_comps.reserve(size_t(m));
    for (const auto& p : mp.comps) conj_comps.push_back(conjugate_partition(p));
    for (int cs = 1; cs <= m; ++cs) {
        for (int ct = cs + 1; ct <= m; ++ct) {
            const Partition& pt = mp.comps[size_t(ct) - 1];
            for (int k = 1; k <= int(pt.size()); ++k)
                for (int l = 1; l <= pt[size_t(k) - 1]; ++l) s.mul_factor(l - k, ct, cs);
            const Partition& ps = mp.comps[size_t(cs) - 1];
            const Partition& cc = conj_comps[size_t(ct) - 1];
            int top = pt.empty() ? 0 : pt[0];
            for (int i = 1; i <= int(ps.size()); ++i) {
                for (int j = 1; j <= ps[size_t(i) - 1]; ++j) {
                    s.mul_factor(j - i - top, cs, ct);
                    for (int r = 1; r <= top; ++r) {
                        int col = cc[size_t(r) - 1];
                        s.mul_factor(j - i - r + 1 + col, cs, ct);
                        s.mul_factor(j - i - r + col, cs, ct, -1);
                    }
                }
            }
        }
    }
    return s;
}

// G(lambda) = prod over standard tableaux of gamma_t, symbolically.
inline FactoredScalar gram_det_closed(const Multipartition& mp) {
    GammaTable gt = gamma_seminormal(mp);
    FactoredScalar g = FactoredScalar::one();
    for (const auto& x : gt.symbolic) g = g * x;
    return g;
}

// ---------------------------------------------------------------------------
// Route agreement records.

struct SchurRecord {
    Multipartition shape;
    Rational s_via_tau;
    FactoredScalar s_via_gamma;
    FactoredScalar s_closed;
    bool consistent = false;
};

inline SchurRecord schur_record(const Algebra& alg,
                                const std::vector<std::vector<Residue>>& rsets,
                                const Multipartition& mp) {
    SchurRecord r;
    r.shape = mp;
    r.s_via_tau = schur_via_tau(alg, rsets, mp);
    r.s_via_gamma = schur_via_gamma(mp);
    r.s_closed = schur_closed(mp);
    const ParamBinding& b = alg.binding();
    r.consistent = r.s_via_gamma.evaluate(b) == r.s_via_tau &&
                   r.s_closed.evaluate(b) == r.s_via_tau;
    return r;
}

// Literal palindromy bar(s_lambda) = s_{conj(lambda)}.  The trace form picks
// up (-1)^{(m-1)n} under the bar involution (every x-exponent and word letter
// flips sign), so the literal identity holds exactly when (m-1)n is even;
// the signed form below holds always.
inline bool palindromy_holds(const Multipartition& mp) {
    return bar_scalar(schur_via_gamma(mp), mp.m()) == schur_via_gamma(conjugate(mp));
}

inline bool palindromy_signed_holds(const Multipartition& mp) {
    FactoredScalar lhs = bar_scalar(schur_via_gamma(mp), mp.m());
    if (((mp.m() - 1) * mp.size()) % 2 != 0) lhs.scale(-1);
    return lhs == schur_via_gamma(conjugate(mp));
}

// tau(h) = sum_lambda chi^lambda(h)/s_lambda(Q) over every PBW basis element.
inline bool weight_decomposition_holds(const Algebra& alg,
                                       const std::vector<std::vector<Residue>>& rsets) {
    auto shapes = multipartitions(alg.m(), alg.n());
    std::vector<SeminormalRep> reps;
    std::vector<Rational> weights;  // 1/s_lambda
    for (const auto& sh : shapes) {
        reps.push_back(seminormal_rep(sh, alg.binding()));
        weights.push_back(1 / schur_via_tau(alg, rsets, sh));
    }
    std::vector<BasisKey> keys = alg.basis();
    std::atomic<long> bad{0};
    parallel_for(keys.size(), [&](size_t ki) {
        Element h = alg.basis_element(keys[ki]);
        Rational sum;
        for (size_t i = 0; i < shapes.size(); ++i) sum += weights[i] * character(reps[i], h);
        if (sum != alg.tau(h)) ++bad;
    });
    return bad == 0;
}

inline std::vector<SchurRecord> consistency_report(const Algebra& alg,
                                                   const std::vector<std::vector<Residue>>& rsets) {
    auto shapes = multipartitions(alg.m(), alg.n());
    std::vector<SchurRecord> out(shapes.size());
    parallel_for(shapes.size(), [&](size_t i) { out[i] = schur_record(alg, rsets, shapes[i]); });
    return out;
}

}  // namespace hecke
