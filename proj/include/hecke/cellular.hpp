#pragma once

#include "hecke/algebra.hpp"

namespace hecke {

// Enumerate the row stabilizer S_lambda of t^lambda (rows of t^lambda are
// consecutive entry ranges, so S_lambda is a direct product of symmetric
// groups on those ranges).
inline std::vector<Perm> row_stabilizer(const Multipartition& mp) {
    int n = mp.size();
    std::vector<std::pair<int, int>> ranges;  // [start, len], entries start..start+len-1
    int start = 1;
    for (const auto& p : mp.comps)
        for (int len : p) {
            if (len > 1) ranges.emplace_back(start, len);
            start += len;
        }
    std::vector<Perm> out{Perm::identity(n)};
    for (const auto& [s, len] : ranges) {
        std::vector<int> vals(size_t(len), 0);
        std::iota(vals.begin(), vals.end(), s);
        std::vector<Perm> next;
        std::vector<int> arrangement = vals;
        do {
            for (const Perm& base : out) {
                Perm w = base;
                for (int i = 0; i < len; ++i) w.img[size_t(s + i) - 1] = arrangement[size_t(i)];
                next.push_back(std::move(w));
            }
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        out = std::move(next);
    }
    return out;
}

// m_lambda = x_lambda u_lambda^+ with x_lambda = sum_{w in S_lambda} w and
// u_lambda^+ = prod_{i=2}^m prod_{k=1}^{a_i} (x_k - q_i).
inline Element m_lambda(const Algebra& alg, const Multipartition& mp) {
    if (mp.size() != alg.n() || mp.m() != alg.m())
        throw ShapeMismatchError("m_lambda: shape does not match algebra");
    Element e = alg.zero();
    for (const Perm& w : row_stabilizer(mp)) e += alg.perm_element(w);
    std::vector<int> a = mp.a_list();
    for (int i = 2; i <= mp.m(); ++i)
        for (int k = 1; k <= a[size_t(i) - 1]; ++k)
            e = alg.mul_left_x_shift(k, alg.binding().q_at(i), e);
    return e;
}

inline Element m_st(const Algebra& alg, const Element& mlam, const Tableau& s, const Tableau& t) {
    if (s.shape != t.shape) throw ShapeMismatchError("m_st: shapes differ");
    Element e = alg.mul(alg.perm_element(d_perm(s).inverse()), mlam);
    return alg.mul(e, alg.perm_element(d_perm(t)));
}

inline Element m_st(const Algebra& alg, const Tableau& s, const Tableau& t) {
    return m_st(alg, m_lambda(alg, s.shape), s, t);
}

// ---------------------------------------------------------------------------
// The Murphy basis as a change of basis of the regular representation.
// Builds the full transition matrix PBW <- {m_st} once and caches its LU.

struct CellularIndex {
    int shape;  // index into shapes()
    int s;      // index into tableaux(shape)
    int t;
};

class CellularBasis {
  public:
    explicit CellularBasis(const Algebra& alg) : alg_(&alg) {
        shapes_ = multipartitions(alg.m(), alg.n());
        tabs_.reserve(shapes_.size());
        for (const auto& sh : shapes_) tabs_.push_back(standard_tableaux(sh));
        offsets_.resize(shapes_.size());
        int off = 0;
        for (size_t i = 0; i < shapes_.size(); ++i) {
            offsets_[i] = off;
            off += int(tabs_[i].size()) * int(tabs_[i].size());
        }
        dim_ = off;
        if (long(dim_) != alg.dimension())
            throw SingularTransitionError("cellular index count != algebra dimension");
        basis_keys_ = alg.basis();
        for (size_t i = 0; i < basis_keys_.size(); ++i) key_index_[basis_keys_[i]] = int(i);

        mst_.resize(size_t(dim_));
        mlam_.resize(shapes_.size());
        for (size_t sh = 0; sh < shapes_.size(); ++sh) mlam_[sh] = m_lambda(alg, shapes_[sh]);
        parallel_for(shapes_.size(), [&](size_t sh) {
            const auto& tabs = tabs_[sh];
            int d = int(tabs.size());
            for (int si = 0; si < d; ++si)
                for (int ti = 0; ti < d; ++ti)
                    mst_[size_t(offsets_[sh] + si * d + ti)] =
                        m_st(alg, mlam_[sh], tabs[size_t(si)], tabs[size_t(ti)]);
        });
    }

    const Algebra& algebra() const { return *alg_; }
    int dim() const { return dim_; }
    const std::vector<Multipartition>& shapes() const { return shapes_; }
    const std::vector<Tableau>& tableaux(int shape) const { return tabs_[size_t(shape)]; }
    const Element& m_lambda_of(int shape) const { return mlam_[size_t(shape)]; }

    int shape_index(const Multipartition& mp) const {
        for (size_t i = 0; i < shapes_.size(); ++i)
            if (shapes_[i] == mp) return int(i);
        throw ShapeMismatchError("shape not in P(m,n): " + mp.to_string());
    }

    int tableau_index(int shape, const Tableau& t) const {
        const auto& tabs = tabs_[size_t(shape)];
        for (size_t i = 0; i < tabs.size(); ++i)
            if (tabs[i] == t) return int(i);
        throw ShapeMismatchError("tableau not standard for shape");
    }

    int flat_index(int shape, int s, int t) const {
        int d = int(tabs_[size_t(shape)].size());
        return offsets_[size_t(shape)] + s * d + t;
    }

    CellularIndex unflatten(int idx) const {
        for (size_t sh = 0; sh < shapes_.size(); ++sh) {
            int d = int(tabs_[sh].size());
            int span = d * d;
            if (idx < offsets_[sh] + span) {
                int local = idx - offsets_[sh];
                return CellularIndex{int(sh), local / d, local % d};
            }
        }
        throw IndexError("cellular index out of range");
    }

    const Element& m_st_at(int shape, int s, int t) const {
        return mst_[size_t(flat_index(shape, s, t))];
    }

    std::vector<Rational> pbw_coordinates(const Element& h) const {
        std::vector<Rational> v(size_t(dim_), Rational(0));
        for (const auto& [k, c] : h.terms) {
            auto it = key_index_.find(k);
            if (it == key_index_.end()) throw IndexError("element key outside basis");
            v[size_t(it->second)] = c;
        }
        return v;
    }

    // exact coefficients of h over the full cellular index set
    std::vector<Rational> expand(const Element& h) const {
        ensure_lu();
        return lu_->solve(pbw_coordinates(h));
    }

    // Adopt an externally cached factorization (content validated upstream);
    // falls back to recomputation when the shapes do not line up.
    bool adopt_lu(LuDecomposition lu) {
        if (lu.dim() != dim_) return false;
        std::lock_guard<std::mutex> lock(lu_mutex_);
        lu_ = std::make_shared<LuDecomposition>(std::move(lu));
        return true;
    }

    std::shared_ptr<const LuDecomposition> lu() const {
        ensure_lu();
        std::lock_guard<std::mutex> lock(lu_mutex_);
        return lu_;
    }

  private:
    const Algebra* alg_;
    std::vector<Multipartition> shapes_;
    std::vector<std::vector<Tableau>> tabs_;
    std::vector<int> offsets_;
    std::vector<Element> mlam_;
    std::vector<Element> mst_;
    std::vector<BasisKey> basis_keys_;
    std::map<BasisKey, int> key_index_;
    int dim_ = 0;
    mutable std::shared_ptr<LuDecomposition> lu_;
    mutable std::mutex lu_mutex_;

    void ensure_lu() const {
        {
            std::lock_guard<std::mutex> lock(lu_mutex_);
            if (lu_) return;
        }
        Matrix m(dim_, dim_);
        for (int col = 0; col < dim_; ++col) {
            std::vector<Rational> coords = pbw_coordinates(mst_[size_t(col)]);
            for (int row = 0; row < dim_; ++row) m.at(row, col) = coords[size_t(row)];
        }
        auto lu = std::make_shared<LuDecomposition>(m);
        if (lu->singular())
            throw SingularTransitionError("cellular transition matrix is singular");
        std::lock_guard<std::mutex> lock(lu_mutex_);
        if (!lu_) lu_ = std::move(lu);
    }
};

// <m_s, m_t> on the Specht module: the coefficient of m_{t^lambda t^lambda}
// in m_{t^lambda s} m_{t t^lambda}.  Validates the cellular support property
// (other shape-lambda coefficients vanish, all shapes involved dominate).
inline Rational bilinear_form(const CellularBasis& cb, int shape, int s, int t) {
    const Algebra& alg = cb.algebra();
    const auto& tabs = cb.tableaux(shape);
    int d = int(tabs.size());
    if (s < 0 || s >= d || t < 0 || t >= d) throw RangeError("bilinear_form: tableau index");
    Element prod = alg.mul(cb.m_st_at(shape, 0, s), cb.m_st_at(shape, t, 0));
    std::vector<Rational> coeffs = cb.expand(prod);
    Rational value;
    for (int idx = 0; idx < cb.dim(); ++idx) {
        if (coeffs[size_t(idx)] == 0) continue;
        CellularIndex ci = cb.unflatten(idx);
        if (ci.shape == shape) {
            if (ci.s == 0 && ci.t == 0) {
                value = coeffs[size_t(idx)];
            } else {
                throw SingularTransitionError("bilinear form: unexpected shape-level support");
            }
        } else if (!dominates(cb.shapes()[size_t(ci.shape)], cb.shapes()[size_t(shape)])) {
            throw SingularTransitionError("bilinear form: support below lambda in dominance");
        }
    }
    return value;
}

// Per-shape bundle: generator action matrices on {m_t}, JM matrices, Gram data.
struct SpechtData {
    Multipartition shape;
    std::vector<Tableau> tableaux;
    std::vector<Matrix> gen_s;  // action of s_0 .. s_{n-1}
    std::vector<Matrix> jm_x;   // action of x_1 .. x_n
    Matrix gram;
    Rational gram_det;
};

// Action of h on the Specht basis {m_t}: column t holds the coefficients of
// h . m_{t t^lambda} on the m_{a t^lambda}, read off modulo higher shapes.
inline Matrix specht_matrix(const CellularBasis& cb, int shape, const Element& h) {
    const Algebra& alg = cb.algebra();
    int d = int(cb.tableaux(shape).size());
    Matrix m(d, d);
    for (int t = 0; t < d; ++t) {
        Element prod = alg.mul(h, cb.m_st_at(shape, t, 0));
        std::vector<Rational> coeffs = cb.expand(prod);
        for (int a = 0; a < d; ++a) m.at(a, t) = coeffs[size_t(cb.flat_index(shape, a, 0))];
    }
    return m;
}

inline SpechtData specht_action(const CellularBasis& cb, int shape) {
    const Algebra& alg = cb.algebra();
    SpechtData sd;
    sd.shape = cb.shapes()[size_t(shape)];
    sd.tableaux = cb.tableaux(shape);
    for (int i = 0; i < alg.n(); ++i) sd.gen_s.push_back(specht_matrix(cb, shape, alg.gen_s(i)));
    for (int k = 1; k <= alg.n(); ++k) sd.jm_x.push_back(specht_matrix(cb, shape, alg.gen_x(k)));
    int d = int(sd.tableaux.size());
    sd.gram = Matrix(d, d);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) sd.gram.at(s, t) = bilinear_form(cb, shape, s, t);
    LuDecomposition lu(sd.gram);
    sd.gram_det = lu.singular() ? Rational(0) : lu.determinant();
    return sd;
}

inline std::pair<Matrix, Rational> gram(const CellularBasis& cb, int shape) {
    int d = int(cb.tableaux(shape).size());
    Matrix g(d, d);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) g.at(s, t) = bilinear_form(cb, shape, s, t);
    LuDecomposition lu(g);
    return {g, lu.singular() ? Rational(0) : lu.determinant()};
}

}  // namespace hecke
