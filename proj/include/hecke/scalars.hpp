#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/common.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// Residues.  res = d + q_c with d the content shift j-i and c the component.

struct Residue {
    int d = 0;
    int c = 1;

    bool operator==(const Residue& o) const { return d == o.d && c == o.c; }
    bool operator!=(const Residue& o) const { return !(*this == o); }
    bool operator<(const Residue& o) const {
        return d != o.d ? d < o.d : c < o.c;
    }
};

// ---------------------------------------------------------------------------
// Linear factors d + q_s - q_t with the convention q_0 = 0.
//
// Canonical form: either t == 0 and s >= 1 (a pure factor d + q_s), or
// 1 <= s < t (a difference factor).  Constant factors (s == t) never appear;
// they fold into the rational coefficient of the enclosing FactoredScalar.

struct LinearFactor {
    int d = 0;
    int s = 0;
    int t = 0;

    bool operator==(const LinearFactor& o) const {
        return d == o.d && s == o.s && t == o.t;
    }
    bool operator<(const LinearFactor& o) const {
        if (s != o.s) return s < o.s;
        if (t != o.t) return t < o.t;
        return d < o.d;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        bool lead = true;
        if (d != 0) {
            os << d;
            lead = false;
        }
        if (s >= 1) {
            if (!lead) os << '+';
            os << 'q' << s;
            lead = false;
        }
        if (t >= 1) os << "-q" << t;
        if (lead) os << 0;
        os << ')';
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Concrete parameter values.

struct ParamBinding {
    int m = 1;
    int n = 1;
    std::vector<Rational> q;  // q[i-1] holds q_i
    bool generic = false;

    const Rational& q_at(int i) const {
        if (i < 1 || i > m) throw IndexError("component index out of range");
        return q[size_t(i) - 1];
    }

    Rational residue_value(const Residue& r) const { return Rational(r.d) + q_at(r.c); }

    bool operator==(const ParamBinding& o) const {
        return m == o.m && n == o.n && q == o.q;
    }

    std::string key_string() const {
        std::ostringstream os;
        os << m << ';' << n;
        for (const auto& v : q) os << ';' << rational_to_string(v);
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// FactoredScalar: coeff * prod factor^exponent, exponents in Z.
// Canonical equality is syntactic equality of the canonical form.

class FactoredScalar {
  public:
    FactoredScalar() : coeff_(0) {}
    explicit FactoredScalar(Rational c) : coeff_(std::move(c)) {}
    FactoredScalar(long num, long den) : coeff_(num, den) { coeff_.canonicalize(); }

    static FactoredScalar one() { return FactoredScalar(Rational(1)); }
    static FactoredScalar zero() { return FactoredScalar(); }

    const Rational& coeff() const { return coeff_; }
    const std::map<LinearFactor, int>& factors() const { return factors_; }
    bool is_zero() const { return coeff_ == 0; }

    void scale(const Rational& c) {
        coeff_ *= c;
        if (coeff_ == 0) factors_.clear();
    }

    // Multiply by (d + q_s - q_t)^exp, canonicalizing on the fly.  s == t
    // folds the integer constant into the coefficient; a reversed factor is
    // negated into canonical orientation with the sign absorbed.
    void mul_factor(int d, int s, int t, int exp = 1) {
        if (coeff_ == 0 || exp == 0) return;
        if (s == t) {
            if (d == 0) {
                if (exp < 0) throw DivisionByZeroError("zero constant factor with negative exponent");
                coeff_ = 0;
                factors_.clear();
                return;
            }
            Rational base(d);
            for (int k = 0; k < std::abs(exp); ++k) {
                if (exp > 0) coeff_ *= base;
                else coeff_ /= base;
            }
            return;
        }
        LinearFactor f;
        if ((t == 0 && s >= 1) || (s >= 1 && s < t)) {
            f = LinearFactor{d, s, t};
        } else {
            // d + q_s - q_t = -((-d) + q_t - q_s)
            f = LinearFactor{-d, t, s};
            if (exp % 2 != 0) coeff_ = -coeff_;
        }
        int& e = factors_[f];
        e += exp;
        if (e == 0) factors_.erase(f);
    }

    void mul_residue_diff(const Residue& a, const Residue& b, int exp = 1) {
        mul_factor(a.d - b.d, a.c, b.c, exp);
    }

    FactoredScalar operator*(const FactoredScalar& o) const {
        FactoredScalar r = *this;
        r.coeff_ *= o.coeff_;
        if (r.coeff_ == 0) {
            r.factors_.clear();
            return r;
        }
        for (const auto& [f, e] : o.factors_) {
            int& re = r.factors_[f];
            re += e;
            if (re == 0) r.factors_.erase(f);
        }
        return r;
    }

    FactoredScalar inverse() const {
        if (coeff_ == 0) throw DivisionByZeroError("inverse of zero scalar");
        FactoredScalar r(1 / coeff_);
        for (const auto& [f, e] : factors_) r.factors_[f] = -e;
        return r;
    }

    FactoredScalar operator/(const FactoredScalar& o) const { return *this * o.inverse(); }

    bool operator==(const FactoredScalar& o) const {
        return coeff_ == o.coeff_ && factors_ == o.factors_;
    }
    bool operator!=(const FactoredScalar& o) const { return !(*this == o); }

    int max_component_index() const {
        int mx = 0;
        for (const auto& [f, e] : factors_) mx = std::max(mx, std::max(f.s, f.t));
        return mx;
    }

    Rational evaluate(const ParamBinding& b) const {
        if (max_component_index() > b.m) throw IndexError("factor component exceeds binding");
        Rational v = coeff_;
        if (v == 0) return v;
        for (const auto& [f, e] : factors_) {
            Rational fv(f.d);
            if (f.s >= 1) fv += b.q_at(f.s);
            if (f.t >= 1) fv -= b.q_at(f.t);
            if (fv == 0) {
                if (e < 0) throw DivisionByZeroError("factor " + f.to_string() + " vanishes at binding");
                return Rational(0);
            }
            for (int k = 0; k < std::abs(e); ++k) {
                if (e > 0) v *= fv;
                else v /= fv;
            }
        }
        return v;
    }

    std::string to_string() const {
        if (coeff_ == 0) return "0";
        std::ostringstream os;
        bool lead = true;
        if (coeff_ != 1 || factors_.empty()) {
            os << rational_to_string(coeff_);
            lead = false;
        }
        for (const auto& [f, e] : factors_) {
            if (!lead) os << '*';
            os << f.to_string();
            if (e != 1) os << '^' << e;
            lead = false;
        }
        return os.str();
    }

  private:
    Rational coeff_;
    std::map<LinearFactor, int> factors_;
};

// ---------------------------------------------------------------------------
// The bar operation q_i -> -q_{m-i+1} on factored scalars.  Difference
// factors map to difference factors; a pure factor d + q_s maps to
// -((-d) + q_{m-s+1}), whose sign lands in the coefficient.

inline FactoredScalar bar_scalar(const FactoredScalar& fs, int m) {
    if (fs.max_component_index() > m) throw IndexError("bar: factor component exceeds m");
    FactoredScalar r(fs.coeff());
    for (const auto& [f, e] : fs.factors()) {
        if (f.t == 0) {
            r.mul_factor(-f.d, m - f.s + 1, 0, e);
            if (e % 2 != 0) r.scale(-1);
        } else {
            r.mul_factor(f.d, m - f.t + 1, m - f.s + 1, e);
        }
    }
    return r;
}

inline Residue bar_residue(const Residue& r, int m) {
    // bar(res) = -(( -d) + q_{m-c+1}) as a value; as a (d, c) pair the
    // negated residue is (-d, m-c+1).
    return Residue{-r.d, m - r.c + 1};
}

// ---------------------------------------------------------------------------
// Semisimplicity criterion P_H(Q) = n! prod_{i<j} prod_{|d|<n} (d + q_i - q_j).

inline FactoredScalar semisimplicity_poly(int m, int n) {
    if (m < 1 || n < 1) throw RangeError("semisimplicity_poly needs m, n >= 1");
    Rational nf = 1;
    for (int k = 2; k <= n; ++k) nf *= k;
    FactoredScalar p(nf);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            for (int d = -(n - 1); d <= n - 1; ++d) p.mul_factor(d, i, j);
    return p;
}

inline bool is_generic(const std::vector<Rational>& q, int m, int n) {
    ParamBinding b;
    b.m = m;
    b.n = n;
    b.q = q;
    return semisimplicity_poly(m, n).evaluate(b) != 0;
}

inline ParamBinding make_binding(int m, int n, std::vector<Rational> q) {
    if (m < 1 || n < 1) throw RangeError("binding needs m, n >= 1");
    if (int(q.size()) != m) throw SizeMismatchError("binding needs m parameter values");
    ParamBinding b;
    b.m = m;
    b.n = n;
    b.q = std::move(q);
    b.generic = is_generic(b.q, m, n);
    return b;
}

// q_i = (i-1)(2n+1): generic and residue-separating (distinct (d, c) pairs
// with |d| <= n-1 evaluate to distinct rationals).
inline ParamBinding default_binding(int m, int n) {
    std::vector<Rational> q;
    q.reserve(m);
    for (int i = 1; i <= m; ++i) q.emplace_back((i - 1) * (2 * n + 1));
    return make_binding(m, n, std::move(q));
}

}  // namespace hecke
