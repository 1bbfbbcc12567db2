#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "hecke/combinatorics.hpp"

namespace hecke {

// The rewriting engine keeps exponent vectors and one-line permutations in
// fixed-width packed keys; n beyond this limit is combinatorics-only territory.
constexpr int kMaxAlgebraN = 12;

// PBW basis key: x_1^{e_1} ... x_n^{e_n} . w with 0 <= e_k < m.
// perm is 0-based one-line notation padded with the identity.
struct BasisKey {
    std::array<uint8_t, kMaxAlgebraN> exps{};
    std::array<uint8_t, kMaxAlgebraN> perm{};

    BasisKey() {
        for (int i = 0; i < kMaxAlgebraN; ++i) perm[size_t(i)] = uint8_t(i);
    }

    bool operator==(const BasisKey& o) const { return exps == o.exps && perm == o.perm; }
    bool operator<(const BasisKey& o) const {
        if (exps != o.exps) return exps < o.exps;
        return perm < o.perm;
    }
};

struct BasisKeyHash {
    size_t operator()(const BasisKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < kMaxAlgebraN; ++i) {
            h = (h ^ k.exps[size_t(i)]) * 1099511628211ull;
            h = (h ^ k.perm[size_t(i)]) * 1099511628211ull;
        }
        return size_t(h);
    }
};

class Algebra;

// Sparse linear combination over the PBW basis.  Stored coefficients are
// always nonzero; the owning Algebra supplies the reduction tables.
struct Element {
    const Algebra* alg = nullptr;
    std::map<BasisKey, Rational> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const BasisKey& k, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (const auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }

    Element& operator-=(const Element& o) {
        for (const auto& [k, c] : o.terms) add_term(k, -c);
        return *this;
    }

    Element operator+(const Element& o) const {
        Element r = *this;
        r += o;
        return r;
    }

    Element operator-(const Element& o) const {
        Element r = *this;
        r -= o;
        return r;
    }

    Element operator*(const Rational& c) const {
        Element r;
        r.alg = alg;
        if (c == 0) return r;
        r.terms = terms;
        for (auto& [k, v] : r.terms) v *= c;
        return r;
    }

    Element operator-() const { return *this * Rational(-1); }

    bool operator==(const Element& o) const { return terms == o.terms; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    Rational coefficient(const BasisKey& k) const {
        auto it = terms.find(k);
        return it == terms.end() ? Rational(0) : it->second;
    }

    // max total polynomial degree over the terms (the filtration degree)
    int filtration_degree(int n) const {
        int d = 0;
        for (const auto& [k, c] : terms) {
            int s = 0;
            for (int i = 0; i < n; ++i) s += k.exps[size_t(i)];
            d = std::max(d, s);
        }
        return d;
    }
};

// ---------------------------------------------------------------------------
// The algebra H_{m,n}(Q) over a fixed binding.  Construction eagerly builds
// the reduction tables RED(j) = normal form of x_j^m by induction on j; after
// that the tables are read-only and multiplication is pure.

class Algebra {
  public:
    explicit Algebra(ParamBinding binding) : b_(std::move(binding)), n_(b_.n), m_(b_.m) {
        if (n_ < 1 || n_ > kMaxAlgebraN) throw RangeError("algebra size n out of supported range");
        if (m_ < 1) throw RangeError("algebra needs m >= 1");
        build_reduction_tables();
    }

    const ParamBinding& binding() const { return b_; }
    int n() const { return n_; }
    int m() const { return m_; }

    long dimension() const {
        long d = 1;
        for (int i = 0; i < n_; ++i) d *= m_;
        for (int i = 2; i <= n_; ++i) d *= i;
        return d;
    }

    Element zero() const {
        Element e;
        e.alg = this;
        return e;
    }

    Element identity() const { return monomial_term(std::vector<int>(size_t(n_), 0), Perm::identity(n_), 1); }

    Element scalar(const Rational& c) const {
        Element e = zero();
        if (c != 0) e.add_term(BasisKey{}, c);
        return e;
    }

    // g in {s_0, s_1, .., s_{n-1}}; s_0 is the cyclotomic generator x_1.
    Element gen_s(int i) const {
        if (i < 0 || i >= n_) throw IndexError("generator index out of range");
        if (i == 0) return gen_x(1);
        return perm_element(Perm::transposition(n_, i, i + 1));
    }

    Element gen_x(int k) const {
        if (k < 1 || k > n_) throw IndexError("JM index out of range");
        std::vector<int> e(size_t(n_), 0);
        e[size_t(k) - 1] = 1;
        return monomial_term(e, Perm::identity(n_), 1);
    }

    Element perm_element(const Perm& w) const {
        if (w.n() != n_) throw SizeMismatchError("perm size != n");
        Element e = zero();
        BasisKey k;
        pack_perm(w, k);
        e.add_term(k, 1);
        return e;
    }

    // Normal form of coeff * x^exps * w, reducing exponent overflow.
    Element monomial_term(const std::vector<int>& exps, const Perm& w, const Rational& coeff) const {
        Accumulator acc;
        BasisKey k;
        pack_perm(w, k);
        ExpArray ev{};
        for (int i = 0; i < n_; ++i) ev[size_t(i)] = exps[size_t(i)];
        reduce_accumulate(acc, ev, k.perm, coeff);
        return flush(acc);
    }

    Element mul(const Element& a, const Element& b) const {
        check_binding(a);
        check_binding(b);
        Accumulator acc;
        ExpArray exps{};
        std::array<uint8_t, kMaxAlgebraN> perm;
        for (const auto& [ka, ca] : a.terms) {
            for (const auto& [kb, cb] : b.terms) {
                Rational c = ca * cb;
                auto pushed = perm_times_monomial(ka.perm, kb.exps);
                for (const auto& [kt, ct] : pushed->terms) {
                    for (int i = 0; i < n_; ++i)
                        exps[size_t(i)] = int(kt.exps[size_t(i)]) + int(ka.exps[size_t(i)]);
                    compose(kt.perm, kb.perm, perm);
                    reduce_accumulate(acc, exps, perm, c * ct);
                }
            }
        }
        return flush(acc);
    }

    // x_k . a, the cheap left multiplication (exponent bump plus reduction).
    Element mul_left_x(int k, const Element& a) const {
        check_binding(a);
        if (k < 1 || k > n_) throw IndexError("JM index out of range");
        Accumulator acc;
        ExpArray exps{};
        for (const auto& [key, c] : a.terms) {
            for (int i = 0; i < n_; ++i) exps[size_t(i)] = key.exps[size_t(i)];
            ++exps[size_t(k) - 1];
            reduce_accumulate(acc, exps, key.perm, c);
        }
        return flush(acc);
    }

    // (x_k - c) . a
    Element mul_left_x_shift(int k, const Rational& c, const Element& a) const {
        return mul_left_x(k, a) - a * c;
    }

    // The * anti-automorphism: fixes x_k and s_j, reverses products.
    Element star(const Element& a) const {
        check_binding(a);
        Accumulator acc;
        for (const auto& [key, c] : a.terms) {
            Perm w = unpack_perm(key);
            Perm winv = w.inverse();
            BasisKey kinv;
            pack_perm(winv, kinv);
            auto pushed = perm_times_monomial(kinv.perm, key.exps);
            for (const auto& [kt, ct] : pushed->terms) acc[kt] += c * ct;
        }
        return flush(acc);
    }

    // tau picks the coefficient of x_1^{m-1}..x_n^{m-1} . 1.
    Rational tau(const Element& a) const {
        check_binding(a);
        BasisKey k;
        for (int i = 0; i < n_; ++i) k.exps[size_t(i)] = uint8_t(m_ - 1);
        return a.coefficient(k);
    }

    Rational inner(const Element& a, const Element& b) const { return tau(mul(a, star(b))); }

    std::vector<BasisKey> basis() const {
        std::vector<BasisKey> keys;
        std::vector<int> exps(size_t(n_), 0);
        std::vector<Perm> perms = all_perms(n_);
        bool more = true;
        while (more) {
            for (const Perm& w : perms) {
                BasisKey k;
                for (int i = 0; i < n_; ++i) k.exps[size_t(i)] = uint8_t(exps[size_t(i)]);
                pack_perm(w, k);
                keys.push_back(k);
            }
            more = false;
            for (int i = 0; i < n_; ++i) {
                if (++exps[size_t(i)] < m_) {
                    more = true;
                    break;
                }
                exps[size_t(i)] = 0;
            }
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    Element basis_element(const BasisKey& k) const {
        Element e = zero();
        e.add_term(k, 1);
        return e;
    }

    Perm unpack_perm(const BasisKey& k) const {
        Perm w;
        w.img.resize(size_t(n_));
        for (int i = 0; i < n_; ++i) w.img[size_t(i)] = int(k.perm[size_t(i)]) + 1;
        return w;
    }

    const Element& reduction_table(int j) const { return red_[size_t(j) - 1]; }

  private:
    // hot-path accumulation runs on a hash map (exact rationals add in any
    // order), converted once into the canonical ordered term map
    using Accumulator = std::unordered_map<BasisKey, Rational, BasisKeyHash>;
    using ExpArray = std::array<int, kMaxAlgebraN>;

    Element flush(Accumulator& acc) const {
        Element e = zero();
        for (auto& [k, v] : acc) {
            if (v != 0) e.terms.emplace(k, std::move(v));
        }
        return e;
    }

    ParamBinding b_;
    int n_, m_;
    std::vector<Element> red_;  // red_[j-1] = NF(x_j^m)
    // permutation-through-monomial results are memoized; the cache is sharded
    // to keep lock contention off the multiplication hot path, the cap bounds
    // it on the large stretch sizes, and shared ownership keeps results alive
    // across a concurrent shard reset
    static constexpr size_t kPushShards = 64;
    static constexpr size_t kPushCacheCap = 1u << 18;
    struct PushShard {
        std::mutex mutex;
        std::unordered_map<BasisKey, std::shared_ptr<const Element>, BasisKeyHash> map;
    };
    mutable std::array<PushShard, kPushShards> push_cache_;

    void check_binding(const Element& a) const {
        if (a.alg == this) return;
        if (a.alg == nullptr || !(a.alg->b_ == b_))
            throw BindingMismatchError("elements belong to different bindings");
    }

    void pack_perm(const Perm& w, BasisKey& k) const {
        for (int i = 0; i < n_; ++i) k.perm[size_t(i)] = uint8_t(w.img[size_t(i)] - 1);
    }

    void compose(const std::array<uint8_t, kMaxAlgebraN>& u,
                 const std::array<uint8_t, kMaxAlgebraN>& v,
                 std::array<uint8_t, kMaxAlgebraN>& out) const {
        // (u*v)(k) = v(u(k))
        for (int i = 0; i < kMaxAlgebraN; ++i) out[size_t(i)] = v[u[size_t(i)]];
    }

    // Accumulate coeff * x^exps * perm, rewriting any exponent >= m via the
    // RED tables.  Always reduces the largest overflowing index first; the
    // exponent tuple drops strictly in reverse-lex order, so this terminates.
    void reduce_accumulate(Accumulator& acc, const ExpArray& exps,
                           const std::array<uint8_t, kMaxAlgebraN>& perm,
                           const Rational& coeff) const {
        if (coeff == 0) return;
        int j = 0;
        for (int i = n_; i >= 1; --i) {
            if (exps[size_t(i) - 1] >= m_) {
                j = i;
                break;
            }
        }
        if (j == 0) {
            BasisKey k;
            for (int i = 0; i < n_; ++i) k.exps[size_t(i)] = uint8_t(exps[size_t(i)]);
            k.perm = perm;
            acc[k] += coeff;
            return;
        }
        const Element& red = red_[size_t(j) - 1];
        ExpArray base = exps;
        base[size_t(j) - 1] -= m_;
        ExpArray e2{};
        std::array<uint8_t, kMaxAlgebraN> p2;
        for (const auto& [kf, cf] : red.terms) {
            for (int i = 0; i < n_; ++i) e2[size_t(i)] = base[size_t(i)] + int(kf.exps[size_t(i)]);
            compose(kf.perm, perm, p2);
            reduce_accumulate(acc, e2, p2, coeff * cf);
        }
    }

    // s_i . (x^e . u) expanded by the closed commutation
    //   s_i x_i^a x_{i+1}^b = x_i^b x_{i+1}^a s_i
    //                       + sum_{u=0}^{b-1} x_i^{b-1-u} x_{i+1}^{a+u}
    //                       - sum_{t=0}^{a-1} x_i^t x_{i+1}^{a+b-1-t}.
    void left_mul_s_accumulate(Accumulator& acc, int i, const BasisKey& key,
                               const Rational& c) const {
        int il = i - 1;
        int a = key.exps[size_t(il)];
        int b = key.exps[size_t(il) + 1];
        // swap part: exponents stay < m, no reduction needed
        BasisKey k1 = key;
        std::swap(k1.exps[size_t(il)], k1.exps[size_t(il) + 1]);
        std::swap(k1.perm[size_t(il)], k1.perm[size_t(il) + 1]);
        acc[k1] += c;
        ExpArray exps{};
        for (int u = 0; u < b; ++u) {
            for (int t = 0; t < n_; ++t) exps[size_t(t)] = key.exps[size_t(t)];
            exps[size_t(il)] = b - 1 - u;
            exps[size_t(il) + 1] = a + u;
            reduce_accumulate(acc, exps, key.perm, c);
        }
        for (int t = 0; t < a; ++t) {
            for (int q = 0; q < n_; ++q) exps[size_t(q)] = key.exps[size_t(q)];
            exps[size_t(il)] = t;
            exps[size_t(il) + 1] = a + b - 1 - t;
            reduce_accumulate(acc, exps, key.perm, -c);
        }
    }

    Element left_mul_s(int i, const Element& a) const {
        Accumulator acc;
        for (const auto& [key, c] : a.terms) left_mul_s_accumulate(acc, i, key, c);
        return flush(acc);
    }

    // NF(v . x^b) for a permutation v and monomial exponents b, memoized.
    std::shared_ptr<const Element> perm_times_monomial(
        const std::array<uint8_t, kMaxAlgebraN>& vperm,
        const std::array<uint8_t, kMaxAlgebraN>& bexps) const {
        BasisKey memoKey;
        memoKey.exps = bexps;
        memoKey.perm = vperm;
        PushShard& shard = push_cache_[BasisKeyHash{}(memoKey) % kPushShards];
        {
            std::lock_guard<std::mutex> lock(shard.mutex);
            auto it = shard.map.find(memoKey);
            if (it != shard.map.end()) return it->second;
        }
        Element e = zero();
        {
            BasisKey k;
            k.exps = bexps;
            e.add_term(k, 1);
        }
        Perm v;
        v.img.resize(size_t(n_));
        for (int i = 0; i < n_; ++i) v.img[size_t(i)] = int(vperm[size_t(i)]) + 1;
        std::vector<int> word = v.reduced_word();
        for (auto it = word.rbegin(); it != word.rend(); ++it) e = left_mul_s(*it, e);
        auto result = std::make_shared<const Element>(std::move(e));
        std::lock_guard<std::mutex> lock(shard.mutex);
        if (shard.map.size() >= kPushCacheCap / kPushShards) shard.map.clear();
        shard.map.emplace(std::move(memoKey), result);
        return result;
    }

    void build_reduction_tables() {
        red_.resize(size_t(n_));
        // RED(1) from the expanded cyclotomic relation (x1-q1)...(x1-qm) = 0
        std::vector<Rational> poly{1};  // coefficients of prod (X - q_i), low degree first
        for (int i = 1; i <= m_; ++i) {
            std::vector<Rational> next(poly.size() + 1);
            for (size_t d = 0; d < poly.size(); ++d) {
                next[d + 1] += poly[d];
                next[d] -= poly[d] * b_.q_at(i);
            }
            poly = std::move(next);
        }
        Element r1 = zero();
        for (int d = 0; d < m_; ++d) {
            if (poly[size_t(d)] == 0) continue;
            BasisKey k;
            k.exps[0] = uint8_t(d);
            r1.add_term(k, -poly[size_t(d)]);
        }
        red_[0] = std::move(r1);

        // RED(j) by induction:
        //   x_j^m = s_{j-1} RED(j-1) s_{j-1}
        //         + sum_{t=0}^{m-2} x_j^t x_{j-1}^{m-1-t} s_{j-1}
        //         + s_{j-1} x_{j-1}^{m-1}
        //         + sum_{t=0}^{m-2} x_j^t x_{j-1}^{m-2-t}
        for (int j = 2; j <= n_; ++j) {
            int i = j - 1;  // the simple reflection s_{j-1}
            Element acc = left_mul_s(i, red_[size_t(j) - 2]);
            // right-multiply by s_{j-1}: compose every permutation with s_i
            {
                Element tmp = zero();
                std::array<uint8_t, kMaxAlgebraN> si;
                for (int t = 0; t < kMaxAlgebraN; ++t) si[size_t(t)] = uint8_t(t);
                std::swap(si[size_t(i) - 1], si[size_t(i)]);
                for (const auto& [k, c] : acc.terms) {
                    BasisKey k2 = k;
                    compose(k.perm, si, k2.perm);
                    tmp.add_term(k2, c);
                }
                acc = std::move(tmp);
            }
            for (int t = 0; t <= m_ - 2; ++t) {
                BasisKey k;
                k.exps[size_t(j) - 1] = uint8_t(t);
                k.exps[size_t(j) - 2] = uint8_t(m_ - 1 - t);
                std::swap(k.perm[size_t(i) - 1], k.perm[size_t(i)]);
                acc.add_term(k, 1);
            }
            {
                BasisKey k;
                k.exps[size_t(j) - 2] = uint8_t(m_ - 1);
                Element xpow = zero();
                xpow.add_term(k, 1);
                acc += left_mul_s(i, xpow);
            }
            for (int t = 0; t <= m_ - 2; ++t) {
                BasisKey k;
                k.exps[size_t(j) - 1] = uint8_t(t);
                k.exps[size_t(j) - 2] = uint8_t(m_ - 2 - t);
                acc.add_term(k, 1);
            }
            red_[size_t(j) - 1] = std::move(acc);
        }
    }
};

inline Element operator*(const Element& a, const Element& b) {
    if (a.alg == nullptr) throw BindingMismatchError("element without algebra");
    return a.alg->mul(a, b);
}

inline Element operator*(const Rational& c, const Element& a) { return a * c; }

}  // namespace hecke
