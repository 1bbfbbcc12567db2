#pragma once

#include <filesystem>
#include <random>

#include "hecke/io.hpp"

namespace hecke {
namespace cli {

enum class Command { schur, gram, gamma, tableaux, dims, verify };

inline Command parse_command(const std::string& s) {
    if (s == "schur") return Command::schur;
    if (s == "gram") return Command::gram;
    if (s == "gamma") return Command::gamma;
    if (s == "tableaux") return Command::tableaux;
    if (s == "dims") return Command::dims;
    if (s == "verify") return Command::verify;
    throw ConfigError("unknown command: " + s);
}

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names{"relations", "cellular",  "seminormal",
                                                "matrix-units", "idempotents", "dual",
                                                "tau-z",     "schur"};
    return names;
}

struct RunConfig {
    Command command = Command::dims;
    int m = 2;
    int n = 2;
    std::string binding_spec = "default";  // "default", "q1,q2,..", or "@file.json"
    std::vector<std::string> suites;       // empty = all
    OutputFormat output = OutputFormat::json;
    std::string cache_dir;                 // empty = caching disabled
    uint64_t seed = 12345;
    std::string shape;                     // optional shape filter
    bool characters = false;               // gamma: include character tables
    bool include_matrix = false;           // gram: include the full matrix
    bool include_action = false;           // gram: include generator action matrices
};

inline ParamBinding resolve_binding(const RunConfig& cfg) {
    if (cfg.binding_spec == "default") return default_binding(cfg.m, cfg.n);
    if (!cfg.binding_spec.empty() && cfg.binding_spec[0] == '@')
        return load_binding_file(cfg.binding_spec.substr(1));
    std::vector<Rational> q;
    std::stringstream ss(cfg.binding_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            q.push_back(rational_from_string(tok));
        } catch (const std::exception&) {
            throw ConfigError("bad rational in --q: " + tok);
        }
    }
    if (int(q.size()) != cfg.m)
        throw ConfigError("--q needs exactly m = " + std::to_string(cfg.m) + " values");
    return make_binding(cfg.m, cfg.n, std::move(q));
}

// A generic binding distinct from the default one, with non-integral values,
// still residue-separating: q_i = (i-1)(4n+3)/2.
inline ParamBinding alternate_binding(int m, int n) {
    std::vector<Rational> q;
    for (int i = 1; i <= m; ++i) {
        Rational v((i - 1) * (4 * n + 3), 2);
        v.canonicalize();
        q.push_back(std::move(v));
    }
    return make_binding(m, n, std::move(q));
}

// ---------------------------------------------------------------------------
// Shared lazily-built per-run state.

class Session {
  public:
    Session(RunConfig cfg, ParamBinding binding, std::ostream& log)
        : cfg_(std::move(cfg)), binding_(std::move(binding)), log_(log) {}

    const RunConfig& cfg() const { return cfg_; }
    const ParamBinding& binding() const { return binding_; }
    std::ostream& log() { return log_; }

    const Algebra& algebra() {
        if (!alg_) alg_.emplace(binding_);
        return *alg_;
    }

    const std::vector<std::vector<Residue>>& rsets() {
        if (rsets_.empty()) rsets_ = residue_sets(binding_.m, binding_.n);
        return rsets_;
    }

    const std::vector<Multipartition>& shapes() {
        if (shapes_.empty()) shapes_ = multipartitions(binding_.m, binding_.n);
        return shapes_;
    }

    const CellularBasis& cellular() {
        if (!cb_) {
            cb_.emplace(algebra());
            if (!cfg_.cache_dir.empty()) {
                std::filesystem::create_directories(cfg_.cache_dir);
                std::string path = cache_file_name(cfg_.cache_dir, "transition-lu", binding_);
                if (auto payload = cache_load(path)) {
                    if (auto lu = deserialize_lu(*payload)) {
                        if (cb_->adopt_lu(std::move(*lu))) return *cb_;
                    }
                }
                cache_store(path, serialize_lu(*cb_->lu()));
            }
        }
        return *cb_;
    }

    // all f_{st} in flat cellular index order
    const std::vector<Element>& f_basis() {
        if (fst_.empty()) {
            const CellularBasis& cb = cellular();
            const auto& rs = rsets();
            fst_.resize(size_t(cb.dim()));
            std::vector<std::pair<int, std::pair<int, int>>> jobs;
            for (size_t sh = 0; sh < shapes().size(); ++sh) {
                int d = int(cb.tableaux(int(sh)).size());
                for (int s = 0; s < d; ++s)
                    for (int t = 0; t < d; ++t) jobs.push_back({int(sh), {s, t}});
            }
            parallel_for(jobs.size(), [&](size_t j) {
                auto [sh, st] = jobs[j];
                fst_[size_t(cb.flat_index(sh, st.first, st.second))] =
                    f_st(cb, rs, sh, st.first, st.second);
            });
        }
        return fst_;
    }

    const IdempotentSet& idem() {
        if (!idem_) idem_.emplace(idempotents(algebra(), rsets()));
        return *idem_;
    }

    std::mt19937_64 rng(uint64_t salt) const { return std::mt19937_64(cfg_.seed ^ salt); }

    // exhaustive pairwise checks below this dimension, seeded samples above
    bool exhaustive() const { return algebra_dim() <= 100; }
    long algebra_dim() const {
        long d = 1;
        for (int i = 0; i < binding_.n; ++i) d *= binding_.m;
        for (int i = 2; i <= binding_.n; ++i) d *= i;
        return d;
    }

  private:
    RunConfig cfg_;
    ParamBinding binding_;
    std::ostream& log_;
    std::optional<Algebra> alg_;
    std::optional<CellularBasis> cb_;
    std::optional<IdempotentSet> idem_;
    std::vector<std::vector<Residue>> rsets_;
    std::vector<Multipartition> shapes_;
    std::vector<Element> fst_;
};

// ---------------------------------------------------------------------------
// Suite plumbing.

struct SuiteResult {
    std::string name;
    long checks = 0;
    long passed = 0;
    std::vector<std::string> failures;
    Json payload;  // optional structured report (e.g. sign tables)

    bool ok() const { return checks == passed; }

    void expect(bool cond, const std::string& label) {
        ++checks;
        if (cond) ++passed;
        else failures.push_back(label);
    }
};

namespace detail {

inline std::vector<BasisKey> sample_keys(const Algebra& alg, std::mt19937_64& rng, size_t count) {
    std::vector<BasisKey> keys = alg.basis();
    std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
    std::vector<BasisKey> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(keys[pick(rng)]);
    return out;
}

inline Element random_combination(const Algebra& alg, std::mt19937_64& rng, int terms) {
    std::vector<BasisKey> keys = sample_keys(alg, rng, size_t(terms));
    std::uniform_int_distribution<int> coeff(-5, 5);
    Element e = alg.zero();
    for (const auto& k : keys) e.add_term(k, coeff(rng));
    return e;
}

}  // namespace detail

// --- relations -------------------------------------------------------------

inline SuiteResult suite_relations(Session& S) {
    SuiteResult r{"relations"};
    const Algebra& alg = S.algebra();
    int n = alg.n(), m = alg.m();
    const ParamBinding& b = alg.binding();

    // cyclotomic relation (s_0 - q_1)...(s_0 - q_m) = 0
    {
        Element e = alg.identity();
        for (int i = 1; i <= m; ++i) e = alg.mul_left_x_shift(1, b.q_at(i), e);
        r.expect(e.is_zero(), "cyclotomic relation");
    }
    if (n >= 2) {
        Element s0 = alg.gen_s(0), s1 = alg.gen_s(1);
        Element braid0 = alg.mul(s1, alg.mul(s0, s1)) + s1;
        r.expect(alg.mul(s0, braid0) == alg.mul(braid0, s0), "s0 braid relation");
    }
    for (int i = 1; i < n; ++i)
        r.expect(alg.mul(alg.gen_s(i), alg.gen_s(i)) == alg.identity(),
                 "s_i^2 = 1 at i=" + std::to_string(i));
    for (int i = 1; i + 1 < n; ++i) {
        Element a = alg.gen_s(i), c = alg.gen_s(i + 1);
        r.expect(alg.mul(alg.mul(a, c), a) == alg.mul(alg.mul(c, a), c),
                 "braid at i=" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            Element a = alg.gen_s(i), c = alg.gen_s(j);
            r.expect(alg.mul(a, c) == alg.mul(c, a),
                     "commuting s_" + std::to_string(i) + ", s_" + std::to_string(j));
        }

    // JM commutation facts
    for (int j = 1; j < n; ++j) {
        Element sj = alg.gen_s(j), xj = alg.gen_x(j), xj1 = alg.gen_x(j + 1);
        r.expect(alg.mul(sj, xj) - alg.mul(xj1, sj) == -alg.identity(),
                 "s_j x_j - x_{j+1} s_j = -1 at j=" + std::to_string(j));
        r.expect(alg.mul(sj, xj1) - alg.mul(xj, sj) == alg.identity(),
                 "s_j x_{j+1} - x_j s_j = 1 at j=" + std::to_string(j));
    }
    for (int i = 1; i < n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j == i || j == i + 1) continue;
            Element si = alg.gen_s(i), xj = alg.gen_x(j);
            r.expect(alg.mul(si, xj) == alg.mul(xj, si),
                     "s_i x_j commute at i=" + std::to_string(i) + ", j=" + std::to_string(j));
        }
    for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
            Element xj = alg.gen_x(j), xk = alg.gen_x(k);
            r.expect(alg.mul(xj, xk) == alg.mul(xk, xj),
                     "x_j x_k commute at " + std::to_string(j) + "," + std::to_string(k));
        }
    for (int j = 1; j < n; ++j) {
        Element sj = alg.gen_s(j), xj = alg.gen_x(j), xj1 = alg.gen_x(j + 1);
        Element prod = alg.mul(xj, xj1);
        r.expect(alg.mul(sj, prod) == alg.mul(prod, sj), "s_j vs x_j x_{j+1}");
        Element sum = xj + xj1;
        r.expect(alg.mul(sj, sum) == alg.mul(sum, sj), "s_j vs x_j + x_{j+1}");
    }
    {
        std::vector<Rational> avals{Rational(0), Rational(1), Rational(-2), b.q_at(1)};
        for (const Rational& a : avals)
            for (int j = 1; j <= n; ++j) {
                Element X = alg.identity();
                for (int l = 1; l <= j; ++l) X = alg.mul_left_x_shift(l, a, X);
                for (int i = 1; i < n; ++i) {
                    if (i == j) continue;
                    Element si = alg.gen_s(i);
                    r.expect(alg.mul(si, X) == alg.mul(X, si),
                             "s_i vs X_j(a), i=" + std::to_string(i) + ", j=" + std::to_string(j));
                }
            }
    }

    // dimension identity and closure under multiplication by generators
    {
        long sum = 0;
        for (const auto& sh : S.shapes()) {
            long d = long(standard_tableaux(sh).size());
            sum += d * d;
        }
        r.expect(sum == S.algebra_dim(), "sum |Std(lambda)|^2 = m^n n!");
    }
    {
        std::vector<BasisKey> keys = alg.basis();
        bool closed = true;
        std::vector<Element> gens;
        for (int i = 0; i < n; ++i) gens.push_back(alg.gen_s(i));
        for (int k = 1; k <= n; ++k) gens.push_back(alg.gen_x(k));
        for (const auto& g : gens)
            for (const auto& k : keys) {
                Element p = alg.mul(g, alg.basis_element(k));
                for (const auto& [pk, pc] : p.terms)
                    for (int i = 0; i < n; ++i)
                        if (int(pk.exps[size_t(i)]) >= m) closed = false;
            }
        r.expect(closed, "PBW closure under generator multiplication");
    }
    return r;
}

// --- cellular ----------------------------------------------------------------

inline SuiteResult suite_cellular(Session& S) {
    SuiteResult r{"cellular"};
    const Algebra& alg = S.algebra();
    const CellularBasis& cb = S.cellular();
    const ParamBinding& b = alg.binding();
    int nshapes = int(cb.shapes().size());

    std::vector<SpechtData> data{size_t(nshapes)};
    parallel_for(size_t(nshapes), [&](size_t sh) { data[sh] = specht_action(cb, int(sh)); });

    for (int sh = 0; sh < nshapes; ++sh) {
        const SpechtData& sd = data[size_t(sh)];
        const std::string tag = " at " + sd.shape.to_string();
        int d = int(sd.tableaux.size());
        // x_k action: upper triangular, diagonal = residues
        bool tri = true, diag = true;
        for (int k = 1; k <= alg.n(); ++k) {
            const Matrix& mx = sd.jm_x[size_t(k) - 1];
            for (int col = 0; col < d; ++col) {
                for (int row = col + 1; row < d; ++row)
                    if (mx.at(row, col) != 0) tri = false;
                if (mx.at(col, col) != b.residue_value(sd.tableaux[size_t(col)].residue(k)))
                    diag = false;
            }
        }
        r.expect(tri, "x_k triangular" + tag);
        r.expect(diag, "x_k diagonal residues" + tag);
        // defining relations on the action matrices
        {
            Matrix id = Matrix::identity(d);
            bool rel = true;
            Matrix cyc = id;
            for (int i = 1; i <= alg.m(); ++i)
                cyc = cyc * (sd.jm_x[0] - id.scaled(b.q_at(i)));
            if (!cyc.is_zero()) rel = false;
            for (int i = 1; i < alg.n(); ++i)
                if (sd.gen_s[size_t(i)] * sd.gen_s[size_t(i)] != id) rel = false;
            for (int i = 1; i + 1 < alg.n(); ++i) {
                const Matrix& a = sd.gen_s[size_t(i)];
                const Matrix& c = sd.gen_s[size_t(i) + 1];
                if (a * c * a != c * a * c) rel = false;
            }
            for (int i = 0; i < alg.n(); ++i)
                for (int j = i + 2; j < alg.n(); ++j)
                    if (sd.gen_s[size_t(i)] * sd.gen_s[size_t(j)] !=
                        sd.gen_s[size_t(j)] * sd.gen_s[size_t(i)])
                        rel = false;
            if (alg.n() >= 2) {
                const Matrix& s0 = sd.gen_s[0];
                const Matrix& s1 = sd.gen_s[1];
                Matrix t = s1 * s0 * s1 + s1;
                if (s0 * t != t * s0) rel = false;
            }
            r.expect(rel, "action matrices satisfy relations" + tag);
        }
        // gram: symmetric, determinant = product of gammas
        {
            bool sym = true;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j)
                    if (sd.gram.at(i, j) != sd.gram.at(j, i)) sym = false;
            r.expect(sym, "gram symmetric" + tag);
            GammaTable gt = gamma_seminormal(sd.shape, &b);
            Rational prod = 1;
            for (const auto& v : gt.value) prod *= v;
            r.expect(sd.gram_det == prod, "gram det = prod gamma" + tag);
            if (b.generic) r.expect(sd.gram_det != 0, "gram det nonzero" + tag);
        }
    }

    // expand round-trips and linearity
    {
        auto rng = S.rng(0xce11);
        Element h = detail::random_combination(alg, rng, 4);
        Element g = detail::random_combination(alg, rng, 4);
        std::vector<Rational> ch = cb.expand(h), cg = cb.expand(g);
        std::vector<Rational> csum = cb.expand(h + g);
        bool linear = true;
        for (int i = 0; i < cb.dim(); ++i)
            if (csum[size_t(i)] != ch[size_t(i)] + cg[size_t(i)]) linear = false;
        r.expect(linear, "expand linear");
        // reassemble h from its coefficients
        Element back = alg.zero();
        for (int i = 0; i < cb.dim(); ++i) {
            if (ch[size_t(i)] == 0) continue;
            CellularIndex ci = cb.unflatten(i);
            back += cb.m_st_at(ci.shape, ci.s, ci.t) * ch[size_t(i)];
        }
        r.expect(back == h, "expand round-trip");
    }
    {
        // unit vectors for a few m_st
        auto rng = S.rng(0xce12);
        std::uniform_int_distribution<int> pick(0, cb.dim() - 1);
        for (int trial = 0; trial < 5; ++trial) {
            int idx = pick(rng);
            CellularIndex ci = cb.unflatten(idx);
            std::vector<Rational> c = cb.expand(cb.m_st_at(ci.shape, ci.s, ci.t));
            bool unit = true;
            for (int i = 0; i < cb.dim(); ++i)
                if (c[size_t(i)] != (i == idx ? 1 : 0)) unit = false;
            r.expect(unit, "expand(m_st) is a unit vector");
        }
    }
    return r;
}

// --- seminormal --------------------------------------------------------------

inline SuiteResult suite_seminormal(Session& S) {
    SuiteResult r{"seminormal"};
    const Algebra& alg = S.algebra();
    const ParamBinding& b = alg.binding();
    const CellularBasis& cb = S.cellular();
    const auto& rs = S.rsets();
    int nshapes = int(cb.shapes().size());

    for (int sh = 0; sh < nshapes; ++sh) {
        const Multipartition& shape = cb.shapes()[size_t(sh)];
        const std::string tag = " at " + shape.to_string();
        GammaTable gt = gamma_seminormal(shape, &b);
        bool closedOk = true, directOk = true;
        for (size_t ti = 0; ti < gt.tableaux.size(); ++ti) {
            if (!(gamma_closed(gt.tableaux[ti]) == gt.symbolic[ti])) closedOk = false;
            Element ftt = S.f_basis()[size_t(cb.flat_index(sh, int(ti), int(ti)))];
            if (gamma_direct(alg, ftt) != gt.value[ti]) directOk = false;
            if (b.generic && gt.value[ti] == 0) directOk = false;
        }
        r.expect(closedOk, "gamma closed = recursion" + tag);
        r.expect(directOk, "gamma direct = symbolic" + tag);

        SeminormalRep rep = seminormal_rep(shape, b);
        int d = rep.dim();
        Matrix id = Matrix::identity(d);
        bool rel = true;
        {
            Matrix cyc = id;
            for (int i = 1; i <= alg.m(); ++i) cyc = cyc * (rep.rho_s[0] - id.scaled(b.q_at(i)));
            if (!cyc.is_zero()) rel = false;
            for (int i = 1; i < alg.n(); ++i)
                if (rep.rho_s[size_t(i)] * rep.rho_s[size_t(i)] != id) rel = false;
            for (int i = 1; i + 1 < alg.n(); ++i)
                if (rep.rho_s[size_t(i)] * rep.rho_s[size_t(i) + 1] * rep.rho_s[size_t(i)] !=
                    rep.rho_s[size_t(i) + 1] * rep.rho_s[size_t(i)] * rep.rho_s[size_t(i) + 1])
                    rel = false;
            for (int i = 0; i < alg.n(); ++i)
                for (int j = i + 2; j < alg.n(); ++j)
                    if (rep.rho_s[size_t(i)] * rep.rho_s[size_t(j)] !=
                        rep.rho_s[size_t(j)] * rep.rho_s[size_t(i)])
                        rel = false;
            if (alg.n() >= 2) {
                Matrix t = rep.rho_s[1] * rep.rho_s[0] * rep.rho_s[1] + rep.rho_s[1];
                if (rep.rho_s[0] * t != t * rep.rho_s[0]) rel = false;
            }
            // JM recursion x_{k+1} = s_k x_k s_k + s_k matches the diagonals
            for (int k = 1; k < alg.n(); ++k) {
                Matrix xk1 = rep.rho_s[size_t(k)] * rep.rho_x[size_t(k) - 1] * rep.rho_s[size_t(k)] +
                             rep.rho_s[size_t(k)];
                if (xk1 != rep.rho_x[size_t(k)]) rel = false;
            }
        }
        r.expect(rel, "seminormal rep satisfies relations" + tag);

        // unitriangular transition {m_t} -> {f_t} and gram diagonalization
        {
            Matrix T(d, d);
            bool uni = true;
            for (int t = 0; t < d; ++t) {
                std::vector<Rational> c = cb.expand(S.f_basis()[size_t(cb.flat_index(sh, t, 0))]);
                for (int a = 0; a < d; ++a) T.at(a, t) = c[size_t(cb.flat_index(sh, a, 0))];
                if (T.at(t, t) != 1) uni = false;
                for (int a = t + 1; a < d; ++a)
                    if (T.at(a, t) != 0) uni = false;
            }
            r.expect(uni, "m->f transition unitriangular" + tag);
            // <f_s, f_t> = delta gamma via the cellular form
            Matrix G(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) G.at(i, j) = bilinear_form(cb, sh, i, j);
            Matrix Tt(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) Tt.at(i, j) = T.at(j, i);
            Matrix D = Tt * G * T;
            bool diag = true;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    if (i == j ? D.at(i, j) != gt.value[size_t(i)] : D.at(i, j) != 0) diag = false;
                }
            r.expect(diag, "f-basis gram = diag(gamma)" + tag);
            // conjugating the cellular action yields the seminormal matrices
            LuDecomposition Tlu(T);
            bool conj = true;
            for (int i = 0; i < alg.n(); ++i) {
                Matrix Mm = specht_matrix(cb, sh, alg.gen_s(i));
                Matrix MT = Mm * T;
                Matrix X(d, d);
                for (int col = 0; col < d; ++col) {
                    std::vector<Rational> rhs(size_t(d), Rational(0));
                    for (int row = 0; row < d; ++row) rhs[size_t(row)] = MT.at(row, col);
                    std::vector<Rational> sol = Tlu.solve(rhs);
                    for (int row = 0; row < d; ++row) X.at(row, col) = sol[size_t(row)];
                }
                if (X != rep.rho_s[size_t(i)]) conj = false;
            }
            r.expect(conj, "specht action conjugates to seminormal" + tag);
        }
    }

    // homomorphism oracle on seeded random basis pairs
    {
        auto rng = S.rng(0x5e31);
        size_t pairs = 100;
        std::vector<BasisKey> as = detail::sample_keys(alg, rng, pairs);
        std::vector<BasisKey> bs = detail::sample_keys(alg, rng, pairs);
        std::vector<SeminormalRep> reps;
        for (const auto& shape : cb.shapes()) reps.push_back(seminormal_rep(shape, b));
        std::vector<char> ok(pairs, 1);
        parallel_for(pairs, [&](size_t i) {
            Element ea = alg.basis_element(as[i]);
            Element eb = alg.basis_element(bs[i]);
            Element prod = alg.mul(ea, eb);
            for (const auto& rep : reps) {
                if (rep.of_element(prod) != rep.of_element(ea) * rep.of_element(eb)) {
                    ok[i] = 0;
                    return;
                }
            }
        });
        long good = 0;
        for (char c : ok) good += c;
        r.expect(good == long(pairs), "rho(ab) = rho(a) rho(b) on " + std::to_string(pairs) +
                                          " random basis pairs");
    }

    // tau is a trace on random pairs
    {
        auto rng = S.rng(0x5e32);
        bool traceOk = true;
        for (int trial = 0; trial < 100; ++trial) {
            Element ea = alg.basis_element(detail::sample_keys(alg, rng, 1)[0]);
            Element eb = alg.basis_element(detail::sample_keys(alg, rng, 1)[0]);
            if (alg.tau(alg.mul(ea, eb)) != alg.tau(alg.mul(eb, ea))) traceOk = false;
        }
        r.expect(traceOk, "tau(ab) = tau(ba) on 100 random pairs");
        bool innerOk = true;
        for (int trial = 0; trial < 20; ++trial) {
            Element ea = detail::random_combination(alg, rng, 3);
            Element eb = detail::random_combination(alg, rng, 3);
            if (alg.inner(ea, eb) != alg.inner(eb, ea)) innerOk = false;
            Element ec = detail::random_combination(alg, rng, 2);
            if (alg.inner(alg.mul(ea, eb), ec) != alg.inner(ea, alg.mul(ec, alg.star(eb))))
                innerOk = false;
        }
        r.expect(innerOk, "(,) symmetric and associative");
    }

    // orthogonality of the f-basis under (,)
    {
        const auto& fb = S.f_basis();
        const CellularBasis& cbasis = S.cellular();
        auto rng = S.rng(0x5e33);
        std::vector<std::pair<int, int>> jobs;
        if (S.exhaustive()) {
            for (int i = 0; i < cbasis.dim(); ++i)
                for (int j = 0; j < cbasis.dim(); ++j) jobs.push_back({i, j});
        } else {
            std::uniform_int_distribution<int> pick(0, cbasis.dim() - 1);
            for (int trial = 0; trial < 200; ++trial) jobs.push_back({pick(rng), pick(rng)});
            for (int i = 0; i < cbasis.dim(); ++i) jobs.push_back({i, i});
        }
        std::vector<Element> stars(size_t(cbasis.dim()));
        parallel_for(size_t(cbasis.dim()), [&](size_t j) { stars[j] = alg.star(fb[j]); });
        std::atomic<long> bad{0};
        parallel_for(jobs.size(), [&](size_t k) {
            auto [i, j] = jobs[k];
            Rational v = alg.tau(alg.mul(fb[size_t(i)], stars[size_t(j)]));
            CellularIndex a = cbasis.unflatten(i), c = cbasis.unflatten(j);
            bool same = a.shape == c.shape && a.s == c.s && a.t == c.t;
            if (same ? v == 0 : v != 0) ++bad;
        });
        r.expect(bad == 0,
                 "(f_st, f_ab) orthogonality over " + std::to_string(jobs.size()) + " pairs");
    }
    return r;
}

// --- matrix units ------------------------------------------------------------

inline SuiteResult suite_matrix_units(Session& S) {
    SuiteResult r{"matrix-units"};
    const Algebra& alg = S.algebra();
    const CellularBasis& cb = S.cellular();
    const auto& fb = S.f_basis();
    const ParamBinding& bind = S.binding();

    std::vector<Rational> gam(size_t(cb.dim()));
    std::vector<CellularIndex> idx(size_t(cb.dim()));
    for (int i = 0; i < cb.dim(); ++i) idx[size_t(i)] = cb.unflatten(i);
    for (size_t sh = 0; sh < cb.shapes().size(); ++sh) {
        GammaTable gt = gamma_seminormal(cb.shapes()[sh], &bind);
        int d = int(gt.tableaux.size());
        for (int s = 0; s < d; ++s)
            for (int t = 0; t < d; ++t)
                gam[size_t(cb.flat_index(int(sh), s, t))] = gt.value[size_t(t)];
    }

    std::atomic<long> bad{0};
    long total = 0;
    auto checkProduct = [&](int i, int j) {
        const CellularIndex& a = idx[size_t(i)];
        const CellularIndex& c = idx[size_t(j)];
        Element prod = alg.mul(fb[size_t(i)], fb[size_t(j)]);
        Element expect = alg.zero();
        if (a.shape == c.shape && a.t == c.s)
            expect = fb[size_t(cb.flat_index(a.shape, a.s, c.t))] * gam[size_t(i)];
        if (prod != expect) ++bad;
    };
    if (S.exhaustive()) {
        total = long(cb.dim()) * cb.dim();
        std::vector<std::pair<int, int>> jobs;
        jobs.reserve(size_t(total));
        for (int i = 0; i < cb.dim(); ++i)
            for (int j = 0; j < cb.dim(); ++j) jobs.push_back({i, j});
        parallel_for(jobs.size(), [&](size_t k) { checkProduct(jobs[k].first, jobs[k].second); });
    } else {
        auto rng = S.rng(0x3a7);
        std::uniform_int_distribution<int> pick(0, cb.dim() - 1);
        std::vector<std::pair<int, int>> jobs;
        for (int trial = 0; trial < 300; ++trial) jobs.push_back({pick(rng), pick(rng)});
        total = long(jobs.size());
        parallel_for(jobs.size(), [&](size_t k) { checkProduct(jobs[k].first, jobs[k].second); });
    }
    r.expect(bad == 0, "f_st f_ab = delta_{at} gamma_t f_sb over " + std::to_string(total) +
                           " products");
    return r;
}

// --- idempotents ---------------------------------------------------------------

inline SuiteResult suite_idempotents(Session& S) {
    SuiteResult r{"idempotents"};
    const Algebra& alg = S.algebra();
    const IdempotentSet& idem = S.idem();
    const ParamBinding& b = S.binding();

    std::vector<const Element*> flat;
    std::vector<Rational> gammaOf;
    std::vector<std::pair<size_t, size_t>> pos;
    for (size_t sh = 0; sh < idem.shapes.size(); ++sh) {
        GammaTable gt = gamma_seminormal(idem.shapes[sh], &b);
        for (size_t ti = 0; ti < idem.tableaux[sh].size(); ++ti) {
            flat.push_back(&idem.f_t[sh][ti]);
            gammaOf.push_back(gt.value[ti]);
            pos.push_back({sh, ti});
        }
    }
    size_t count = flat.size();

    {
        std::atomic<long> bad{0};
        parallel_for(count, [&](size_t i) {
            if (alg.mul(*flat[i], *flat[i]) != *flat[i]) ++bad;
        });
        r.expect(bad == 0, "F_t idempotent for all " + std::to_string(count) + " tableaux");
    }
    {
        std::atomic<long> bad{0};
        long total = 0;
        std::vector<std::pair<size_t, size_t>> jobs;
        if (S.exhaustive()) {
            for (size_t i = 0; i < count; ++i)
                for (size_t j = 0; j < count; ++j)
                    if (i != j) jobs.push_back({i, j});
        } else {
            auto rng = S.rng(0x1de);
            std::uniform_int_distribution<size_t> pick(0, count - 1);
            while (jobs.size() < 300) {
                size_t i = pick(rng), j = pick(rng);
                if (i != j) jobs.push_back({i, j});
            }
        }
        total = long(jobs.size());
        parallel_for(jobs.size(), [&](size_t k) {
            if (!alg.mul(*flat[jobs[k].first], *flat[jobs[k].second]).is_zero()) ++bad;
        });
        r.expect(bad == 0, "F_t F_u = 0 over " + std::to_string(total) + " pairs");
    }
    {
        // F_t = f_tt / gamma_t
        const auto& fb = S.f_basis();
        const CellularBasis& cb = S.cellular();
        bool match = true;
        for (size_t i = 0; i < count; ++i) {
            auto [sh, ti] = pos[i];
            const Element& ftt = fb[size_t(cb.flat_index(int(sh), int(ti), int(ti)))];
            if (gammaOf[i] == 0 || !(ftt * (1 / gammaOf[i]) == *flat[i])) match = false;
        }
        r.expect(match, "F_t = f_tt / gamma_t");
    }
    {
        Element sum = alg.zero();
        for (const auto& fl : idem.f_lambda) sum += fl;
        r.expect(sum == alg.identity(), "sum over lambda of F_lambda = 1");
    }
    {
        bool central = true;
        std::vector<Element> gens;
        for (int i = 0; i < alg.n(); ++i) gens.push_back(alg.gen_s(i));
        for (const auto& fl : idem.f_lambda)
            for (const auto& g : gens)
                if (alg.mul(fl, g) != alg.mul(g, fl)) central = false;
        r.expect(central, "F_lambda central");
    }
    {
        JmSpectralReport jm = jm_spectral(alg, S.rsets(), idem);
        r.expect(jm.min_poly_vanishes, "prod over R(k) of (x_k - c) = 0");
        r.expect(jm.min_poly_minimal, "minimal polynomial degree = |R(k)|");
        r.expect(jm.reassembly, "x_k = sum res_t(k) F_t");
    }
    return r;
}

// --- dual ---------------------------------------------------------------------

inline SuiteResult suite_dual(Session& S) {
    SuiteResult r{"dual"};
    const Algebra& alg = S.algebra();
    const CellularBasis& cb = S.cellular();
    const auto& rs = S.rsets();
    int nshapes = int(cb.shapes().size());

    // n-basis: full rank
    {
        std::vector<Element> nst(size_t(cb.dim()));
        std::vector<Element> nlams{size_t(nshapes)};
        for (int sh = 0; sh < nshapes; ++sh) nlams[size_t(sh)] = n_lambda(alg, cb.shapes()[size_t(sh)]);
        std::vector<std::tuple<int, int, int>> jobs;
        for (int sh = 0; sh < nshapes; ++sh) {
            int d = int(cb.tableaux(sh).size());
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) jobs.push_back({sh, s, t});
        }
        parallel_for(jobs.size(), [&](size_t k) {
            auto [sh, s, t] = jobs[k];
            nst[size_t(cb.flat_index(sh, s, t))] = n_st(alg, nlams[size_t(sh)],
                                                        cb.tableaux(sh)[size_t(s)],
                                                        cb.tableaux(sh)[size_t(t)]);
        });
        Matrix m(cb.dim(), cb.dim());
        for (int col = 0; col < cb.dim(); ++col) {
            std::vector<Rational> coords = cb.pbw_coordinates(nst[size_t(col)]);
            for (int row = 0; row < cb.dim(); ++row) m.at(row, col) = coords[size_t(row)];
        }
        r.expect(exact_rank(m) == cb.dim(), "n-basis has full rank m^n n!");
        // star symmetry on a few pairs
        auto rng = S.rng(0xd0a1);
        bool starOk = true;
        std::uniform_int_distribution<int> pickShape(0, nshapes - 1);
        for (int trial = 0; trial < 10; ++trial) {
            int sh = pickShape(rng);
            int d = int(cb.tableaux(sh).size());
            std::uniform_int_distribution<int> pick(0, d - 1);
            int s = pick(rng), t = pick(rng);
            if (alg.star(nst[size_t(cb.flat_index(sh, s, t))]) !=
                nst[size_t(cb.flat_index(sh, t, s))])
                starOk = false;
        }
        r.expect(starOk, "star(n_st) = n_ts");
    }

    // z spans m_lambda H n_bar
    {
        std::vector<std::vector<BasisKey>> samples{size_t(nshapes)};
        for (int sh = 0; sh < nshapes; ++sh) {
            auto rng = S.rng(0xd0a2 + uint64_t(sh));
            samples[size_t(sh)] = detail::sample_keys(alg, rng, 20);
        }
        std::vector<char> span(size_t(nshapes), 1), nonzero(size_t(nshapes), 1);
        parallel_for(size_t(nshapes), [&](size_t sh) {
            const Multipartition& shape = cb.shapes()[sh];
            Element z = z_lambda(alg, shape);
            if (z.is_zero()) {
                nonzero[sh] = 0;
                return;
            }
            Element mlam = cb.m_lambda_of(int(sh));
            Element nbar = n_lambda(alg, conjugate(shape));
            const auto& [zk, zc] = *z.terms.begin();
            for (const BasisKey& key : samples[sh]) {
                Element p = alg.mul(alg.mul(mlam, alg.basis_element(key)), nbar);
                Rational ratio = p.coefficient(zk) / zc;
                if (p != z * ratio) span[sh] = 0;
            }
        });
        bool spanOk = true, nonzeroOk = true;
        for (int sh = 0; sh < nshapes; ++sh) {
            if (!nonzero[size_t(sh)]) nonzeroOk = false;
            if (!span[size_t(sh)]) spanOk = false;
        }
        r.expect(nonzeroOk, "z_lambda nonzero");
        r.expect(spanOk, "m_lambda h n_bar in span(z_lambda), 20 random h per shape");
    }

    // g_st: proportional to f at the conjugate slot, alpha symmetric
    {
        auto rng = S.rng(0xd0a3);
        std::vector<std::tuple<int, int, int>> jobs;
        for (int sh = 0; sh < nshapes; ++sh) {
            int d = int(cb.tableaux(sh).size());
            std::uniform_int_distribution<int> pick(0, d - 1);
            int trials = std::min(4, d * d);
            for (int trial = 0; trial < trials; ++trial) jobs.push_back({sh, pick(rng), pick(rng)});
        }
        std::atomic<long> propBad{0}, symBad{0}, suppBad{0};
        parallel_for(jobs.size(), [&](size_t k) {
            auto [sh, s, t] = jobs[k];
            try {
                GstResult gs = g_st(cb, rs, sh, s, t);
                GstResult gts = g_st(cb, rs, sh, t, s);
                if (gs.alpha != gts.alpha) ++symBad;
                // support: F_{conj(s)} g = g and F_u g = 0 for u = conj(t) != conj(s)
                Tableau sbar = conjugate(cb.tableaux(sh)[size_t(s)]);
                Tableau tbar = conjugate(cb.tableaux(sh)[size_t(t)]);
                Element fs = f_projector(alg, rs, sbar);
                if (alg.mul(fs, gs.g) != gs.g) ++suppBad;
                if (!(sbar == tbar)) {
                    Element fu = f_projector(alg, rs, tbar);
                    if (!alg.mul(fu, gs.g).is_zero()) ++suppBad;
                }
            } catch (const HeckeError&) {
                ++propBad;
            }
        });
        r.expect(propBad == 0, "g_st proportional to f at conjugate slot");
        r.expect(symBad == 0, "alpha_st = alpha_ts");
        r.expect(suppBad == 0, "F_u g_st = delta g_st");
    }

    // Phi/Psi identities and unitriangularity
    {
        std::atomic<long> idBad{0}, scalBad{0}, triBad{0};
        parallel_for(size_t(nshapes), [&](size_t sh) {
            const Multipartition& shape = cb.shapes()[sh];
            GammaTable gt = gamma_seminormal(shape, &S.binding());
            Element ftop = f_projector(alg, rs, gt.tableaux[0]);
            for (size_t ti = 0; ti < gt.tableaux.size(); ++ti) {
                const Tableau& t = gt.tableaux[ti];
                PhiPsi pp = phi_psi(alg, t);
                Element ft = f_projector(alg, rs, t);
                if (alg.mul(pp.psi, ft) != alg.mul(ftop, pp.phi)) ++idBad;
                if (alg.mul(pp.phi, alg.star(pp.psi)) * gt.value[0] !=
                    alg.identity() * gt.value[ti])
                    ++scalBad;
                // Phi_t = d(t) + lower Bruhat terms in the group algebra
                Perm dt = d_perm(t);
                BasisKey lead;
                for (int i = 0; i < alg.n(); ++i) lead.perm[size_t(i)] = uint8_t(dt.img[size_t(i)] - 1);
                if (pp.phi.coefficient(lead) != 1) ++triBad;
                for (const auto& [k, c] : pp.phi.terms) {
                    for (int i = 0; i < alg.n(); ++i)
                        if (k.exps[size_t(i)] != 0) ++triBad;
                    Perm w = alg.unpack_perm(k);
                    if (w != dt && !bruhat_lt(w, dt)) ++triBad;
                }
            }
        });
        r.expect(idBad == 0, "Psi_t F_t = F_{t^lambda} Phi_t");
        r.expect(scalBad == 0, "gamma_{t^lambda} Phi_t Psi_t* = gamma_t");
        r.expect(triBad == 0, "Phi_t = d(t) + lower Bruhat terms");
    }

    // z-based idempotent: measured signs
    {
        bool idemOk = true, signUniform = true, zsOk = true, corrOk = true;
        int mn = (alg.m() - 1) * alg.n();
        int expectSign = mn % 2 == 0 ? 1 : -1;
        std::vector<ZIdempotentReport> reports{size_t(nshapes)};
        parallel_for(size_t(nshapes), [&](size_t sh) {
            reports[sh] = z_idempotent(alg, rs, cb.shapes()[sh]);
        });
        for (int sh = 0; sh < nshapes; ++sh) {
            const ZIdempotentReport& zr = reports[size_t(sh)];
            if (zr.eps == 0) idemOk = false;
            if (zr.eps != expectSign) signUniform = false;
            if (zr.z_sign != expectSign) zsOk = false;
            if (!zr.psi_star_equals_f) corrOk = false;
        }
        r.expect(idemOk, "z w_bar / (gamma gamma_bar) idempotent up to sign");
        r.expect(signUniform, "idempotency sign = (-1)^{(m-1)n} uniformly");
        r.expect(zsOk, "z = (-1)^{(m-1)n} bar(gamma) f_{t^lambda t_lambda}");
        r.expect(corrOk, "F_{t^lambda} = sign z Psi_{t_lambda}* / (gamma gamma_bar)");
    }

    // bar consistency on residues at the scalar level
    {
        bool barOk = true;
        for (int sh = 0; sh < nshapes; ++sh)
            for (const Tableau& t : cb.tableaux(sh)) {
                Tableau tb = conjugate(t);
                for (int k = 1; k <= alg.n(); ++k) {
                    Residue rt = t.residue(k);
                    FactoredScalar f = FactoredScalar::one();
                    f.mul_factor(rt.d, rt.c, 0);
                    FactoredScalar barf = bar_scalar(f, alg.m());
                    Residue rb = tb.residue(k);
                    FactoredScalar expect(Rational(-1));
                    expect.mul_factor(rb.d, rb.c, 0);
                    if (!(barf == expect)) barOk = false;
                }
            }
        r.expect(barOk, "bar(res_t(k)) = -res_{conj(t)}(k) at the scalar level");
    }
    return r;
}

// --- tau-z ---------------------------------------------------------------------

inline SuiteResult suite_tau_z(Session& S) {
    SuiteResult r{"tau-z"};
    const Algebra& alg = S.algebra();
    r.payload = Json::array();
    bool canProject = true;
    try {
        check_residue_separation(S.binding(), S.rsets());
    } catch (const NonGenericBindingError&) {
        canProject = false;  // z-idempotent signs need the projectors
    }
    size_t nshapes = S.shapes().size();
    std::vector<TauZReport> tzs{nshapes};
    std::vector<LeadingTermReport> lts{nshapes};
    std::vector<int> ziSigns(nshapes, 0);
    parallel_for(nshapes, [&](size_t i) {
        const Multipartition& shape = S.shapes()[i];
        tzs[i] = tau_z(alg, shape);
        lts[i] = leading_term_check(shape, S.binding());
        if (canProject) ziSigns[i] = z_idempotent(alg, S.rsets(), shape).eps;
    });
    for (size_t i = 0; i < nshapes; ++i) {
        const Multipartition& shape = S.shapes()[i];
        const TauZReport& tz = tzs[i];
        const LeadingTermReport& lt = lts[i];
        const std::string tag = " at " + shape.to_string();
        r.expect(tz.unit, "|tau(z w_bar)| = 1" + tag);
        r.expect(tz.matches_n_bar, "tau sign = (-1)^{n(conj(lambda))}" + tag);
        r.expect(lt.is_signed_monomial, "top graded term is a signed monomial" + tag);
        r.expect(lt.orders_agree, "both association orders agree" + tag);
        r.expect(lt.matches_n_bar, "leading sign = (-1)^{n(conj(lambda))}" + tag);
        Json rec;
        rec["lambda"] = shape.to_string();
        rec["n_lambda"] = tz.n_lambda;
        rec["n_lambda_bar"] = tz.n_lambda_bar;
        rec["tau_z_sign"] = tz.value == 1 ? 1 : (tz.value == -1 ? -1 : 0);
        rec["leading_sign"] = lt.eps;
        if (canProject) rec["z_idempotent_sign"] = ziSigns[i];
        else rec["z_idempotent_sign"] = Json();
        r.payload.push_back(rec);
    }
    // a binding with a vanishing P_H factor: the identity holds regardless
    if (alg.m() >= 2 && alg.n() >= 2) {
        std::vector<Rational> q = S.binding().q;
        q[1] = q[0] + 1;
        ParamBinding nb = make_binding(alg.m(), alg.n(), std::move(q));
        r.expect(!nb.generic, "crafted binding is non-generic");
        Algebra degenerate(nb);
        std::atomic<long> unitBad{0}, signBad{0};
        parallel_for(nshapes, [&](size_t i) {
            TauZReport tz = tau_z(degenerate, S.shapes()[i]);
            if (!tz.unit) ++unitBad;
            if (!tz.matches_n_bar) ++signBad;
        });
        r.expect(unitBad == 0, "|tau(z w_bar)| = 1 at non-generic binding");
        r.expect(signBad == 0, "sign rule persists at non-generic binding");
    }
    return r;
}

// --- schur ----------------------------------------------------------------------

inline SuiteResult suite_schur(Session& S) {
    SuiteResult r{"schur"};
    const Algebra& alg = S.algebra();
    const auto& rs = S.rsets();
    const ParamBinding& b = S.binding();

    std::vector<SchurRecord> recs = consistency_report(alg, rs);
    bool agree = true;
    for (const auto& rec : recs)
        if (!rec.consistent) agree = false;
    r.expect(agree, "three Schur routes agree at the session binding");

    {
        ParamBinding b2 = alternate_binding(alg.m(), alg.n());
        if (b2 == b) b2 = default_binding(alg.m(), alg.n());
        Algebra alg2(b2);
        std::vector<SchurRecord> recs2 = consistency_report(alg2, rs);
        bool agree2 = true;
        for (const auto& rec : recs2)
            if (!rec.consistent) agree2 = false;
        r.expect(agree2, "three Schur routes agree at a second generic binding");
    }

    // eta_i specialization, canonically
    {
        bool etaOk = true;
        for (int i = 1; i <= alg.m(); ++i) {
            Multipartition eta;
            eta.comps.assign(size_t(alg.m()), {});
            eta.comps[size_t(i) - 1] = Partition{alg.n()};
            FactoredScalar expect(Rational(1));
            for (int k = 2; k <= alg.n(); ++k) expect.scale(k);
            for (int j = 1; j <= alg.m(); ++j) {
                if (j == i) continue;
                for (int k = 0; k < alg.n(); ++k) expect.mul_factor(k, i, j);
            }
            if (!(schur_closed(eta) == expect)) etaOk = false;
        }
        r.expect(etaOk, "schur_closed(eta_i) = n! prod (k + q_i - q_j)");
    }

    // palindromy (with the measured global sign) and the hook/leg formula
    {
        bool palOk = true, hookOk = true;
        bool evenCase = ((alg.m() - 1) * alg.n()) % 2 == 0;
        for (const auto& shape : S.shapes()) {
            if (!palindromy_signed_holds(shape)) palOk = false;
            if (evenCase && !palindromy_holds(shape)) palOk = false;
            if (!(gamma_tlam_closed(shape) == gamma_closed(column_reading_tableau(shape))))
                hookOk = false;
        }
        r.expect(palOk, "palindromy s_{conj} = (-1)^{(m-1)n} bar(s_lambda) symbolically");
        r.expect(hookOk, "hook/leg formula for gamma_{t_lambda}");
    }

    // symbolic gram determinant against the cellular one
    {
        bool gdOk = true;
        const CellularBasis& cb = S.cellular();
        for (int sh = 0; sh < int(cb.shapes().size()); ++sh) {
            auto [mat, det] = gram(cb, sh);
            if (gram_det_closed(cb.shapes()[size_t(sh)]).evaluate(b) != det) gdOk = false;
        }
        r.expect(gdOk, "gram_det_closed = cellular gram determinant");
    }

    r.expect(weight_decomposition_holds(alg, rs),
             "tau = sum chi^lambda / s_lambda on all basis elements");

    // semisimplicity detection: all schur values nonzero iff generic
    {
        bool nonzero = true;
        for (const auto& rec : recs)
            if (rec.s_via_tau == 0) nonzero = false;
        r.expect(nonzero == b.generic, "schur values nonzero iff binding generic");
    }
    return r;
}

inline SuiteResult run_suite(Session& S, const std::string& name) {
    if (name == "relations") return suite_relations(S);
    if (name == "cellular") return suite_cellular(S);
    if (name == "seminormal") return suite_seminormal(S);
    if (name == "matrix-units") return suite_matrix_units(S);
    if (name == "idempotents") return suite_idempotents(S);
    if (name == "dual") return suite_dual(S);
    if (name == "tau-z") return suite_tau_z(S);
    if (name == "schur") return suite_schur(S);
    throw ConfigError("unknown suite: " + name);
}

// ---------------------------------------------------------------------------
// Commands.

inline Json command_dims(Session& S) {
    Json recs = Json::array();
    long sum = 0;
    for (const auto& shape : S.shapes()) {
        long d = long(standard_tableaux(shape).size());
        sum += d * d;
        Json rec;
        rec["lambda"] = shape.to_string();
        rec["std_count"] = d;
        rec["square"] = d * d;
        recs.push_back(rec);
    }
    Json rec;
    rec["lambda"] = "TOTAL";
    rec["std_count"] = Json();
    rec["square"] = sum;
    recs.push_back(rec);
    if (sum != S.algebra_dim()) throw HeckeError("dimension identity failed");
    return recs;
}

inline Json command_tableaux(Session& S) {
    Json recs = Json::array();
    std::vector<Multipartition> shapes;
    if (!S.cfg().shape.empty()) shapes.push_back(parse_shape(S.cfg().shape));
    else shapes = S.shapes();
    for (const auto& shape : shapes) {
        for (const Tableau& t : standard_tableaux(shape)) {
            Perm d = d_perm(t);
            Json rec;
            rec["lambda"] = shape.to_string();
            rec["tableau"] = t.to_string();
            rec["d_perm"] = d.to_string();
            rec["length"] = d.length();
            std::ostringstream res;
            for (int k = 1; k <= t.n(); ++k) {
                Residue x = t.residue(k);
                res << (k > 1 ? " " : "") << x.d << "+q" << x.c;
            }
            rec["residues"] = res.str();
            recs.push_back(rec);
        }
    }
    return recs;
}

inline Json command_gamma(Session& S) {
    Json recs = Json::array();
    std::vector<Multipartition> shapes;
    if (!S.cfg().shape.empty()) shapes.push_back(parse_shape(S.cfg().shape));
    else shapes = S.shapes();
    for (const auto& shape : shapes) {
        GammaTable gt = gamma_seminormal(shape, &S.binding());
        for (size_t ti = 0; ti < gt.tableaux.size(); ++ti) {
            Json rec;
            rec["lambda"] = shape.to_string();
            rec["tableau"] = gt.tableaux[ti].to_string();
            rec["gamma_factored"] = gt.symbolic[ti].to_string();
            rec["gamma_value"] = rational_to_string(gt.value[ti]);
            recs.push_back(rec);
        }
    }
    if (S.cfg().characters) {
        for (const auto& shape : shapes) {
            SeminormalRep rep = seminormal_rep(shape, S.binding());
            for (const Perm& w : all_perms(S.binding().n)) {
                Json rec;
                rec["lambda"] = shape.to_string();
                rec["tableau"] = "chi@" + w.to_string();
                rec["gamma_factored"] = "";
                rec["gamma_value"] =
                    rational_to_string(character(rep, S.algebra().perm_element(w)));
                recs.push_back(rec);
            }
        }
    }
    return recs;
}

inline Json command_gram(Session& S) {
    Json recs = Json::array();
    const CellularBasis& cb = S.cellular();
    std::vector<int> shapeIdx;
    if (!S.cfg().shape.empty()) shapeIdx.push_back(cb.shape_index(parse_shape(S.cfg().shape)));
    else
        for (int i = 0; i < int(cb.shapes().size()); ++i) shapeIdx.push_back(i);
    for (int sh : shapeIdx) {
        auto [mat, det] = gram(cb, sh);
        GammaTable gt = gamma_seminormal(cb.shapes()[size_t(sh)], &S.binding());
        Rational prod = 1;
        for (const auto& v : gt.value) prod *= v;
        Json rec;
        rec["lambda"] = cb.shapes()[size_t(sh)].to_string();
        rec["dim"] = mat.rows();
        rec["det"] = rational_to_string(det);
        rec["gamma_product"] = rational_to_string(prod);
        rec["match"] = det == prod;
        if (S.cfg().include_matrix) rec["matrix"] = matrix_to_json(mat);
        if (S.cfg().include_action) {
            SpechtData sd = specht_action(cb, sh);
            Json action;
            for (int i = 0; i < S.binding().n; ++i)
                action["s" + std::to_string(i)] = matrix_to_json(sd.gen_s[size_t(i)]);
            for (int k = 1; k <= S.binding().n; ++k)
                action["x" + std::to_string(k)] = matrix_to_json(sd.jm_x[size_t(k) - 1]);
            rec["action"] = action;
        }
        recs.push_back(rec);
    }
    return recs;
}

inline Json command_schur(Session& S) {
    std::vector<SchurRecord> recs = consistency_report(S.algebra(), S.rsets());
    Json out = Json::array();
    for (const auto& rec : recs) {
        Json j;
        j["lambda"] = rec.shape.to_string();
        j["schur_factored"] = rec.s_closed.to_string();
        j["schur_value"] = rational_to_string(rec.s_via_tau);
        j["routes_agree"] = rec.consistent;
        out.push_back(j);
    }
    return out;
}

inline Json command_verify(Session& S, bool& allOk) {
    std::vector<std::string> names = S.cfg().suites;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) names = all_suites();
    Json out = Json::array();
    allOk = true;
    for (const std::string& name : names) {
        SuiteResult res = run_suite(S, name);
        Json rec;
        rec["suite"] = res.name;
        rec["checks"] = res.checks;
        rec["passed"] = res.passed;
        rec["status"] = res.ok() ? "ok" : "FAIL";
        if (!res.ok()) {
            Json f = Json::array();
            for (const auto& msg : res.failures) f.push_back(msg);
            rec["failures"] = f;
        }
        if (!res.payload.is_null() && S.cfg().output == OutputFormat::json)
            rec["report"] = res.payload;
        out.push_back(rec);
        if (!res.ok()) allOk = false;
    }
    return out;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        ParamBinding binding = resolve_binding(cfg);
        Session S(cfg, binding, err);
        bool requiresGeneric = cfg.command == Command::schur || cfg.command == Command::gamma ||
                               cfg.command == Command::gram;
        if (cfg.command == Command::verify) {
            for (const auto& s : cfg.suites.empty() ? all_suites() : cfg.suites)
                if (s != "relations" && s != "tau-z") requiresGeneric = true;
        }
        if (requiresGeneric && !binding.generic) {
            FactoredScalar p = semisimplicity_poly(binding.m, binding.n);
            std::string factor = "P_H(Q)";
            for (const auto& [f, e] : p.factors()) {
                ParamBinding probe = binding;
                FactoredScalar single = FactoredScalar::one();
                single.mul_factor(f.d, f.s, f.t);
                if (single.evaluate(probe) == 0) {
                    factor = f.to_string();
                    break;
                }
            }
            throw NonGenericBindingError(factor);
        }
        switch (cfg.command) {
            case Command::dims: emit(command_dims(S), cfg.output, out); return 0;
            case Command::tableaux: emit(command_tableaux(S), cfg.output, out); return 0;
            case Command::gamma: emit(command_gamma(S), cfg.output, out); return 0;
            case Command::gram: emit(command_gram(S), cfg.output, out); return 0;
            case Command::schur: emit(command_schur(S), cfg.output, out); return 0;
            case Command::verify: {
                bool ok = false;
                Json res = command_verify(S, ok);
                emit(res, cfg.output, out);
                return ok ? 0 : 1;
            }
        }
        throw ConfigError("unhandled command");
    } catch (const NonGenericBindingError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const HeckeError& e) {
        err << "verification error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cli
}  // namespace hecke
