#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/scalars.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// Partitions: weakly decreasing positive parts, no trailing zeros.

using Partition = std::vector<int>;

inline bool partition_valid(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

inline int partition_size(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

inline Partition conjugate_partition(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    c.resize(p[0]);
    for (int j = 1; j <= p[0]; ++j) {
        int h = 0;
        for (int part : p)
            if (part >= j) ++h;
        c[j - 1] = h;
    }
    return c;
}

inline std::vector<Partition> partitions_of(int k) {
    std::vector<Partition> out;
    Partition cur;
    // descending-part recursion, largest first
    std::function<void(int, int)> rec = [&](int rest, int maxPart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, maxPart); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    rec(k, k);
    return out;
}

// ---------------------------------------------------------------------------
// Nodes (row, col, comp), all 1-based.

struct Node {
    int row = 0;
    int col = 0;
    int comp = 0;

    bool operator==(const Node& o) const {
        return row == o.row && col == o.col && comp == o.comp;
    }
    bool operator!=(const Node& o) const { return !(*this == o); }
    bool operator<(const Node& o) const {
        if (comp != o.comp) return comp < o.comp;
        if (row != o.row) return row < o.row;
        return col < o.col;
    }
};

// The order used for addable/removable bookkeeping: y comes before x
// ("y < x") when y lies in an earlier component, or in the same component in
// a later column.  node_after(x, y) says y is strictly greater than x.
inline bool node_prec(const Node& y, const Node& x) {
    if (y.comp != x.comp) return y.comp < x.comp;
    if (y.col != x.col) return y.col > x.col;
    return false;
}

inline bool node_after(const Node& x, const Node& y) { return node_prec(x, y); }

// ---------------------------------------------------------------------------
// Multipartitions.

struct Multipartition {
    std::vector<Partition> comps;

    int m() const { return int(comps.size()); }

    int size() const {
        int n = 0;
        for (const auto& p : comps) n += partition_size(p);
        return n;
    }

    bool valid() const {
        if (comps.empty()) return false;
        for (const auto& p : comps)
            if (!partition_valid(p)) return false;
        return true;
    }

    int row_length(int comp, int row) const {
        const Partition& p = comps[size_t(comp) - 1];
        return row >= 1 && row <= int(p.size()) ? p[size_t(row) - 1] : 0;
    }

    bool contains(const Node& nd) const {
        if (nd.comp < 1 || nd.comp > m() || nd.row < 1 || nd.col < 1) return false;
        return nd.col <= row_length(nd.comp, nd.row);
    }

    bool operator==(const Multipartition& o) const { return comps == o.comps; }
    bool operator!=(const Multipartition& o) const { return !(*this == o); }
    bool operator<(const Multipartition& o) const { return comps < o.comps; }

    std::vector<Node> nodes() const {
        std::vector<Node> out;
        for (int c = 1; c <= m(); ++c)
            for (int r = 1; r <= int(comps[c - 1].size()); ++r)
                for (int j = 1; j <= comps[c - 1][r - 1]; ++j) out.push_back({r, j, c});
        return out;
    }

    // a_i = sum_{j<i} |lambda^j| (1-based list of length m)
    std::vector<int> a_list() const {
        std::vector<int> a(m());
        int run = 0;
        for (int i = 0; i < m(); ++i) {
            a[i] = run;
            run += partition_size(comps[i]);
        }
        return a;
    }

    // b_i = sum_{j>i} |lambda^j|
    std::vector<int> b_list() const {
        std::vector<int> b(m());
        int run = 0;
        for (int i = m() - 1; i >= 0; --i) {
            b[i] = run;
            run += partition_size(comps[i]);
        }
        return b;
    }

    // n(lambda) = sum (i-1)|lambda^i|
    int n_stat() const {
        int s = 0;
        for (int i = 0; i < m(); ++i) s += i * partition_size(comps[i]);
        return s;
    }

    // lambda! = prod over all rows of (row length)!
    Rational factorial_stat() const {
        Rational f = 1;
        for (const auto& p : comps)
            for (int part : p)
                for (int k = 2; k <= part; ++k) f *= k;
        return f;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (int c = 0; c < m(); ++c) {
            if (c) os << '|';
            if (comps[c].empty()) {
                os << '0';
                continue;
            }
            for (size_t i = 0; i < comps[c].size(); ++i) {
                if (i) os << '.';
                os << comps[c][i];
            }
        }
        return os.str();
    }
};

// Parse the textual shape notation, e.g. "3.1|1" or "0|2".
inline Multipartition parse_shape(const std::string& text) {
    Multipartition mp;
    std::stringstream comps(text);
    std::string comp;
    while (std::getline(comps, comp, '|')) {
        Partition p;
        if (comp != "0" && !comp.empty()) {
            std::stringstream parts(comp);
            std::string part;
            while (std::getline(parts, part, '.')) {
                try {
                    p.push_back(std::stoi(part));
                } catch (const std::exception&) {
                    throw ConfigError("bad shape notation: " + text);
                }
            }
        }
        mp.comps.push_back(std::move(p));
    }
    if (!mp.valid()) throw ConfigError("bad shape notation: " + text);
    return mp;
}

inline Multipartition conjugate(const Multipartition& mp) {
    Multipartition c;
    c.comps.resize(mp.comps.size());
    int m = mp.m();
    for (int i = 1; i <= m; ++i) c.comps[i - 1] = conjugate_partition(mp.comps[m - i]);
    return c;
}

// Dominance on multipartitions via the double partial-sum criterion.
inline bool dominates(const Multipartition& a, const Multipartition& b) {
    if (a.m() != b.m()) throw SizeMismatchError("dominance: component counts differ");
    if (a.size() != b.size()) throw SizeMismatchError("dominance: sizes differ");
    int m = a.m();
    int prevA = 0, prevB = 0;
    for (int i = 1; i <= m; ++i) {
        int maxRows = std::max(a.comps[i - 1].size(), b.comps[i - 1].size());
        int sa = prevA, sb = prevB;
        for (int j = 1; j <= maxRows; ++j) {
            sa += a.row_length(i, j);
            sb += b.row_length(i, j);
            if (sa < sb) return false;
        }
        prevA = sa;
        prevB = sb;
    }
    return true;
}

// Sort key for the canonical shape order: the flattened partial-sum sequence.
// Sorting descending-lexicographically refines dominance (dominant first).
inline std::vector<int> shape_order_key(const Multipartition& mp) {
    std::vector<int> key;
    int n = mp.size();
    int run = 0;
    for (int i = 1; i <= mp.m(); ++i) {
        int s = run;
        for (int j = 1; j <= n; ++j) {
            s += mp.row_length(i, j);
            key.push_back(s);
        }
        run = s;
    }
    return key;
}

inline std::vector<Multipartition> multipartitions(int m, int n) {
    if (m < 1 || n < 1) throw RangeError("multipartitions needs m, n >= 1");
    std::vector<std::vector<Partition>> table(n + 1);
    for (int k = 0; k <= n; ++k) table[k] = partitions_of(k);
    std::vector<Multipartition> out;
    Multipartition cur;
    cur.comps.resize(m);
    std::function<void(int, int)> rec = [&](int comp, int rest) {
        if (comp == m) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        int top = (comp == m - 1) ? rest : rest;
        for (int k = 0; k <= top; ++k) {
            for (const auto& p : table[k]) {
                cur.comps[comp] = p;
                rec(comp + 1, rest - k);
            }
        }
        cur.comps[comp].clear();
    };
    rec(0, n);
    std::stable_sort(out.begin(), out.end(), [](const Multipartition& a, const Multipartition& b) {
        return shape_order_key(a) > shape_order_key(b);
    });
    return out;
}

inline std::vector<Node> addable_nodes(const Multipartition& mp) {
    std::vector<Node> out;
    for (int c = 1; c <= mp.m(); ++c) {
        const Partition& p = mp.comps[c - 1];
        for (int r = 1; r <= int(p.size()) + 1; ++r) {
            int len = mp.row_length(c, r);
            int above = r > 1 ? mp.row_length(c, r - 1) : -1;
            if (r == 1 || len < above) out.push_back({r, len + 1, c});
        }
    }
    return out;
}

inline std::vector<Node> removable_nodes(const Multipartition& mp) {
    std::vector<Node> out;
    for (int c = 1; c <= mp.m(); ++c) {
        const Partition& p = mp.comps[c - 1];
        for (int r = 1; r <= int(p.size()); ++r) {
            int len = p[r - 1];
            int below = mp.row_length(c, r + 1);
            if (len > below) out.push_back({r, len, c});
        }
    }
    return out;
}

// Hook and leg lengths of a node.  h = lambda^s_i + conj(lambda^s)_j - i - j + 1,
// leg = conj(lambda^s)_j - i + 1 counts the nodes of the hook's leg including
// the corner, which is the reading that makes prod(leg) = conj(lambda)!.
inline std::pair<int, int> hooks(const Multipartition& mp, const Node& nd) {
    if (!mp.contains(nd)) throw OutOfShapeError("hooks: node outside shape");
    const Partition& p = mp.comps[size_t(nd.comp) - 1];
    Partition pc = conjugate_partition(p);
    int h = p[size_t(nd.row) - 1] + pc[size_t(nd.col) - 1] - nd.row - nd.col + 1;
    int leg = pc[size_t(nd.col) - 1] - nd.row + 1;
    return {h, leg};
}

// ---------------------------------------------------------------------------
// Permutations of {1..n}: img[i-1] = w(i).  Group law is left-to-right
// application, (u*v)(k) = v(u(k)), matching juxtaposition of algebra words.

struct Perm {
    std::vector<int> img;

    static Perm identity(int n) {
        Perm w;
        w.img.resize(n);
        std::iota(w.img.begin(), w.img.end(), 1);
        return w;
    }

    static Perm transposition(int n, int i, int j) {
        Perm w = identity(n);
        std::swap(w.img[i - 1], w.img[j - 1]);
        return w;
    }

    int n() const { return int(img.size()); }
    int operator()(int k) const { return img[size_t(k) - 1]; }
    bool is_identity() const {
        for (int i = 1; i <= n(); ++i)
            if (img[i - 1] != i) return false;
        return true;
    }

    Perm operator*(const Perm& o) const {
        if (n() != o.n()) throw SizeMismatchError("perm product size");
        Perm r;
        r.img.resize(img.size());
        for (int i = 0; i < n(); ++i) r.img[i] = o.img[size_t(img[i]) - 1];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (int i = 0; i < n(); ++i) r.img[size_t(img[i]) - 1] = i + 1;
        return r;
    }

    int length() const {
        int inv = 0;
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j)
                if (img[i] > img[j]) ++inv;
        return inv;
    }

    // Canonical reduced word by bubble-sort inversion elimination: repeatedly
    // swap the leftmost descent of the remaining one-line word.  Reading the
    // collected letters left to right recovers w as an algebra word.
    std::vector<int> reduced_word() const {
        std::vector<int> word;
        std::vector<int> cur = img;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int i = 0; i + 1 < n(); ++i) {
                if (cur[i] > cur[i + 1]) {
                    std::swap(cur[i], cur[i + 1]);
                    word.push_back(i + 1);
                    moved = true;
                }
            }
        }
        return word;
    }

    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator!=(const Perm& o) const { return !(*this == o); }
    bool operator<(const Perm& o) const { return img < o.img; }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (int i = 0; i < n(); ++i) {
            if (i) os << ' ';
            os << img[i];
        }
        os << ']';
        return os.str();
    }
};

// Bruhat order via the tableau criterion: u <= w iff for every prefix length
// the sorted prefix of u is entrywise <= the sorted prefix of w.
inline bool bruhat_leq(const Perm& u, const Perm& w) {
    if (u.n() != w.n()) throw SizeMismatchError("bruhat: sizes differ");
    std::vector<int> pu, pw;
    for (int i = 0; i < u.n(); ++i) {
        pu.insert(std::upper_bound(pu.begin(), pu.end(), u.img[i]), u.img[i]);
        pw.insert(std::upper_bound(pw.begin(), pw.end(), w.img[i]), w.img[i]);
        for (size_t k = 0; k < pu.size(); ++k)
            if (pu[k] > pw[k]) return false;
    }
    return true;
}

inline bool bruhat_lt(const Perm& u, const Perm& w) { return u != w && bruhat_leq(u, w); }

inline std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm w = Perm::identity(n);
    do {
        out.push_back(w);
    } while (std::next_permutation(w.img.begin(), w.img.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Tableaux.  pos[k-1] is the node holding entry k; the shape is carried along.

struct Tableau {
    Multipartition shape;
    std::vector<Node> pos;

    int n() const { return int(pos.size()); }

    const Node& node_of(int k) const {
        if (k < 1 || k > n()) throw RangeError("tableau entry out of range");
        return pos[size_t(k) - 1];
    }

    int entry_at(const Node& nd) const {
        for (int k = 1; k <= n(); ++k)
            if (pos[size_t(k) - 1] == nd) return k;
        throw OutOfShapeError("no entry at node");
    }

    Residue residue(int k) const {
        const Node& nd = node_of(k);
        return Residue{nd.col - nd.row, nd.comp};
    }

    std::vector<Residue> residue_sequence() const {
        std::vector<Residue> out;
        out.reserve(pos.size());
        for (int k = 1; k <= n(); ++k) out.push_back(residue(k));
        return out;
    }

    Multipartition shape_prefix(int k) const {
        Multipartition mp;
        mp.comps.assign(shape.comps.size(), {});
        std::vector<std::vector<int>> rows(shape.comps.size());
        for (int e = 1; e <= k; ++e) {
            const Node& nd = pos[size_t(e) - 1];
            auto& rc = rows[size_t(nd.comp) - 1];
            if (int(rc.size()) < nd.row) rc.resize(nd.row, 0);
            ++rc[size_t(nd.row) - 1];
        }
        for (size_t c = 0; c < rows.size(); ++c) {
            Partition p;
            for (int len : rows[c]) {
                if (len == 0) break;
                p.push_back(len);
            }
            mp.comps[c] = p;
        }
        return mp;
    }

    bool standard() const {
        if (int(shape.size()) != n()) return false;
        std::set<Node> seen;
        for (const Node& nd : pos) {
            if (!shape.contains(nd) || !seen.insert(nd).second) return false;
        }
        for (int k = 1; k <= n(); ++k) {
            const Node& nd = pos[size_t(k) - 1];
            if (nd.col > 1) {
                int left = entry_at({nd.row, nd.col - 1, nd.comp});
                if (left > k) return false;
            }
            if (nd.row > 1) {
                int up = entry_at({nd.row - 1, nd.col, nd.comp});
                if (up > k) return false;
            }
        }
        return true;
    }

    // Right action by entry relabelling: (t.act(w))(node) = w(t(node)).
    Tableau act(const Perm& w) const {
        Tableau r;
        r.shape = shape;
        r.pos.resize(pos.size());
        for (int k = 1; k <= n(); ++k) r.pos[size_t(w(k)) - 1] = pos[size_t(k) - 1];
        return r;
    }

    Tableau swap_entries(int i) const { return act(Perm::transposition(n(), i, i + 1)); }

    bool operator==(const Tableau& o) const { return shape == o.shape && pos == o.pos; }
    bool operator!=(const Tableau& o) const { return !(*this == o); }

    std::string to_string() const {
        std::ostringstream os;
        for (int c = 1; c <= shape.m(); ++c) {
            if (c > 1) os << '|';
            const Partition& p = shape.comps[size_t(c) - 1];
            if (p.empty()) {
                os << '0';
                continue;
            }
            for (int r = 1; r <= int(p.size()); ++r) {
                if (r > 1) os << '/';
                for (int j = 1; j <= p[size_t(r) - 1]; ++j) {
                    if (j > 1) os << '.';
                    os << entry_at({r, j, c});
                }
            }
        }
        return os.str();
    }
};

// t^lambda: 1..n along the rows of component 1, then component 2, ...
inline Tableau row_reading_tableau(const Multipartition& mp) {
    Tableau t;
    t.shape = mp;
    t.pos.resize(mp.size());
    int k = 0;
    for (int c = 1; c <= mp.m(); ++c)
        for (int r = 1; r <= int(mp.comps[c - 1].size()); ++r)
            for (int j = 1; j <= mp.comps[c - 1][r - 1]; ++j) t.pos[size_t(k++)] = {r, j, c};
    return t;
}

// Conjugate tableau: component-reversed, row/column-interchanged.
inline Tableau conjugate(const Tableau& t) {
    Tableau r;
    r.shape = conjugate(t.shape);
    r.pos.resize(t.pos.size());
    int m = t.shape.m();
    for (int k = 1; k <= t.n(); ++k) {
        const Node& nd = t.pos[size_t(k) - 1];
        r.pos[size_t(k) - 1] = Node{nd.col, nd.row, m - nd.comp + 1};
    }
    return r;
}

// t_lambda = conj(t^{conj(lambda)}): 1..n down the columns of component m,
// then component m-1, and so on.
inline Tableau column_reading_tableau(const Multipartition& mp) {
    return conjugate(row_reading_tableau(conjugate(mp)));
}

// d(t): the unique w with t = t^lambda . w, i.e. w(t^lambda(node)) = t(node).
inline Perm d_perm(const Tableau& t) {
    Tableau trow = row_reading_tableau(t.shape);
    Perm w;
    w.img.resize(t.pos.size());
    for (int k = 1; k <= t.n(); ++k) {
        // entry k of t^lambda sits at trow.pos[k-1]; in t that node holds t(node)
        w.img[size_t(k) - 1] = t.entry_at(trow.pos[size_t(k) - 1]);
    }
    return w;
}

struct SpecialTableaux {
    Tableau t_row;  // t^lambda
    Tableau t_col;  // t_lambda
    Perm w_lambda;  // d(t_lambda)
};

inline SpecialTableaux special_tableaux(const Multipartition& mp) {
    SpecialTableaux s;
    s.t_row = row_reading_tableau(mp);
    s.t_col = column_reading_tableau(mp);
    s.w_lambda = d_perm(s.t_col);
    return s;
}

// Extended dominance on same-shape standard tableaux.
inline bool tableau_dominates(const Tableau& s, const Tableau& t) {
    if (s.shape != t.shape) throw ShapeMismatchError("tableau dominance: shapes differ");
    for (int k = 1; k <= s.n(); ++k) {
        if (!dominates(s.shape_prefix(k), t.shape_prefix(k))) return false;
    }
    return true;
}

// Canonical total order on same-shape standard tableaux: lexicographic on the
// residue sequence with component ascending, then shift descending.  Refines
// dominance, so t^lambda sorts first and t_lambda last.
inline bool tableau_canonical_less(const Tableau& a, const Tableau& b) {
    for (int k = 1; k <= a.n(); ++k) {
        Residue ra = a.residue(k), rb = b.residue(k);
        if (ra.c != rb.c) return ra.c < rb.c;
        if (ra.d != rb.d) return ra.d > rb.d;
    }
    return false;
}

inline std::vector<Tableau> standard_tableaux(const Multipartition& mp) {
    std::vector<Tableau> out;
    int n = mp.size();
    Tableau cur;
    cur.shape = mp;
    cur.pos.resize(n);
    Multipartition rest = mp;
    // peel the largest entry off a removable node, recursing downward
    std::function<void(int)> rec = [&](int k) {
        if (k == 0) {
            out.push_back(cur);
            return;
        }
        for (const Node& nd : removable_nodes(rest)) {
            cur.pos[size_t(k) - 1] = nd;
            Partition& p = rest.comps[size_t(nd.comp) - 1];
            --p[size_t(nd.row) - 1];
            if (p[size_t(nd.row) - 1] == 0) p.pop_back();
            rec(k - 1);
            if (int(p.size()) < nd.row) p.push_back(1);
            else ++p[size_t(nd.row) - 1];
        }
    };
    rec(n);
    std::sort(out.begin(), out.end(), tableau_canonical_less);
    return out;
}

// A_t(i): addable nodes of shape(t|i) strictly after the node of i;
// R_t(i): removable nodes of shape(t|i-1) strictly after it.
struct AddableRemovable {
    std::vector<Node> addable;
    std::vector<Node> removable;
};

inline AddableRemovable addable_removable(const Tableau& t, int i) {
    if (i < 1 || i > t.n()) throw RangeError("addable_removable: entry out of range");
    const Node& x = t.node_of(i);
    AddableRemovable ar;
    for (const Node& y : addable_nodes(t.shape_prefix(i)))
        if (node_after(x, y)) ar.addable.push_back(y);
    for (const Node& y : removable_nodes(t.shape_prefix(i - 1)))
        if (node_after(x, y)) ar.removable.push_back(y);
    return ar;
}

inline Residue node_residue(const Node& nd) { return Residue{nd.col - nd.row, nd.comp}; }

// R(k): every residue of entry k over all standard tableaux of all shapes in
// P(m, n), as distinct (d, c) pairs.  Full enumeration, deduplicated.
inline std::vector<Residue> residue_set(int m, int n, int k) {
    if (k < 1 || k > n) throw RangeError("residue_set: k out of range");
    std::set<Residue> acc;
    for (const auto& shape : multipartitions(m, n))
        for (const auto& t : standard_tableaux(shape)) acc.insert(t.residue(k));
    return {acc.begin(), acc.end()};
}

// c^lambda(k), c_lambda(k): component of entry k in t^lambda resp. t_lambda.
struct ShapeStats {
    int n_lambda = 0;
    Rational factorial;
    std::vector<int> a;
    std::vector<int> b;
    std::vector<int> comp_row;  // c^lambda(k), k = 1..n
    std::vector<int> comp_col;  // c_lambda(k)
};

inline ShapeStats stats(const Multipartition& mp) {
    ShapeStats s;
    s.n_lambda = mp.n_stat();
    s.factorial = mp.factorial_stat();
    s.a = mp.a_list();
    s.b = mp.b_list();
    Tableau trow = row_reading_tableau(mp);
    Tableau tcol = column_reading_tableau(mp);
    for (int k = 1; k <= mp.size(); ++k) {
        s.comp_row.push_back(trow.node_of(k).comp);
        s.comp_col.push_back(tcol.node_of(k).comp);
    }
    return s;
}

}  // namespace hecke
