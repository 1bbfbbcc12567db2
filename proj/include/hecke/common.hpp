#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hecke {

// Exact scalar type used throughout the engine. All arithmetic is exact;
// there is no floating-point mode anywhere in the library.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("cannot parse rational: " + s);
    }
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Errors

struct HeckeError : std::runtime_error {
    explicit HeckeError(const std::string& what) : std::runtime_error(what) {}
};

struct IndexError : HeckeError {
    explicit IndexError(const std::string& what) : HeckeError(what) {}
};

struct RangeError : HeckeError {
    explicit RangeError(const std::string& what) : HeckeError(what) {}
};

struct DivisionByZeroError : HeckeError {
    explicit DivisionByZeroError(const std::string& what) : HeckeError(what) {}
};

struct SizeMismatchError : HeckeError {
    explicit SizeMismatchError(const std::string& what) : HeckeError(what) {}
};

struct ShapeMismatchError : HeckeError {
    explicit ShapeMismatchError(const std::string& what) : HeckeError(what) {}
};

struct OutOfShapeError : HeckeError {
    explicit OutOfShapeError(const std::string& what) : HeckeError(what) {}
};

struct BindingMismatchError : HeckeError {
    explicit BindingMismatchError(const std::string& what) : HeckeError(what) {}
};

// Raised by every semisimple-only construction when a denominator vanishes at
// the current binding.  Carries the offending factor so the CLI can surface it.
struct NonGenericBindingError : HeckeError {
    std::string factor;
    explicit NonGenericBindingError(const std::string& factor_)
        : HeckeError("non-generic binding: factor " + factor_ + " vanishes"),
          factor(factor_) {}
};

struct SingularTransitionError : HeckeError {
    explicit SingularTransitionError(const std::string& what) : HeckeError(what) {}
};

struct ZeroTraceError : HeckeError {
    explicit ZeroTraceError(const std::string& what) : HeckeError(what) {}
};

struct ConfigError : HeckeError {
    explicit ConfigError(const std::string& what) : HeckeError(what) {}
};

struct IoError : HeckeError {
    explicit IoError(const std::string& what) : HeckeError(what) {}
};

// ---------------------------------------------------------------------------
// Dense exact matrices

class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw SizeMismatchError("matrix product shape");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j) != 0) r.at(i, j) += a * o.at(k, j);
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeMismatchError("matrix sum shape");
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeMismatchError("matrix diff shape");
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix scaled(const Rational& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

  private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

// Exact LU decomposition with row pivoting (first nonzero pivot, so the
// factorization is deterministic).  Solves and determinants only; desk-scale
// dimensions keep plain rational elimination comfortably fast.
class LuDecomposition {
  public:
    LuDecomposition() : n_(0), singular_(false), sign_(1) {}

    explicit LuDecomposition(const Matrix& m)
        : n_(m.rows()), lu_(m), perm_(m.rows()), singular_(false), sign_(1) {
        if (m.rows() != m.cols()) throw SizeMismatchError("LU needs square matrix");
        for (int i = 0; i < n_; ++i) perm_[i] = i;
        for (int col = 0; col < n_; ++col) {
            int pivot = -1;
            for (int r = col; r < n_; ++r) {
                if (lu_.at(r, col) != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) {
                singular_ = true;
                return;
            }
            if (pivot != col) {
                for (int j = 0; j < n_; ++j) std::swap(lu_.at(pivot, j), lu_.at(col, j));
                std::swap(perm_[pivot], perm_[col]);
                sign_ = -sign_;
            }
            const Rational& p = lu_.at(col, col);
            for (int r = col + 1; r < n_; ++r) {
                if (lu_.at(r, col) == 0) continue;
                Rational f = lu_.at(r, col) / p;
                lu_.at(r, col) = f;
                for (int j = col + 1; j < n_; ++j) lu_.at(r, j) -= f * lu_.at(col, j);
            }
        }
    }

    bool singular() const { return singular_; }
    int dim() const { return n_; }

    Rational determinant() const {
        if (singular_) return 0;
        Rational d = sign_;
        for (int i = 0; i < n_; ++i) d *= lu_.at(i, i);
        return d;
    }

    std::vector<Rational> solve(const std::vector<Rational>& b) const {
        if (singular_) throw SingularTransitionError("singular system");
        if (int(b.size()) != n_) throw SizeMismatchError("solve rhs size");
        std::vector<Rational> y(n_);
        for (int i = 0; i < n_; ++i) {
            Rational s = b[perm_[i]];
            for (int j = 0; j < i; ++j) s -= lu_.at(i, j) * y[j];
            y[i] = s;
        }
        std::vector<Rational> x(n_);
        for (int i = n_ - 1; i >= 0; --i) {
            Rational s = y[i];
            for (int j = i + 1; j < n_; ++j) s -= lu_.at(i, j) * x[j];
            x[i] = s / lu_.at(i, i);
        }
        return x;
    }

    const Matrix& packed() const { return lu_; }
    const std::vector<int>& row_permutation() const { return perm_; }
    int pivot_sign() const { return sign_; }

    // Reassembly from cached parts; trusts nothing beyond shapes.
    static LuDecomposition from_parts(Matrix lu, std::vector<int> perm, int sign) {
        LuDecomposition d;
        d.n_ = lu.rows();
        if (lu.rows() != lu.cols() || int(perm.size()) != d.n_) {
            throw IoError("corrupt LU cache entry");
        }
        d.lu_ = std::move(lu);
        d.perm_ = std::move(perm);
        d.sign_ = sign;
        d.singular_ = false;
        return d;
    }

  private:
    int n_;
    Matrix lu_;
    std::vector<int> perm_;
    bool singular_;
    int sign_;
};

inline int exact_rank(Matrix m) {
    int rank = 0;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        for (int r = row + 1; r < m.rows(); ++r) {
            if (m.at(r, col) == 0) continue;
            Rational f = m.at(r, col) / m.at(row, col);
            for (int j = col; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
        }
        ++rank;
        ++row;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Small worker pool: ordered results, index-sharded work.  Thread count comes
// from HECKE_THREADS when set, hardware concurrency otherwise.

inline unsigned worker_count(size_t items) {
    if (items <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("HECKE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = unsigned(v);
    }
    if (hw == 0) hw = 1;
    return unsigned(std::min<size_t>(hw, items));
}

inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    unsigned workers = worker_count(count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hecke
