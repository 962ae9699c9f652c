#pragma once

// Dense integer matrices with overflow-checked arithmetic, Smith normal form,
// and linear solving over finite abelian groups.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hermackey {

using Int = std::int64_t;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

/// Canonical representative of x modulo m; m == 0 means no reduction.
inline Int mod_reduce(Int x, Int m) {
    if (m == 0) return x;
    Int r = x % m;
    return r < 0 ? r + m : r;
}

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<Int>& data() const { return data_; }

    bool operator==(const IntMatrix&) const = default;

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[dst] += q * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, Int q) {
        if (q == 0) return;
        Int* d = &data_[dst * cols_];
        const Int* s = &data_[src * cols_];
        for (std::size_t j = 0; j < cols_; ++j)
            if (s[j] != 0) d[j] = checked_add(d[j], checked_mul(q, s[j]));
    }
    // col[dst] += q * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, Int q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) {
            Int s = (*this)(i, src);
            if (s != 0) (*this)(i, dst) = checked_add((*this)(i, dst), checked_mul(q, s));
        }
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Int aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
        }
    return c;
}

inline std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Int> y(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && x[j] != 0) y[i] = checked_add(y[i], checked_mul(a(i, j), x[j]));
    return y;
}

/// Result of a Smith normal form computation: U * A * V == S.
struct SmithForm {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;
    std::size_t rank = 0;

    /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
    std::vector<Int> invariant_factors() const {
        std::vector<Int> d;
        for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
        return d;
    }
};

namespace detail {

// Smallest nonzero |entry| in the trailing submatrix; ties broken row-major.
inline bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
    Int best = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            Int v = std::llabs(a(i, j));
            if (v != 0 && (best == 0 || v < best)) {
                best = v;
                pi = i;
                pj = j;
                if (best == 1) return true;
            }
        }
    return best != 0;
}

template <bool Track>
SmithForm smith_impl(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm out;
    if constexpr (Track) {
        out.U = IntMatrix::identity(m);
        out.V = IntMatrix::identity(n);
    }
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(a, t, pi, pj)) break;
        for (;;) {
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if constexpr (Track) {
                out.U.swap_rows(t, pi);
                out.V.swap_cols(t, pj);
            }
            const Int p = a(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / p;
                a.add_row_multiple(i, t, -q);
                if constexpr (Track) out.U.add_row_multiple(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / p;
                a.add_col_multiple(j, t, -q);
                if constexpr (Track) out.V.add_col_multiple(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                find_pivot(a, t, pi, pj);
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % p != 0) {
                        a.add_row_multiple(t, i, 1);
                        if constexpr (Track) out.U.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
            pi = t;
            pj = t;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            if constexpr (Track) out.U.negate_row(t);
        }
    }
    out.rank = t;
    out.S = std::move(a);
    return out;
}

}  // namespace detail

/// Smith normal form with unimodular transforms: U*A*V = S, S diagonal with
/// positive d_i dividing d_{i+1}. Pivots are chosen by smallest absolute value,
/// ties broken in row-major order.
inline SmithForm smith_normal_form(const IntMatrix& a) { return detail::smith_impl<true>(a); }

/// Invariant factors only (no transforms); used for large boundary matrices.
inline std::vector<Int> smith_invariants(const IntMatrix& a) {
    return detail::smith_impl<false>(a).invariant_factors();
}

/// Integer solution x of A x == b (mod orders of the target coordinates),
/// where an order of 0 means equality in Z. Returns nullopt if unsolvable.
inline std::optional<std::vector<Int>> solve_mod(const IntMatrix& a, const std::vector<Int>& b,
                                                 const std::vector<Int>& target_orders) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m || target_orders.size() != m)
        throw std::invalid_argument("solve_mod: dimension mismatch");
    std::size_t extra = 0;
    for (Int o : target_orders) extra += (o != 0);
    IntMatrix k(m, n + extra);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = a(i, j);
    std::size_t c = n;
    for (std::size_t i = 0; i < m; ++i)
        if (target_orders[i] != 0) k(i, c++) = target_orders[i];
    SmithForm sf = smith_normal_form(k);
    std::vector<Int> ub = sf.U * b;
    std::vector<Int> z(n + extra, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < sf.rank) {
            Int d = sf.S(i, i);
            if (ub[i] % d != 0) return std::nullopt;
            z[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> y = sf.V * z;
    y.resize(n);
    return y;
}

}  // namespace hermackey
