#pragma once

// Hermitian forms over a Hermitian Mackey functor L: elements of M_n(L)(*)
// whose restriction is invertible in M_n(L(Z/2)).

#include <string>
#include <vector>

#include "hermackey/constructions/matrix_mackey.hpp"

namespace hermackey {

struct NotTambara : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotAForm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Position of (i,j), i <= j, in the row-major upper triangle of an n x n matrix.
constexpr std::size_t upper_cell(std::size_t n, std::size_t i, std::size_t j) { return i * n - i * (i - 1) / 2 + (j - i); }
constexpr std::size_t upper_cells(std::size_t n) { return n * (n + 1) / 2; }

/// An element of M_n(L)(*): off-diagonal cells in L(Z/2), diagonal cells in L(*).
struct HermForm {
    HermMackey base;
    std::size_t n = 0;
    std::vector<Elem> cells;

    Elem entry(std::size_t i, std::size_t j) const { return cells[upper_cell(n, i, j)]; }
    Elem& entry(std::size_t i, std::size_t j) { return cells[upper_cell(n, i, j)]; }
    std::size_t dim() const { return n; }

    bool operator==(const HermForm& o) const { return n == o.n && cells == o.cells; }

    /// Rows of the upper triangle, "-" below the diagonal.
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < n; ++j) {
                if (j) s += ", ";
                if (j < i)
                    s += "-";
                else if (j == i)
                    s += format_coords(base.fix().decode(entry(i, i)));
                else
                    s += base.ring().format(entry(i, j));
            }
            s += "]";
        }
        return s + "]";
    }
};

inline HermForm zero_form(const HermMackey& h, std::size_t n) { return {h, n, std::vector<Elem>(upper_cells(n), 0)}; }

inline HermForm diagonal_form(const HermMackey& h, const std::vector<Elem>& diag) {
    HermForm b = zero_form(h, diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) b.entry(i, i) = diag[i];
    return b;
}

/// R(B) as a matrix over L(Z/2).
inline RMatrix form_restriction(const HermForm& b) {
    RMatrix r = RMatrix::zero(b.base.ring(), b.n);
    for (std::size_t i = 0; i < b.n; ++i)
        for (std::size_t j = 0; j < b.n; ++j) {
            if (i < j)
                r(i, j) = b.entry(i, j);
            else if (i > j)
                r(i, j) = b.base.w(b.entry(j, i));
            else
                r(i, j) = b.base.res(b.entry(i, i));
        }
    return r;
}

inline bool is_form(const HermForm& b) { return b.n == 0 || is_invertible(form_restriction(b)); }

inline bool is_form(const HermMackey& h, std::size_t n, const std::vector<Elem>& cells) {
    return is_form(HermForm{h, n, cells});
}

/// A.B in M_n(L)(*).
inline HermForm form_action(const RMatrix& a, const HermForm& b) {
    if (a.n != b.n) throw std::invalid_argument("matrix and form dimensions differ");
    if (b.n == 0) return b;
    MatrixOps ops(b.base, b.n);
    HermForm out = zero_form(b.base, b.n);
    ops.act(a.entries.data(), b.cells.data(), out.cells.data());
    return out;
}

struct IsometryVerdict {
    bool equation_holds = false;  // B = w(lambda).B'
    bool invertible = false;
    bool is_isometry() const { return equation_holds && invertible; }
    std::string diagnosis() const {
        if (is_isometry()) return "isometry";
        if (equation_holds) return "non-invertible morphism (NotUnit)";
        return "B != w(lambda).B'";
    }
};

inline IsometryVerdict check_isometry(const RMatrix& lambda, const HermForm& b, const HermForm& b2) {
    if (lambda.n != b.n || b.n != b2.n) throw std::invalid_argument("dimensions of lambda, B and B' must agree");
    IsometryVerdict v;
    v.equation_holds = form_action(conj_transpose(lambda), b2) == b;
    v.invertible = is_invertible(lambda);
    return v;
}

/// lambda: B -> B' is an isometry iff lambda is invertible and B = w(lambda).B'.
inline bool is_isometry(const RMatrix& lambda, const HermForm& b, const HermForm& b2) {
    return check_isometry(lambda, b, b2).is_isometry();
}

inline HermForm block_sum(const HermForm& b, const HermForm& c) {
    const std::size_t n = b.n, m = c.n;
    HermForm s = zero_form(b.base, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.entry(i, j) = b.entry(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) s.entry(n + i, n + j) = c.entry(i, j);
    return s;
}

/// Permutation matrix with P(perm[j], j) = 1.
inline RMatrix permutation_matrix(const FinRingInv& r, const std::vector<std::size_t>& perm) {
    RMatrix p = RMatrix::zero(r, perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) p(perm[j], j) = r.one();
    return p;
}

/// The symmetry tau_{n,m} = [[0, I_m], [I_n, 0]] in GL_{n+m}.
inline RMatrix sym_permutation(const FinRingInv& r, std::size_t n, std::size_t m) {
    std::vector<std::size_t> perm(n + m);
    for (std::size_t j = 0; j < m; ++j) perm[n + j] = j;
    for (std::size_t j = 0; j < n; ++j) perm[j] = m + j;
    return permutation_matrix(r, perm);
}

struct Isometry {
    RMatrix lambda;
    HermForm source;
    HermForm target;
};

/// tau_{n,m} as an isometry B + B' -> B' + B, verified.
inline Isometry sym_isometry(const HermForm& b, const HermForm& c) {
    Isometry iso{sym_permutation(b.base.ring(), b.n, c.n), block_sum(b, c), block_sum(c, b)};
    if (!is_isometry(iso.lambda, iso.source, iso.target))
        throw std::logic_error("symmetry matrix failed to be an isometry");
    return iso;
}

/// Dimension 2n, zero diagonal, identity off-diagonal blocks.
inline HermForm hyperbolic(const HermMackey& h, std::size_t n) {
    HermForm b = zero_form(h, 2 * n);
    for (std::size_t i = 0; i < n; ++i) b.entry(i, n + i) = h.ring().one();
    return b;
}

/// Kronecker product over a Tambara functor. Index i of B (x) B' is k*m + u
/// with k indexing B and u indexing B' (m = dim B'); the diagonal is
/// B_kk B'_uu in the fixed-level ring, off-diagonal entries R(B)_kl R(B')_uv.
inline HermForm kronecker_product(const HermForm& b, const HermForm& c) {
    auto t = b.base.tambara();
    if (!t) throw NotTambara(b.base.name() + " carries no Tambara structure");
    const std::size_t n = b.n, m = c.n;
    const FinRingInv& R = b.base.ring();
    RMatrix rb = form_restriction(b), rc = form_restriction(c);
    HermForm out = zero_form(b.base, n * m);
    for (std::size_t i = 0; i < n * m; ++i) {
        const std::size_t k = i / m, u = i % m;
        out.entry(i, i) = t->fix_ring().mul(b.entry(k, k), c.entry(u, u));
        for (std::size_t j = i + 1; j < n * m; ++j) {
            const std::size_t l = j / m, v = j % m;
            out.entry(i, j) = R.mul(rb(k, l), rc(u, v));
        }
    }
    return out;
}

/// Kronecker product of RMatrices, same index convention.
inline RMatrix kronecker_matrix(const RMatrix& a, const RMatrix& b) {
    const std::size_t n = a.n, m = b.n;
    RMatrix out = RMatrix::zero(a.ring, n * m);
    for (std::size_t i = 0; i < n * m; ++i)
        for (std::size_t j = 0; j < n * m; ++j) out(i, j) = a.ring.mul(a(i / m, j / m), b(i % m, j % m));
    return out;
}

/// Symbolic upper triangle of B (x) B' for generic forms of dimensions n and
/// m (1-based names B11, B'12, ...). R(B_kl) below the diagonal is written
/// w(B_lk); on the diagonal R(B_kk) is written as such.
inline std::vector<std::vector<std::string>> kronecker_symbolic(std::size_t n, std::size_t m) {
    auto rname = [](const std::string& sym, std::size_t k, std::size_t l) {
        const std::string idx = std::to_string(k + 1) + std::to_string(l + 1);
        if (k < l) return sym + idx;
        if (k > l) return "w(" + sym + std::to_string(l + 1) + std::to_string(k + 1) + ")";
        return "R(" + sym + idx + ")";
    };
    std::vector<std::vector<std::string>> out(n * m, std::vector<std::string>(n * m));
    for (std::size_t i = 0; i < n * m; ++i) {
        const std::size_t k = i / m, u = i % m;
        out[i][i] = "B" + std::to_string(k + 1) + std::to_string(k + 1) + "B'" + std::to_string(u + 1) + std::to_string(u + 1);
        for (std::size_t j = i + 1; j < n * m; ++j) {
            const std::size_t l = j / m, v = j % m;
            out[i][j] = rname("B", k, l) + rname("B'", u, v);
        }
    }
    return out;
}

/// f applied entrywise: f_under off the diagonal, f_fix on it.
inline HermForm apply_morphism(const HermMorphism& f, const HermForm& b) {
    HermForm out = zero_form(f.target, b.n);
    for (std::size_t i = 0; i < b.n; ++i)
        for (std::size_t j = i; j < b.n; ++j)
            out.entry(i, j) = i == j ? f.f_fix.apply(b.entry(i, i)) : f.f_under.apply(b.entry(i, j));
    return out;
}

}  // namespace hermackey
