#pragma once

// The matrix Mackey functor M_n(L): underlying level M_n(L(Z/2)), fixed level
// the upper triangle with L(Z/2) entries off the diagonal and L(*) entries on it.

#include <memory>
#include <string>
#include <vector>

#include "hermackey/constructions/layout.hpp"
#include "hermackey/mackey/mackey.hpp"

namespace hermackey {

/// Entry-level structure maps of M_n(L). Fixed-level elements are arrays of
/// n(n+1)/2 entries in row-major upper-triangle order; underlying elements
/// are n*n row-major arrays of L(Z/2) elements.
class MatrixOps {
public:
    MatrixOps(HermMackey base, std::size_t n) : base_(std::move(base)), n_(n), pos_(n * n, 0) {
        if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
        std::vector<std::uint64_t> fix_sizes, under_sizes(n * n, base_.under().size());
        std::size_t p = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                pos_[i * n + j] = p++;
                diag_.push_back(i == j);
                fix_sizes.push_back(i == j ? base_.fix().size() : base_.under().size());
            }
        fix_layout_ = BlockLayout(fix_sizes);
        under_layout_ = BlockLayout(under_sizes);
    }

    const HermMackey& base() const { return base_; }
    std::size_t n() const { return n_; }
    std::size_t cells() const { return diag_.size(); }
    std::size_t pos(std::size_t i, std::size_t j) const { return pos_[i * n_ + j]; }
    bool is_diagonal_cell(std::size_t p) const { return diag_[p]; }
    const BlockLayout& fix_layout() const { return fix_layout_; }
    const BlockLayout& under_layout() const { return under_layout_; }

    /// R(B)_ij = B_ij (i<j), w(B_ji) (i>j), R(B_ii) (i=j).
    void restrict(const Elem* b, Elem* r) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (i < j)
                    r[i * n_ + j] = b[pos(i, j)];
                else if (i > j)
                    r[i * n_ + j] = base_.w(b[pos(j, i)]);
                else
                    r[i * n_ + j] = base_.res(b[pos(i, i)]);
            }
    }

    /// T(A)_ij = A_ij + w(A_ji) (i<j), T(A_ii) on the diagonal.
    void transfer(const Elem* a, Elem* b) const {
        const FinRingInv& R = base_.ring();
        for (std::size_t i = 0; i < n_; ++i) {
            b[pos(i, i)] = base_.tr(a[i * n_ + i]);
            for (std::size_t j = i + 1; j < n_; ++j) b[pos(i, j)] = R.add(a[i * n_ + j], R.w(a[j * n_ + i]));
        }
    }

    /// (A.B)_ij = (A R(B) w(A))_ij for i<j, and
    /// (A.B)_ii = T(sum_{k<l} A_ik B_kl w(A_il)) + sum_k A_ik . B_kk.
    void act(const Elem* a, const Elem* b, Elem* out) const {
        const FinRingInv& R = base_.ring();
        const FinAbGroup& F = base_.fix();
        const std::size_t n = n_;
        std::vector<Elem> r(n * n), m(n * n, 0), wa(n * n);
        restrict(b, r.data());
        for (std::size_t i = 0; i < n * n; ++i) wa[i] = R.w(a[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const Elem aik = a[i * n + k];
                if (aik == 0) continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (r[k * n + l] != 0) m[i * n + l] = R.add(m[i * n + l], R.mul(aik, r[k * n + l]));
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Elem s = 0;
                for (std::size_t l = 0; l < n; ++l)
                    if (wa[j * n + l] != 0 && m[i * n + l] != 0) s = R.add(s, R.mul(m[i * n + l], wa[j * n + l]));
                out[pos(i, j)] = s;
            }
        for (std::size_t i = 0; i < n; ++i) {
            Elem t = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const Elem aik = a[i * n + k];
                if (aik == 0) continue;
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (wa[i * n + l] == 0) continue;
                    const Elem bkl = b[pos(k, l)];
                    if (bkl != 0) t = R.add(t, R.mul(R.mul(aik, bkl), wa[i * n + l]));
                }
            }
            Elem f = base_.tr(t);
            for (std::size_t k = 0; k < n; ++k)
                if (a[i * n + k] != 0) f = F.add(f, base_.act(a[i * n + k], b[pos(k, k)]));
            out[pos(i, i)] = f;
        }
    }

private:
    HermMackey base_;
    std::size_t n_;
    std::vector<std::size_t> pos_;
    std::vector<bool> diag_;
    BlockLayout fix_layout_, under_layout_;
};

/// M_n(L) as a Hermitian Mackey functor; needs enumerable carriers.
inline HermMackey matrix_mackey(const HermMackey& base, std::size_t n) {
    auto ops = std::make_shared<const MatrixOps>(base, n);
    if (!ops->fix_layout().enumerable() || !ops->under_layout().enumerable())
        throw TooLarge("M" + std::to_string(n) + "(" + base.name() + ") is too large to tabulate");
    FinRingInv ring = matrix_ring(base.ring(), n);
    std::vector<FinAbGroup> parts;
    for (std::size_t p = 0; p < ops->cells(); ++p) parts.push_back(ops->is_diagonal_cell(p) ? base.fix() : base.under());
    FinAbGroup fix = FinAbGroup::direct_sum(parts);
    const FinAbGroup& under = ring.additive();
    const std::size_t nn = n * n, c = ops->cells();
    GroupHom res = GroupHom::from_generator_images(fix, under, [&](std::size_t j) {
        std::vector<Elem> b(c), r(nn);
        ops->fix_layout().decode(fix.generator(j), b.data());
        ops->restrict(b.data(), r.data());
        return under.decode(Elem(ops->under_layout().encode(r.data())));
    });
    GroupHom tr = GroupHom::from_generator_images(under, fix, [&](std::size_t j) {
        std::vector<Elem> a(nn), b(c);
        ops->under_layout().decode(under.generator(j), a.data());
        ops->transfer(a.data(), b.data());
        return fix.decode(Elem(ops->fix_layout().encode(b.data())));
    });
    MackeyZ2 mk(under, fix, ring.involution(), res, tr);
    HermMackey h("M" + std::to_string(n) + "(" + base.name() + ")", mk, ring, [ops, nn, c](Elem a, Elem b) {
        std::vector<Elem> av(nn), bv(c), out(c);
        ops->under_layout().decode(a, av.data());
        ops->fix_layout().decode(b, bv.data());
        ops->act(av.data(), bv.data(), out.data());
        return Elem(ops->fix_layout().encode(out.data()));
    });
    if (base.fix_unit()) {
        std::vector<Elem> id(c, 0);
        for (std::size_t i = 0; i < n; ++i) id[ops->pos(i, i)] = *base.fix_unit();
        h = h.with_fix_unit(Elem(ops->fix_layout().encode(id.data())));
    }
    return h;
}

}  // namespace hermackey
