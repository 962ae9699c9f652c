#pragma once

// The group Mackey functor L[pi] for a finite group with anti-involution tau:
// underlying level L(Z/2)[pi], fixed level L(*)[pi^tau] + L(Z/2)[free orbits].

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hermackey/constructions/layout.hpp"
#include "hermackey/mackey/mackey.hpp"

namespace hermackey {

struct SectionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GroupMackeyParams {
    HermMackey base;
    FinGroup pi;
    std::vector<std::size_t> tau;      // empty: inversion
    std::vector<std::size_t> section;  // empty: smallest index in each free orbit
    std::vector<std::size_t> order;    // rank of each element for the extension formula; empty: index order
};

/// Smallest-index representative of each free tau-orbit, in increasing order.
inline std::vector<std::size_t> default_section(const FinGroup& pi, const std::vector<std::size_t>& tau) {
    std::vector<std::size_t> s;
    for (std::size_t g = 0; g < pi.order(); ++g)
        if (tau[g] != g && g < tau[g]) s.push_back(g);
    return s;
}

/// Entry-level structure maps of L[pi]. Fixed-level summands: first the
/// tau-fixed elements in index order, then the free orbits in section order.
class GroupOps {
public:
    explicit GroupOps(GroupMackeyParams params) : base_(std::move(params.base)), pi_(std::move(params.pi)) {
        const std::size_t n = pi_.order();
        tau_ = params.tau.empty() ? pi_.inversion() : params.tau;
        if (!is_anti_involution(pi_, tau_)) throw InvalidAntiInvolution("tau is not an anti-involution of " + pi_.name());
        section_ = params.section.empty() ? default_section(pi_, tau_) : params.section;
        rank_ = params.order;
        if (rank_.empty()) {
            rank_.resize(n);
            std::iota(rank_.begin(), rank_.end(), 0);
        }
        if (rank_.size() != n) throw ValidationError("total order must rank every group element");
        summand_.assign(n, 0);
        is_rep_.assign(n, false);
        std::vector<std::uint64_t> fix_sizes;
        for (std::size_t g = 0; g < n; ++g)
            if (tau_[g] == g) {
                summand_[g] = fixed_.size();
                fixed_.push_back(g);
                fix_sizes.push_back(base_.fix().size());
            }
        std::vector<bool> covered(n, false);
        for (std::size_t x : section_) {
            if (x >= n || tau_[x] == x || covered[x] || covered[tau_[x]])
                throw ValidationError("section must pick one element of each free orbit");
            covered[x] = covered[tau_[x]] = true;
            is_rep_[x] = true;
            summand_[x] = summand_[tau_[x]] = fix_sizes.size();
            fix_sizes.push_back(base_.under().size());
        }
        for (std::size_t g = 0; g < n; ++g)
            if (tau_[g] != g && !covered[g]) throw ValidationError("section misses a free orbit");
        fix_layout_ = BlockLayout(fix_sizes);
        under_layout_ = BlockLayout(std::vector<std::uint64_t>(n, base_.under().size()));
    }

    const HermMackey& base() const { return base_; }
    const FinGroup& pi() const { return pi_; }
    const std::vector<std::size_t>& tau() const { return tau_; }
    const std::vector<std::size_t>& section() const { return section_; }
    const std::vector<std::size_t>& fixed_elements() const { return fixed_; }
    std::size_t summand(std::size_t g) const { return summand_[g]; }
    bool is_representative(std::size_t g) const { return is_rep_[g]; }
    std::size_t summands() const { return fix_layout_.blocks(); }
    const BlockLayout& fix_layout() const { return fix_layout_; }
    const BlockLayout& under_layout() const { return under_layout_; }

    /// R(b h) = R(b) h on fixed summands; R(c[x]) = c s(x) + w(c) tau(s(x)).
    void restrict(const Elem* xi, Elem* r) const {
        const FinRingInv& R = base_.ring();
        std::fill(r, r + pi_.order(), Elem(0));
        for (std::size_t h : fixed_) r[h] = R.add(r[h], base_.res(xi[summand_[h]]));
        for (std::size_t x : section_) {
            const Elem c = xi[summand_[x]];
            r[x] = R.add(r[x], c);
            r[tau_[x]] = R.add(r[tau_[x]], R.w(c));
        }
    }

    /// T(a g) = T(a) g for fixed g, a[g] if g = s[g], w(a)[g] if g = tau(s[g]).
    void transfer(const Elem* a, Elem* xi) const {
        const FinRingInv& R = base_.ring();
        const FinAbGroup& F = base_.fix();
        std::fill(xi, xi + summands(), Elem(0));
        for (std::size_t g = 0; g < pi_.order(); ++g) {
            if (a[g] == 0) continue;
            const std::size_t s = summand_[g];
            if (tau_[g] == g)
                xi[s] = F.add(xi[s], base_.tr(a[g]));
            else if (is_rep_[g])
                xi[s] = R.add(xi[s], a[g]);
            else
                xi[s] = R.add(xi[s], R.w(a[g]));
        }
    }

    /// (a g).xi for a single group element g, accumulated into out.
    void act_generator(Elem a, std::size_t g, const Elem* xi, Elem* out) const {
        const FinRingInv& R = base_.ring();
        const FinAbGroup& F = base_.fix();
        const std::size_t tg = tau_[g];
        for (std::size_t h : fixed_) {
            const Elem b = xi[summand_[h]];
            if (b == 0) continue;
            const std::size_t y = pi_.mul(pi_.mul(g, h), tg);
            out[summand_[y]] = F.add(out[summand_[y]], base_.act(a, b));
        }
        for (std::size_t x : section_) {
            const Elem c = xi[summand_[x]];
            if (c == 0) continue;
            const std::size_t y = pi_.mul(pi_.mul(g, x), tg);
            Elem v = R.mul(R.mul(a, c), R.w(a));
            if (!is_rep_[y]) v = R.w(v);
            out[summand_[y]] = R.add(out[summand_[y]], v);
        }
    }

    /// (sum a_g g).xi = sum (a_g g).xi + sum_{g<g'} T(a_g g R(xi) w(a_g') tau(g')).
    void act(const Elem* a, const Elem* xi, Elem* out) const {
        const FinRingInv& R = base_.ring();
        const FinAbGroup& F = base_.fix();
        const std::size_t n = pi_.order();
        std::fill(out, out + summands(), Elem(0));
        std::vector<Elem> r(n), cross(n, 0), t(summands());
        bool any_cross = false;
        for (std::size_t g = 0; g < n; ++g)
            if (a[g] != 0) act_generator(a[g], g, xi, out);
        restrict(xi, r.data());
        for (std::size_t g = 0; g < n; ++g) {
            if (a[g] == 0) continue;
            for (std::size_t g2 = 0; g2 < n; ++g2) {
                if (a[g2] == 0 || rank_[g] >= rank_[g2]) continue;
                const Elem wa = R.w(a[g2]);
                const std::size_t tg2 = tau_[g2];
                for (std::size_t h = 0; h < n; ++h) {
                    if (r[h] == 0) continue;
                    const std::size_t y = pi_.mul(pi_.mul(g, h), tg2);
                    cross[y] = R.add(cross[y], R.mul(R.mul(a[g], r[h]), wa));
                    any_cross = true;
                }
            }
        }
        if (!any_cross) return;
        transfer(cross.data(), t.data());
        for (std::size_t i = 0; i < fixed_.size(); ++i) out[i] = F.add(out[i], t[i]);
        for (std::size_t i = fixed_.size(); i < summands(); ++i) out[i] = R.add(out[i], t[i]);
    }

private:
    HermMackey base_;
    FinGroup pi_;
    std::vector<std::size_t> tau_, section_, rank_;
    std::vector<std::size_t> fixed_, summand_;
    std::vector<bool> is_rep_;
    BlockLayout fix_layout_, under_layout_;
};

inline HermMackey group_mackey(const GroupMackeyParams& params) {
    auto ops = std::make_shared<const GroupOps>(params);
    const HermMackey& base = ops->base();
    if (!ops->fix_layout().enumerable() || !ops->under_layout().enumerable())
        throw TooLarge(base.name() + "[" + ops->pi().name() + "] is too large to tabulate");
    FinRingInv ring = group_algebra(base.ring(), ops->pi(), ops->tau());
    std::vector<FinAbGroup> parts;
    for (std::size_t i = 0; i < ops->summands(); ++i)
        parts.push_back(i < ops->fixed_elements().size() ? base.fix() : base.under());
    FinAbGroup fix = FinAbGroup::direct_sum(parts);
    const FinAbGroup& under = ring.additive();
    const std::size_t n = ops->pi().order(), c = ops->summands();
    GroupHom res = GroupHom::from_generator_images(fix, under, [&](std::size_t j) {
        std::vector<Elem> xi(c), r(n);
        ops->fix_layout().decode(fix.generator(j), xi.data());
        ops->restrict(xi.data(), r.data());
        return under.decode(Elem(ops->under_layout().encode(r.data())));
    });
    GroupHom tr = GroupHom::from_generator_images(under, fix, [&](std::size_t j) {
        std::vector<Elem> a(n), xi(c);
        ops->under_layout().decode(under.generator(j), a.data());
        ops->transfer(a.data(), xi.data());
        return fix.decode(Elem(ops->fix_layout().encode(xi.data())));
    });
    MackeyZ2 mk(under, fix, ring.involution(), res, tr);
    HermMackey h(base.name() + "[" + ops->pi().name() + "]", mk, ring, [ops, n, c](Elem a, Elem b) {
        std::vector<Elem> av(n), bv(c), out(c);
        ops->under_layout().decode(a, av.data());
        ops->fix_layout().decode(b, bv.data());
        ops->act(av.data(), bv.data(), out.data());
        return Elem(ops->fix_layout().encode(out.data()));
    });
    if (base.fix_unit()) {
        std::vector<Elem> one(c, 0);
        one[ops->summand(ops->pi().identity())] = *base.fix_unit();
        h = h.with_fix_unit(Elem(ops->fix_layout().encode(one.data())));
    }
    return h.with_group_info({ops->pi(), ops->tau(), ops->section()});
}

inline HermMackey group_mackey(const HermMackey& base, const FinGroup& pi) { return group_mackey({base, pi, {}, {}, {}}); }

}  // namespace hermackey
