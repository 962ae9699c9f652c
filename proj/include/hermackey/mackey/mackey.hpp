#pragma once

// Z/2-Mackey functors, Hermitian Mackey functors, Tambara functors and
// morphisms between Hermitian Mackey functors.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"
#include "hermackey/exactalg/fin_group.hpp"
#include "hermackey/exactalg/report.hpp"
#include "hermackey/exactalg/ring.hpp"

namespace hermackey {

class MackeyZ2 {
public:
    MackeyZ2() = default;
    MackeyZ2(FinAbGroup under, FinAbGroup fix, GroupHom w, GroupHom res, GroupHom tr) {
        auto d = std::make_shared<Data>();
        if (!(w.source() == under) || !(w.target() == under)) throw ValidationError("w must be an endomorphism of the underlying level");
        if (!(res.source() == fix) || !(res.target() == under)) throw ValidationError("res must map the fixed level to the underlying level");
        if (!(tr.source() == under) || !(tr.target() == fix)) throw ValidationError("tr must map the underlying level to the fixed level");
        if (!w.well_defined()) throw ValidationError("w does not respect the cyclic orders");
        if (!res.well_defined()) throw ValidationError("res does not respect the cyclic orders");
        if (!tr.well_defined()) throw ValidationError("tr does not respect the cyclic orders");
        if (!under.enumerable() || !fix.enumerable()) throw TooLarge("Mackey levels must be finite and enumerable");
        d->under = std::move(under);
        d->fix = std::move(fix);
        d->w = std::move(w);
        d->res = std::move(res);
        d->tr = std::move(tr);
        const std::uint64_t nu = d->under.size(), nf = d->fix.size();
        d->w_tab.resize(nu);
        d->tr_tab.resize(nu);
        for (std::uint64_t a = 0; a < nu; ++a) {
            d->w_tab[a] = d->w.apply(Elem(a));
            d->tr_tab[a] = d->tr.apply(Elem(a));
        }
        d->res_tab.resize(nf);
        for (std::uint64_t b = 0; b < nf; ++b) d->res_tab[b] = d->res.apply(Elem(b));
        d_ = std::move(d);
    }

    const FinAbGroup& under() const { return d_->under; }
    const FinAbGroup& fix() const { return d_->fix; }
    const GroupHom& w_hom() const { return d_->w; }
    const GroupHom& res_hom() const { return d_->res; }
    const GroupHom& tr_hom() const { return d_->tr; }
    Elem w(Elem a) const { return d_->w_tab[a]; }
    Elem res(Elem b) const { return d_->res_tab[b]; }
    Elem tr(Elem a) const { return d_->tr_tab[a]; }

    bool operator==(const MackeyZ2& o) const {
        return under() == o.under() && fix() == o.fix() && w_hom().matrix() == o.w_hom().matrix() &&
               res_hom().matrix() == o.res_hom().matrix() && tr_hom().matrix() == o.tr_hom().matrix();
    }

private:
    struct Data {
        FinAbGroup under, fix;
        GroupHom w, res, tr;
        std::vector<Elem> w_tab, res_tab, tr_tab;
    };
    std::shared_ptr<const Data> d_;
};

/// res o tr = id + w as an equality of integer matrices modulo the orders.
inline bool mackey_relation_exact(const MackeyZ2& m) {
    GroupHom rt = m.tr_hom().then(m.res_hom());
    GroupHom one_plus_w = GroupHom::identity(m.under()).plus(m.w_hom());
    return rt.same_map(one_plus_w);
}

inline CheckReport check_mackey_axioms(const MackeyZ2& m, const SearchPolicy& policy = {}) {
    CheckReport rep;
    const std::uint64_t nu = m.under().size(), nf = m.fix().size();
    const auto& U = m.under();
    const auto& F = m.fix();
    auto fu = [&](Elem a) { return format_coords(U.decode(a)); };
    rep.add(run_tuple_check<1>("w(w(a)) = a", {nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (m.w(m.w(a)) == a) return std::nullopt;
        return "a=" + fu(a);
    }));
    rep.add(run_tuple_check<1>("w(res(b)) = res(b)", {nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem b = Elem(t[0]);
        if (m.w(m.res(b)) == m.res(b)) return std::nullopt;
        return "b=" + format_coords(F.decode(b));
    }));
    rep.add(run_tuple_check<1>("tr(w(a)) = tr(a)", {nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (m.tr(m.w(a)) == m.tr(a)) return std::nullopt;
        return "a=" + fu(a);
    }));
    rep.add(run_tuple_check<1>("res(tr(a)) = a + w(a)", {nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        Elem lhs = m.res(m.tr(a)), rhs = U.add(a, m.w(a));
        if (lhs == rhs) return std::nullopt;
        return "a=" + fu(a) + ": res(tr(a))=" + fu(lhs) + " but a+w(a)=" + fu(rhs);
    }));
    CheckResult exact{"res o tr = id + w (matrix identity)"};
    exact.cases = 1;
    if (!mackey_relation_exact(m)) {
        exact.passed = false;
        exact.witness = "res*tr=" + m.tr_hom().then(m.res_hom()).matrix().to_string();
    }
    rep.add(exact);
    return rep;
}

class TambaraZ2;

/// Data for group Mackey functors; kept so morphism constructions can
/// detect mismatched sections.
struct GroupMackeyInfo {
    FinGroup pi;
    std::vector<std::size_t> tau;
    std::vector<std::size_t> section;  // per free orbit, chosen representative
};

class HermMackey {
public:
    using Action = std::function<Elem(Elem a, Elem b)>;
    static constexpr std::uint64_t kTableLimit = std::uint64_t(1) << 22;

    HermMackey() = default;

    /// `direct` evaluates the action from its defining formula; the stored
    /// endomorphisms are its values on the generators of the fixed level.
    HermMackey(std::string name, MackeyZ2 base, FinRingInv ring, Action direct) {
        if (!(ring.additive() == base.under()))
            throw ValidationError("ring carrier differs from the underlying level");
        if (!(ring.involution().matrix() == base.w_hom().matrix()))
            throw ValidationError("ring involution differs from the Mackey involution");
        auto d = std::make_shared<Data>();
        d->name = std::move(name);
        d->base = std::move(base);
        d->ring = std::move(ring);
        d->direct = std::move(direct);
        const FinAbGroup& F = d->base.fix();
        const std::size_t r = F.rank();
        const std::uint64_t nu = d->base.under().size(), nf = F.size();
        auto endo = std::make_shared<std::vector<Int>>(nu * r * r);
        for (std::uint64_t a = 0; a < nu; ++a)
            for (std::size_t j = 0; j < r; ++j) {
                Coords y = F.decode(d->direct(Elem(a), F.generator(j)));
                for (std::size_t i = 0; i < r; ++i) (*endo)[(a * r + i) * r + j] = y[i];
            }
        d->endo = std::move(endo);
        d->nf = nf;
        d_ = std::move(d);
        if (nu * nf <= kTableLimit) {
            auto table = std::make_shared<std::vector<Elem>>(nu * nf);
            for (std::uint64_t a = 0; a < nu; ++a)
                for (std::uint64_t b = 0; b < nf; ++b) (*table)[a * nf + b] = act_endo(Elem(a), Elem(b));
            std::const_pointer_cast<Data>(d_)->table = std::move(table);
        }
    }

    const std::string& name() const { return d_->name; }
    const MackeyZ2& base() const { return d_->base; }
    const FinAbGroup& under() const { return d_->base.under(); }
    const FinAbGroup& fix() const { return d_->base.fix(); }
    const FinRingInv& ring() const { return d_->ring; }
    Elem w(Elem a) const { return d_->base.w(a); }
    Elem res(Elem b) const { return d_->base.res(b); }
    Elem tr(Elem a) const { return d_->base.tr(a); }

    Elem act(Elem a, Elem b) const {
        if (d_->table) return (*d_->table)[std::uint64_t(a) * d_->nf + b];
        return act_endo(a, b);
    }
    Elem act_direct(Elem a, Elem b) const { return d_->direct(a, b); }

    /// The endomorphism of the fixed level by which `a` acts.
    IntMatrix endomorphism(Elem a) const {
        const std::size_t r = fix().rank();
        IntMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m(i, j) = (*d_->endo)[(std::uint64_t(a) * r + i) * r + j];
        return m;
    }

    std::optional<Elem> fix_unit() const { return d_->fix_unit; }
    std::shared_ptr<const TambaraZ2> tambara() const { return d_->tambara; }
    const std::optional<GroupMackeyInfo>& group_info() const { return d_->group; }

    HermMackey with_fix_unit(Elem u) const { return with([&](Data& d) { d.fix_unit = u; }); }
    HermMackey with_tambara(std::shared_ptr<const TambaraZ2> t) const {
        return with([&](Data& d) { d.tambara = std::move(t); });
    }
    HermMackey with_group_info(GroupMackeyInfo g) const { return with([&](Data& d) { d.group = std::move(g); }); }
    HermMackey renamed(std::string n) const { return with([&](Data& d) { d.name = std::move(n); }); }

    /// Structural equality: same levels, maps, ring and action endomorphisms.
    bool same_structure(const HermMackey& o) const {
        return base() == o.base() && ring() == o.ring() && *d_->endo == *o.d_->endo;
    }

private:
    Elem act_endo(Elem a, Elem b) const {
        const FinAbGroup& F = fix();
        const std::size_t r = F.rank();
        Coords x = F.decode(b), y(r, 0);
        const Int* m = d_->endo->data() + std::uint64_t(a) * r * r;
        for (std::size_t i = 0; i < r; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < r; ++j) s += m[i * r + j] * x[j];
            y[i] = s;
        }
        return F.encode(y);
    }

    struct Data {
        std::string name;
        MackeyZ2 base;
        FinRingInv ring;
        Action direct;
        std::shared_ptr<const std::vector<Int>> endo;
        std::shared_ptr<const std::vector<Elem>> table;
        std::uint64_t nf = 0;
        std::optional<Elem> fix_unit;
        std::shared_ptr<const TambaraZ2> tambara;
        std::optional<GroupMackeyInfo> group;
    };

    template <class F>
    HermMackey with(F&& edit) const {
        auto d = std::make_shared<Data>(*d_);
        edit(*d);
        HermMackey h;
        h.d_ = std::move(d);
        return h;
    }

    std::shared_ptr<const Data> d_;
};

/// Axioms i-iv of a Hermitian Mackey functor together with the monoid-action
/// laws and additivity of the action in the fixed-level argument.
inline CheckReport check_hermitian_axioms(const HermMackey& h, const SearchPolicy& policy = {}) {
    CheckReport rep = check_anti_involution(h.ring(), policy);
    rep.subject = h.name();
    for (auto& c : rep.checks) c.name = "(i) " + c.name;
    const FinRingInv& R = h.ring();
    const FinAbGroup& U = h.under();
    const FinAbGroup& F = h.fix();
    const std::uint64_t nu = U.size(), nf = F.size();
    // Both sides of the two triple identities are additive in b (given the
    // first check below), so b only needs to run over generators of F.
    const std::uint64_t ng = F.rank();
    auto fu = [&](Elem a) { return format_coords(U.decode(a)); };
    auto ff = [&](Elem b) { return format_coords(F.decode(b)); };
    auto track = [&](CheckResult c) {
        if (c.sampled) rep.seed = policy.seed;
        rep.add(std::move(c));
    };

    track(run_tuple_check<2>("action additive in b", {nu, nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]), b = Elem(t[1]);
        if (h.act_direct(a, b) == h.act(a, b)) return std::nullopt;
        return "a=" + fu(a) + " b=" + ff(b);
    }));
    track(run_tuple_check<2>("(ii) res(a.b) = a res(b) w(a)", {nu, nf}, policy,
                             [&](const auto& t) -> std::optional<std::string> {
                                 Elem a = Elem(t[0]), b = Elem(t[1]);
                                 Elem lhs = h.res(h.act(a, b));
                                 Elem rhs = R.mul(R.mul(a, h.res(b)), R.w(a));
                                 if (lhs == rhs) return std::nullopt;
                                 return "a=" + fu(a) + " b=" + ff(b);
                             }));
    track(run_tuple_check<2>("(iii) a.tr(c) = tr(a c w(a))", {nu, nu}, policy,
                             [&](const auto& t) -> std::optional<std::string> {
                                 Elem a = Elem(t[0]), c = Elem(t[1]);
                                 if (h.act(a, h.tr(c)) == h.tr(R.mul(R.mul(a, c), R.w(a)))) return std::nullopt;
                                 return "a=" + fu(a) + " c=" + fu(c);
                             }));
    track(run_tuple_check<1>("(iv) 0.b = 0", {nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem b = Elem(t[0]);
        if (h.act(R.zero(), b) == 0) return std::nullopt;
        return "b=" + ff(b);
    }));
    track(run_tuple_check<3>("(iv) (a+a').b = a.b + a'.b + tr(a res(b) w(a')), b a generator", {nu, nu, ng}, policy,
                             [&](const auto& t) -> std::optional<std::string> {
                                 Elem a = Elem(t[0]), a2 = Elem(t[1]), b = F.generator(t[2]);
                                 Elem lhs = h.act(R.add(a, a2), b);
                                 Elem rhs = F.add(F.add(h.act(a, b), h.act(a2, b)),
                                                  h.tr(R.mul(R.mul(a, h.res(b)), R.w(a2))));
                                 if (lhs == rhs) return std::nullopt;
                                 return "a=" + fu(a) + " a'=" + fu(a2) + " b=" + ff(b) + ": lhs=" + ff(lhs) +
                                        " rhs=" + ff(rhs);
                             }));
    track(run_tuple_check<1>("1.b = b", {nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem b = Elem(t[0]);
        if (h.act(R.one(), b) == b) return std::nullopt;
        return "b=" + ff(b);
    }));
    track(run_tuple_check<3>("a.(a'.b) = (a a').b, b a generator", {nu, nu, ng}, policy,
                             [&](const auto& t) -> std::optional<std::string> {
                                 Elem a = Elem(t[0]), a2 = Elem(t[1]), b = F.generator(t[2]);
                                 if (h.act(a, h.act(a2, b)) == h.act(R.mul(a, a2), b)) return std::nullopt;
                                 return "a=" + fu(a) + " a'=" + fu(a2) + " b=" + ff(b);
                             }));
    return rep;
}

/// Both levels are rings, res is a ring map, and N: under -> fix is a
/// multiplicative norm.
class TambaraZ2 {
public:
    TambaraZ2(MackeyZ2 base, FinRingInv under_ring, FinRingInv fix_ring, std::function<Elem(Elem)> norm)
        : base_(std::move(base)), under_ring_(std::move(under_ring)), fix_ring_(std::move(fix_ring)) {
        if (!(under_ring_.additive() == base_.under()) || !(fix_ring_.additive() == base_.fix()))
            throw ValidationError("Tambara ring carriers differ from the Mackey levels");
        norm_.resize(base_.under().size());
        for (std::uint64_t a = 0; a < norm_.size(); ++a) norm_[a] = norm(Elem(a));
    }

    const MackeyZ2& base() const { return base_; }
    const FinRingInv& under_ring() const { return under_ring_; }
    const FinRingInv& fix_ring() const { return fix_ring_; }
    Elem norm(Elem a) const { return norm_[a]; }

private:
    MackeyZ2 base_;
    FinRingInv under_ring_, fix_ring_;
    std::vector<Elem> norm_;
};

inline CheckReport check_tambara_axioms(const TambaraZ2& t, const SearchPolicy& policy = {}) {
    CheckReport rep;
    rep.subject = "Tambara(" + t.under_ring().name() + ")";
    const MackeyZ2& m = t.base();
    const FinRingInv& R = t.under_ring();
    const FinRingInv& S = t.fix_ring();
    const std::uint64_t nu = m.under().size(), nf = m.fix().size();
    auto fu = [&](Elem a) { return R.format(a); };
    auto ff = [&](Elem b) { return S.format(b); };
    auto track = [&](CheckResult c) {
        if (c.sampled) rep.seed = policy.seed;
        rep.add(std::move(c));
    };
    track(run_tuple_check<2>("tr(a) b = tr(a res(b))", {nu, nf}, policy, [&](const auto& x) -> std::optional<std::string> {
        Elem a = Elem(x[0]), b = Elem(x[1]);
        if (S.mul(m.tr(a), b) == m.tr(R.mul(a, m.res(b)))) return std::nullopt;
        return "a=" + fu(a) + " b=" + ff(b);
    }));
    track(run_tuple_check<1>("res(N(a)) = a w(a)", {nu}, policy, [&](const auto& x) -> std::optional<std::string> {
        Elem a = Elem(x[0]);
        if (m.res(t.norm(a)) == R.mul(a, R.w(a))) return std::nullopt;
        return "a=" + fu(a);
    }));
    {
        CheckResult c{"N(0) = 0"};
        c.cases = 1;
        if (t.norm(R.zero()) != S.zero()) {
            c.passed = false;
            c.witness = "N(0)=" + ff(t.norm(R.zero()));
        }
        rep.add(c);
    }
    track(run_tuple_check<2>("N(a+a') = N(a) + N(a') + tr(a w(a'))", {nu, nu}, policy,
                             [&](const auto& x) -> std::optional<std::string> {
                                 Elem a = Elem(x[0]), b = Elem(x[1]);
                                 Elem rhs = S.add(S.add(t.norm(a), t.norm(b)), m.tr(R.mul(a, R.w(b))));
                                 if (t.norm(R.add(a, b)) == rhs) return std::nullopt;
                                 return "a=" + fu(a) + " a'=" + fu(b);
                             }));
    track(run_tuple_check<2>("N(a a') = N(a) N(a')", {nu, nu}, policy, [&](const auto& x) -> std::optional<std::string> {
        Elem a = Elem(x[0]), b = Elem(x[1]);
        if (t.norm(R.mul(a, b)) == S.mul(t.norm(a), t.norm(b))) return std::nullopt;
        return "a=" + fu(a) + " a'=" + fu(b);
    }));
    {
        CheckResult c{"N(1) = 1"};
        c.cases = 1;
        if (t.norm(R.one()) != S.one()) {
            c.passed = false;
            c.witness = "N(1)=" + ff(t.norm(R.one()));
        }
        rep.add(c);
    }
    track(run_tuple_check<2>("res(b b') = res(b) res(b')", {nf, nf}, policy, [&](const auto& x) -> std::optional<std::string> {
        Elem b = Elem(x[0]), c = Elem(x[1]);
        if (m.res(S.mul(b, c)) == R.mul(m.res(b), m.res(c))) return std::nullopt;
        return "b=" + ff(b) + " b'=" + ff(c);
    }));
    {
        CheckResult c{"res(1) = 1"};
        c.cases = 1;
        if (m.res(S.one()) != R.one()) {
            c.passed = false;
            c.witness = "res(1)=" + fu(m.res(S.one()));
        }
        rep.add(c);
    }
    return rep;
}

/// Hermitian structure a.b = N(a) b.
inline HermMackey tambara_forget(std::shared_ptr<const TambaraZ2> t, std::string name) {
    auto tp = t;
    HermMackey h(std::move(name), t->base(), t->under_ring(),
                 [tp](Elem a, Elem b) { return tp->fix_ring().mul(tp->norm(a), b); });
    return h.with_fix_unit(t->fix_ring().one()).with_tambara(std::move(t));
}

namespace detail {

// Element of the fixed subgroup of w, pulled back along the inclusion.
struct FixedSubgroup {
    FinAbGroup group;
    GroupHom inclusion;
    std::vector<Elem> pull;  // under element -> fixed-level element, or kNone
    static constexpr Elem kNone = ~Elem(0);
};

inline FixedSubgroup fixed_subgroup(const FinRingInv& r) {
    const FinAbGroup& U = r.additive();
    const std::uint64_t n = U.size();
    FixedSubgroup out;
    if (r.involution().matrix() == IntMatrix::identity(U.rank())) {
        out.group = U;
        out.inclusion = GroupHom::identity(U);
    } else {
        std::vector<char> in_span(n, 0);
        in_span[0] = 1;
        std::vector<Elem> span{0};
        std::vector<Coords> gens;
        for (std::uint64_t e = 0; e < n; ++e) {
            if (r.w(Elem(e)) != Elem(e) || in_span[e]) continue;
            gens.push_back(U.decode(Elem(e)));
            const std::vector<Elem> base = span;
            for (Elem cur = Elem(e); cur != 0; cur = U.add(cur, Elem(e)))
                for (Elem s : base) {
                    Elem v = U.add(s, cur);
                    if (!in_span[v]) {
                        in_span[v] = 1;
                        span.push_back(v);
                    }
                }
        }
        Subgroup sub = subgroup_generated(U, gens);
        out.group = sub.group;
        out.inclusion = sub.inclusion;
    }
    out.pull.assign(n, FixedSubgroup::kNone);
    for (std::uint64_t f = 0; f < out.group.size(); ++f) out.pull[out.inclusion.apply(Elem(f))] = Elem(f);
    return out;
}

}  // namespace detail

/// The Hermitian Mackey functor of a ring with anti-involution: fixed level
/// the w-fixed subgroup, tr(a) = a + w(a), a.b = a b w(a).
inline HermMackey underline_of_ring(const FinRingInv& r, std::string name = "") {
    if (name.empty()) name = "underline(" + r.name() + ")";
    auto fs = std::make_shared<const detail::FixedSubgroup>(detail::fixed_subgroup(r));
    const FinAbGroup& U = r.additive();
    GroupHom tr = GroupHom::from_generator_images(U, fs->group, [&](std::size_t j) {
        Elem e = U.generator(j);
        return fs->group.decode(fs->pull[U.add(e, r.w(e))]);
    });
    MackeyZ2 base(U, fs->group, r.involution(), fs->inclusion, tr);
    HermMackey h(std::move(name), base, r, [r, fs](Elem a, Elem b) {
        Elem x = r.mul(r.mul(a, fs->inclusion.apply(b)), r.w(a));
        return fs->pull[x];
    });
    return h.with_fix_unit(fs->pull[r.one()]);
}

/// The fixed level of underline(R) for commutative R, as a ring.
inline FinRingInv fixed_ring(const FinRingInv& r, const HermMackey& u) {
    const FinAbGroup& F = u.fix();
    const std::size_t k = F.rank();
    std::vector<Int> st(k * k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Elem p = r.mul(u.res(F.generator(i)), u.res(F.generator(j)));
            Elem q = 0;
            bool found = false;
            for (std::uint64_t f = 0; f < F.size() && !found; ++f)
                if (u.res(Elem(f)) == p) {
                    q = Elem(f);
                    found = true;
                }
            if (!found) throw ValidationError("fixed elements are not closed under multiplication");
            Coords c = F.decode(q);
            for (std::size_t t = 0; t < k; ++t) st[(i * k + j) * k + t] = c[t];
        }
    return FinRingInv(r.name() + "^w", F, std::move(st), F.decode(*u.fix_unit()), IntMatrix::identity(k));
}

/// Tambara structure on underline(R) for commutative R: N(a) = a w(a).
inline std::shared_ptr<const TambaraZ2> underline_tambara(const FinRingInv& r) {
    if (!r.is_commutative()) throw ValidationError("underline Tambara structure needs a commutative ring");
    HermMackey u = underline_of_ring(r);
    FinRingInv S = fixed_ring(r, u);
    std::vector<Elem> pull(r.size(), 0);
    for (std::uint64_t f = 0; f < u.fix().size(); ++f) pull[u.res(Elem(f))] = Elem(f);
    return std::make_shared<const TambaraZ2>(u.base(), r, S,
                                             [r, pull](Elem a) { return pull[r.mul(a, r.w(a))]; });
}

/// The Burnside Mackey functor reduced mod m, with w = id, res(b,c) = b + 2c,
/// tr(a) = (0,a) and a.(b,c) = (ab, b a(a-1)/2 + a^2 c).
inline HermMackey burnside_mod(Int m) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    FinRingInv r = zmod(m);
    FinAbGroup U({m}), F({m, m});
    MackeyZ2 base(U, F, GroupHom::identity(U), GroupHom(F, U, IntMatrix{{1, 2}}), GroupHom(U, F, IntMatrix{{0}, {1}}));
    HermMackey h("A" + std::to_string(m), base, r, [m, F](Elem a, Elem b) {
        const Int x = a;
        Coords bc = F.decode(b);
        const Int half = (x * (x - 1) / 2) % m;
        return F.encode({x * bc[0], bc[0] * half + x * x % m * bc[1]});
    });
    return h.with_fix_unit(F.encode({1, 0}));
}

/// Burnside Tambara structure: fixed ring (b,c)(b',c') = (bb', bc' + cb' + 2cc'),
/// N(a) = (a, (a^2 - a)/2).
inline std::shared_ptr<const TambaraZ2> burnside_tambara(Int m) {
    HermMackey a = burnside_mod(m);
    FinAbGroup F({m, m});
    // e0 = (1,0), e1 = (0,1): e0e0 = e0, e0e1 = e1e0 = e1, e1e1 = 2 e1.
    std::vector<Int> st = {1, 0, 0, 1, 0, 1, 0, 2};
    FinRingInv S("A(" + std::to_string(m) + ")", F, st, {1, 0}, IntMatrix::identity(2));
    return std::make_shared<const TambaraZ2>(a.base(), zmod(m), S, [m, F](Elem x) {
        const Int v = x;
        return F.encode({v, (v * v - v) / 2 % m});
    });
}

struct HermMorphism {
    HermMackey source;
    HermMackey target;
    GroupHom f_under;
    GroupHom f_fix;
    bool unital = true;
    std::string name;
};

inline HermMorphism identity_morphism(const HermMackey& h) {
    return {h, h, GroupHom::identity(h.under()), GroupHom::identity(h.fix()), true, "id(" + h.name() + ")"};
}

inline HermMorphism compose(const HermMorphism& g, const HermMorphism& f) {
    return {f.source, g.target, f.f_under.then(g.f_under), f.f_fix.then(g.f_fix), f.unital && g.unital,
            g.name + " o " + f.name};
}

/// Table equality of the two level maps.
inline bool same_morphism(const HermMorphism& f, const HermMorphism& g) {
    return f.f_under.same_map(g.f_under) && f.f_fix.same_map(g.f_fix);
}

inline CheckReport check_herm_morphism(const HermMorphism& f, const SearchPolicy& policy = {}) {
    CheckReport rep;
    rep.subject = f.name.empty() ? f.source.name() + " -> " + f.target.name() : f.name;
    const HermMackey& L = f.source;
    const HermMackey& N = f.target;
    {
        CheckResult c{"additive maps between the levels"};
        c.cases = 1;
        if (!(f.f_under.source() == L.under()) || !(f.f_under.target() == N.under()) ||
            !(f.f_fix.source() == L.fix()) || !(f.f_fix.target() == N.fix())) {
            c.passed = false;
            c.witness = "level maps have the wrong source or target";
            rep.add(c);
            return rep;
        }
        if (!f.f_under.well_defined() || !f.f_fix.well_defined()) {
            c.passed = false;
            c.witness = "a level map does not respect the cyclic orders";
        }
        rep.add(c);
        if (!c.passed) return rep;
    }
    const std::uint64_t nu = L.under().size(), nf = L.fix().size();
    std::vector<Elem> fu(nu), ff(nf);
    for (std::uint64_t a = 0; a < nu; ++a) fu[a] = f.f_under.apply(Elem(a));
    for (std::uint64_t b = 0; b < nf; ++b) ff[b] = f.f_fix.apply(Elem(b));
    auto su = [&](Elem a) { return L.ring().format(a); };
    auto sf = [&](Elem b) { return format_coords(L.fix().decode(b)); };
    auto track = [&](CheckResult c) {
        if (c.sampled) rep.seed = policy.seed;
        rep.add(std::move(c));
    };
    track(run_tuple_check<1>("f w = w f", {nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (fu[L.w(a)] == N.w(fu[a])) return std::nullopt;
        return "a=" + su(a);
    }));
    track(run_tuple_check<1>("f res = res f", {nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem b = Elem(t[0]);
        if (fu[L.res(b)] == N.res(ff[b])) return std::nullopt;
        return "b=" + sf(b);
    }));
    track(run_tuple_check<1>("f tr = tr f", {nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (ff[L.tr(a)] == N.tr(fu[a])) return std::nullopt;
        return "a=" + su(a);
    }));
    track(run_tuple_check<2>("f(a a') = f(a) f(a')", {nu, nu}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]), b = Elem(t[1]);
        if (fu[L.ring().mul(a, b)] == N.ring().mul(fu[a], fu[b])) return std::nullopt;
        return "a=" + su(a) + " a'=" + su(b);
    }));
    if (f.unital) {
        CheckResult c{"unital"};
        c.cases = 1;
        if (fu[L.ring().one()] != N.ring().one()) {
            c.passed = false;
            c.witness = "f(1)=" + N.ring().format(fu[L.ring().one()]);
        } else if (L.fix_unit() && N.fix_unit() && ff[*L.fix_unit()] != *N.fix_unit()) {
            c.passed = false;
            c.witness = "f_fix(1)=" + format_coords(N.fix().decode(ff[*L.fix_unit()]));
        }
        rep.add(c);
    }
    track(run_tuple_check<2>("f(a.b) = f(a).f(b)", {nu, nf}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]), b = Elem(t[1]);
        if (ff[L.act(a, b)] == N.act(fu[a], ff[b])) return std::nullopt;
        return "a=" + su(a) + " b=" + sf(b);
    }));
    return rep;
}

/// The rank map d: A_m -> underline(Z/m), d(b,c) = b + 2c.
inline HermMorphism rank_map_trivial(Int m) {
    HermMackey a = burnside_mod(m), u = underline_of_ring(zmod(m));
    return {a, u, GroupHom::identity(a.under()), GroupHom(a.fix(), u.fix(), IntMatrix{{1, 2}}), true, "d"};
}

struct EvenModulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Int inverse_of_two(Int m) {
    if (m % 2 == 0) throw EvenModulus("2 is not invertible modulo " + std::to_string(m));
    return (m + 1) / 2 % m;
}

/// Half the transfer, b -> (0, b/2): a non-unital section of d for odd m.
inline HermMorphism half_transfer_trivial(Int m) {
    const Int half = inverse_of_two(m);
    HermMackey a = burnside_mod(m), u = underline_of_ring(zmod(m));
    return {u, a, GroupHom::identity(u.under()), GroupHom(u.fix(), a.fix(), IntMatrix{{0}, {half}}), false, "T/2"};
}

}  // namespace hermackey
