#pragma once

// Functoriality of M_n(-) and (-)[pi], the rank map and its half-transfer
// section over group rings, and the comparison isomorphisms
// underline(M_n(R)) = M_n(underline(R)) and underline(R[pi]) = underline(R)[pi].

#include <optional>
#include <string>
#include <vector>

#include "hermackey/constructions/group_mackey.hpp"
#include "hermackey/constructions/matrix_mackey.hpp"

namespace hermackey {

/// M_n(f): entrywise application, f_under off the diagonal and f_fix on it.
inline HermMorphism apply_matrix_construction(const HermMorphism& f, std::size_t n) {
    MatrixOps src(f.source, n), tgt(f.target, n);
    HermMackey S = matrix_mackey(f.source, n), T = matrix_mackey(f.target, n);
    GroupHom fu = GroupHom::from_generator_images(S.under(), T.under(), [&](std::size_t j) {
        std::vector<Elem> a = src.under_layout().decode(S.under().generator(j));
        for (auto& x : a) x = f.f_under.apply(x);
        return T.under().decode(Elem(tgt.under_layout().encode(a)));
    });
    GroupHom ff = GroupHom::from_generator_images(S.fix(), T.fix(), [&](std::size_t j) {
        std::vector<Elem> b = src.fix_layout().decode(S.fix().generator(j));
        for (std::size_t p = 0; p < b.size(); ++p)
            b[p] = src.is_diagonal_cell(p) ? f.f_fix.apply(b[p]) : f.f_under.apply(b[p]);
        return T.fix().decode(Elem(tgt.fix_layout().encode(b)));
    });
    return {S, T, fu, ff, f.unital, "M" + std::to_string(n) + "(" + f.name + ")"};
}

/// The group-ring parameters without the base.
struct GroupData {
    FinGroup pi;
    std::vector<std::size_t> tau;
    std::vector<std::size_t> section;
    std::vector<std::size_t> order;
};

/// f[pi] between L[pi] and N[pi] built from the two specs, which must share
/// pi, tau and section.
inline HermMorphism apply_group_construction(const HermMorphism& f, const GroupMackeyParams& source,
                                             const GroupMackeyParams& target) {
    GroupOps src(source), tgt(target);
    if (!(src.pi() == tgt.pi()) || src.tau() != tgt.tau() || src.section() != tgt.section())
        throw SectionMismatch("source and target group Mackey functors use different pi, tau or section");
    if (!src.base().same_structure(f.source) || !tgt.base().same_structure(f.target))
        throw SectionMismatch("group Mackey specs are not built on the morphism's source and target");
    HermMackey S = group_mackey(source), T = group_mackey(target);
    GroupHom fu = GroupHom::from_generator_images(S.under(), T.under(), [&](std::size_t j) {
        std::vector<Elem> a = src.under_layout().decode(S.under().generator(j));
        for (auto& x : a) x = f.f_under.apply(x);
        return T.under().decode(Elem(tgt.under_layout().encode(a)));
    });
    const std::size_t nfixed = src.fixed_elements().size();
    GroupHom ff = GroupHom::from_generator_images(S.fix(), T.fix(), [&](std::size_t j) {
        std::vector<Elem> b = src.fix_layout().decode(S.fix().generator(j));
        for (std::size_t p = 0; p < b.size(); ++p) b[p] = p < nfixed ? f.f_fix.apply(b[p]) : f.f_under.apply(b[p]);
        return T.fix().decode(Elem(tgt.fix_layout().encode(b)));
    });
    return {S, T, fu, ff, f.unital, f.name + "[" + src.pi().name() + "]"};
}

inline HermMorphism apply_group_construction(const HermMorphism& f, const GroupData& g) {
    return apply_group_construction(f, {f.source, g.pi, g.tau, g.section, g.order},
                                    {f.target, g.pi, g.tau, g.section, g.order});
}

/// d: A_m[pi] -> underline(Z/m)[pi].
inline HermMorphism rank_map(Int m, const FinGroup& pi) {
    HermMorphism d = apply_group_construction(rank_map_trivial(m), GroupData{pi, {}, {}, {}});
    d.name = "d[" + pi.name() + "]";
    return d;
}

/// T/2: underline(Z/m)[pi] -> A_m[pi], non-unital, for odd m.
inline HermMorphism half_transfer_section(Int m, const FinGroup& pi) {
    HermMorphism h = apply_group_construction(half_transfer_trivial(m), GroupData{pi, {}, {}, {}});
    h.name = "T/2[" + pi.name() + "]";
    return h;
}

namespace detail {

inline std::vector<Elem> value_table(const GroupHom& f) {
    std::vector<Elem> t(f.source().size());
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = f.apply(Elem(x));
    return t;
}

inline CheckResult bijectivity(std::string name, const GroupHom& f) {
    CheckResult c(std::move(name));
    c.cases = f.source().size();
    if (f.source().size() != f.target().size()) {
        c.passed = false;
        c.witness = "orders differ: " + std::to_string(f.source().size()) + " vs " + std::to_string(f.target().size());
        return c;
    }
    std::vector<char> hit(f.target().size(), 0);
    for (std::uint64_t x = 0; x < f.source().size(); ++x) {
        Elem y = f.apply(Elem(x));
        if (hit[y]) {
            c.passed = false;
            c.witness = "two elements map to " + format_coords(f.target().decode(y));
            return c;
        }
        hit[y] = 1;
    }
    return c;
}

}  // namespace detail

/// Morphism checks together with bijectivity on both levels.
inline CheckReport check_herm_isomorphism(const HermMorphism& f, const SearchPolicy& policy = {}) {
    CheckReport rep = check_herm_morphism(f, policy);
    rep.add(detail::bijectivity("bijective on the underlying level", f.f_under));
    rep.add(detail::bijectivity("bijective on the fixed level", f.f_fix));
    return rep;
}

/// underline(M_n(R)) -> M_n(underline(R)): a symmetric matrix goes to its
/// upper triangle, diagonal entries read in the fixed level of underline(R).
inline HermMorphism matrix_comparison(const FinRingInv& r, std::size_t n) {
    HermMackey uR = underline_of_ring(r);
    HermMackey src = underline_of_ring(matrix_ring(r, n), "underline(M" + std::to_string(n) + "(" + r.name() + "))");
    HermMackey tgt = matrix_mackey(uR, n);
    MatrixOps ops(uR, n);
    std::vector<Elem> pull(r.size(), 0);
    for (std::uint64_t f = 0; f < uR.fix().size(); ++f) pull[uR.res(Elem(f))] = Elem(f);
    if (!(src.under() == tgt.under())) throw ValidationError("matrix ring carriers differ");
    GroupHom fu = GroupHom::identity(src.under());
    GroupHom ff = GroupHom::from_generator_images(src.fix(), tgt.fix(), [&](std::size_t j) {
        std::vector<Elem> s = ops.under_layout().decode(src.res(src.fix().generator(j)));
        std::vector<Elem> b(ops.cells());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i; k < n; ++k) b[ops.pos(i, k)] = i == k ? pull[s[i * n + i]] : s[i * n + k];
        return tgt.fix().decode(Elem(ops.fix_layout().encode(b)));
    });
    return {src, tgt, fu, ff, true, "underline(M" + std::to_string(n) + "(R)) -> M" + std::to_string(n) + "(underline(R))"};
}

inline CheckReport matrix_iso_check(const FinRingInv& r, std::size_t n, const SearchPolicy& policy = {}) {
    CheckReport rep = check_herm_isomorphism(matrix_comparison(r, n), policy);
    rep.subject = "underline(M" + std::to_string(n) + "(" + r.name() + ")) = M" + std::to_string(n) + "(underline(" +
                  r.name() + "))";
    return rep;
}

/// underline(R[pi]) -> underline(R)[pi]: a w-fixed sum r_g g goes to its
/// coefficients at the tau-fixed elements and at the section representatives.
inline HermMorphism groupring_comparison(const FinRingInv& r, const GroupData& g) {
    HermMackey uR = underline_of_ring(r);
    GroupMackeyParams params{uR, g.pi, g.tau, g.section, g.order};
    GroupOps ops(params);
    HermMackey tgt = group_mackey(params);
    HermMackey src = underline_of_ring(group_algebra(r, ops.pi(), ops.tau()),
                                       "underline(" + r.name() + "[" + g.pi.name() + "])");
    std::vector<Elem> pull(r.size(), 0);
    for (std::uint64_t f = 0; f < uR.fix().size(); ++f) pull[uR.res(Elem(f))] = Elem(f);
    GroupHom fu = GroupHom::identity(src.under());
    if (!(src.under() == tgt.under())) throw ValidationError("group algebra carriers differ");
    GroupHom ff = GroupHom::from_generator_images(src.fix(), tgt.fix(), [&](std::size_t j) {
        std::vector<Elem> coeff = ops.under_layout().decode(src.res(src.fix().generator(j)));
        std::vector<Elem> b(ops.summands());
        for (std::size_t h : ops.fixed_elements()) b[ops.summand(h)] = pull[coeff[h]];
        for (std::size_t x : ops.section()) b[ops.summand(x)] = coeff[x];
        return tgt.fix().decode(Elem(ops.fix_layout().encode(b)));
    });
    return {src, tgt, fu, ff, true, "underline(R[pi]) -> underline(R)[pi]"};
}

inline CheckReport groupring_iso_check(const FinRingInv& r, const FinGroup& pi, const SearchPolicy& policy = {}) {
    CheckReport rep = check_herm_isomorphism(groupring_comparison(r, GroupData{pi, {}, {}, {}}), policy);
    rep.subject = "underline(" + r.name() + "[" + pi.name() + "]) = underline(" + r.name() + ")[" + pi.name() + "]";
    return rep;
}

/// Searches for an isomorphism L[pi] with section s1 -> L[pi] with section s2
/// that is the identity on the underlying level. On each free orbit the
/// candidate maps are c -> c and c -> w(c); every combination is tried.
inline std::optional<HermMorphism> section_isomorphism(const HermMackey& base, const FinGroup& pi,
                                                       const std::vector<std::size_t>& tau,
                                                       const std::vector<std::size_t>& s1,
                                                       const std::vector<std::size_t>& s2,
                                                       const SearchPolicy& policy = {}) {
    GroupMackeyParams a{base, pi, tau, s1, {}}, b{base, pi, tau, s2, {}};
    GroupOps oa(a), ob(b);
    HermMackey S = group_mackey(a), T = group_mackey(b);
    const std::size_t orbits = oa.section().size(), nfixed = oa.fixed_elements().size();
    if (orbits > 20) throw TooLarge("too many free orbits for an exhaustive section search");
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << orbits); ++mask) {
        GroupHom ff = GroupHom::from_generator_images(S.fix(), T.fix(), [&](std::size_t j) {
            std::vector<Elem> x = oa.fix_layout().decode(S.fix().generator(j));
            std::vector<Elem> y(x.size(), 0);
            for (std::size_t i = 0; i < nfixed; ++i) y[i] = x[i];
            for (std::size_t o = 0; o < orbits; ++o) {
                const std::size_t rep = oa.section()[o];
                Elem c = x[nfixed + o];
                if (mask >> o & 1) c = base.w(c);
                y[ob.summand(rep)] = c;
            }
            return T.fix().decode(Elem(ob.fix_layout().encode(y)));
        });
        HermMorphism f{S, T, GroupHom::identity(S.under()), ff, true, "section change"};
        if (check_herm_isomorphism(f, policy).passed()) return f;
    }
    return std::nullopt;
}

/// L[pi] built with the element-index order and with `order` agree as
/// Hermitian Mackey functors (same levels, maps and action).
inline bool extension_order_independent(const HermMackey& base, const FinGroup& pi, const std::vector<std::size_t>& order) {
    HermMackey x = group_mackey({base, pi, {}, {}, {}});
    HermMackey y = group_mackey({base, pi, {}, {}, order});
    return x.same_structure(y);
}

}  // namespace hermackey
