#pragma once

// Fixed points of subdivided real and dihedral nerves, the maps lambda and p,
// and the component analysis of the sigma-fixed nerve of a group.

#include "hermackey/realnerve/homology.hpp"

namespace hermackey {

namespace detail {

/// phi: S -> F given on coordinates, checked to land in F, to be a bijection
/// on every level, and to commute with every face.
template <class ToTuple>
CheckReport check_fixed_bijection(const std::string& subject, const NerveSSet& s, const NerveSSet& x,
                                  const SubSSet& fixed, ToTuple to_tuple) {
    CheckReport rep;
    rep.subject = subject;
    CheckResult lands("lands in the fixed simplices"), bij("bijective on every level"), faces("commutes with faces");
    std::vector<std::vector<std::uint64_t>> phi(s.truncation() + 1);
    for (std::size_t n = 0; n <= s.truncation() && lands.passed && bij.passed; ++n) {
        phi[n].resize(s.size(n));
        std::vector<char> hit(fixed.size(n), 0);
        for (std::uint64_t e = 0; e < s.size(n); ++e) {
            ++lands.cases;
            const std::uint64_t xi = x.encode(2 * n + 1, to_tuple(s.decode(n, e)));
            if (x.involution(2 * n + 1, xi) != xi || !fixed.contains(n, xi)) {
                lands.passed = false;
                lands.witness = s.label(n, e) + " -> " + x.label(2 * n + 1, xi);
                break;
            }
            phi[n][e] = fixed.position(n, xi);
            ++bij.cases;
            if (hit[phi[n][e]]++) {
                bij.passed = false;
                bij.witness = "two simplices map to " + x.label(2 * n + 1, xi);
                break;
            }
        }
        if (lands.passed && bij.passed && s.size(n) != fixed.size(n)) {
            bij.passed = false;
            bij.witness = "level " + std::to_string(n) + ": " + std::to_string(s.size(n)) + " simplices vs " +
                          std::to_string(fixed.size(n)) + " fixed simplices";
        }
    }
    if (lands.passed && bij.passed)
        for (std::size_t n = 1; n <= s.truncation() && faces.passed; ++n)
            for (std::uint64_t e = 0; e < s.size(n) && faces.passed; ++e)
                for (std::size_t i = 0; i <= n; ++i) {
                    ++faces.cases;
                    if (phi[n - 1][s.face(n, i, e)] != fixed.face(n, i, phi[n][e])) {
                        faces.passed = false;
                        faces.witness = "d" + std::to_string(i) + " on " + s.label(n, e);
                        break;
                    }
                }
    rep.add(lands);
    rep.add(bij);
    rep.add(faces);
    return rep;
}

}  // namespace detail

/// (m_1..m_n, c) in N(sym M) <-> (m_1..m_n, c, w(m_n)..w(m_1)) in (sd_e N^sigma M)^Z/2, degrees 0..T.
inline CheckReport check_sigma_fixed_iso_report(const MonoidAI& m, std::size_t T) {
    auto x = real_nerve(m, 2 * T + 1);
    auto fixed = fixed_simplices(edgewise_subdivide(x, T));
    auto s = sym_nerve(m, T);
    return detail::check_fixed_bijection("N(sym " + m.name() + ") = (sd_e N^sigma " + m.name() + ")^Z/2", *s, *x, *fixed,
                                         [&](const std::vector<std::size_t>& t) {
                                             const std::size_t n = t.size() - 1;
                                             std::vector<std::size_t> out(t.begin(), t.end());
                                             for (std::size_t k = n; k-- > 0;) out.push_back(m.w(t[k]));
                                             return out;
                                         });
}

inline bool check_sigma_fixed_iso(const MonoidAI& m, std::size_t T) { return check_sigma_fixed_iso_report(m, T).passed(); }

/// (a, m_1..m_n, c) in N(M^Z/2; M; M^Z/2) <-> (a, m_1..m_n, c, w(m_n)..w(m_1)) in (sd_e N^di M)^Z/2.
inline CheckReport check_di_fixed_iso_report(const MonoidAI& m, std::size_t T) {
    auto x = dihedral_nerve(m, 2 * T + 1);
    auto fixed = fixed_simplices(edgewise_subdivide(x, T));
    auto s = symcy_nerve(m, T);
    return detail::check_fixed_bijection("N(sym^cy " + m.name() + ") = (sd_e N^di " + m.name() + ")^Z/2", *s, *x, *fixed,
                                         [&](const std::vector<std::size_t>& t) {
                                             const std::size_t n = t.size() - 2;
                                             std::vector<std::size_t> out(t.begin(), t.end());
                                             for (std::size_t k = n; k >= 1; --k) out.push_back(m.w(t[k]));
                                             return out;
                                         });
}

inline bool check_di_fixed_iso(const MonoidAI& m, std::size_t T) { return check_di_fixed_iso_report(m, T).passed(); }

/// lambda(g_1..g_p) = (g_1..g_p, 1, g_p^{-1}..g_1^{-1}): N pi -> sd_e N^sigma pi, degrees 0..T.
inline SimplicialMap lambda_map(const FinGroup& g, std::size_t T) {
    MonoidAI m = monoid_of_group(g);
    auto src = group_nerve(m, T);
    auto x = real_nerve(m, 2 * T + 1);
    auto tgt = edgewise_subdivide(x, T);
    return {"lambda", src, tgt, [src, x, g](std::size_t p, std::uint64_t s) {
                std::vector<std::size_t> t = src->decode(p, s);
                t.push_back(g.identity());
                for (std::size_t k = p; k-- > 0;) t.push_back(g.inv(t[k]));
                return x->encode(2 * p + 1, t);
            }};
}

/// lambda with its target cut down to the fixed simplices.
inline SimplicialMap lambda_to_fixed(const SimplicialMap& lambda, const std::shared_ptr<const SubSSet>& fixed) {
    auto f = lambda.apply;
    return {"lambda", lambda.source, fixed, [f, fixed](std::size_t p, std::uint64_t s) { return fixed->position(p, f(p, s)); }};
}

/// p: sd_e N^di M -> sd_e N^sigma M, dropping the first coordinate.
inline SimplicialMap projection_p(const MonoidAI& m, std::size_t T) {
    auto di = edgewise_subdivide(dihedral_nerve(m, 2 * T + 1), T);
    auto sig = edgewise_subdivide(real_nerve(m, 2 * T + 1), T);
    std::vector<std::uint64_t> mod(T + 1, 1);
    for (std::size_t n = 0; n <= T; ++n)
        for (std::size_t k = 0; k < 2 * n + 1; ++k) mod[n] *= m.size();
    return {"p", di, sig, [mod](std::size_t n, std::uint64_t s) { return s % mod[n]; }};
}

struct LambdaCheck {
    CheckReport report;
    std::vector<GroupHom> induced;  // on H_0, H_1
};

/// lambda lands in the fixed simplices and commutes with faces; followed by
/// the fixed-point inclusion and the restriction sd_e N^sigma pi -> N pi it
/// induces the identity on H_0 and H_1.
inline LambdaCheck lambda_check(const FinGroup& g, std::size_t T) {
    if (T < 2) throw TruncationTooShallow("lambda check needs truncation >= 2 for H_1");
    LambdaCheck out;
    out.report.subject = "lambda for " + g.name();
    SimplicialMap lam = lambda_map(g, T);
    auto sd = std::static_pointer_cast<const SubdividedSSet>(lam.target);
    auto fixed = fixed_simplices(sd);
    out.report.add(check_commutes_with_faces(lam));
    CheckResult lands("lambda lands in the fixed simplices");
    for (std::size_t p = 0; p <= T; ++p)
        for (std::uint64_t s = 0; s < lam.source->size(p); ++s) {
            ++lands.cases;
            if (!fixed->contains(p, lam.apply(p, s))) {
                lands.passed = false;
                lands.witness = lam.source->label(p, s);
                break;
            }
        }
    out.report.add(lands);
    if (!lands.passed) return out;
    SimplicialMap composite = compose(compose(lambda_to_fixed(lam, fixed), inclusion_map(fixed)), first_half_map(sd));
    composite.name = "forget o incl o lambda";
    out.report.add(check_commutes_with_faces(composite));
    // The target N^sigma pi and the source N pi share their chain complex.
    for (std::size_t k = 0; k <= 1; ++k) {
        GroupHom h = induced_homology_map(composite, k);
        CheckResult r("identity on H_" + std::to_string(k));
        r.cases = 1;
        if (!(h.source() == h.target()) || !h.same_map(GroupHom::identity(h.source()))) {
            r.passed = false;
            r.witness = "induced matrix " + h.matrix().to_string();
        }
        out.induced.push_back(h);
        out.report.add(r);
    }
    return out;
}

struct FixedComponent {
    std::size_t representative;  // involution g whose vertex lies here
    std::size_t class_size;
    FinGroup centralizer;
    PresentedGroup h1;                // of this component of the fixed nerve
    PresentedGroup centralizer_h1;    // of N(centralizer), separately computed
    PresentedGroup abelianization;    // of the centralizer, from its table
};

struct SigmaFixedAnalysis {
    std::size_t components = 0;
    std::vector<FixedComponent> parts;  // one per involution class
    CheckReport report;
};

/// Components of (sd_e N^sigma pi)^Z/2 truncated at T, matched with the
/// conjugacy classes of involutions, with H_1 per component.
inline SigmaFixedAnalysis analyze_sigma_fixed(const FinGroup& g, std::size_t T) {
    if (T < 2) throw TruncationTooShallow("H_1 needs truncation >= 2");
    MonoidAI m = monoid_of_group(g);
    auto x = real_nerve(m, 2 * T + 1);
    auto fixed = fixed_simplices(edgewise_subdivide(x, T));
    Components comps = components(*fixed);
    SigmaFixedAnalysis out;
    out.components = comps.count;
    out.report.subject = "sigma-fixed nerve of " + g.name();
    auto classes = involution_classes(g);
    CheckResult count("components = involution classes");
    count.cases = 1;
    if (comps.count != classes.size()) {
        count.passed = false;
        count.witness = std::to_string(comps.count) + " components, " + std::to_string(classes.size()) + " classes";
    }
    CheckResult match("classes sit in distinct components"), h1("H_1 of each component = centralizer abelianization");
    std::vector<char> used(comps.count, 0);
    for (const auto& cls : classes) {
        // Vertex (g) of sd_e level 0 = X_1.
        const std::uint64_t v = fixed->position(0, x->encode(1, std::vector<std::size_t>{cls.representative}));
        const std::size_t c = comps.of_vertex[v];
        ++match.cases;
        for (auto other : cls.members)
            if (comps.of_vertex[fixed->position(0, x->encode(1, std::vector<std::size_t>{other}))] != c) {
                match.passed = false;
                match.witness = "class of " + g.label(cls.representative) + " is split";
            }
        if (used[c]++) {
            match.passed = false;
            match.witness = "two classes share component " + std::to_string(c);
        }
        FixedComponent fc{cls.representative, cls.size, cls.centralizer, {}, {}, {}};
        fc.h1 = homology(*component_subset(fixed, comps, c)).groups.at(1);
        fc.centralizer_h1 = homology(*group_nerve(cls.centralizer, T)).groups.at(1);
        fc.abelianization.group = abelianization(cls.centralizer).group;
        ++h1.cases;
        if (!fc.h1.isomorphic(fc.centralizer_h1) || !fc.h1.isomorphic(fc.abelianization)) {
            h1.passed = false;
            h1.witness = g.label(cls.representative) + ": " + fc.h1.to_string() + " vs " + fc.centralizer_h1.to_string() +
                         " / " + fc.abelianization.to_string();
        }
        out.parts.push_back(std::move(fc));
    }
    out.report.add(count);
    out.report.add(match);
    out.report.add(h1);
    return out;
}

/// Monoids with anti-involution used by the identification suites.
inline std::vector<MonoidAI> catalog_monoids() {
    return {monoid_of_group(cyclic_group(2)), monoid_of_group(cyclic_group(3)), monoid_of_group(cyclic_group(4)),
            monoid_of_group(symmetric_group_3()), twisted_s3(), multiplicative_monoid(zmod(4), "mul(Z/4)"),
            multiplicative_monoid(zmod(5), "mul(Z/5)")};
}

inline MonoidAI catalog_monoid(const std::string& name) {
    for (auto& m : catalog_monoids())
        if (m.name() == name) return m;
    if (name.rfind("mul(Z/", 0) == 0 && name.back() == ')') {
        const std::string digits = name.substr(6, name.size() - 7);
        if (!digits.empty() && digits.size() < 4 && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return multiplicative_monoid(zmod(std::stoll(digits)), name);
    }
    throw std::invalid_argument("unknown monoid " + name);
}

}  // namespace hermackey
