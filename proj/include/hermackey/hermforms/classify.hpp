#pragma once

// Isometry classes of Hermitian forms, KH_0 as the Grothendieck group of the
// monoid of classes under block sum, the Witt group W_0, and induced maps.

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hermackey/hermforms/forms.hpp"

namespace hermackey {

struct NotWellDefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Flat lookup tables for the structure of a Hermitian Mackey functor.
class MackeyTables {
public:
    static constexpr std::uint64_t kMaxTable = std::uint64_t(1) << 24;

    explicit MackeyTables(const HermMackey& h) : h_(h), nu_(h.under().size()), nf_(h.fix().size()) {
        const FinRingInv& R = h.ring();
        const FinAbGroup& F = h.fix();
        uw_.resize(nu_);
        utr_.resize(nu_);
        fres_.resize(nf_);
        for (Elem a = 0; a < nu_; ++a) {
            uw_[a] = R.w(a);
            utr_[a] = h.tr(a);
        }
        for (Elem b = 0; b < nf_; ++b) fres_[b] = h.res(b);
        if (nu_ * nu_ <= kMaxTable) {
            uadd_.resize(nu_ * nu_);
            umul_.resize(nu_ * nu_);
            for (Elem a = 0; a < nu_; ++a)
                for (Elem b = 0; b < nu_; ++b) {
                    uadd_[a * nu_ + b] = R.add(a, b);
                    umul_[a * nu_ + b] = R.mul(a, b);
                }
        }
        if (nf_ * nf_ <= kMaxTable) {
            fadd_.resize(nf_ * nf_);
            for (Elem a = 0; a < nf_; ++a)
                for (Elem b = 0; b < nf_; ++b) fadd_[a * nf_ + b] = F.add(a, b);
        }
        if (nu_ * nf_ <= kMaxTable) {
            fact_.resize(nu_ * nf_);
            for (Elem a = 0; a < nu_; ++a)
                for (Elem b = 0; b < nf_; ++b) fact_[a * nf_ + b] = h.act(a, b);
        }
    }

    std::uint64_t under_size() const { return nu_; }
    std::uint64_t fix_size() const { return nf_; }
    Elem uadd(Elem a, Elem b) const { return uadd_.empty() ? h_.ring().add(a, b) : uadd_[a * nu_ + b]; }
    Elem umul(Elem a, Elem b) const { return umul_.empty() ? h_.ring().mul(a, b) : umul_[a * nu_ + b]; }
    Elem uw(Elem a) const { return uw_[a]; }
    Elem tr(Elem a) const { return utr_[a]; }
    Elem res(Elem b) const { return fres_[b]; }
    Elem fadd(Elem a, Elem b) const { return fadd_.empty() ? h_.fix().add(a, b) : fadd_[a * nf_ + b]; }
    Elem act(Elem a, Elem b) const { return fact_.empty() ? h_.act(a, b) : fact_[a * nf_ + b]; }

private:
    HermMackey h_;
    std::uint64_t nu_, nf_;
    std::vector<Elem> uw_, utr_, fres_, uadd_, umul_, fadd_, fact_;
};

constexpr std::size_t kMaxFormDim = 8;

/// A.B on upper-triangle cell arrays, same formulas as M_n(L).
inline void act_on_cells(const MackeyTables& t, std::size_t n, const Elem* a, const Elem* b, Elem* out) {
    std::array<Elem, kMaxFormDim * kMaxFormDim> r{}, m{}, wa{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i < j)
                r[i * n + j] = b[upper_cell(n, i, j)];
            else if (i > j)
                r[i * n + j] = t.uw(b[upper_cell(n, j, i)]);
            else
                r[i * n + j] = t.res(b[upper_cell(n, i, i)]);
            m[i * n + j] = 0;
        }
    for (std::size_t i = 0; i < n * n; ++i) wa[i] = t.uw(a[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Elem aik = a[i * n + k];
            if (aik == 0) continue;
            for (std::size_t l = 0; l < n; ++l)
                if (r[k * n + l] != 0) m[i * n + l] = t.uadd(m[i * n + l], t.umul(aik, r[k * n + l]));
        }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Elem s = 0;
            for (std::size_t l = 0; l < n; ++l)
                if (wa[j * n + l] != 0 && m[i * n + l] != 0) s = t.uadd(s, t.umul(m[i * n + l], wa[j * n + l]));
            out[upper_cell(n, i, j)] = s;
        }
        Elem x = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const Elem aik = a[i * n + k];
            if (aik == 0) continue;
            for (std::size_t l = k + 1; l < n; ++l) {
                const Elem bkl = b[upper_cell(n, k, l)];
                if (bkl != 0 && wa[i * n + l] != 0) x = t.uadd(x, t.umul(t.umul(aik, bkl), wa[i * n + l]));
            }
        }
        Elem f = t.tr(x);
        for (std::size_t k = 0; k < n; ++k)
            if (a[i * n + k] != 0) f = t.fadd(f, t.act(a[i * n + k], b[upper_cell(n, k, k)]));
        out[upper_cell(n, i, i)] = f;
    }
}

class UnionFind {
public:
    explicit UnionFind(std::uint64_t n) : p_(n) { std::iota(p_.begin(), p_.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (p_[x] != x) {
            p_[x] = p_[p_[x]];
            x = p_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b)
            p_[b] = a;
        else
            p_[a] = b;
    }
    std::vector<std::uint32_t>& data() { return p_; }

private:
    std::vector<std::uint32_t> p_;
};

}  // namespace detail

/// A generating set of the unit group: units in index order, each kept when
/// it is not yet in the subgroup generated by the previous ones.
inline std::vector<Elem> unit_generators(const FinRingInv& r) {
    std::vector<Elem> units = r.units(), gens;
    std::vector<char> in(r.size(), 0);
    std::vector<Elem> sub{r.one()};
    in[r.one()] = 1;
    for (Elem u : units) {
        if (in[u]) continue;
        gens.push_back(u);
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (Elem g : gens) {
                Elem x = r.mul(sub[i], g);
                if (!in[x]) {
                    in[x] = 1;
                    sub.push_back(x);
                }
            }
    }
    return gens;
}

/// Generators of GL_n(R) for a finite ring R: the n-cycle, elementary
/// matrices E_12(b) and E_21(b) for b in an additive basis, and diag(u,1,...)
/// for u in a generating set of the units.
inline std::vector<RMatrix> gl_generators(const FinRingInv& r, std::size_t n) {
    std::vector<RMatrix> gens;
    if (n >= 2) {
        std::vector<std::size_t> cyc(n);
        for (std::size_t j = 0; j < n; ++j) cyc[j] = (j + 1) % n;
        gens.push_back(permutation_matrix(r, cyc));
        for (std::size_t g = 0; g < r.rank(); ++g) {
            const Elem b = r.additive().generator(g);
            RMatrix e = RMatrix::identity(r, n);
            e(0, 1) = b;
            gens.push_back(e);
            RMatrix f = RMatrix::identity(r, n);
            f(1, 0) = b;
            gens.push_back(f);
        }
    }
    for (Elem u : unit_generators(r)) {
        RMatrix d = RMatrix::identity(r, n);
        d(0, 0) = u;
        gens.push_back(d);
    }
    return gens;
}

namespace detail {

inline std::string approx_count(long double x) {
    if (x < 1e18L) return std::to_string(static_cast<std::uint64_t>(x));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

}  // namespace detail

struct FormClass {
    HermForm representative;
    std::uint64_t size = 0;
    std::uint64_t index = 0;  // position of the representative in M_n(L)(*)
};

struct ClassifyLimits {
    std::uint64_t max_elements = 20'000'000;
};

/// Orbit decomposition of n-dimensional forms under B -> w(lambda).B.
class Classification {
public:
    static constexpr std::uint32_t kNone = ~std::uint32_t(0);

    Classification(HermMackey h, std::size_t n, const ClassifyLimits& limits = {}) : base_(std::move(h)), n_(n) {
        if (n == 0 || n > detail::kMaxFormDim) throw std::invalid_argument("form dimension must be in 1..8");
        std::vector<std::uint64_t> sizes;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) sizes.push_back(i == j ? base_.fix().size() : base_.under().size());
        layout_ = BlockLayout(sizes);
        if (!layout_.enumerable() || layout_.total() > static_cast<long double>(limits.max_elements))
            throw TooLarge("M" + std::to_string(n) + "(" + base_.name() + ")(*) has " +
                           detail::approx_count(layout_.total()) + " elements, above the limit of " +
                           std::to_string(limits.max_elements));
        elements_ = static_cast<std::uint64_t>(layout_.total());
        run();
    }

    const HermMackey& base() const { return base_; }
    std::size_t dim() const { return n_; }
    std::uint64_t elements() const { return elements_; }
    std::uint64_t forms() const { return forms_; }
    const std::vector<FormClass>& classes() const { return classes_; }
    const BlockLayout& layout() const { return layout_; }

    std::uint64_t index_of(const HermForm& b) const { return layout_.encode(b.cells); }
    HermForm form_at(std::uint64_t index) const { return {base_, n_, layout_.decode(index)}; }
    /// Class id of an element of M_n(L)(*), kNone when it is not a form.
    std::uint32_t label(std::uint64_t index) const { return label_[index]; }
    std::optional<std::size_t> class_of(const HermForm& b) const {
        if (b.n != n_) throw std::invalid_argument("form has the wrong dimension");
        std::uint32_t l = label_[index_of(b)];
        if (l == kNone) return std::nullopt;
        return l;
    }

private:
    void run() {
        detail::MackeyTables tabs(base_);
        const FinRingInv& R = base_.ring();
        const std::size_t cells = upper_cells(n_);
        std::vector<RMatrix> gens = gl_generators(R, n_);
        detail::UnionFind uf(elements_);
        std::vector<Elem> digits(cells, 0), out(cells);
        for (std::uint64_t x = 0; x < elements_; ++x) {
            for (const RMatrix& g : gens) {
                detail::act_on_cells(tabs, n_, g.entries.data(), digits.data(), out.data());
                uf.unite(std::uint32_t(x), std::uint32_t(layout_.encode(out.data())));
            }
            for (std::size_t i = cells; i-- > 0;) {
                if (++digits[i] < layout_.block_size(i)) break;
                digits[i] = 0;
            }
        }
        // Orbits numbered by their smallest element; forms kept as classes.
        for (std::uint64_t x = 0; x < elements_; ++x) uf.data()[x] = uf.find(std::uint32_t(x));
        std::vector<std::uint32_t>& lab = uf.data();
        std::vector<std::uint32_t> orbit_class;
        for (std::uint64_t x = 0; x < elements_; ++x) {
            const std::uint32_t root = lab[x];
            if (root == x) {
                HermForm rep = form_at(x);
                if (is_form(rep)) {
                    orbit_class.push_back(std::uint32_t(classes_.size()));
                    classes_.push_back({rep, 0, x});
                } else {
                    orbit_class.push_back(kNone);
                }
                lab[x] = std::uint32_t(orbit_class.size() - 1);
            } else {
                lab[x] = lab[root];
            }
        }
        for (std::uint64_t x = 0; x < elements_; ++x) {
            lab[x] = orbit_class[lab[x]];
            if (lab[x] != kNone) {
                ++classes_[lab[x]].size;
                ++forms_;
            }
        }
        label_ = std::move(lab);
    }

    HermMackey base_;
    std::size_t n_;
    BlockLayout layout_;
    std::uint64_t elements_ = 0, forms_ = 0;
    std::vector<FormClass> classes_;
    std::vector<std::uint32_t> label_;
};

inline Classification enumerate_iso_classes(const HermMackey& h, std::size_t n, const ClassifyLimits& limits = {}) {
    return Classification(h, n, limits);
}

/// Grothendieck group of forms of dimension <= D.
struct KH0Result {
    PresentedGroup group;
    Presentation presentation;
    std::vector<Classification> dims;                           // dims[k] classifies dimension k+1
    std::vector<std::pair<std::size_t, std::size_t>> generators;  // (dimension, class id)
    IntMatrix relations;
    std::size_t dim_bound = 0;

    std::size_t generator_index(std::size_t dim, std::size_t cls) const {
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (generators[g].first == dim && generators[g].second == cls) return g;
        throw std::out_of_range("no such generator");
    }
    /// Class of a form of dimension <= D in KH_0 coordinates.
    Coords class_in_group(const HermForm& b) const {
        auto c = dims.at(b.n - 1).class_of(b);
        if (!c) throw NotAForm(b.to_string() + " is not a form");
        Coords e(generators.size(), 0);
        e[generator_index(b.n, *c)] = 1;
        return presentation.project(e);
    }
};

namespace detail {

inline std::size_t count_generators(const std::vector<Classification>& dims, std::size_t bound) {
    std::size_t g = 0;
    for (std::size_t d = 0; d < bound; ++d) g += dims[d].classes().size();
    return g;
}

/// Relations [B] + [B'] = [B + B'] among classes of dimension <= bound; the
/// generator order is by dimension, then class id.
inline IntMatrix block_sum_relations(const std::vector<Classification>& dims, std::size_t bound) {
    std::vector<std::size_t> offset(bound + 2, 0);
    for (std::size_t d = 1; d <= bound; ++d) offset[d + 1] = offset[d] + dims[d - 1].classes().size();
    const std::size_t gens = offset[bound + 1];
    std::vector<std::vector<Int>> rows;
    for (std::size_t a = 1; a < bound; ++a)
        for (std::size_t b = 1; a + b <= bound; ++b)
            for (std::size_t i = 0; i < dims[a - 1].classes().size(); ++i)
                for (std::size_t j = 0; j < dims[b - 1].classes().size(); ++j) {
                    HermForm s = block_sum(dims[a - 1].classes()[i].representative, dims[b - 1].classes()[j].representative);
                    auto c = dims[a + b - 1].class_of(s);
                    if (!c) throw std::logic_error("block sum of forms is not a form");
                    std::vector<Int> row(gens, 0);
                    row[offset[a] + i] += 1;
                    row[offset[b] + j] += 1;
                    row[offset[a + b] + *c] -= 1;
                    rows.push_back(std::move(row));
                }
    IntMatrix m(rows.size(), gens);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < gens; ++c) m(r, c) = rows[r][c];
    return m;
}

}  // namespace detail

/// KH_0 truncated at dimension D, from precomputed classifications of
/// dimensions 1..D. Stable iff the group agrees with the one at bound D-1.
inline KH0Result kh0_from(std::vector<Classification> dims, std::size_t D) {
    if (D == 0 || dims.size() < D) throw std::invalid_argument("kh0 needs classifications for dimensions 1..D");
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(D), dims.end());
    KH0Result out;
    out.dim_bound = D;
    for (std::size_t d = 1; d <= D; ++d)
        for (std::size_t c = 0; c < dims[d - 1].classes().size(); ++c) out.generators.emplace_back(d, c);
    out.relations = detail::block_sum_relations(dims, D);
    out.presentation = abelian_group_from_relations(out.generators.size(), out.relations);
    out.group.group = out.presentation.group;
    if (D >= 2) {
        Presentation prev = abelian_group_from_relations(detail::count_generators(dims, D - 1),
                                                         detail::block_sum_relations(dims, D - 1));
        PresentedGroup p{prev.group, std::nullopt, false, "Z"};
        out.group.stable = p.isomorphic(out.group);
        out.group.truncated = !*out.group.stable;
    } else {
        out.group.truncated = true;
    }
    out.dims = std::move(dims);
    return out;
}

inline KH0Result kh0(const HermMackey& h, std::size_t D, const ClassifyLimits& limits = {}) {
    std::vector<Classification> dims;
    for (std::size_t d = 1; d <= D; ++d) dims.emplace_back(h, d, limits);
    return kh0_from(std::move(dims), D);
}

struct WittResult {
    PresentedGroup group;
    Coords hyperbolic_class;  // [H] in KH_0 coordinates
};

/// W_0 = coker(Z -> KH_0, 1 -> [hyperbolic(1)]); needs D >= 2.
inline WittResult witt0_from(const KH0Result& k) {
    WittResult w;
    if (k.dim_bound < 2) {
        w.group.group = k.group.group;
        w.group.truncated = true;
        return w;
    }
    HermForm hyp = hyperbolic(k.dims[0].base(), 1);
    auto c = k.dims[1].class_of(hyp);
    if (!c) throw std::logic_error("hyperbolic form is not a form");
    const std::size_t g = k.generator_index(2, *c);
    IntMatrix rel(k.relations.rows() + 1, k.generators.size());
    for (std::size_t r = 0; r < k.relations.rows(); ++r)
        for (std::size_t j = 0; j < k.generators.size(); ++j) rel(r, j) = k.relations(r, j);
    rel(k.relations.rows(), g) = 1;
    w.group.group = abelian_group_from_relations(k.generators.size(), rel).group;
    w.group.stable = k.group.stable;
    w.group.truncated = k.group.truncated;
    Coords e(k.generators.size(), 0);
    e[g] = 1;
    w.hyperbolic_class = k.presentation.project(e);
    return w;
}

inline WittResult witt0(const HermMackey& h, std::size_t D, const ClassifyLimits& limits = {}) {
    return witt0_from(kh0(h, D, limits));
}

/// The map on classes and on KH_0 induced by a morphism f.
struct InducedMap {
    std::vector<std::vector<std::size_t>> class_map;  // class_map[d-1][source class] = target class
    GroupHom kh0_map;
    std::uint64_t forms_checked = 0;  // forms on which descent to classes was verified
};

/// Applies f to every source form of dimension <= D, checks that each image
/// is a form and that isometric forms land in one class, and assembles the
/// homomorphism of Grothendieck groups.
inline InducedMap induced_kh0_map(const HermMorphism& f, const KH0Result& src, const KH0Result& tgt) {
    if (src.dim_bound != tgt.dim_bound) throw std::invalid_argument("dimension bounds differ");
    InducedMap out;
    std::vector<Elem> fu(f.source.under().size()), ff(f.source.fix().size());
    for (Elem a = 0; a < fu.size(); ++a) fu[a] = f.f_under.apply(a);
    for (Elem b = 0; b < ff.size(); ++b) ff[b] = f.f_fix.apply(b);
    for (std::size_t d = 1; d <= src.dim_bound; ++d) {
        const Classification& S = src.dims[d - 1];
        const Classification& T = tgt.dims[d - 1];
        const std::size_t cells = upper_cells(d);
        std::vector<std::size_t> cmap(S.classes().size(), SIZE_MAX);
        std::vector<Elem> digits(cells, 0), img(cells);
        for (std::uint64_t x = 0; x < S.elements(); ++x) {
            const std::uint32_t c = S.label(x);
            if (c != Classification::kNone) {
                for (std::size_t i = 0, p = 0; i < d; ++i)
                    for (std::size_t j = i; j < d; ++j, ++p) img[p] = i == j ? ff[digits[p]] : fu[digits[p]];
                const std::uint32_t t = T.label(T.layout().encode(img.data()));
                if (t == Classification::kNone)
                    throw NotWellDefined("f(" + S.form_at(x).to_string() + ") = " + HermForm{f.target, d, img}.to_string() +
                                         " is not a form");
                if (cmap[c] == SIZE_MAX)
                    cmap[c] = t;
                else if (cmap[c] != t)
                    throw NotWellDefined("isometric forms " + S.classes()[c].representative.to_string() + " and " +
                                         S.form_at(x).to_string() + " map to different classes");
                ++out.forms_checked;
            }
            for (std::size_t i = cells; i-- > 0;) {
                if (++digits[i] < S.layout().block_size(i)) break;
                digits[i] = 0;
            }
        }
        out.class_map.push_back(std::move(cmap));
    }
    std::vector<std::size_t> gmap(src.generators.size());
    for (std::size_t g = 0; g < gmap.size(); ++g) {
        auto [d, c] = src.generators[g];
        gmap[g] = tgt.generator_index(d, out.class_map[d - 1][c]);
    }
    // Z^(source classes) -> KH_0(target), pushed through a coefficient vector.
    auto push = [&](auto coeff) {
        Coords e(tgt.generators.size(), 0);
        for (std::size_t g = 0; g < gmap.size(); ++g) e[gmap[g]] = checked_add(e[gmap[g]], coeff(g));
        return tgt.presentation.project(e);
    };
    const Coords zero(tgt.presentation.group.rank(), 0);
    for (std::size_t r = 0; r < src.relations.rows(); ++r)
        if (push([&](std::size_t g) { return src.relations(r, g); }) != zero)
            throw NotWellDefined("a block-sum relation of the source is not preserved");
    const FinAbGroup& GS = src.presentation.group;
    const FinAbGroup& GT = tgt.presentation.group;
    out.kh0_map = GroupHom::from_generator_images(
        GS, GT, [&](std::size_t r) { return push([&](std::size_t g) { return src.presentation.lifts(g, r); }); });
    if (!out.kh0_map.well_defined()) throw NotWellDefined("induced map does not respect the relations of KH_0");
    return out;
}

inline InducedMap induced_kh0_map(const HermMorphism& f, std::size_t D, const ClassifyLimits& limits = {}) {
    return induced_kh0_map(f, kh0(f.source, D, limits), kh0(f.target, D, limits));
}

}  // namespace hermackey
