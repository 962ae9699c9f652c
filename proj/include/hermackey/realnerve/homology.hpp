#pragma once

// Homology of truncated semi-simplicial sets from the unnormalized chain
// complex, boundary = alternating sum of faces.

#include <map>
#include <queue>

#include "hermackey/realnerve/sset.hpp"

namespace hermackey {

struct Coefficients {
    enum class Kind { Z, Q, Zp } kind = Kind::Z;
    Int p = 0;

    std::string to_string() const {
        switch (kind) {
            case Kind::Z: return "Z";
            case Kind::Q: return "Q";
            case Kind::Zp: return "Z/" + std::to_string(p);
        }
        return "";
    }

    static Coefficients integers() { return {}; }
    static Coefficients rationals() { return {Kind::Q, 0}; }
    static Coefficients mod(Int p) {
        if (p < 2) throw ValidationError("coefficient modulus must be a prime");
        for (Int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw ValidationError(std::to_string(p) + " is not prime");
        return {Kind::Zp, p};
    }
    /// "z", "q" or "zp:P".
    static Coefficients parse(const std::string& s) {
        if (s == "z" || s == "Z") return integers();
        if (s == "q" || s == "Q") return rationals();
        if (s.rfind("zp:", 0) == 0 && s.size() > 3 && s.size() < 12 &&
            std::all_of(s.begin() + 3, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return mod(std::stoll(s.substr(3)));
        throw ValidationError("coefficients must be z, q or zp:P, got " + s);
    }
};

/// Columns are sparse vectors sorted by row.
struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Int>>> columns;

    IntMatrix dense() const {
        IntMatrix m(rows, cols);
        for (std::size_t c = 0; c < cols; ++c)
            for (auto [r, v] : columns[c]) m(r, c) = v;
        return m;
    }
};

inline constexpr std::uint64_t kMaxChainRank = 20'000'000;

/// d_p: C_p -> C_{p-1}.
inline SparseMatrix boundary_matrix(const SSet& x, std::size_t p) {
    if (p == 0 || p > x.truncation()) throw std::out_of_range("boundary degree out of range");
    if (x.size(p) > kMaxChainRank || x.size(p - 1) > kMaxChainRank)
        throw TooLarge("chain group of " + x.name() + " in degree " + std::to_string(p) + " is too large");
    SparseMatrix m;
    m.rows = x.size(p - 1);
    m.cols = x.size(p);
    m.columns.resize(m.cols);
    std::map<std::uint32_t, Int> acc;
    for (std::uint64_t s = 0; s < m.cols; ++s) {
        acc.clear();
        for (std::size_t i = 0; i <= p; ++i) acc[std::uint32_t(x.face(p, i, s))] += (i % 2 == 0) ? 1 : -1;
        for (auto [r, v] : acc)
            if (v != 0) m.columns[s].emplace_back(r, v);
    }
    return m;
}

/// Whether d_{p-1} d_p = 0 as an exact integer identity.
inline CheckResult check_boundary_squared(const SSet& x) {
    CheckResult res("d^2 = 0 on " + x.name());
    for (std::size_t p = 2; p <= x.truncation(); ++p) {
        SparseMatrix a = boundary_matrix(x, p), b = boundary_matrix(x, p - 1);
        std::map<std::uint32_t, Int> acc;
        for (std::size_t c = 0; c < a.cols; ++c) {
            ++res.cases;
            acc.clear();
            for (auto [r, v] : a.columns[c])
                for (auto [r2, v2] : b.columns[r]) acc[r2] += v * v2;
            for (auto [r2, v] : acc)
                if (v != 0) {
                    res.passed = false;
                    res.witness = "degree " + std::to_string(p) + ", simplex " + x.label(p, c);
                    return res;
                }
        }
    }
    return res;
}

namespace detail {

inline Int inverse_mod(Int a, Int p) {
    Int r = 1, b = mod_reduce(a, p), e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Nonzero invariant factors of a sparse integer matrix (over Z), or a list of
/// `rank` ones (over Z/p). Unit pivots are eliminated sparsely, shortest
/// column first; what remains goes through the dense Smith form.
inline std::vector<Int> sparse_invariants(SparseMatrix a, const Coefficients& coeff = {}) {
    const bool modp = coeff.kind == Coefficients::Kind::Zp;
    const Int p = coeff.p;
    auto& cols = a.columns;
    if (modp)
        for (auto& col : cols) {
            std::vector<std::pair<std::uint32_t, Int>> kept;
            for (auto [r, v] : col)
                if (mod_reduce(v, p) != 0) kept.emplace_back(r, mod_reduce(v, p));
            col = std::move(kept);
        }
    std::vector<std::vector<std::uint32_t>> row_cols(a.rows);
    for (std::uint32_t c = 0; c < a.cols; ++c)
        for (auto [r, v] : cols[c]) row_cols[r].push_back(c);
    std::vector<char> col_alive(a.cols, 1), row_alive(a.rows, 1);
    auto is_unit = [&](Int v) { return modp ? v != 0 : (v == 1 || v == -1); };

    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::uint32_t c = 0; c < a.cols; ++c)
        if (!cols[c].empty()) queue.emplace(cols[c].size(), c);

    std::size_t units = 0;
    std::vector<std::pair<std::uint32_t, Int>> merged;
    while (!queue.empty()) {
        auto [len, c] = queue.top();
        queue.pop();
        if (!col_alive[c] || len != cols[c].size() || cols[c].empty()) continue;
        // Unit entry whose row is shortest.
        std::size_t best = SIZE_MAX;
        std::uint32_t prow = 0;
        Int pval = 0;
        for (auto [r, v] : cols[c])
            if (is_unit(v) && row_cols[r].size() < best) {
                best = row_cols[r].size();
                prow = r;
                pval = v;
            }
        if (best == SIZE_MAX) continue;  // parked until the column changes
        const Int pinv = modp ? detail::inverse_mod(pval, p) : pval;
        for (std::uint32_t j : row_cols[prow]) {
            if (j == c || !col_alive[j]) continue;
            auto& cj = cols[j];
            auto it = std::lower_bound(cj.begin(), cj.end(), std::make_pair(prow, std::numeric_limits<Int>::min()));
            if (it == cj.end() || it->first != prow) continue;
            const Int f = modp ? mod_reduce(it->second * pinv, p) : checked_mul(it->second, pinv);
            merged.clear();
            auto x = cj.begin();
            auto y = cols[c].begin();
            while (x != cj.end() || y != cols[c].end()) {
                if (y == cols[c].end() || (x != cj.end() && x->first < y->first)) {
                    merged.push_back(*x++);
                } else {
                    Int sub = modp ? mod_reduce(f * y->second, p) : checked_mul(f, y->second);
                    Int v;
                    std::uint32_t r = y->first;
                    if (x != cj.end() && x->first == r) {
                        v = modp ? mod_reduce(x->second - sub, p) : checked_sub(x->second, sub);
                        ++x;
                    } else {
                        v = modp ? mod_reduce(-sub, p) : -sub;
                        row_cols[r].push_back(j);
                    }
                    ++y;
                    if (v != 0) merged.emplace_back(r, v);
                }
            }
            cj.swap(merged);
            queue.emplace(cj.size(), j);
        }
        row_alive[prow] = 0;
        col_alive[c] = 0;
        row_cols[prow].clear();
        ++units;
    }

    // Residual block on live rows and columns.
    std::vector<std::uint32_t> live_cols;
    std::vector<std::int64_t> row_index(a.rows, -1);
    std::size_t nrows = 0;
    for (std::uint32_t c = 0; c < a.cols; ++c) {
        if (!col_alive[c]) continue;
        bool any = false;
        for (auto [r, v] : cols[c])
            if (row_alive[r] && v != 0) {
                any = true;
                if (row_index[r] < 0) row_index[r] = static_cast<std::int64_t>(nrows++);
            }
        if (any) live_cols.push_back(c);
    }
    std::vector<Int> inv(units, 1);
    if (live_cols.empty()) return inv;
    if (nrows * live_cols.size() > 50'000'000ULL)
        throw TooLarge("residual boundary block of " + std::to_string(nrows) + " x " + std::to_string(live_cols.size()));
    IntMatrix res(nrows, live_cols.size());
    for (std::size_t k = 0; k < live_cols.size(); ++k)
        for (auto [r, v] : cols[live_cols[k]])
            if (row_alive[r]) res(std::size_t(row_index[r]), k) = v;
    if (modp) throw std::logic_error("mod-p elimination left a residual block");
    for (Int d : smith_invariants(res)) inv.push_back(d);
    return inv;
}

struct HomologyResult {
    std::string space;
    Coefficients coefficients;
    std::size_t truncation = 0;
    std::vector<PresentedGroup> groups;  // degrees 0 .. truncation-1
    std::vector<std::uint64_t> chain_ranks;

    std::string to_string() const {
        std::string s;
        for (std::size_t k = 0; k < groups.size(); ++k)
            s += (k ? ", " : "") + std::string("H") + std::to_string(k) + " = " + groups[k].to_string();
        return s;
    }
};

/// H_k for k < T (the degree k+1 chains are needed and present).
inline HomologyResult homology(const SSet& x, const Coefficients& coeff = {}) {
    const std::size_t T = x.truncation();
    HomologyResult out;
    out.space = x.name();
    out.coefficients = coeff;
    out.truncation = T;
    for (std::size_t p = 0; p <= T; ++p) out.chain_ranks.push_back(x.size(p));
    std::vector<std::vector<Int>> inv(T + 1);  // inv[p] for d_p
    for (std::size_t p = 1; p <= T; ++p) inv[p] = sparse_invariants(boundary_matrix(x, p), coeff);
    for (std::size_t k = 0; k < T; ++k) {
        const std::uint64_t rk = k == 0 ? 0 : inv[k].size(), rk1 = inv[k + 1].size();
        const std::uint64_t free = x.size(k) - rk - rk1;
        std::vector<Int> orders;
        if (coeff.kind == Coefficients::Kind::Z)
            for (Int d : inv[k + 1])
                if (d > 1) orders.push_back(d);
        if (coeff.kind == Coefficients::Kind::Zp)
            orders.assign(free, coeff.p);
        else
            orders.insert(orders.end(), free, 0);
        PresentedGroup g;
        g.group = FinAbGroup(orders);
        g.coefficients = coeff.to_string();
        out.groups.push_back(g);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Connected components.

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> of_vertex;  // component id per vertex, numbered by smallest vertex
};

inline Components components(const SSet& x) {
    const std::uint64_t n = x.size(0);
    std::vector<std::uint64_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint64_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    if (x.truncation() >= 1)
        for (std::uint64_t e = 0; e < x.size(1); ++e) {
            auto a = find(x.face(1, 0, e)), b = find(x.face(1, 1, e));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    Components c;
    c.of_vertex.assign(n, 0);
    std::vector<std::size_t> id(n, SIZE_MAX);
    for (std::uint64_t v = 0; v < n; ++v) {
        auto r = find(v);
        if (id[r] == SIZE_MAX) id[r] = c.count++;
        c.of_vertex[v] = id[r];
    }
    return c;
}

/// The vertex reached by repeated last faces.
inline std::uint64_t last_vertex(const SSet& x, std::size_t p, std::uint64_t s) {
    for (; p > 0; --p) s = x.face(p, p, s);
    return s;
}

/// The sub-semi-simplicial set of simplices in one component.
inline std::shared_ptr<const SubSSet> component_subset(const SSetPtr& x, const Components& comps, std::size_t which) {
    std::vector<std::vector<std::uint64_t>> members(x->truncation() + 1);
    for (std::size_t p = 0; p <= x->truncation(); ++p)
        for (std::uint64_t s = 0; s < x->size(p); ++s)
            if (comps.of_vertex[last_vertex(*x, p, s)] == which) members[p].push_back(s);
    return std::make_shared<SubSSet>(x, std::move(members), x->name() + " component " + std::to_string(which));
}

// ---------------------------------------------------------------------------
// Integral homology with explicit cycles, for induced maps (dense, small).

struct HomologyBasis {
    std::size_t degree = 0;
    std::size_t boundary_rank = 0;  // rank of d_degree
    IntMatrix v_inverse;            // V^{-1} from the Smith form of d_degree
    Presentation presentation;      // over the kernel coordinates

    /// Class of a cycle given as a chain.
    Coords class_of(const std::vector<Int>& chain) const {
        std::vector<Int> c = v_inverse * chain;
        for (std::size_t i = 0; i < boundary_rank; ++i)
            if (c[i] != 0) throw std::invalid_argument("chain is not a cycle");
        Coords k(c.begin() + static_cast<std::ptrdiff_t>(boundary_rank), c.end());
        return presentation.project(k);
    }
};

inline constexpr std::uint64_t kMaxDenseChains = 4000;

inline HomologyBasis homology_basis(const SSet& x, std::size_t k) {
    if (k >= x.truncation()) throw TruncationTooShallow("H_" + std::to_string(k) + " needs truncation > " + std::to_string(k));
    if (x.size(k) > kMaxDenseChains) throw TooLarge("dense homology basis limited to " + std::to_string(kMaxDenseChains) + " simplices");
    HomologyBasis hb;
    hb.degree = k;
    const std::size_t n = x.size(k);
    IntMatrix dk = k == 0 ? IntMatrix(0, n) : boundary_matrix(x, k).dense();
    SmithForm sf = smith_normal_form(dk);
    hb.boundary_rank = sf.rank;
    hb.v_inverse = unimodular_inverse(sf.V);
    SparseMatrix dk1 = boundary_matrix(x, k + 1);
    const std::size_t z = n - sf.rank;
    IntMatrix rel(dk1.cols, z);
    std::vector<Int> col(n);
    for (std::size_t c = 0; c < dk1.cols; ++c) {
        std::fill(col.begin(), col.end(), 0);
        for (auto [r, v] : dk1.columns[c]) col[r] = v;
        std::vector<Int> kc = hb.v_inverse * col;
        for (std::size_t i = 0; i < z; ++i) rel(c, i) = kc[sf.rank + i];
    }
    hb.presentation = abelian_group_from_relations(z, rel);
    return hb;
}

/// The map H_k(source) -> H_k(target) of a simplicial map.
inline GroupHom induced_homology_map(const SimplicialMap& f, std::size_t k) {
    HomologyBasis src = homology_basis(*f.source, k), tgt = homology_basis(*f.target, k);
    const FinAbGroup& sg = src.presentation.group;
    const FinAbGroup& tg = tgt.presentation.group;
    IntMatrix m(tg.rank(), sg.rank());
    IntMatrix v = unimodular_inverse(src.v_inverse);  // V: kernel coordinates -> chains
    const std::size_t n = f.source->size(k);
    for (std::size_t g = 0; g < sg.rank(); ++g) {
        // Lift of generator g: kernel coordinates, then a chain.
        std::vector<Int> kc(n, 0);
        for (std::size_t i = 0; i < src.presentation.lifts.rows(); ++i) kc[src.boundary_rank + i] = src.presentation.lifts(i, g);
        std::vector<Int> chain = v * kc;
        std::vector<Int> image(f.target->size(k), 0);
        for (std::size_t s = 0; s < n; ++s)
            if (chain[s] != 0) image[f.apply(k, s)] = checked_add(image[f.apply(k, s)], chain[s]);
        Coords c = tgt.class_of(image);
        for (std::size_t r = 0; r < tg.rank(); ++r) m(r, g) = c[r];
    }
    return GroupHom(sg, tg, std::move(m));
}

}  // namespace hermackey
