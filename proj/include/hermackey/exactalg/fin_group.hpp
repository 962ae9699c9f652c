#pragma once

// Finite groups given by multiplication tables, with the small catalog used
// throughout (cyclic, dihedral, S3, Q8) and conjugacy/centralizer utilities.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"

namespace hermackey {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FinGroup {
public:
    FinGroup() = default;

    /// Validates the table (closure, associativity, identity, inverses).
    FinGroup(std::string name, std::vector<std::string> labels, std::vector<std::size_t> table)
        : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw ValidationError("group must be nonempty");
        if (table_.size() != n * n) throw ValidationError("multiplication table must have n^2 entries");
        for (auto v : table_)
            if (v >= n) throw ValidationError("multiplication table entry out of range");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ValidationError("multiplication is not associative at (" + labels_[a] + "," +
                                              labels_[b] + "," + labels_[c] + ")");
        identity_ = n;
        for (std::size_t e = 0; e < n && identity_ == n; ++e) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
            if (ok) identity_ = e;
        }
        if (identity_ == n) throw ValidationError("no identity element");
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
        for (auto v : inverse_)
            if (v == n) throw ValidationError("some element has no inverse");
    }

    const std::string& name() const { return name_; }
    std::size_t order() const { return labels_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * labels_.size() + b]; }
    std::size_t inv(std::size_t a) const { return inverse_[a]; }
    std::size_t identity() const { return identity_; }
    const std::string& label(std::size_t a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::size_t>& table() const { return table_; }

    std::size_t index_of(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw std::invalid_argument("unknown group element " + label);
        return static_cast<std::size_t>(it - labels_.begin());
    }

    std::vector<std::size_t> inversion() const { return inverse_; }

    bool is_abelian() const {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < order(); ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool operator==(const FinGroup& o) const { return labels_ == o.labels_ && table_ == o.table_; }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
};

/// tau(gh) = tau(h) tau(g) and tau^2 = id.
inline bool is_anti_involution(const FinGroup& g, const std::vector<std::size_t>& tau) {
    if (tau.size() != g.order()) return false;
    for (std::size_t a = 0; a < g.order(); ++a) {
        if (tau[a] >= g.order() || tau[tau[a]] != a) return false;
        for (std::size_t b = 0; b < g.order(); ++b)
            if (tau[g.mul(a, b)] != g.mul(tau[b], tau[a])) return false;
    }
    return true;
}

/// Group generated by permutations of {0..d-1}; elements sorted
/// lexicographically as images, so the identity comes first.
inline FinGroup group_from_permutations(std::string name, const std::vector<std::vector<std::size_t>>& gens,
                                        std::size_t degree) {
    using Perm = std::vector<std::size_t>;
    for (const auto& p : gens) {
        if (p.size() != degree) throw ValidationError("permutation has wrong degree");
        Perm sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < degree; ++i)
            if (sorted[i] != i) throw ValidationError("generator is not a permutation");
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, std::size_t> seen{{id, 0}};
    std::vector<Perm> frontier{id};
    // (p*q)(i) = p(q(i)): apply q first.
    auto compose = [&](const Perm& p, const Perm& q) {
        Perm r(degree);
        for (std::size_t i = 0; i < degree; ++i) r[i] = p[q[i]];
        return r;
    };
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Perm q = compose(p, g);
                if (seen.emplace(q, 0).second) next.push_back(q);
            }
        frontier = std::move(next);
        if (seen.size() > 5000) throw TooLarge("permutation group too large");
    }
    std::vector<Perm> elems;
    for (auto& [p, _] : seen) elems.push_back(p);
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    std::vector<std::string> labels;
    for (const auto& p : elems) {
        std::string s = "[";
        for (std::size_t i = 0; i < degree; ++i) s += (i ? " " : "") + std::to_string(p[i]);
        labels.push_back(s + "]");
    }
    const std::size_t n = elems.size();
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
    return FinGroup(std::move(name), std::move(labels), std::move(table));
}

inline FinGroup cyclic_group(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "e" : "g" + (i == 1 ? std::string() : "^" + std::to_string(i)));
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
    return FinGroup(n == 1 ? "1" : "Z/" + std::to_string(n), std::move(labels), std::move(table));
}

inline FinGroup trivial_group() { return cyclic_group(1); }

/// Dihedral group of order 2n: elements r^k (index k) and s r^k (index n+k).
inline FinGroup dihedral_group(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) labels.push_back(k == 0 ? "e" : "r" + (k == 1 ? std::string() : "^" + std::to_string(k)));
    for (std::size_t k = 0; k < n; ++k) labels.push_back(k == 0 ? "s" : "sr" + (k == 1 ? std::string() : "^" + std::to_string(k)));
    // r^a r^b = r^(a+b); r^a s r^b = s r^(b-a); s r^a r^b = s r^(a+b); s r^a s r^b = r^(b-a)
    const std::size_t m = 2 * n;
    std::vector<std::size_t> table(m * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            std::size_t a = x % n, b = y % n;
            bool sx = x >= n, sy = y >= n;
            std::size_t k = sy ? (b + n - a) % n : (a + b) % n;
            table[x * m + y] = (sx != sy ? n : 0) + k;
        }
    return FinGroup("D" + std::to_string(n), std::move(labels), std::move(table));
}

inline FinGroup symmetric_group_3() {
    // Labels follow cycle notation on {1,2,3}; composition applies the right factor first.
    std::vector<std::vector<std::size_t>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    std::vector<std::size_t> table(36);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::vector<std::size_t> c(3);
            for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            table[a * 6 + b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return FinGroup("S3", std::move(labels), std::move(table));
}

inline FinGroup quaternion_group() {
    // Elements (sign, unit) with unit in {1,i,j,k}; index = 4*sign + unit.
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::string> labels = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
    std::vector<std::size_t> table(64);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            std::size_t ux = x % 4, uy = y % 4;
            std::size_t sign = (x / 4 + y / 4 + unit_sign[ux][uy]) % 2;
            table[x * 8 + y] = 4 * sign + unit_mul[ux][uy];
        }
    return FinGroup("Q8", std::move(labels), std::move(table));
}

/// Subgroup on the given (closed) element set, relabelled in ascending index order.
inline FinGroup subgroup_on(const FinGroup& g, std::vector<std::size_t> elems, std::string name) {
    std::sort(elems.begin(), elems.end());
    std::vector<std::size_t> pos(g.order(), g.order());
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
    std::vector<std::string> labels;
    for (auto e : elems) labels.push_back(g.label(e));
    const std::size_t n = elems.size();
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t p = pos[g.mul(elems[a], elems[b])];
            if (p == g.order()) throw ValidationError("element set is not closed under multiplication");
            table[a * n + b] = p;
        }
    return FinGroup(std::move(name), std::move(labels), std::move(table));
}

inline FinGroup centralizer(const FinGroup& g, std::size_t x) {
    std::vector<std::size_t> elems;
    for (std::size_t h = 0; h < g.order(); ++h)
        if (g.mul(h, x) == g.mul(x, h)) elems.push_back(h);
    return subgroup_on(g, elems, "Z(" + g.label(x) + ")");
}

struct InvolutionClass {
    std::size_t representative;
    std::size_t size;
    FinGroup centralizer;
    std::vector<std::size_t> members;
};

/// Conjugacy classes of elements with g^2 = 1 (identity included), ordered
/// by smallest member index; the representative is that smallest member.
inline std::vector<InvolutionClass> involution_classes(const FinGroup& g) {
    std::vector<bool> done(g.order(), false);
    std::vector<InvolutionClass> out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (done[x] || g.mul(x, x) != g.identity()) continue;
        std::vector<std::size_t> cls;
        for (std::size_t h = 0; h < g.order(); ++h) {
            std::size_t c = g.mul(g.mul(h, x), g.inv(h));
            if (!done[c]) {
                done[c] = true;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back({x, cls.size(), centralizer(g, x), cls});
    }
    return out;
}

/// Abelianization as the cokernel of the relations [g] + [h] - [gh].
inline Presentation abelianization(const FinGroup& g) {
    const std::size_t n = g.order();
    IntMatrix rel(n * n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t r = a * n + b;
            rel(r, a) += 1;
            rel(r, b) += 1;
            rel(r, g.mul(a, b)) -= 1;
        }
    return abelian_group_from_relations(n, rel);
}

}  // namespace hermackey
