#pragma once

// Finite monoids with anti-involution.

#include <string>
#include <vector>

#include "hermackey/exactalg/fin_group.hpp"
#include "hermackey/exactalg/ring.hpp"

namespace hermackey {

class MonoidAI {
public:
    MonoidAI() = default;

    /// Validates associativity, w(mn) = w(n)w(m) and w^2 = id.
    MonoidAI(std::string name, std::vector<std::string> labels, std::vector<std::size_t> table, std::vector<std::size_t> w)
        : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)), w_(std::move(w)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw ValidationError("monoid " + name_ + " is empty");
        if (table_.size() != n * n || w_.size() != n) throw ValidationError("monoid " + name_ + ": table sizes do not match");
        for (std::size_t v : table_)
            if (v >= n) throw ValidationError("monoid " + name_ + ": table entry out of range");
        for (std::size_t v : w_)
            if (v >= n) throw ValidationError("monoid " + name_ + ": involution entry out of range");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ValidationError("monoid " + name_ + " is not associative at (" + labels_[a] + ", " + labels_[b] +
                                              ", " + labels_[c] + ")");
        for (std::size_t a = 0; a < n; ++a) {
            if (w_[w_[a]] != a) throw ValidationError("w is not an involution at " + labels_[a]);
            for (std::size_t b = 0; b < n; ++b)
                if (w_[mul(a, b)] != mul(w_[b], w_[a]))
                    throw ValidationError("w is not an anti-homomorphism at (" + labels_[a] + ", " + labels_[b] + ")");
        }
        for (std::size_t a = 0; a < n; ++a)
            if (w_[a] == a) fixed_.push_back(a);
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * labels_.size() + b]; }
    std::size_t w(std::size_t a) const { return w_[a]; }
    const std::string& label(std::size_t a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::size_t>& table() const { return table_; }
    const std::vector<std::size_t>& involution() const { return w_; }
    /// Elements with w(m) = m, in index order.
    const std::vector<std::size_t>& fixed() const { return fixed_; }

    bool operator==(const MonoidAI& o) const { return labels_ == o.labels_ && table_ == o.table_ && w_ == o.w_; }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> w_;
    std::vector<std::size_t> fixed_;
};

/// A group with the inversion anti-involution.
inline MonoidAI monoid_of_group(const FinGroup& g) { return MonoidAI(g.name(), g.labels(), g.table(), g.inversion()); }

/// A group with a chosen anti-involution.
inline MonoidAI monoid_of_group(const FinGroup& g, std::vector<std::size_t> w, std::string name) {
    return MonoidAI(std::move(name), g.labels(), g.table(), std::move(w));
}

/// Multiplicative monoid of a ring, with the ring's involution.
inline MonoidAI multiplicative_monoid(const FinRingInv& r, std::string name) {
    const std::size_t n = r.size();
    std::vector<std::string> labels;
    std::vector<std::size_t> table(n * n), w(n);
    for (Elem a = 0; a < n; ++a) {
        labels.push_back(r.format(a));
        w[a] = r.w(a);
        for (Elem b = 0; b < n; ++b) table[a * n + b] = r.mul(a, b);
    }
    return MonoidAI(std::move(name), std::move(labels), std::move(table), std::move(w));
}

/// S3 with g -> s g^{-1} s for the transposition s = (12).
inline MonoidAI twisted_s3() {
    FinGroup g = symmetric_group_3();
    const std::size_t s = g.index_of("(12)");
    std::vector<std::size_t> w(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) w[x] = g.mul(g.mul(s, g.inv(x)), s);
    return monoid_of_group(g, std::move(w), "S3tw");
}

}  // namespace hermackey
