#pragma once

// Truncated semi-simplicial sets, evaluated lazily: a level is a range of
// indices and faces are computed on demand. Nerves encode a simplex as a
// mixed-radix number, first coordinate most significant.

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"
#include "hermackey/exactalg/report.hpp"
#include "hermackey/realnerve/monoid.hpp"

namespace hermackey {

struct TruncationTooShallow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// real: w d_i = d_{p-i} w (a Z/2-diagram over the involution of Delta);
/// simplicial: w d_i = d_i w.
enum class InvolutionKind { none, real, simplicial };

class SSet {
public:
    virtual ~SSet() = default;
    virtual std::string name() const = 0;
    virtual std::size_t truncation() const = 0;
    virtual std::uint64_t size(std::size_t p) const = 0;
    /// d_i: X_p -> X_{p-1}, 0 <= i <= p, p >= 1.
    virtual std::uint64_t face(std::size_t p, std::size_t i, std::uint64_t x) const = 0;
    virtual InvolutionKind involution_kind() const { return InvolutionKind::none; }
    virtual std::uint64_t involution(std::size_t, std::uint64_t) const {
        throw std::logic_error(name() + " carries no involution");
    }
    virtual std::string label(std::size_t, std::uint64_t x) const { return std::to_string(x); }
    /// Indices x of level p with w(x) = x, increasing.
    virtual std::vector<std::uint64_t> fixed_points(std::size_t p) const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t x = 0; x < size(p); ++x)
            if (involution(p, x) == x) out.push_back(x);
        return out;
    }
};

using SSetPtr = std::shared_ptr<const SSet>;

/// Simplices summed over all levels above which builders refuse to work.
inline constexpr std::uint64_t kMaxSimplices = 200'000'000;

// ---------------------------------------------------------------------------
// Injective monotone maps [n] -> [k] and their involution.

struct Monotone {
    std::size_t k = 0;
    std::vector<std::size_t> values;  // alpha(0) < ... < alpha(n)
    std::size_t n() const { return values.size() - 1; }
    bool operator==(const Monotone&) const = default;
};

inline void validate_monotone(const Monotone& a) {
    if (a.values.empty()) throw ValidationError("a map [n] -> [k] needs n >= 0");
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] > a.k) throw ValidationError("value outside [k]");
        if (i && a.values[i] <= a.values[i - 1]) throw ValidationError("map is not injective monotone");
    }
}

/// alpha-bar(i) = k - alpha(n - i).
inline Monotone involute_morphism(const Monotone& a) {
    validate_monotone(a);
    Monotone b{a.k, std::vector<std::size_t>(a.values.size())};
    const std::size_t n = a.n();
    for (std::size_t i = 0; i <= n; ++i) b.values[i] = a.k - a.values[n - i];
    return b;
}

/// The coface d^i: [n-1] -> [n] missing i.
inline Monotone coface(std::size_t n, std::size_t i) {
    Monotone a{n, {}};
    for (std::size_t j = 0; j <= n; ++j)
        if (j != i) a.values.push_back(j);
    return a;
}

inline Monotone identity_monotone(std::size_t n) {
    Monotone a{n, std::vector<std::size_t>(n + 1)};
    std::iota(a.values.begin(), a.values.end(), 0);
    return a;
}

/// All injective monotone maps [n] -> [k].
inline std::vector<Monotone> monotone_maps(std::size_t n, std::size_t k) {
    std::vector<Monotone> out;
    if (n > k) return out;
    std::vector<std::size_t> v(n + 1);
    std::iota(v.begin(), v.end(), 0);
    for (;;) {
        out.push_back({k, v});
        std::size_t i = n + 1;
        while (i-- > 0 && v[i] == k - n + i) {
        }
        if (i > n) break;
        ++v[i];
        for (std::size_t j = i + 1; j <= n; ++j) v[j] = v[j - 1] + 1;
    }
    return out;
}

/// alpha^*: X_k -> X_n, as faces at the missed indices, largest first.
inline std::uint64_t apply_monotone(const SSet& x, const Monotone& a, std::uint64_t s) {
    std::vector<char> hit(a.k + 1, 0);
    for (auto v : a.values) hit[v] = 1;
    std::size_t level = a.k;
    for (std::size_t j = a.k + 1; j-- > 0;)
        if (!hit[j]) s = x.face(level--, j, s);
    return s;
}

// ---------------------------------------------------------------------------
// Nerves of a monoid with anti-involution.

enum class NerveKind {
    plain,     // N M: level p = M^p
    sigma,     // real nerve N^sigma M: level p = M^p
    dihedral,  // dihedral nerve N^di M: level p = M^{p+1}
    sym,       // nerve of sym M: level p = M^p x M^{Z/2}
    symcy      // two-sided bar construction: level p = M^{Z/2} x M^p x M^{Z/2}
};

class NerveSSet final : public SSet {
public:
    static constexpr std::size_t kMaxCoords = 40;

    NerveSSet(MonoidAI m, NerveKind kind, std::size_t T) : m_(std::move(m)), kind_(kind), T_(T) {
        fixpos_.assign(m_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < m_.fixed().size(); ++i) fixpos_[m_.fixed()[i]] = i;
        long double total = 0;
        for (std::size_t p = 0; p <= T_; ++p) {
            if (radices(p).size() > kMaxCoords) throw TooLarge("nerve truncation too deep");
            long double s = 1;
            for (auto r : radices(p)) s *= r;
            total += s;
            sizes_.push_back(static_cast<std::uint64_t>(s));
        }
        if (total > static_cast<long double>(kMaxSimplices))
            throw TooLarge(name() + " has more than " + std::to_string(kMaxSimplices) + " simplices");
    }

    const MonoidAI& monoid() const { return m_; }
    NerveKind kind() const { return kind_; }

    std::string name() const override {
        switch (kind_) {
            case NerveKind::plain: return "N(" + m_.name() + ")";
            case NerveKind::sigma: return "N^sigma(" + m_.name() + ")";
            case NerveKind::dihedral: return "N^di(" + m_.name() + ")";
            case NerveKind::sym: return "N(sym " + m_.name() + ")";
            case NerveKind::symcy: return "N(sym^cy " + m_.name() + ")";
        }
        return "";
    }
    std::size_t truncation() const override { return T_; }
    std::uint64_t size(std::size_t p) const override { return sizes_.at(p); }

    InvolutionKind involution_kind() const override {
        return kind_ == NerveKind::sigma || kind_ == NerveKind::dihedral ? InvolutionKind::real : InvolutionKind::none;
    }

    /// Coordinates of a simplex: monoid elements, fixed-set coordinates as
    /// monoid elements too.
    std::vector<std::size_t> decode(std::size_t p, std::uint64_t x) const {
        auto r = radices(p);
        std::vector<std::size_t> t(r.size());
        for (std::size_t j = r.size(); j-- > 0;) {
            t[j] = x % r[j];
            x /= r[j];
        }
        if (kind_ == NerveKind::sym) t.back() = m_.fixed()[t.back()];
        if (kind_ == NerveKind::symcy) {
            t.front() = m_.fixed()[t.front()];
            t.back() = m_.fixed()[t.back()];
        }
        return t;
    }

    std::uint64_t encode(std::size_t p, const std::size_t* t, std::size_t len) const {
        auto r = radices(p);
        if (len != r.size()) throw std::invalid_argument("tuple has the wrong length");
        std::uint64_t x = 0;
        for (std::size_t j = 0; j < len; ++j) {
            std::size_t v = t[j];
            const bool fixed_coord = (kind_ == NerveKind::sym && j + 1 == len) ||
                                     (kind_ == NerveKind::symcy && (j == 0 || j + 1 == len));
            if (fixed_coord) {
                v = fixpos_[v];
                if (v == SIZE_MAX) throw std::invalid_argument("coordinate is not fixed by w");
            }
            x = x * r[j] + v;
        }
        return x;
    }
    std::uint64_t encode(std::size_t p, const std::vector<std::size_t>& t) const { return encode(p, t.data(), t.size()); }

    std::uint64_t face(std::size_t p, std::size_t i, std::uint64_t x) const override {
        if (p == 0 || p > T_ || i > p) throw std::out_of_range("face index out of range");
        std::array<std::size_t, kMaxCoords> t{}, o{};
        auto r = radices(p);
        const std::size_t len = r.size();
        decode_into(p, x, t.data());
        std::size_t olen = 0;
        const MonoidAI& m = m_;
        switch (kind_) {
            case NerveKind::plain:
            case NerveKind::sigma:
                // (m_1..m_p): d_0, d_p drop; d_i multiplies m_i m_{i+1}.
                for (std::size_t j = 0; j < len; ++j) {
                    if ((i == 0 && j == 0) || (i == p && j + 1 == len)) continue;
                    if (i > 0 && i < p && j == i - 1) {
                        o[olen++] = m.mul(t[j], t[j + 1]);
                        ++j;
                        continue;
                    }
                    o[olen++] = t[j];
                }
                break;
            case NerveKind::dihedral:
                // (m_0..m_p): d_i multiplies m_i m_{i+1} for i < p; d_p = (m_p m_0, m_1..m_{p-1}).
                if (i < p) {
                    for (std::size_t j = 0; j < len; ++j) {
                        if (j == i) {
                            o[olen++] = m.mul(t[j], t[j + 1]);
                            ++j;
                        } else {
                            o[olen++] = t[j];
                        }
                    }
                } else {
                    o[olen++] = m.mul(t[p], t[0]);
                    for (std::size_t j = 1; j < p; ++j) o[olen++] = t[j];
                }
                break;
            case NerveKind::sym: {
                // (m_1..m_p, c): d_p = (m_1..m_{p-1}, m_p c w(m_p)).
                const std::size_t c = t[len - 1];
                if (i == p) {
                    for (std::size_t j = 0; j + 2 < len; ++j) o[olen++] = t[j];
                    o[olen++] = m.mul(m.mul(t[p - 1], c), m.w(t[p - 1]));
                } else {
                    for (std::size_t j = 0; j + 1 < len; ++j) {
                        if (i == 0 && j == 0) continue;
                        if (i > 0 && j == i - 1) {
                            o[olen++] = m.mul(t[j], t[j + 1]);
                            ++j;
                            continue;
                        }
                        o[olen++] = t[j];
                    }
                    o[olen++] = c;
                }
                break;
            }
            case NerveKind::symcy: {
                // (a, m_1..m_p, c): d_0 = (w(m_1) a m_1, m_2.., c); d_p = (a, .., m_p c w(m_p)).
                const std::size_t a = t[0], c = t[len - 1];
                if (i == 0) {
                    o[olen++] = m.mul(m.mul(m.w(t[1]), a), t[1]);
                    for (std::size_t j = 2; j < len; ++j) o[olen++] = t[j];
                } else if (i == p) {
                    for (std::size_t j = 0; j + 2 < len; ++j) o[olen++] = t[j];
                    o[olen++] = m.mul(m.mul(t[p], c), m.w(t[p]));
                } else {
                    for (std::size_t j = 0; j < len; ++j) {
                        if (j == i) {
                            o[olen++] = m.mul(t[j], t[j + 1]);
                            ++j;
                            continue;
                        }
                        o[olen++] = t[j];
                    }
                }
                break;
            }
        }
        return encode(p - 1, o.data(), olen);
    }

    std::uint64_t involution(std::size_t p, std::uint64_t x) const override {
        std::array<std::size_t, kMaxCoords> t{}, o{};
        const std::size_t len = radices(p).size();
        decode_into(p, x, t.data());
        if (kind_ == NerveKind::sigma) {
            for (std::size_t j = 0; j < len; ++j) o[j] = m_.w(t[len - 1 - j]);
        } else if (kind_ == NerveKind::dihedral) {
            o[0] = m_.w(t[0]);
            for (std::size_t j = 1; j < len; ++j) o[j] = m_.w(t[len - j]);
        } else {
            return SSet::involution(p, x);
        }
        return encode(p, o.data(), len);
    }

    /// Exhaustive scan with the w-index updated digit by digit.
    std::vector<std::uint64_t> fixed_points(std::size_t p) const override {
        if (involution_kind() == InvolutionKind::none) return SSet::fixed_points(p);
        const std::size_t len = radices(p).size();
        const std::int64_t n = static_cast<std::int64_t>(m_.size());
        // Weight of coordinate j inside the index of w(t).
        std::vector<std::int64_t> pow(len + 1, 1), weight(len);
        for (std::size_t j = 1; j <= len; ++j) pow[j] = pow[j - 1] * n;
        for (std::size_t j = 0; j < len; ++j) {
            if (kind_ == NerveKind::sigma)
                weight[j] = pow[j];
            else
                weight[j] = j == 0 ? pow[len - 1] : pow[j - 1];
        }
        std::vector<std::size_t> t(len, 0);
        std::int64_t widx = 0;
        for (std::size_t j = 0; j < len; ++j) widx += static_cast<std::int64_t>(m_.w(0)) * weight[j];
        std::vector<std::uint64_t> out;
        const std::uint64_t total = size(p);
        for (std::uint64_t x = 0; x < total; ++x) {
            if (static_cast<std::uint64_t>(widx) == x) out.push_back(x);
            for (std::size_t j = len; j-- > 0;) {
                const std::size_t old = t[j];
                t[j] = old + 1 < m_.size() ? old + 1 : 0;
                widx += (static_cast<std::int64_t>(m_.w(t[j])) - static_cast<std::int64_t>(m_.w(old))) * weight[j];
                if (t[j] != 0) break;
            }
        }
        return out;
    }

    std::string label(std::size_t p, std::uint64_t x) const override {
        auto t = decode(p, x);
        std::string s = "(";
        for (std::size_t j = 0; j < t.size(); ++j) s += (j ? "," : "") + m_.label(t[j]);
        return s + ")";
    }

private:
    std::vector<std::uint64_t> radices(std::size_t p) const {
        const std::uint64_t n = m_.size(), f = m_.fixed().size();
        switch (kind_) {
            case NerveKind::plain:
            case NerveKind::sigma: return std::vector<std::uint64_t>(p, n);
            case NerveKind::dihedral: return std::vector<std::uint64_t>(p + 1, n);
            case NerveKind::sym: {
                std::vector<std::uint64_t> r(p, n);
                r.push_back(f);
                return r;
            }
            case NerveKind::symcy: {
                std::vector<std::uint64_t> r{f};
                r.insert(r.end(), p, n);
                r.push_back(f);
                return r;
            }
        }
        return {};
    }

    void decode_into(std::size_t p, std::uint64_t x, std::size_t* t) const {
        auto v = decode(p, x);
        std::copy(v.begin(), v.end(), t);
    }

    MonoidAI m_;
    NerveKind kind_;
    std::size_t T_;
    std::vector<std::size_t> fixpos_;
    std::vector<std::uint64_t> sizes_;
};

inline std::shared_ptr<const NerveSSet> group_nerve(const MonoidAI& m, std::size_t T) {
    return std::make_shared<NerveSSet>(m, NerveKind::plain, T);
}
inline std::shared_ptr<const NerveSSet> group_nerve(const FinGroup& g, std::size_t T) {
    return group_nerve(monoid_of_group(g), T);
}
inline std::shared_ptr<const NerveSSet> real_nerve(const MonoidAI& m, std::size_t T) {
    return std::make_shared<NerveSSet>(m, NerveKind::sigma, T);
}
inline std::shared_ptr<const NerveSSet> dihedral_nerve(const MonoidAI& m, std::size_t T) {
    return std::make_shared<NerveSSet>(m, NerveKind::dihedral, T);
}
inline std::shared_ptr<const NerveSSet> sym_nerve(const MonoidAI& m, std::size_t T) {
    return std::make_shared<NerveSSet>(m, NerveKind::sym, T);
}
inline std::shared_ptr<const NerveSSet> symcy_nerve(const MonoidAI& m, std::size_t T) {
    return std::make_shared<NerveSSet>(m, NerveKind::symcy, T);
}

// ---------------------------------------------------------------------------
// Edgewise subdivision and fixed points.

/// sd_e X: level n is X_{2n+1}; d_i acts as d_i d_{2n+1-i}, the map induced
/// by [n-1] + [n-1]^op -> [n] + [n]^op.
class SubdividedSSet final : public SSet {
public:
    SubdividedSSet(SSetPtr x, std::size_t levels) : x_(std::move(x)), P_(levels) {
        if (x_->involution_kind() != InvolutionKind::real)
            throw std::invalid_argument("edgewise subdivision needs a real semi-simplicial set");
        if (2 * P_ + 1 > x_->truncation())
            throw TruncationTooShallow("level " + std::to_string(P_) + " of sd_e needs truncation >= " +
                                       std::to_string(2 * P_ + 1) + ", have " + std::to_string(x_->truncation()));
    }
    const SSetPtr& base() const { return x_; }
    std::string name() const override { return "sd_e " + x_->name(); }
    std::size_t truncation() const override { return P_; }
    std::uint64_t size(std::size_t n) const override { return x_->size(2 * n + 1); }
    std::uint64_t face(std::size_t n, std::size_t i, std::uint64_t s) const override {
        if (n == 0 || i > n) throw std::out_of_range("face index out of range");
        return x_->face(2 * n, i, x_->face(2 * n + 1, 2 * n + 1 - i, s));
    }
    InvolutionKind involution_kind() const override { return InvolutionKind::simplicial; }
    std::uint64_t involution(std::size_t n, std::uint64_t s) const override { return x_->involution(2 * n + 1, s); }
    std::vector<std::uint64_t> fixed_points(std::size_t n) const override { return x_->fixed_points(2 * n + 1); }
    std::string label(std::size_t n, std::uint64_t s) const override { return x_->label(2 * n + 1, s); }

private:
    SSetPtr x_;
    std::size_t P_;
};

/// Subdivides up to the deepest level the truncation allows.
inline std::shared_ptr<const SubdividedSSet> edgewise_subdivide(const SSetPtr& x) {
    if (x->truncation() < 1) throw TruncationTooShallow("edgewise subdivision needs truncation >= 1");
    return std::make_shared<SubdividedSSet>(x, (x->truncation() - 1) / 2);
}
inline std::shared_ptr<const SubdividedSSet> edgewise_subdivide(const SSetPtr& x, std::size_t levels) {
    return std::make_shared<SubdividedSSet>(x, levels);
}

/// A sub-semi-simplicial set given by sorted index lists, closed under faces.
class SubSSet final : public SSet {
public:
    SubSSet(SSetPtr base, std::vector<std::vector<std::uint64_t>> members, std::string name)
        : base_(std::move(base)), members_(std::move(members)), name_(std::move(name)) {
        for (std::size_t p = 1; p < members_.size(); ++p)
            for (auto x : members_[p])
                for (std::size_t i = 0; i <= p; ++i)
                    if (!contains(p - 1, base_->face(p, i, x)))
                        throw std::logic_error(name_ + " is not closed under faces");
    }
    const SSetPtr& base() const { return base_; }
    std::string name() const override { return name_; }
    std::size_t truncation() const override { return members_.size() - 1; }
    std::uint64_t size(std::size_t p) const override { return members_.at(p).size(); }
    std::uint64_t face(std::size_t p, std::size_t i, std::uint64_t k) const override {
        return position(p - 1, base_->face(p, i, members_[p][k]));
    }
    std::string label(std::size_t p, std::uint64_t k) const override { return base_->label(p, members_[p][k]); }

    /// Index in the base of the k-th simplex of level p.
    std::uint64_t inclusion(std::size_t p, std::uint64_t k) const { return members_[p][k]; }
    bool contains(std::size_t p, std::uint64_t x) const {
        return std::binary_search(members_[p].begin(), members_[p].end(), x);
    }
    std::uint64_t position(std::size_t p, std::uint64_t x) const {
        auto it = std::lower_bound(members_[p].begin(), members_[p].end(), x);
        if (it == members_[p].end() || *it != x) throw std::out_of_range("simplex not in " + name_);
        return static_cast<std::uint64_t>(it - members_[p].begin());
    }

private:
    SSetPtr base_;
    std::vector<std::vector<std::uint64_t>> members_;
    std::string name_;
};

/// Levelwise fixed points of a simplicial involution, faces restricted.
inline std::shared_ptr<const SubSSet> fixed_simplices(const SSetPtr& y) {
    if (y->involution_kind() != InvolutionKind::simplicial)
        throw std::invalid_argument("fixed_simplices needs a simplicial involution, got " + y->name());
    std::vector<std::vector<std::uint64_t>> members;
    for (std::size_t p = 0; p <= y->truncation(); ++p) members.push_back(y->fixed_points(p));
    return std::make_shared<SubSSet>(y, std::move(members), "(" + y->name() + ")^Z/2");
}

/// A semi-simplicial set given by explicit tables.
class TableSSet final : public SSet {
public:
    TableSSet(std::string name, std::vector<std::uint64_t> sizes,
              std::vector<std::vector<std::vector<std::uint64_t>>> faces)  // faces[p][i][x], faces[0] empty
        : name_(std::move(name)), sizes_(std::move(sizes)), faces_(std::move(faces)) {
        if (sizes_.empty() || faces_.size() != sizes_.size()) throw std::invalid_argument("table sset shape mismatch");
        for (std::size_t p = 1; p < sizes_.size(); ++p) {
            if (faces_[p].size() != p + 1) throw std::invalid_argument("level " + std::to_string(p) + " needs p+1 faces");
            for (const auto& f : faces_[p]) {
                if (f.size() != sizes_[p]) throw std::invalid_argument("face table has the wrong length");
                for (auto v : f)
                    if (v >= sizes_[p - 1]) throw std::invalid_argument("face value out of range");
            }
        }
    }
    std::string name() const override { return name_; }
    std::size_t truncation() const override { return sizes_.size() - 1; }
    std::uint64_t size(std::size_t p) const override { return sizes_.at(p); }
    std::uint64_t face(std::size_t p, std::size_t i, std::uint64_t x) const override { return faces_[p][i][x]; }

private:
    std::string name_;
    std::vector<std::uint64_t> sizes_;
    std::vector<std::vector<std::vector<std::uint64_t>>> faces_;
};

/// One vertex and nothing above it, truncated at T.
inline SSetPtr point_sset(std::size_t T) {
    std::vector<std::uint64_t> sizes(T + 1, 0);
    sizes[0] = 1;
    std::vector<std::vector<std::vector<std::uint64_t>>> faces(T + 1);
    for (std::size_t p = 1; p <= T; ++p) faces[p].assign(p + 1, {});
    return std::make_shared<TableSSet>("pt", std::move(sizes), std::move(faces));
}

// ---------------------------------------------------------------------------
// Structural checks.

namespace detail {

inline std::string simplex_name(const SSet& x, std::size_t p, std::uint64_t s) {
    return x.label(p, s) + " in level " + std::to_string(p);
}

}  // namespace detail

/// d_i d_j = d_{j-1} d_i for i < j on every level.
inline CheckResult check_semi_simplicial(const SSet& x) {
    CheckResult res("semi-simplicial identities");
    for (std::size_t p = 2; p <= x.truncation(); ++p)
        for (std::uint64_t s = 0; s < x.size(p); ++s)
            for (std::size_t j = 1; j <= p; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    ++res.cases;
                    if (x.face(p - 1, i, x.face(p, j, s)) != x.face(p - 1, j - 1, x.face(p, i, s))) {
                        res.passed = false;
                        res.witness = "d" + std::to_string(i) + " d" + std::to_string(j) + " on " + detail::simplex_name(x, p, s);
                        return res;
                    }
                }
    return res;
}

/// w^2 = id and w alpha^* = alpha-bar^* w for every injective monotone alpha.
inline CheckResult check_real_structure(const SSet& x) {
    CheckResult res("real structure");
    if (x.involution_kind() != InvolutionKind::real) {
        res.passed = false;
        res.witness = x.name() + " is not real";
        return res;
    }
    for (std::size_t k = 0; k <= x.truncation(); ++k) {
        std::vector<std::pair<Monotone, Monotone>> maps;
        for (std::size_t n = 0; n <= k; ++n)
            for (auto& a : monotone_maps(n, k)) maps.emplace_back(a, involute_morphism(a));
        for (std::uint64_t s = 0; s < x.size(k); ++s) {
            ++res.cases;
            const std::uint64_t ws = x.involution(k, s);
            if (x.involution(k, ws) != s) {
                res.passed = false;
                res.witness = "w^2 != id on " + detail::simplex_name(x, k, s);
                return res;
            }
            for (const auto& [a, abar] : maps) {
                ++res.cases;
                if (x.involution(a.n(), apply_monotone(x, a, s)) != apply_monotone(x, abar, ws)) {
                    res.passed = false;
                    res.witness = "w alpha^* != alpha-bar^* w on " + detail::simplex_name(x, k, s);
                    return res;
                }
            }
        }
    }
    return res;
}

/// w^2 = id and w d_i = d_i w.
inline CheckResult check_simplicial_involution(const SSet& x) {
    CheckResult res("simplicial involution");
    if (x.involution_kind() != InvolutionKind::simplicial) {
        res.passed = false;
        res.witness = x.name() + " has no simplicial involution";
        return res;
    }
    for (std::size_t p = 0; p <= x.truncation(); ++p)
        for (std::uint64_t s = 0; s < x.size(p); ++s) {
            ++res.cases;
            const std::uint64_t ws = x.involution(p, s);
            if (x.involution(p, ws) != s) {
                res.passed = false;
                res.witness = "w^2 != id on " + detail::simplex_name(x, p, s);
                return res;
            }
            for (std::size_t i = 0; p > 0 && i <= p; ++i) {
                ++res.cases;
                if (x.involution(p - 1, x.face(p, i, s)) != x.face(p, i, ws)) {
                    res.passed = false;
                    res.witness = "w d" + std::to_string(i) + " != d" + std::to_string(i) + " w on " +
                                  detail::simplex_name(x, p, s);
                    return res;
                }
            }
        }
    return res;
}

// ---------------------------------------------------------------------------
// Maps.

struct SimplicialMap {
    std::string name;
    SSetPtr source;
    SSetPtr target;
    std::function<std::uint64_t(std::size_t, std::uint64_t)> apply;  // (level, simplex) -> simplex
};

/// f d_i = d_i f on every level both ends have.
inline CheckResult check_commutes_with_faces(const SimplicialMap& f) {
    CheckResult res(f.name + " commutes with faces");
    const std::size_t T = std::min(f.source->truncation(), f.target->truncation());
    for (std::size_t p = 1; p <= T; ++p)
        for (std::uint64_t s = 0; s < f.source->size(p); ++s) {
            const std::uint64_t fs = f.apply(p, s);
            for (std::size_t i = 0; i <= p; ++i) {
                ++res.cases;
                if (f.apply(p - 1, f.source->face(p, i, s)) != f.target->face(p, i, fs)) {
                    res.passed = false;
                    res.witness = "d" + std::to_string(i) + " on " + detail::simplex_name(*f.source, p, s);
                    return res;
                }
            }
        }
    return res;
}

/// f w = w f on every level.
inline CheckResult check_equivariant(const SimplicialMap& f) {
    CheckResult res(f.name + " is equivariant");
    const std::size_t T = std::min(f.source->truncation(), f.target->truncation());
    for (std::size_t p = 0; p <= T; ++p)
        for (std::uint64_t s = 0; s < f.source->size(p); ++s) {
            ++res.cases;
            if (f.apply(p, f.source->involution(p, s)) != f.target->involution(p, f.apply(p, s))) {
                res.passed = false;
                res.witness = detail::simplex_name(*f.source, p, s);
                return res;
            }
        }
    return res;
}

inline SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {  // g after f
    auto fa = f.apply, ga = g.apply;
    return {g.name + " o " + f.name, f.source, g.target,
            [fa, ga](std::size_t p, std::uint64_t s) { return ga(p, fa(p, s)); }};
}

/// The inclusion of a sub-semi-simplicial set.
inline SimplicialMap inclusion_map(const std::shared_ptr<const SubSSet>& sub) {
    return {"inclusion", sub, sub->base(), [sub](std::size_t p, std::uint64_t k) { return sub->inclusion(p, k); }};
}

/// sd_e X -> X induced by the first summand [n] -> [n] + [n]^op = [2n+1].
inline SimplicialMap first_half_map(const std::shared_ptr<const SubdividedSSet>& y) {
    SSetPtr x = y->base();
    return {"restriction to [n]", y, x, [x](std::size_t n, std::uint64_t s) {
                for (std::size_t j = 2 * n + 1; j > n; --j) s = x->face(j, j, s);
                return s;
            }};
}

}  // namespace hermackey
