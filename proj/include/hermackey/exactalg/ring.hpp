#pragma once

// Finite rings with anti-involution, given by structure constants over a
// finite abelian group, plus square matrices over them.

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"
#include "hermackey/exactalg/fin_group.hpp"
#include "hermackey/exactalg/report.hpp"

namespace hermackey {

struct NotUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidAntiInvolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_coords(const Coords& x) {
    if (x.size() == 1) return std::to_string(x[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

class FinRingInv {
public:
    /// Rings up to this size get a full multiplication table.
    static constexpr std::uint64_t kTableLimit = 1024;

    FinRingInv() = default;

    /// structure[(i*k + j)*k + t] is coordinate t of e_i * e_j; w acts on coordinates.
    FinRingInv(std::string name, FinAbGroup additive, std::vector<Int> structure, Coords one, IntMatrix w) {
        auto d = std::make_shared<Data>();
        d->name = std::move(name);
        d->add = std::move(additive);
        const std::size_t k = d->add.rank();
        if (!d->add.enumerable()) throw TooLarge("ring carrier must be finite and enumerable");
        if (structure.size() != k * k * k) throw ValidationError("structure constants must have k^3 entries");
        d->structure = std::move(structure);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t t = 0; t < k; ++t) {
                    Int& c = d->structure[(i * k + j) * k + t];
                    c = mod_reduce(c, d->add.order(t));
                    // e_i*e_j must be killed by the orders of e_i and e_j.
                    if (mod_reduce(checked_mul(c, d->add.order(i)), d->add.order(t)) != 0 ||
                        mod_reduce(checked_mul(c, d->add.order(j)), d->add.order(t)) != 0)
                        throw ValidationError("multiplication is not well defined on the additive group");
                }
        d->one = d->add.encode(one);
        d->w = GroupHom(d->add, d->add, std::move(w));
        if (!d->w.well_defined()) throw ValidationError("involution matrix does not respect the additive orders");
        const std::uint64_t n = d->add.size();
        d->w_table.resize(n);
        for (std::uint64_t e = 0; e < n; ++e) d->w_table[e] = d->w.apply(static_cast<Elem>(e));
        d_ = std::move(d);
        if (n <= kTableLimit) {
            auto table = std::vector<Elem>(n * n);
            for (std::uint64_t a = 0; a < n; ++a)
                for (std::uint64_t b = 0; b < n; ++b)
                    table[a * n + b] = mul_slow(static_cast<Elem>(a), static_cast<Elem>(b));
            std::const_pointer_cast<Data>(d_)->mul_table = std::move(table);
        }
    }

    const std::string& name() const { return d_->name; }
    const FinAbGroup& additive() const { return d_->add; }
    std::size_t rank() const { return d_->add.rank(); }
    std::uint64_t size() const { return d_->add.size(); }
    const std::vector<Int>& structure() const { return d_->structure; }
    const GroupHom& involution() const { return d_->w; }

    Elem zero() const { return 0; }
    Elem one() const { return d_->one; }
    Elem add(Elem a, Elem b) const { return d_->add.add(a, b); }
    Elem sub(Elem a, Elem b) const { return d_->add.sub(a, b); }
    Elem neg(Elem a) const { return d_->add.neg(a); }
    Elem w(Elem a) const { return d_->w_table[a]; }

    Elem mul(Elem a, Elem b) const {
        if (!d_->mul_table.empty()) return d_->mul_table[std::uint64_t(a) * d_->w_table.size() + b];
        return mul_slow(a, b);
    }

    Coords mul(const Coords& x, const Coords& y) const {
        const std::size_t k = rank();
        Coords z(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (y[j] == 0) continue;
                const Int xy = x[i] * y[j];
                const Int* c = &d_->structure[(i * k + j) * k];
                for (std::size_t t = 0; t < k; ++t)
                    if (c[t]) z[t] += xy * c[t];
            }
        }
        return d_->add.reduce(std::move(z));
    }

    Coords coords(Elem a) const { return d_->add.decode(a); }
    Elem elem(const Coords& x) const { return d_->add.encode(x); }
    std::string format(Elem a) const { return format_coords(coords(a)); }

    /// Two-sided inverse via the linear system a*x = 1, then x*a = 1 is checked.
    std::optional<Elem> inverse(Elem a) const {
        const std::size_t k = rank();
        IntMatrix left(k, k);
        const Coords xa = coords(a);
        for (std::size_t s = 0; s < k; ++s) {
            Coords es(k, 0);
            es[s] = 1;
            Coords p = mul(xa, es);
            for (std::size_t t = 0; t < k; ++t) left(t, s) = p[t];
        }
        auto sol = solve_mod(left, coords(one()), additive().orders());
        if (!sol) return std::nullopt;
        Elem x = elem(*sol);
        if (mul(x, a) != one() || mul(a, x) != one()) return std::nullopt;
        return x;
    }
    bool is_unit(Elem a) const { return inverse(a).has_value(); }

    std::vector<Elem> units() const {
        std::vector<Elem> u;
        for (std::uint64_t a = 0; a < size(); ++a)
            if (is_unit(static_cast<Elem>(a))) u.push_back(static_cast<Elem>(a));
        return u;
    }

    bool is_commutative() const {
        const std::size_t k = rank();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t t = 0; t < k; ++t)
                    if (d_->structure[(i * k + j) * k + t] != d_->structure[(j * k + i) * k + t]) return false;
        return true;
    }

    /// Same carrier and multiplication, different involution.
    FinRingInv with_involution(IntMatrix w, std::string name) const {
        return FinRingInv(std::move(name), d_->add, d_->structure, coords(one()), std::move(w));
    }

    bool operator==(const FinRingInv& o) const {
        return d_->add == o.d_->add && d_->structure == o.d_->structure && d_->one == o.d_->one &&
               d_->w.matrix() == o.d_->w.matrix();
    }

private:
    Elem mul_slow(Elem a, Elem b) const { return elem(mul(coords(a), coords(b))); }

    struct Data {
        std::string name;
        FinAbGroup add;
        std::vector<Int> structure;
        Elem one = 0;
        GroupHom w;
        std::vector<Elem> w_table;
        std::vector<Elem> mul_table;
    };
    std::shared_ptr<const Data> d_;
};

inline FinRingInv zmod(Int m) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    return FinRingInv("Z/" + std::to_string(m), FinAbGroup({m}), {1}, {1}, IntMatrix{{1}});
}

/// M_n(R) with the involution (A^*)_ij = w(A_ji). Coordinate block of entry
/// (i,j) starts at (i*n + j)*k.
inline FinRingInv matrix_ring(const FinRingInv& r, std::size_t n) {
    const std::size_t k = r.rank();
    const std::size_t K = n * n * k;
    std::vector<FinAbGroup> parts(n * n, r.additive());
    FinAbGroup add = FinAbGroup::direct_sum(parts);
    std::vector<Int> st(K * K * K, 0);
    const auto& rs = r.structure();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t s = 0; s < k; ++s)
                    for (std::size_t t = 0; t < k; ++t) {
                        std::size_t a = (i * n + j) * k + s, b = (j * n + l) * k + t;
                        for (std::size_t u = 0; u < k; ++u)
                            st[(a * K + b) * K + (i * n + l) * k + u] = rs[(s * k + t) * k + u];
                    }
    Coords one(K, 0);
    Coords r1 = r.coords(r.one());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t u = 0; u < k; ++u) one[(i * n + i) * k + u] = r1[u];
    IntMatrix w(K, K);
    const IntMatrix& rw = r.involution().matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t t = 0; t < k; ++t) w((j * n + i) * k + t, (i * n + j) * k + s) = rw(t, s);
    return FinRingInv("M" + std::to_string(n) + "(" + r.name() + ")", add, std::move(st), one, std::move(w));
}

/// R[pi] with w(r g) = w(r) tau(g). Coordinate block of g starts at g*k.
inline FinRingInv group_algebra(const FinRingInv& r, const FinGroup& pi, const std::vector<std::size_t>& tau) {
    if (!is_anti_involution(pi, tau)) throw InvalidAntiInvolution("tau is not an anti-involution of " + pi.name());
    const std::size_t k = r.rank(), n = pi.order(), K = n * k;
    std::vector<FinAbGroup> parts(n, r.additive());
    FinAbGroup add = FinAbGroup::direct_sum(parts);
    std::vector<Int> st(K * K * K, 0);
    const auto& rs = r.structure();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t t = 0; t < k; ++t)
                    for (std::size_t u = 0; u < k; ++u)
                        st[((g * k + s) * K + h * k + t) * K + pi.mul(g, h) * k + u] = rs[(s * k + t) * k + u];
    Coords one(K, 0);
    Coords r1 = r.coords(r.one());
    for (std::size_t u = 0; u < k; ++u) one[pi.identity() * k + u] = r1[u];
    IntMatrix w(K, K);
    const IntMatrix& rw = r.involution().matrix();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) w(tau[g] * k + t, g * k + s) = rw(t, s);
    return FinRingInv(r.name() + "[" + pi.name() + "]", add, std::move(st), one, std::move(w));
}

inline FinRingInv group_algebra(const FinRingInv& r, const FinGroup& pi) {
    return group_algebra(r, pi, pi.inversion());
}

/// Associativity and the unit law; exact on generators, then elementwise.
inline CheckReport check_ring_axioms(const FinRingInv& r, const SearchPolicy& policy = {}) {
    CheckReport rep;
    rep.subject = r.name();
    const std::size_t k = r.rank();
    {
        CheckResult c{"associativity on generators"};
        for (std::size_t i = 0; i < k && c.passed; ++i)
            for (std::size_t j = 0; j < k && c.passed; ++j)
                for (std::size_t l = 0; l < k && c.passed; ++l) {
                    ++c.cases;
                    Elem a = r.additive().generator(i), b = r.additive().generator(j), e = r.additive().generator(l);
                    if (r.mul(r.mul(a, b), e) != r.mul(a, r.mul(b, e))) {
                        c.passed = false;
                        c.witness = "(" + r.format(a) + "," + r.format(b) + "," + r.format(e) + ")";
                    }
                }
        rep.add(c);
    }
    const std::uint64_t n = r.size();
    auto assoc = run_tuple_check<3>("associativity", {n, n, n}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]), b = Elem(t[1]), e = Elem(t[2]);
        if (r.mul(r.mul(a, b), e) == r.mul(a, r.mul(b, e))) return std::nullopt;
        return "(" + r.format(a) + "," + r.format(b) + "," + r.format(e) + ")";
    });
    if (assoc.sampled) rep.seed = policy.seed;
    rep.add(assoc);
    rep.add(run_tuple_check<1>("unit law", {n}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (r.mul(r.one(), a) == a && r.mul(a, r.one()) == a) return std::nullopt;
        return r.format(a);
    }));
    return rep;
}

/// w^2 = id, w(1) = 1 and w(xy) = w(y)w(x), by exhaustion.
inline CheckReport check_anti_involution(const FinRingInv& r, const SearchPolicy& policy = {}) {
    CheckReport rep;
    rep.subject = r.name();
    const std::uint64_t n = r.size();
    rep.add(run_tuple_check<1>("w(w(x)) = x", {n}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]);
        if (r.w(r.w(a)) == a) return std::nullopt;
        return r.format(a);
    }));
    {
        CheckResult c{"w(1) = 1"};
        c.cases = 1;
        if (r.w(r.one()) != r.one()) {
            c.passed = false;
            c.witness = r.format(r.w(r.one()));
        }
        rep.add(c);
    }
    auto anti = run_tuple_check<2>("w(xy) = w(y)w(x)", {n, n}, policy, [&](const auto& t) -> std::optional<std::string> {
        Elem a = Elem(t[0]), b = Elem(t[1]);
        if (r.w(r.mul(a, b)) == r.mul(r.w(b), r.w(a))) return std::nullopt;
        return "x=" + r.format(a) + " y=" + r.format(b);
    });
    if (anti.sampled) rep.seed = policy.seed;
    rep.add(anti);
    return rep;
}

/// Square matrix over a finite ring (row-major entries).
struct RMatrix {
    FinRingInv ring;
    std::size_t n = 0;
    std::vector<Elem> entries;

    Elem operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    Elem& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    bool operator==(const RMatrix& o) const { return n == o.n && entries == o.entries; }

    static RMatrix zero(const FinRingInv& r, std::size_t n) { return {r, n, std::vector<Elem>(n * n, r.zero())}; }
    static RMatrix identity(const FinRingInv& r, std::size_t n) {
        RMatrix m = zero(r, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = r.one();
        return m;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < n; ++j) s += (j ? "," : "") + ring.format((*this)(i, j));
            s += "]";
        }
        return s + "]";
    }
};

inline RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("matrix dimension mismatch");
    const FinRingInv& r = a.ring;
    RMatrix c = RMatrix::zero(r, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) {
            Elem s = r.zero();
            for (std::size_t k = 0; k < a.n; ++k) s = r.add(s, r.mul(a(i, k), b(k, j)));
            c(i, j) = s;
        }
    return c;
}

/// The involution on matrices: w(A)_ij = w(A_ji).
inline RMatrix conj_transpose(const RMatrix& a) {
    RMatrix c = RMatrix::zero(a.ring, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) c(i, j) = a.ring.w(a(j, i));
    return c;
}

/// Inverse by solving M X = I as a linear system over the additive group.
inline RMatrix invert_matrix(const RMatrix& m) {
    const FinRingInv& r = m.ring;
    const std::size_t n = m.n, k = r.rank();
    // Unknown coordinate (row, col, s) of X; equation coordinate (i, j, t) of M X.
    IntMatrix a(n * n * k, n * n * k);
    std::vector<Int> orders(n * n * k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < k; ++t) orders[(i * n + j) * k + t] = r.additive().order(t);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t rr = 0; rr < n; ++rr) {
            const Coords mi = r.coords(m(i, rr));
            for (std::size_t s = 0; s < k; ++s) {
                Coords es(k, 0);
                es[s] = 1;
                Coords p = r.mul(mi, es);
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t t = 0; t < k; ++t) a((i * n + j) * k + t, (rr * n + j) * k + s) = p[t];
            }
        }
    std::vector<Int> rhs(n * n * k, 0);
    const Coords one = r.coords(r.one());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) rhs[(i * n + i) * k + t] = one[t];
    auto sol = solve_mod(a, rhs, orders);
    if (!sol) throw NotUnit("matrix " + m.to_string() + " is not invertible");
    RMatrix x = RMatrix::zero(r, n);
    for (std::size_t e = 0; e < n * n; ++e) {
        Coords c(sol->begin() + std::ptrdiff_t(e * k), sol->begin() + std::ptrdiff_t((e + 1) * k));
        x.entries[e] = r.elem(c);
    }
    RMatrix id = RMatrix::identity(r, n);
    if (!(m * x == id) || !(x * m == id)) throw NotUnit("matrix " + m.to_string() + " has only a one-sided inverse");
    return x;
}

/// Exhaustive inverse search; only for carriers |R|^(n^2) below 10^4.
inline RMatrix invert_matrix_exhaustive(const RMatrix& m) {
    const FinRingInv& r = m.ring;
    const std::size_t cells = m.n * m.n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= r.size();
        if (total > 10000) throw TooLarge("exhaustive inverse search limited to 10^4 candidates");
    }
    RMatrix id = RMatrix::identity(r, m.n);
    RMatrix x = RMatrix::zero(r, m.n);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t v = c;
        for (std::size_t e = cells; e-- > 0;) {
            x.entries[e] = static_cast<Elem>(v % r.size());
            v /= r.size();
        }
        if (m * x == id && x * m == id) return x;
    }
    throw NotUnit("matrix " + m.to_string() + " is not invertible");
}

inline bool is_invertible(const RMatrix& m) {
    try {
        invert_matrix(m);
        return true;
    } catch (const NotUnit&) {
        return false;
    }
}

}  // namespace hermackey
