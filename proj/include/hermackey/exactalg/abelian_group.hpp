#pragma once

// Finitely generated abelian groups as direct sums of cyclic factors, their
// homomorphisms, and presentations by generators and relations.

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermackey/exactalg/integer_matrix.hpp"

namespace hermackey {

/// Index of an element of a finite carrier (mixed radix over the coordinates,
/// first coordinate most significant, so index order is lexicographic order).
using Elem = std::uint32_t;
using Coords = std::vector<Int>;

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<Int> orders) : orders_(std::move(orders)) {
        for (Int o : orders_)
            if (o < 0) throw std::invalid_argument("negative cyclic order");
        strides_.assign(orders_.size(), 0);
        size_ = 1;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            if (orders_[i] == 0) {
                size_ = 0;
                continue;
            }
            strides_[i] = size_;
            if (size_ != 0 && size_ > std::numeric_limits<std::uint64_t>::max() / orders_[i])
                overflow_ = true;
            else if (size_ != 0)
                size_ *= static_cast<std::uint64_t>(orders_[i]);
        }
        if (overflow_) size_ = 0;
    }

    static FinAbGroup direct_sum(const std::vector<FinAbGroup>& parts) {
        std::vector<Int> o;
        for (const auto& p : parts) o.insert(o.end(), p.orders_.begin(), p.orders_.end());
        return FinAbGroup(std::move(o));
    }
    static FinAbGroup power(const FinAbGroup& g, std::size_t k) {
        return direct_sum(std::vector<FinAbGroup>(k, g));
    }

    std::size_t rank() const { return orders_.size(); }
    const std::vector<Int>& orders() const { return orders_; }
    Int order(std::size_t i) const { return orders_[i]; }
    bool is_finite() const {
        for (Int o : orders_)
            if (o == 0) return false;
        return true;
    }

    /// Number of elements; throws unless finite and indexable by Elem.
    std::uint64_t size() const {
        if (!enumerable()) throw TooLarge("carrier is infinite or too large to enumerate");
        return size_;
    }
    bool enumerable() const {
        return !overflow_ && size_ != 0 && size_ <= std::numeric_limits<Elem>::max();
    }

    Coords reduce(Coords x) const {
        check_len(x);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_reduce(x[i], orders_[i]);
        return x;
    }

    Elem encode(const Coords& x) const {
        check_len(x);
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            idx += static_cast<std::uint64_t>(mod_reduce(x[i], orders_[i])) * strides_[i];
        return static_cast<Elem>(idx);
    }

    Coords decode(Elem e) const {
        Coords x(orders_.size());
        std::uint64_t r = e;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = static_cast<Int>(r / strides_[i]);
            r %= strides_[i];
        }
        return x;
    }

    Int coordinate(Elem e, std::size_t i) const {
        return static_cast<Int>((e / strides_[i]) % static_cast<std::uint64_t>(orders_[i]));
    }

    Elem add(Elem a, Elem b) const {
        if (orders_.size() == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return static_cast<Elem>(s >= std::uint64_t(orders_[0]) ? s - orders_[0] : s);
        }
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t o = orders_[i], st = strides_[i];
            std::uint64_t s = (a / st) % o + (b / st) % o;
            if (s >= o) s -= o;
            out += s * st;
        }
        return static_cast<Elem>(out);
    }

    Elem neg(Elem a) const {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t o = orders_[i], st = strides_[i];
            std::uint64_t d = (a / st) % o;
            out += (d == 0 ? 0 : o - d) * st;
        }
        return static_cast<Elem>(out);
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem scale(Int k, Elem a) const {
        Coords x = decode(a);
        for (auto& c : x) c = checked_mul(c, k);
        return encode(x);
    }

    Elem generator(std::size_t i) const {
        Coords x(rank(), 0);
        x[i] = 1;
        return encode(x);
    }

    bool operator==(const FinAbGroup& o) const { return orders_ == o.orders_; }

    /// Direct-sum notation, free part first: "Z^2 + Z/2 + Z/4", or "0".
    std::string to_string() const {
        std::size_t free = 0;
        std::vector<Int> torsion;
        for (Int o : orders_) {
            if (o == 0)
                ++free;
            else if (o != 1)
                torsion.push_back(o);
        }
        std::ostringstream os;
        bool first = true;
        if (free > 0) {
            os << "Z";
            if (free > 1) os << '^' << free;
            first = false;
        }
        for (Int t : torsion) {
            os << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check_len(const Coords& x) const {
        if (x.size() != orders_.size()) throw std::invalid_argument("coordinate length mismatch");
    }

    std::vector<Int> orders_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_ = 1;
    bool overflow_ = false;
};

/// Homomorphism given by an integer matrix acting on coordinates
/// (rows index target coordinates, columns source coordinates).
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
            throw std::invalid_argument("GroupHom: matrix shape does not match groups");
        for (std::size_t i = 0; i < matrix_.rows(); ++i)
            for (std::size_t j = 0; j < matrix_.cols(); ++j)
                matrix_(i, j) = mod_reduce(matrix_(i, j), target_.order(i));
    }

    static GroupHom identity(const FinAbGroup& g) {
        return GroupHom(g, g, IntMatrix::identity(g.rank()));
    }
    static GroupHom zero(const FinAbGroup& s, const FinAbGroup& t) {
        return GroupHom(s, t, IntMatrix(t.rank(), s.rank()));
    }
    /// Builds the matrix from the images of the coordinate generators.
    template <class F>
    static GroupHom from_generator_images(const FinAbGroup& s, const FinAbGroup& t, F&& image) {
        IntMatrix m(t.rank(), s.rank());
        for (std::size_t j = 0; j < s.rank(); ++j) {
            Coords y = image(j);
            for (std::size_t i = 0; i < t.rank(); ++i) m(i, j) = y[i];
        }
        return GroupHom(s, t, std::move(m));
    }

    const FinAbGroup& source() const { return source_; }
    const FinAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    Coords apply(const Coords& x) const { return target_.reduce(matrix_ * x); }
    Elem apply(Elem e) const { return target_.encode(matrix_ * source_.decode(e)); }

    /// Each generator's image satisfies that generator's order relation.
    bool well_defined() const {
        for (std::size_t j = 0; j < source_.rank(); ++j) {
            Int o = source_.order(j);
            for (std::size_t i = 0; i < target_.rank(); ++i) {
                Int v = checked_mul(o, matrix_(i, j));
                if (mod_reduce(v, target_.order(i)) != 0) return false;
            }
        }
        return true;
    }

    /// Equality as maps (matrices agree modulo the target orders).
    bool same_map(const GroupHom& o) const {
        if (!(source_ == o.source_) || !(target_ == o.target_)) return false;
        for (std::size_t i = 0; i < matrix_.rows(); ++i)
            for (std::size_t j = 0; j < matrix_.cols(); ++j)
                if (mod_reduce(matrix_(i, j) - o.matrix_(i, j), target_.order(i)) != 0) return false;
        return true;
    }

    GroupHom then(const GroupHom& next) const { return next.after(*this); }
    GroupHom after(const GroupHom& first) const {
        if (!(first.target_ == source_)) throw std::invalid_argument("GroupHom composition mismatch");
        return GroupHom(first.source_, target_, matrix_ * first.matrix_);
    }

    GroupHom plus(const GroupHom& o) const {
        if (!(source_ == o.source_) || !(target_ == o.target_))
            throw std::invalid_argument("GroupHom sum mismatch");
        IntMatrix m = matrix_;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = checked_add(m(i, j), o.matrix_(i, j));
        return GroupHom(source_, target_, std::move(m));
    }

    bool operator==(const GroupHom& o) const { return same_map(o); }

private:
    FinAbGroup source_;
    FinAbGroup target_;
    IntMatrix matrix_;
};

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
    const std::size_t n = u.rows();
    IntMatrix inv(n, n);
    std::vector<Int> zeros(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> e(n, 0);
        e[j] = 1;
        auto x = solve_mod(u, e, zeros);
        if (!x) throw std::invalid_argument("matrix is not unimodular");
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*x)[i];
    }
    return inv;
}

/// Cokernel of a relation matrix in canonical invariant-factor form, with the
/// projection from the free group on the original generators.
struct Presentation {
    FinAbGroup group;      // orders d_1 | d_2 | ... then zeros for free factors
    IntMatrix projection;  // group.rank() x generators
    IntMatrix lifts;       // generators x group.rank(): column r lifts the r-th group generator

    Coords project(const Coords& x) const { return group.reduce(projection * x); }
    Coords generator_image(std::size_t j) const { return group.reduce(projection.column(j)); }
};

/// Z^generators / (row space of relations), in invariant-factor form.
inline Presentation abelian_group_from_relations(std::size_t generators, const IntMatrix& relations) {
    if (relations.rows() > 0 && relations.cols() != generators)
        throw std::invalid_argument("relation matrix must have one column per generator");
    IntMatrix rel = relations.rows() > 0 ? relations : IntMatrix(0, generators);
    SmithForm sf = smith_normal_form(rel);
    // rowspace(rel) * V = rowspace(S); coordinates are x -> V^T x.
    IntMatrix vt = sf.V.transpose();
    std::vector<Int> orders;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < generators; ++i) {
        Int d = i < sf.rank ? sf.S(i, i) : 0;
        if (d == 1) continue;
        orders.push_back(d);
        keep.push_back(i);
    }
    IntMatrix proj(keep.size(), generators);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < generators; ++c) proj(r, c) = mod_reduce(vt(keep[r], c), orders[r]);
    IntMatrix vt_inv = unimodular_inverse(vt);
    IntMatrix lifts(generators, keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < generators; ++c) lifts(c, r) = vt_inv(c, keep[r]);
    return {FinAbGroup(std::move(orders)), std::move(proj), std::move(lifts)};
}

/// Output group of a computation: invariant factors with truncation metadata.
struct PresentedGroup {
    FinAbGroup group;
    std::optional<bool> stable;  // unset when no stability claim is made
    bool truncated = false;
    std::string coefficients = "Z";

    std::size_t free_rank() const {
        std::size_t r = 0;
        for (Int o : group.orders()) r += (o == 0);
        return r;
    }
    std::vector<Int> torsion() const {
        std::vector<Int> t;
        for (Int o : group.orders())
            if (o > 1) t.push_back(o);
        return t;
    }

    std::string to_string() const {
        if (coefficients == "Q") {
            std::size_t r = free_rank();
            if (r == 0) return "0";
            return r == 1 ? std::string("Q") : "Q^" + std::to_string(r);
        }
        return group.to_string();
    }

    bool isomorphic(const PresentedGroup& o) const {
        return free_rank() == o.free_rank() && torsion() == o.torsion() && coefficients == o.coefficients;
    }
};

inline bool operator==(const PresentedGroup& a, const PresentedGroup& b) { return a.isomorphic(b); }

struct Subgroup {
    FinAbGroup group;
    GroupHom inclusion;
};

/// Subgroup of G generated by the given elements, in invariant-factor form.
inline Subgroup subgroup_generated(const FinAbGroup& g, const std::vector<Coords>& gens) {
    const std::size_t k = g.rank();
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < k; ++i)
        if (g.order(i) != 0) finite.push_back(i);
    // Lattice L = lifts of gens + order relations; subgroup = L / D Z^k.
    IntMatrix a(k, gens.size() + finite.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (std::size_t i = 0; i < k; ++i) a(i, c) = gens[c][i];
    for (std::size_t c = 0; c < finite.size(); ++c) a(finite[c], gens.size() + c) = g.order(finite[c]);
    SmithForm sf = smith_normal_form(a);
    const std::size_t r = sf.rank;
    IntMatrix uinv = unimodular_inverse(sf.U);
    IntMatrix basis(k, r);  // columns span L
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j) basis(i, j) = checked_mul(uinv(i, j), sf.S(j, j));
    // Express the order relations in the basis of L.
    IntMatrix rel(r, finite.size());
    for (std::size_t c = 0; c < finite.size(); ++c) {
        std::vector<Int> col(k, 0);
        col[finite[c]] = g.order(finite[c]);
        std::vector<Int> ucol = sf.U * col;
        for (std::size_t j = 0; j < r; ++j) {
            if (ucol[j] % sf.S(j, j) != 0) throw std::logic_error("subgroup: relation not in lattice");
            rel(j, c) = ucol[j] / sf.S(j, j);
        }
    }
    SmithForm rf = smith_normal_form(rel);
    IntMatrix rinv = unimodular_inverse(rf.U);
    IntMatrix gens_in_l = basis * rinv;  // column i = generator i of the subgroup
    std::vector<Int> orders;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < r; ++i) {
        Int d = i < rf.rank ? rf.S(i, i) : 0;
        if (d == 1) continue;
        orders.push_back(d);
        keep.push_back(i);
    }
    FinAbGroup sub(orders);
    IntMatrix incl(k, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < k; ++i) incl(i, c) = gens_in_l(i, keep[c]);
    return {sub, GroupHom(sub, g, std::move(incl))};
}

}  // namespace hermackey
