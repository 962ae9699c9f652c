#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "hermackey/exactalg/abelian_group.hpp"
#include "hermackey/exactalg/fin_group.hpp"
#include "hermackey/exactalg/integer_matrix.hpp"
#include "hermackey/exactalg/ring.hpp"

using namespace hermackey;

namespace {

// Fraction-free determinant (Bareiss) for small square matrices.
Int det(IntMatrix a) {
    const std::size_t n = a.rows();
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n + 1 && k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * (n ? a(n - 1, n - 1) : 1);
}

Int gcd_all(const std::vector<Int>& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, std::llabs(x));
    return g;
}

// gcd of all k x k minors (the k-th determinantal divisor).
Int determinantal_divisor(const IntMatrix& a, std::size_t k) {
    std::vector<Int> minors;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t r = start; r < a.rows(); ++r) {
            rows[depth] = r;
            pick_rows(r + 1, depth + 1);
        }
    };
    pick_cols = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            IntMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rows[i], cols[j]);
            minors.push_back(det(m));
            return;
        }
        for (std::size_t c = start; c < a.cols(); ++c) {
            cols[depth] = c;
            pick_cols(c + 1, depth + 1);
        }
    };
    pick_rows(0, 0);
    return gcd_all(minors);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Int range) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(rng() % (2 * range + 1)) - range;
    return m;
}

}  // namespace

TEST_CASE("smith normal form of small examples") {
    auto sf = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
    CHECK(sf.S == IntMatrix{{2, 0}, {0, 4}});
    CHECK(sf.U * IntMatrix{{2, 4}, {6, 8}} * sf.V == sf.S);

    CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
    auto z = smith_normal_form(IntMatrix{{0}});
    CHECK(z.S == IntMatrix{{0}});
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a = random_matrix(rng, r, c, 6);
        SmithForm sf = smith_normal_form(a);
        REQUIRE(sf.U * a * sf.V == sf.S);
        CHECK(std::llabs(det(sf.U)) == 1);
        CHECK(std::llabs(det(sf.V)) == 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(sf.S(i, j) == 0);
        auto d = sf.invariant_factors();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
        Int prod = 1;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            Int dk = determinantal_divisor(a, k);
            if (k <= d.size()) {
                prod *= d[k - 1];
                CHECK(prod == dk);
            } else {
                CHECK(dk == 0);
            }
        }
    }
}

TEST_CASE("abelian groups from relations") {
    CHECK(abelian_group_from_relations(1, IntMatrix{{2}}).group.to_string() == "Z/2");
    CHECK(abelian_group_from_relations(2, IntMatrix{{2, 0}}).group.to_string() == "Z + Z/2");
    CHECK(abelian_group_from_relations(2, IntMatrix(0, 2)).group.to_string() == "Z^2");
    CHECK(abelian_group_from_relations(3, IntMatrix{{1, 1, 1}}).group.to_string() == "Z^2");
}

TEST_CASE("cokernel order matches coset enumeration") {
    // Oracle: add N e_i to the relations, then count the span of the
    // relations inside (Z/N)^g by closure.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t g = 1 + rng() % 3;
        const Int N = g == 3 ? 6 + Int(rng() % 10) : 2 + Int(rng() % 30);
        const std::size_t nrel = rng() % 4;
        IntMatrix rel = random_matrix(rng, nrel, g, 9);
        IntMatrix full(nrel + g, g);
        for (std::size_t i = 0; i < nrel; ++i)
            for (std::size_t j = 0; j < g; ++j) full(i, j) = rel(i, j);
        for (std::size_t i = 0; i < g; ++i) full(nrel + i, i) = N;
        Presentation p = abelian_group_from_relations(g, full);
        REQUIRE(p.group.is_finite());

        FinAbGroup ambient(std::vector<Int>(g, N));
        std::set<Elem> span{0};
        std::vector<Elem> frontier{0};
        while (!frontier.empty()) {
            std::vector<Elem> next;
            for (Elem e : frontier)
                for (std::size_t i = 0; i < nrel; ++i) {
                    Elem v = ambient.add(e, ambient.encode(Coords(rel.data().begin() + std::ptrdiff_t(i * g),
                                                                  rel.data().begin() + std::ptrdiff_t((i + 1) * g))));
                    if (span.insert(v).second) next.push_back(v);
                }
            frontier = std::move(next);
        }
        CHECK(p.group.size() * span.size() == ambient.size());
        // The projection kills every relation.
        for (std::size_t i = 0; i < full.rows(); ++i) {
            Coords row(full.data().begin() + std::ptrdiff_t(i * g), full.data().begin() + std::ptrdiff_t((i + 1) * g));
            Coords img = p.project(row);
            for (Int x : img) CHECK(x == 0);
        }
    }
}

TEST_CASE("finite abelian group encoding") {
    FinAbGroup g({2, 3, 4});
    CHECK(g.size() == 24);
    for (Elem e = 0; e < 24; ++e) CHECK(g.encode(g.decode(e)) == e);
    for (Elem a = 0; a < 24; ++a)
        for (Elem b = 0; b < 24; ++b) {
            Coords x = g.decode(a), y = g.decode(b);
            for (std::size_t i = 0; i < 3; ++i) x[i] += y[i];
            CHECK(g.add(a, b) == g.encode(x));
        }
    CHECK_THROWS_AS(FinAbGroup({0, 2}).size(), TooLarge);
    CHECK(FinAbGroup({0, 2}).to_string() == "Z + Z/2");
    CHECK(FinAbGroup(std::vector<Int>{}).to_string() == "0");
}

TEST_CASE("subgroup generated by elements") {
    FinAbGroup g({4, 6});
    Subgroup s = subgroup_generated(g, {{2, 0}, {0, 3}});
    CHECK(s.group.size() == 4);
    std::set<Elem> img;
    for (Elem e = 0; e < s.group.size(); ++e) img.insert(s.inclusion.apply(e));
    CHECK(img == std::set<Elem>{g.encode({0, 0}), g.encode({2, 0}), g.encode({0, 3}), g.encode({2, 3})});
}

TEST_CASE("matrix inversion over Z/3") {
    FinRingInv r = zmod(3);
    RMatrix swap{r, 2, {0, 1, 1, 0}};
    CHECK(invert_matrix(swap) == swap);
    RMatrix u{r, 2, {1, 1, 0, 1}};
    CHECK(invert_matrix(u) == RMatrix{r, 2, {1, 2, 0, 1}});
    CHECK(invert_matrix_exhaustive(u) == RMatrix{r, 2, {1, 2, 0, 1}});
    RMatrix s{r, 2, {1, 1, 1, 1}};
    CHECK_THROWS_AS(invert_matrix(s), NotUnit);
    CHECK_THROWS_AS(invert_matrix_exhaustive(s), NotUnit);
}

TEST_CASE("linear inversion agrees with exhaustive search") {
    for (Int m : {2, 3, 4}) {
        FinRingInv r = zmod(m);
        for (Elem a = 0; a < m; ++a)
            for (Elem b = 0; b < m; ++b)
                for (Elem c = 0; c < m; ++c)
                    for (Elem d = 0; d < m; ++d) {
                        RMatrix x{r, 2, {a, b, c, d}};
                        bool lin = true, ex = true;
                        RMatrix y1, y2;
                        try { y1 = invert_matrix(x); } catch (const NotUnit&) { lin = false; }
                        try { y2 = invert_matrix_exhaustive(x); } catch (const NotUnit&) { ex = false; }
                        REQUIRE(lin == ex);
                        if (lin) {
                            CHECK(y1 == y2);
                            CHECK(x * y1 == RMatrix::identity(r, 2));
                            CHECK(y1 * x == RMatrix::identity(r, 2));
                        }
                    }
    }
    // A noncommutative base: 1x1 matrices over M2(Z/2).
    FinRingInv m2 = matrix_ring(zmod(2), 2);
    for (Elem a = 0; a < m2.size(); ++a) {
        RMatrix x{m2, 1, {a}};
        bool lin = true, ex = true;
        try { invert_matrix(x); } catch (const NotUnit&) { lin = false; }
        try { invert_matrix_exhaustive(x); } catch (const NotUnit&) { ex = false; }
        CHECK(lin == ex);
    }
    CHECK(m2.units().size() == 6);
}

TEST_CASE("rings with anti-involution") {
    FinRingInv m2 = matrix_ring(zmod(3), 2);
    CHECK(m2.size() == 81);
    CHECK(check_ring_axioms(m2).passed());
    CHECK(check_anti_involution(m2).passed());
    auto bad = check_anti_involution(m2.with_involution(IntMatrix::identity(4), "M2(Z/3) id"));
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.first_failure());
    CHECK(bad.first_failure()->name == "w(xy) = w(y)w(x)");
    CHECK(check_anti_involution(zmod(3)).passed());

    FinGroup z2 = cyclic_group(2), z3 = cyclic_group(3);
    FinRingInv r2 = group_algebra(zmod(3), z2);
    CHECK(r2.size() == 9);
    CHECK(r2.w(r2.additive().generator(0)) == r2.additive().generator(0));
    CHECK(r2.w(r2.additive().generator(1)) == r2.additive().generator(1));
    FinRingInv r3 = group_algebra(zmod(3), z3);
    CHECK(r3.w(r3.additive().generator(1)) == r3.additive().generator(2));
    CHECK(r3.one() == r3.additive().generator(0));
    CHECK(check_anti_involution(r3).passed());
    CHECK(check_ring_axioms(r3).passed());

    FinGroup s3 = symmetric_group_3();
    FinRingInv rs = group_algebra(zmod(3), s3);
    CHECK(check_anti_involution(rs).passed());
    std::vector<std::size_t> id(6);
    std::iota(id.begin(), id.end(), 0);
    CHECK_THROWS_AS(group_algebra(zmod(3), s3, id), InvalidAntiInvolution);
}

TEST_CASE("finite groups") {
    FinGroup s3 = symmetric_group_3();
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK(s3.label(s3.mul(1, 2)) == "(132)");
    std::vector<std::size_t> bad = s3.table();
    std::swap(bad[7], bad[8]);
    CHECK_THROWS_AS(FinGroup("bad", s3.labels(), bad), ValidationError);

    auto cls = involution_classes(s3);
    REQUIRE(cls.size() == 2);
    CHECK(s3.label(cls[0].representative) == "e");
    CHECK(cls[0].size == 1);
    CHECK(cls[0].centralizer.order() == 6);
    CHECK(s3.label(cls[1].representative) == "(12)");
    CHECK(cls[1].size == 3);
    CHECK(cls[1].centralizer.order() == 2);

    FinGroup q8 = quaternion_group();
    auto qc = involution_classes(q8);
    REQUIRE(qc.size() == 2);
    CHECK(q8.label(qc[1].representative) == "-1");
    CHECK(qc[1].centralizer.order() == 8);

    auto zc = involution_classes(cyclic_group(2));
    CHECK(zc.size() == 2);
    CHECK(zc[1].centralizer.order() == 2);

    CHECK(abelianization(s3).group.to_string() == "Z/2");
    CHECK(abelianization(q8).group.to_string() == "Z/2 + Z/2");
    CHECK(abelianization(dihedral_group(4)).group.to_string() == "Z/2 + Z/2");
    CHECK(abelianization(cyclic_group(4)).group.to_string() == "Z/4");

    FinGroup perm = group_from_permutations("S3p", {{1, 0, 2}, {1, 2, 0}}, 3);
    CHECK(perm.order() == 6);
    CHECK(perm.identity() == 0);
    CHECK(is_anti_involution(s3, s3.inversion()));
    CHECK(is_anti_involution(dihedral_group(4), dihedral_group(4).inversion()));
}

TEST_CASE("presentation lifts project to the group generators") {
    IntMatrix rel{{2, 4, 0}, {0, 6, 3}, {2, 2, 2}};
    Presentation p = abelian_group_from_relations(3, rel);
    for (std::size_t r = 0; r < p.group.rank(); ++r) {
        Coords e(p.group.rank(), 0);
        e[r] = 1;
        CHECK(p.project(p.lifts.column(r)) == p.group.reduce(e));
    }
}
