#include <catch_amalgamated.hpp>

#include "hermackey/constructions/catalog.hpp"
#include "hermackey/constructions/comparisons.hpp"

using namespace hermackey;

namespace {

bool all_pass(const HermMackey& h, const SearchPolicy& p = {}) {
    auto m = check_mackey_axioms(h.base(), p);
    auto a = check_hermitian_axioms(h, p);
    if (!m.passed()) UNSCOPED_INFO(h.name() << ": " << m.first_failure()->name << " " << m.first_failure()->witness);
    if (!a.passed()) UNSCOPED_INFO(h.name() << ": " << a.first_failure()->name << " " << a.first_failure()->witness);
    return m.passed() && a.passed() && mackey_relation_exact(h.base());
}

SearchPolicy quick() {
    SearchPolicy p;
    p.exhaustive_limit = 2'000'000;
    p.samples = 100'000;
    return p;
}

}  // namespace

TEST_CASE("M2(underline Z/3): carrier and transfer") {
    HermMackey u = underline_of_ring(zmod(3));
    HermMackey m = matrix_mackey(u, 2);
    MatrixOps ops(u, 2);
    CHECK(m.fix().size() == 27);
    CHECK(m.under().size() == 81);
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b)
            for (Elem c = 0; c < 3; ++c)
                for (Elem d = 0; d < 3; ++d) {
                    Elem A = Elem(ops.under_layout().encode(std::vector<Elem>{a, b, c, d}));
                    std::vector<Elem> t = ops.fix_layout().decode(m.tr(A));
                    CHECK(t[ops.pos(0, 1)] == (b + c) % 3);
                    CHECK(t[ops.pos(0, 0)] == 2 * a % 3);
                    CHECK(t[ops.pos(1, 1)] == 2 * d % 3);
                }
    CHECK(all_pass(m));
}

TEST_CASE("fixed-level order of M_n(L) is |L(Z/2)|^(n(n-1)/2) |L(*)|^n") {
    for (const char* name : {"U3", "A3", "U4", "UM2"}) {
        HermMackey b = catalog_mackey(name);
        for (std::size_t n : {1u, 2u, 3u}) {
            MatrixOps ops(b, n);
            long double expect = std::pow(static_cast<long double>(b.under().size()), n * (n - 1) / 2.0L) *
                                 std::pow(static_cast<long double>(b.fix().size()), static_cast<long double>(n));
            CHECK(ops.fix_layout().total() == expect);
        }
    }
    CHECK_THROWS_AS(matrix_mackey(catalog_mackey("UM2"), 3), TooLarge);
}

TEST_CASE("identity matrix acts trivially on M2(A3)") {
    HermMackey m = catalog_mackey("M2(A3)");
    CHECK(m.fix().size() == 243);
    const Elem one = m.ring().one();
    for (Elem b = 0; b < m.fix().size(); ++b) CHECK(m.act(one, b) == b);
    REQUIRE(m.fix_unit());
    CHECK(m.res(*m.fix_unit()) == one);
}

TEST_CASE("M1(L) is L") {
    for (const char* name : {"U3", "A3", "A5", "UM2"}) {
        HermMackey b = catalog_mackey(name);
        HermMackey m = matrix_mackey(b, 1);
        CHECK(m.base() == b.base());
        for (Elem a = 0; a < b.under().size(); ++a)
            for (Elem x = 0; x < b.fix().size(); ++x) CHECK(m.act(a, x) == b.act(a, x));
    }
}

TEST_CASE("diagonal action matches a hand-expanded 2x2 Burnside formula") {
    // Over A3 with A = [[p,q],[r,s]] and B = [[(b0,c0), e],[., (b1,c1)]]:
    // (A.B)_00 = T(p e q) + p.(b0,c0) + q.(b1,c1).
    HermMackey a3 = burnside_mod(3);
    MatrixOps ops(a3, 2);
    HermMackey m = matrix_mackey(a3, 2);
    const FinAbGroup& F = a3.fix();
    std::mt19937 rng(7);
    for (int it = 0; it < 500; ++it) {
        std::vector<Elem> A(4), B(3);
        for (auto& x : A) x = rng() % 3;
        B[0] = rng() % 9;
        B[1] = rng() % 3;
        B[2] = rng() % 9;
        Elem out = m.act(Elem(ops.under_layout().encode(A)), Elem(ops.fix_layout().encode(B)));
        std::vector<Elem> o = ops.fix_layout().decode(out);
        const Int p = A[0], q = A[1], r = A[2], s = A[3];
        auto bact = [&](Int x, Elem b) {
            Coords bc = F.decode(b);
            return F.encode({x * bc[0], bc[0] * (x * (x - 1) / 2) + x * x * bc[1]});
        };
        Elem d0 = F.add(F.add(F.encode({0, p * Int(B[1]) * q}), bact(p, B[0])), bact(q, B[2]));
        Elem d1 = F.add(F.add(F.encode({0, r * Int(B[1]) * s}), bact(r, B[0])), bact(s, B[2]));
        CHECK(o[0] == d0);
        CHECK(o[2] == d1);
        // Off-diagonal: (A R(B) A^t)_01 with R(b,c) = b + 2c.
        const Int rb0 = F.decode(B[0])[0] + 2 * F.decode(B[0])[1], rb1 = F.decode(B[2])[0] + 2 * F.decode(B[2])[1];
        const Int e = B[1];
        const Int off = (p * rb0 + q * e) * r + (p * e + q * rb1) * s;
        CHECK(o[1] == Elem(((off % 3) + 3) % 3));
    }
}

TEST_CASE("underline(Z/3)[Z/2]: two fixed summands, no free orbit") {
    GroupOps ops({underline_of_ring(zmod(3)), cyclic_group(2), {}, {}, {}});
    CHECK(ops.fixed_elements().size() == 2);
    CHECK(ops.section().empty());
    HermMackey h = group_mackey(underline_of_ring(zmod(3)), cyclic_group(2));
    CHECK(h.fix().to_string() == "Z/3 + Z/3");
    CHECK(all_pass(h));
}

TEST_CASE("underline(Z/3)[Z/3]: e summand plus one free orbit") {
    FinGroup z3 = cyclic_group(3);
    GroupOps ops({underline_of_ring(zmod(3)), z3, {}, {}, {}});
    CHECK(ops.fixed_elements() == std::vector<std::size_t>{z3.identity()});
    REQUIRE(ops.section().size() == 1);
    const std::size_t g = ops.section()[0];
    CHECK(z3.label(g) == "g");
    HermMackey h = group_mackey(underline_of_ring(zmod(3)), z3);
    CHECK(h.fix().size() == 9);
    // T(a g) = a[g] for the representative, T(a g^2) = w(a)[g] = a[g].
    for (Elem a = 1; a < 3; ++a) {
        std::vector<Elem> v(3, 0), xi(2);
        v[g] = a;
        ops.transfer(v.data(), xi.data());
        CHECK(xi[ops.summand(g)] == a);
        CHECK(xi[0] == 0);
        v[g] = 0;
        v[z3.inv(g)] = a;
        ops.transfer(v.data(), xi.data());
        CHECK(xi[ops.summand(g)] == a);
    }
    CHECK(all_pass(h));
}

TEST_CASE("group Mackey functors pass the axiom suites") {
    for (const char* name : {"U3[Z2]", "U3[Z3]", "A3[Z2]", "A3[Z3]", "U5[Z2]", "A5[Z2]", "U3[Z4]", "A3[Z4]", "U4[Z2]"})
        CHECK(all_pass(catalog_mackey(name)));
    for (const char* name : {"U3[S3]", "A3[S3]", "UM2[Z2]", "M2(U3)[Z2]"}) CHECK(all_pass(catalog_mackey(name), quick()));
}

TEST_CASE("group Mackey functor with a non-inversion anti-involution") {
    FinGroup z3 = cyclic_group(3);
    std::vector<std::size_t> id{0, 1, 2};
    GroupMackeyParams params{burnside_mod(3), z3, id, {}, {}};
    GroupOps ops(params);
    CHECK(ops.fixed_elements().size() == 3);
    CHECK(all_pass(group_mackey(params)));
    FinGroup s3 = symmetric_group_3();
    CHECK_THROWS_AS(group_mackey({burnside_mod(3), s3, {0, 1, 2, 3, 4, 5}, {}, {}}), InvalidAntiInvolution);
}

TEST_CASE("sections must pick one element per free orbit") {
    FinGroup z3 = cyclic_group(3);
    HermMackey u = underline_of_ring(zmod(3));
    CHECK_THROWS_AS(group_mackey({u, z3, {}, {0}, {}}), ValidationError);
    CHECK_THROWS_AS(group_mackey({u, z3, {}, {1, 2}, {}}), ValidationError);
    CHECK_NOTHROW(group_mackey({u, z3, {}, {2}, {}}));
}

TEST_CASE("fix unit of a group Mackey functor restricts to 1") {
    for (const char* name : {"U3[S3]", "A3[Z3]", "A5[Z2]"}) {
        HermMackey h = catalog_mackey(name);
        REQUIRE(h.fix_unit());
        CHECK(h.res(*h.fix_unit()) == h.ring().one());
        for (Elem b = 0; b < std::min<std::uint64_t>(h.fix().size(), 500); ++b) CHECK(h.act(h.ring().one(), b) == b);
    }
}

TEST_CASE("comparison isomorphisms for matrix rings") {
    CHECK(matrix_iso_check(zmod(3), 2).passed());
    CHECK(matrix_iso_check(zmod(5), 2).passed());
    CHECK(matrix_iso_check(zmod(4), 2).passed());
    auto r1 = matrix_iso_check(zmod(3), 1);
    CHECK(r1.passed());
    HermMorphism f = matrix_comparison(zmod(3), 1);
    CHECK(f.f_fix.matrix() == IntMatrix::identity(1));
    CHECK(f.f_under.matrix() == IntMatrix::identity(1));
}

TEST_CASE("comparison isomorphisms for group rings") {
    CHECK(groupring_iso_check(zmod(3), cyclic_group(2)).passed());
    CHECK(groupring_iso_check(zmod(3), cyclic_group(3)).passed());
    CHECK(groupring_iso_check(zmod(5), cyclic_group(4)).passed());
    CHECK(groupring_iso_check(zmod(3), symmetric_group_3(), quick()).passed());
    HermMorphism t = groupring_comparison(zmod(3), GroupData{trivial_group(), {}, {}, {}});
    CHECK(t.f_fix.matrix() == IntMatrix::identity(1));
    CHECK(check_herm_isomorphism(t).passed());
}

TEST_CASE("a corrupted comparison map is rejected") {
    HermMorphism f = matrix_comparison(zmod(3), 2);
    f.f_fix = f.f_fix.plus(f.f_fix);  // doubling is bijective but not multiplicative-equivariant
    CHECK_FALSE(check_herm_isomorphism(f).passed());
    HermMorphism g = matrix_comparison(zmod(3), 2);
    g.f_fix = GroupHom::zero(g.f_fix.source(), g.f_fix.target());
    auto rep = check_herm_isomorphism(g);
    CHECK_FALSE(rep.passed());
}

TEST_CASE("M2(d) and d[pi]") {
    HermMorphism m2d = apply_matrix_construction(rank_map_trivial(3), 2);
    CHECK(check_herm_morphism(m2d).passed());
    CHECK(m2d.unital);

    // Independent description of d[Z/2]: d on both tau-fixed summands.
    HermMorphism d2 = apply_group_construction(rank_map_trivial(3), GroupData{cyclic_group(2), {}, {}, {}});
    HermMorphism r2 = rank_map(3, cyclic_group(2));
    CHECK(same_morphism(d2, r2));
    IntMatrix expect{{1, 2, 0, 0}, {0, 0, 1, 2}};
    CHECK(r2.f_fix.matrix() == expect);
    CHECK(r2.f_under.matrix() == IntMatrix::identity(2));
    CHECK(check_herm_morphism(r2).passed());
    // (0,1) e maps to 2 e.
    const FinAbGroup& F = r2.source.fix();
    CHECK(r2.f_fix.apply(F.encode({0, 1, 0, 0})) == r2.target.fix().encode({2, 0}));

    // Over Z/3 the free orbit summand is mapped by the identity.
    HermMorphism r3 = rank_map(3, cyclic_group(3));
    CHECK(r3.f_fix.matrix() == (IntMatrix{{1, 2, 0}, {0, 0, 1}}));
    CHECK(check_herm_morphism(r3).passed());
}

TEST_CASE("d o T/2 is the identity over group rings") {
    for (Int m : {3, 5})
        for (const char* g : {"1", "Z2", "Z3"}) {
            FinGroup pi = catalog_group(g);
            HermMorphism d = rank_map(m, pi), h = half_transfer_section(m, pi);
            CHECK(check_herm_morphism(d).passed());
            CHECK(check_herm_morphism(h).passed());
            CHECK_FALSE(h.unital);
            CHECK(same_morphism(compose(d, h), identity_morphism(h.source)));
        }
    CHECK_THROWS_AS(half_transfer_section(4, cyclic_group(2)), EvenModulus);
}

TEST_CASE("functoriality of M_n and [pi]") {
    HermMorphism d = rank_map_trivial(3), h = half_transfer_trivial(3);
    HermMorphism dh = compose(d, h);
    CHECK(same_morphism(apply_matrix_construction(dh, 2),
                        compose(apply_matrix_construction(d, 2), apply_matrix_construction(h, 2))));
    CHECK(same_morphism(apply_matrix_construction(identity_morphism(burnside_mod(3)), 2),
                        identity_morphism(matrix_mackey(burnside_mod(3), 2))));
    GroupData z3{cyclic_group(3), {}, {}, {}};
    CHECK(same_morphism(apply_group_construction(dh, z3),
                        compose(apply_group_construction(d, z3), apply_group_construction(h, z3))));
    CHECK(same_morphism(apply_group_construction(identity_morphism(burnside_mod(3)), z3),
                        identity_morphism(group_mackey(burnside_mod(3), cyclic_group(3)))));
    HermMorphism m2h = apply_matrix_construction(h, 2);
    CHECK_FALSE(m2h.unital);
    CHECK(check_herm_morphism(m2h).passed());
}

TEST_CASE("mismatched sections are rejected") {
    HermMorphism d = rank_map_trivial(3);
    FinGroup z3 = cyclic_group(3);
    CHECK_THROWS_AS(apply_group_construction(d, {d.source, z3, {}, {1}, {}}, {d.target, z3, {}, {2}, {}}),
                    SectionMismatch);
    CHECK_THROWS_AS(apply_group_construction(d, {d.target, z3, {}, {}, {}}, {d.target, z3, {}, {}, {}}),
                    SectionMismatch);
}

TEST_CASE("changing the section gives an isomorphic functor") {
    FinGroup z3 = cyclic_group(3), z4 = cyclic_group(4);
    for (const char* name : {"U3", "A3"}) {
        HermMackey b = catalog_mackey(name);
        auto f = section_isomorphism(b, z3, z3.inversion(), {1}, {2});
        REQUIRE(f);
        CHECK(check_herm_isomorphism(*f).passed());
        auto g = section_isomorphism(b, z4, z4.inversion(), {1}, {3});
        REQUIRE(g);
    }
    // With nontrivial w on the base the natural map c -> w(c) is still found.
    FinRingInv r = group_algebra(zmod(3), z3);
    auto f = section_isomorphism(underline_of_ring(r), cyclic_group(2), {}, {}, {});
    CHECK(f);
}

TEST_CASE("extension formula does not depend on the total order") {
    FinGroup s3 = symmetric_group_3(), z3 = cyclic_group(3);
    CHECK(extension_order_independent(burnside_mod(3), z3, {2, 1, 0}));
    CHECK(extension_order_independent(burnside_mod(3), s3, {5, 4, 3, 2, 1, 0}));
    CHECK(extension_order_independent(underline_of_ring(zmod(3)), s3, {3, 0, 5, 1, 4, 2}));
    CHECK(extension_order_independent(underline_of_ring(zmod(4)), cyclic_group(4), {1, 3, 0, 2}));
}

TEST_CASE("catalog names") {
    CHECK(catalog_mackey("M2(A3)").name() == "M2(A3)");
    CHECK(catalog_mackey("A3[Z3]").fix().size() == 27);
    CHECK(catalog_group("Z/4").order() == 4);
    CHECK(catalog_group("D4").order() == 8);
    CHECK_THROWS_AS(catalog_mackey("B3"), UnknownName);
    CHECK_THROWS_AS(catalog_mackey("U3[X]"), UnknownName);
    for (const auto& n : catalog_mackey_names()) CHECK_NOTHROW(catalog_mackey(n));
}
