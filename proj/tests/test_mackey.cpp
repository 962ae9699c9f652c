#include <catch_amalgamated.hpp>

#include "hermackey/mackey/mackey.hpp"

using namespace hermackey;

TEST_CASE("underline of Z/3") {
    HermMackey u = underline_of_ring(zmod(3));
    CHECK(u.fix().size() == 3);
    CHECK(u.tr(1) == 2);
    CHECK(u.tr(2) == 1);
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b) CHECK(u.act(a, b) == (a * a * b) % 3);
    CHECK(check_mackey_axioms(u.base()).passed());
    CHECK(check_hermitian_axioms(u).passed());
}

TEST_CASE("underline of M2(Z/3) with transpose") {
    FinRingInv m2 = matrix_ring(zmod(3), 2);
    HermMackey u = underline_of_ring(m2);
    CHECK(u.fix().size() == 27);
    for (Elem b = 0; b < u.fix().size(); ++b) {
        Elem x = u.res(b);
        CHECK(m2.w(x) == x);
    }
    CHECK(check_mackey_axioms(u.base()).passed());
    CHECK(check_hermitian_axioms(u).passed());
}

TEST_CASE("underline of Z/4") {
    HermMackey u = underline_of_ring(zmod(4));
    CHECK(u.tr(1) == 2);
    CHECK(u.res(u.tr(1)) == 2);
    CHECK(check_hermitian_axioms(u).passed());
}

TEST_CASE("broken action fails axiom iv") {
    HermMackey u = underline_of_ring(zmod(3));
    FinRingInv r = zmod(3);
    HermMackey bad("bad", u.base(), r, [r](Elem a, Elem b) { return r.mul(a, b); });
    auto rep = check_hermitian_axioms(bad);
    CHECK_FALSE(rep.passed());
    auto* c = rep.find("(iv) (a+a').b = a.b + a'.b + tr(a res(b) w(a')), b a generator");
    REQUIRE(c);
    CHECK_FALSE(c->passed);
    CHECK(c->witness.rfind("a=1 a'=1 b=1", 0) == 0);
}

TEST_CASE("Burnside functor mod m") {
    HermMackey a = burnside_mod(3);
    const FinAbGroup& F = a.fix();
    CHECK(a.act(2, F.encode({1, 0})) == F.encode({2, 1}));
    CHECK(a.res(a.tr(1)) == 2);
    CHECK(check_mackey_axioms(a.base()).passed());
    CHECK(check_hermitian_axioms(a).passed());
    CHECK(check_hermitian_axioms(burnside_mod(5)).passed());
    CHECK(burnside_mod(1).fix().size() == 1);
    CHECK(check_hermitian_axioms(burnside_mod(1)).passed());

    // Symbolic evaluation of the integral formula, reduced mod 5.
    HermMackey a5 = burnside_mod(5);
    CHECK(a5.act(3, a5.fix().encode({1, 0})) == a5.fix().encode({3, 3}));
}

TEST_CASE("Burnside with zero transfer fails the Mackey relation") {
    HermMackey a = burnside_mod(3);
    MackeyZ2 bad(a.under(), a.fix(), a.base().w_hom(), a.base().res_hom(), GroupHom::zero(a.under(), a.fix()));
    auto rep = check_mackey_axioms(bad);
    CHECK_FALSE(rep.passed());
    auto* c = rep.find("res(tr(a)) = a + w(a)");
    REQUIRE(c);
    CHECK(c->witness == "a=1: res(tr(a))=0 but a+w(a)=2");
}

TEST_CASE("Burnside Tambara structure") {
    auto t = burnside_tambara(3);
    CHECK(check_tambara_axioms(*t).passed());
    const FinAbGroup& F = t->base().fix();
    CHECK(t->norm(1) == F.encode({1, 0}));
    CHECK(t->norm(2) == F.encode({2, 1}));
    HermMackey f = tambara_forget(t, "A3 (forget)");
    HermMackey a = burnside_mod(3);
    for (Elem x = 0; x < 3; ++x)
        for (Elem b = 0; b < 9; ++b) {
            CHECK(f.act(x, b) == a.act(x, b));
            CHECK(f.act(x, b) == t->fix_ring().mul(t->norm(x), b));
        }
    for (Elem b = 0; b < 9; ++b) CHECK(f.act(0, b) == 0);
    CHECK(check_hermitian_axioms(f).passed());
    CHECK(check_tambara_axioms(*burnside_tambara(5)).passed());
}

TEST_CASE("underline Tambara forgets to underline") {
    for (Int m : {3, 4, 5, 9}) {
        auto t = underline_tambara(zmod(m));
        CHECK(check_tambara_axioms(*t).passed());
        HermMackey f = tambara_forget(t, "f");
        CHECK(f.same_structure(underline_of_ring(zmod(m))));
    }
}

TEST_CASE("rank map and half transfer") {
    HermMorphism d = rank_map_trivial(3);
    CHECK(check_herm_morphism(d).passed());
    HermMorphism h = half_transfer_trivial(3);
    CHECK_FALSE(h.unital);
    CHECK(check_herm_morphism(h).passed());
    CHECK(h.f_fix.apply(Elem(1)) == h.target.fix().encode({0, 2}));
    CHECK(half_transfer_trivial(5).f_fix.apply(Elem(1)) == burnside_mod(5).fix().encode({0, 3}));
    // Claiming unitality for T/2 is caught.
    HermMorphism lie = h;
    lie.unital = true;
    CHECK_FALSE(check_herm_morphism(lie).passed());
    CHECK(same_morphism(compose(d, h), identity_morphism(underline_of_ring(zmod(3)))));
    CHECK(check_herm_morphism(identity_morphism(burnside_mod(3))).passed());
    CHECK_THROWS_AS(half_transfer_trivial(4), EvenModulus);
}

TEST_CASE("sampling is seeded and recorded") {
    HermMackey a = burnside_mod(5);
    SearchPolicy p;
    p.exhaustive_limit = 10;
    p.samples = 500;
    p.seed = 99;
    auto r1 = check_hermitian_axioms(a, p);
    auto r2 = check_hermitian_axioms(a, p);
    CHECK(r1.passed());
    REQUIRE(r1.seed);
    CHECK(*r1.seed == 99);
    auto* c = r1.find("a.(a'.b) = (a a').b, b a generator");
    REQUIRE(c);
    CHECK(c->sampled);
    CHECK(c->cases == 500);
    CHECK(r2.checks.size() == r1.checks.size());
}
