#include <doctest.h>

#include "fixtures.hpp"
#include "hhalg/morita.hpp"

using namespace hhalg;
using namespace fixtures;

namespace {

// The factor of k x k = k[e]/(e^2 - e) on which e acts by `e_value`.
ModuleOverAlgebra factor(const GradedAlgebra& r, long e_value, Side side, std::string name) {
    std::vector<ExactMatrix> act;
    for (std::size_t i = 0; i < r.rank(); ++i) {
        ExactMatrix m(r.ground(), 1, 1);
        m.set(0, 0, i == *r.unit_index() ? Scalar(1) : r.ground().from_int(e_value));
        act.push_back(m);
    }
    return ModuleOverAlgebra(r, GradedFreeModule(r.base(), {{name, 0}}), act, side, name);
}

std::map<int, std::size_t> ones(int lo, int hi) {
    std::map<int, std::size_t> m;
    for (int t = lo; t <= hi; ++t) m[t] = 1;
    return m;
}

} // namespace

TEST_CASE("relative tensor and Hom") {
    auto r = polytrunc(F3, 1, 4);
    auto k = ModuleOverAlgebra::augmentation(r);
    // R (x)_R k = k, k (x)_R k = k, Hom_R(R, R) = R.
    CHECK(tensor_over(ModuleOverAlgebra::regular(r, Side::Right), k).module.rank() == 1);
    CHECK(tensor_over(ModuleOverAlgebra::augmentation(r, Side::Right), ModuleOverAlgebra::regular(r)).module.rank() == 1);
    CHECK(hom_over(ModuleOverAlgebra::regular(r), ModuleOverAlgebra::regular(r)).basis.size() == 4);
    // Hom_R(k, R) is the socle y^3.
    auto h = hom_over(k, ModuleOverAlgebra::regular(r));
    REQUIRE(h.basis.size() == 1);
    CHECK(h.module.degree(0) == 3);

    auto et = etale(F3);
    auto first = factor(et, 1, Side::Left, "E");
    auto second_right = factor(et, 0, Side::Right, "N");
    CHECK(tensor_over(second_right, first).module.rank() == 0);
    CHECK(hom_over(first, factor(et, 0, Side::Left, "N")).basis.empty());
}

TEST_CASE("endomorphism algebras") {
    auto et = etale(F3);
    auto first = endo_algebra(factor(et, 1, Side::Left, "E"));
    CHECK(first.algebra.rank() == 1);

    auto reg = endo_algebra(ModuleOverAlgebra::regular(et));
    CHECK(reg.algebra.rank() == 2);
    CHECK(algebra_isomorphic(reg.algebra, et).isomorphic);

    auto base = base_algebra(BaseRing(F5));
    std::vector<ExactMatrix> act{ExactMatrix::identity(F5, 2)};
    ModuleOverAlgebra e2(base, GradedFreeModule(BaseRing(F5), {{"a", 0}, {"b", 0}}), act, Side::Left, "F5^2");
    auto m2 = endo_algebra(e2);
    // Central simple of dimension 4 over a finite field, hence M2(F5).
    CHECK(m2.algebra.rank() == 4);
    CHECK(center(m2.algebra).rank() == 1);
    CHECK(radical(m2.algebra).empty());

    // Graded: End_k of k{a, b} with |b| = 2 has degrees -2, 0, 0, 2.
    ModuleOverAlgebra g2(base, GradedFreeModule(BaseRing(F5), {{"a", 0}, {"b", 2}}), act, Side::Left, "g");
    auto eg = endo_algebra(g2);
    CHECK(internal_ranks(eg.algebra.module(), -5, 5) == std::map<int, std::size_t>{{-2, 1}, {0, 2}, {2, 1}});
}

TEST_CASE("F and G on the etale corpus") {
    auto et = etale(F3);
    auto c = morita_context(factor(et, 1, Side::Left, "E"));
    CHECK(c.a.rank() == 1);

    auto fr = functor_F(ModuleOverAlgebra::regular(et, Side::Right), c);
    CHECK(fr.rank() == 1);
    CHECK(functor_F(factor(et, 0, Side::Right, "N"), c).rank() == 0);

    auto g = functor_G(c.e_a, c, 3, -4, 4);
    CHECK(g.rank(0, 0) == 1);
    CHECK(g.entries().size() == 1);

    auto local = completion(factor(et, 1, Side::Right, "M"), c, 3, -4, 4);
    CHECK(local.table == g);
    auto whole = completion(ModuleOverAlgebra::regular(et, Side::Right), c, 3, -4, 4);
    CHECK(whole.table == g);
    CHECK(completion(factor(et, 0, Side::Right, "N"), c, 3, -4, 4).table.entries().empty());
}

TEST_CASE("completion shadows of k[y] and Lambda(x)") {
    const int lo = 0, hi = 8;
    auto poly = polytrunc(F3, 1, 20);
    auto ext = exterior(BaseRing(F3), 1, 1);

    auto c1 = koszul_context(poly, ext, "A = Lambda(x) models RHom_R(k, k)");
    auto r1 = completion(ModuleOverAlgebra::regular(poly, Side::Right), c1, 8, lo, hi);
    CHECK(internal_ranks(r1.table, lo, hi) == ones(lo, hi));
    CHECK(internal_ranks(r1.table, lo, hi) == internal_ranks(poly.module(), lo, hi));
    CHECK(r1.notes.front() == "A = Lambda(x) models RHom_R(k, k)");

    auto c2 = koszul_context(ext, poly, "A = F3[y]/(y^20) models RHom_R(k, k)");
    auto r2 = completion(ModuleOverAlgebra::regular(ext, Side::Right), c2, 8, lo, hi);
    CHECK(internal_ranks(r2.table, lo, hi) == internal_ranks(ext.module(), lo, hi));
    CHECK(internal_ranks(r2.table, lo, hi) == std::map<int, std::size_t>{{0, 1}, {1, 1}});

    CHECK(completion(ModuleOverAlgebra::zero(poly, Side::Right), c1, 4, lo, hi).table.entries().empty());
    CHECK_THROWS_AS(completion_module(ModuleOverAlgebra::regular(poly, Side::Right), c1), InputError);
}

TEST_CASE("completion is idempotent on the underived corpus") {
    auto et = etale(F3);
    auto c = morita_context(factor(et, 1, Side::Left, "E"));
    for (const auto& m : {ModuleOverAlgebra::regular(et, Side::Right), factor(et, 0, Side::Right, "N")}) {
        auto once = completion_module(m, c);
        CHECK(completion(once, c, 3, -4, 4).table == completion(m, c, 3, -4, 4).table);
    }
    auto poly = polytrunc(F3, 1, 4);
    auto ck = morita_context(ModuleOverAlgebra::augmentation(poly));
    auto once = completion_module(ModuleOverAlgebra::regular(poly, Side::Right), ck);
    CHECK(once.rank() == 1);
    CHECK(completion(once, ck, 3, -4, 4).table == completion(ModuleOverAlgebra::regular(poly, Side::Right), ck, 3, -4, 4).table);
}

TEST_CASE("F G round trip") {
    auto et = etale(F3);
    auto c = morita_context(factor(et, 1, Side::Left, "E"));
    for (const auto& y : {ModuleOverAlgebra::regular(c.a), c.e_a, ModuleOverAlgebra::zero(c.a)}) {
        auto rt = roundtrip_FG(y, c, 3, -4, 4);
        CHECK(rt.equivalent);
        CHECK(rt.witness.find("window [-4, 4]") != std::string::npos);
    }

    auto base = base_algebra(BaseRing(F5));
    std::vector<ExactMatrix> act{ExactMatrix::identity(F5, 2)};
    auto cm = morita_context(
        ModuleOverAlgebra(base, GradedFreeModule(BaseRing(F5), {{"a", 0}, {"b", 1}}), act, Side::Left, "E"));
    CHECK(roundtrip_FG(ModuleOverAlgebra::regular(cm.a), cm, 3, -4, 4).equivalent);
    CHECK(roundtrip_FG(cm.e_a, cm, 3, -4, 4).equivalent);

    auto poly = polytrunc(F3, 1, 20);
    CHECK_THROWS_AS(roundtrip_FG(ModuleOverAlgebra::augmentation(poly),
                                 koszul_context(exterior(BaseRing(F3), 1, 1), poly, ""), 3, 0, 4),
                    InputError);
}

TEST_CASE("triangle identities") {
    auto et = etale(F3);
    auto c = morita_context(factor(et, 1, Side::Left, "E"));
    for (const auto& x : {ModuleOverAlgebra::regular(et, Side::Right), factor(et, 0, Side::Right, "N")}) {
        auto t = triangle_identities(x, ModuleOverAlgebra::regular(c.a), c);
        CHECK(t.retract);
        CHECK(t.second);
    }
    auto poly = polytrunc(F3, 1, 4);
    auto ck = morita_context(ModuleOverAlgebra::augmentation(poly));
    auto t = triangle_identities(ModuleOverAlgebra::regular(poly, Side::Right), ck.e_a, ck);
    CHECK(t.retract);
    CHECK(t.second);

    auto base = base_algebra(BaseRing(F5));
    std::vector<ExactMatrix> act{ExactMatrix::identity(F5, 2)};
    auto cm = morita_context(
        ModuleOverAlgebra(base, GradedFreeModule(BaseRing(F5), {{"a", 0}, {"b", 1}}), act, Side::Left, "E"));
    auto tm = triangle_identities(ModuleOverAlgebra::regular(base, Side::Right), ModuleOverAlgebra::regular(cm.a), cm);
    CHECK(tm.retract);
    CHECK(tm.second);
}

TEST_CASE("torsion side") {
    const int lo = 0, hi = 8;
    auto ext = exterior(BaseRing(F3), 1, 1);
    auto poly = polytrunc(F3, 1, 20);
    auto c = koszul_context(ext, poly, "A = F3[y]/(y^20) models RHom_R(k, k)");

    auto ta = functor_T(ModuleOverAlgebra::regular(poly, Side::Right), c);
    CHECK(ta.rank() == 1);
    auto ts = torsion_side_TS(ModuleOverAlgebra::regular(poly, Side::Right), ta, c, 8, lo, hi);
    CHECK(ts.t.rank(0, 0) == 1);
    CHECK(ts.t.entries().size() == 1);
    // S(T(A)) ~ A in the window.
    CHECK(internal_ranks(ts.s, lo, hi) == internal_ranks(poly.module(), lo, hi));

    auto zero = torsion_side_TS(ModuleOverAlgebra::zero(poly, Side::Right), ModuleOverAlgebra::zero(ext), c, 4, lo, hi);
    CHECK(zero.t.entries().empty());
    CHECK(zero.s.entries().empty());
}
