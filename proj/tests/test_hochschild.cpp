#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hhalg/hochschild.hpp"

using namespace hhalg;
using namespace fixtures;

namespace {

// F_p[t]/(t^m), |t| = 0.
GradedAlgebra truncated(const GroundRing& g, std::size_t m) {
    AlgebraPresentation p{BaseRing(g), {{"t", 0}}, {{term(1, std::vector<std::size_t>(m, 0))}}, std::nullopt, {}, ""};
    return realize(p);
}

} // namespace

TEST_CASE("action map on small algebras") {
    auto base = base_algebra(BaseRing(F3));
    auto mu = action_map_mu(base);
    CHECK(mu.matrix == ExactMatrix::identity(F3, 1));

    auto m2 = matrix_algebra(F3, 2);
    auto m = action_map_mu(m2);
    CHECK(m.matrix.rows() == 16);
    CHECK(rank(m.matrix) == 16);
    CHECK(is_isomorphism(m.matrix, m.enveloping.module(), m.endomorphisms.module()).iso);

    // Direct evaluation of mu(a (x) b)(x) = (-1)^{|b||x|} a x b on Lambda(x1, x2).
    auto e = exterior(BaseRing(F3), 2, 1);
    auto me = action_map_mu(e);
    const std::size_t n = e.rank();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x) {
                Vector axb = e.multiply(e.multiply(e.basis_vector(a), e.basis_vector(x)), e.basis_vector(b));
                int sign = (e.degree(b) % 2 && e.degree(x) % 2) ? -1 : 1;
                for (std::size_t i = 0; i < n; ++i) CHECK(me.matrix(i * n + x, a * n + b) == F3.reduce(sign * axb[i]));
            }
    CHECK_FALSE(is_isomorphism(me.matrix, me.enveloping.module(), me.endomorphisms.module()).iso);
    CHECK_NOTHROW(action_map_mu(realize(k1k1_presentation())));
}

TEST_CASE("mu on quotient DGAs") {
    for (auto [p, w, expect] : {std::tuple{3L, 1L, true}, {5L, 1L, true}, {2L, 1L, false}, {3L, 0L, false}}) {
        auto q = quotient_dga(p, w);
        auto f = action_chain_map(action_map_mu(q.algebra));
        auto v = is_quasi_iso(f, -6, 6);
        CHECK(v.quasi_iso == expect);
    }
}

TEST_CASE("mu is an isomorphism for endomorphism algebras of free modules over F5") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> rk(1, 3), deg(-3, 3);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<Generator> gens;
        int r = rk(rng);
        for (int i = 0; i < r; ++i) gens.push_back({"e" + std::to_string(i), deg(rng)});
        auto end = endomorphism_algebra(GradedFreeModule(BaseRing(F5), gens));
        auto mu = action_map_mu(end);
        CHECK(is_isomorphism(mu.matrix, mu.enveloping.module(), mu.endomorphisms.module()).iso);
    }
}

TEST_CASE("Hochschild cohomology of matrix algebras") {
    for (const auto& g : {F3, F5}) {
        auto m2 = matrix_algebra(g, 2);
        auto hh = hochschild_cohomology(m2, 3);
        CHECK(hh.rank(0, 0) == 1);
        CHECK(hh.entries().size() == 1);
        CHECK(hochschild_via_enveloping(m2, 3) == hh);
    }
}

TEST_CASE("Hochschild cohomology of truncated polynomial algebras") {
    // HH^0 = A; HH^n = Ann(m t^{m-1}) or A / (m t^{m-1}) for n >= 1.
    for (std::size_t m : {2u, 3u, 4u}) {
        auto a = truncated(F3, m);
        auto hh = hochschild_cohomology(a, 3);
        CHECK(hh.rank(0, 0) == m);
        for (int n = 1; n <= 3; ++n) CHECK(hh.rank(n, 0) == (m % 3 == 0 ? m : m - 1));
    }
    CHECK(hochschild_via_enveloping(truncated(F3, 2), 3) == hochschild_cohomology(truncated(F3, 2), 3));
}

TEST_CASE("HH^0 is the graded center") {
    std::vector<GradedAlgebra> corpus{matrix_algebra(F3, 2), lambda_tau(), b2(), etale(F3), polytrunc(F3, 2, 3),
                                      exterior(BaseRing(F3), 2, 1), realize(k1k1_presentation())};
    for (const auto& a : corpus) {
        auto hh = hochschild_cohomology(a, 1);
        std::size_t total = hh.total_rank(0);
        CHECK(total == center(a).rank());
    }
}

TEST_CASE("bar complex and enveloping Ext agree") {
    std::vector<GradedAlgebra> corpus{lambda_tau(), b2(), base_algebra(BaseRing(F3)), etale(F3),
                                      exterior(BaseRing(F3), 1, 1), realize(k1k1_presentation())};
    for (const auto& a : corpus) CHECK_NOTHROW(hochschild_via_enveloping(a, 3));
    auto base = hochschild_cohomology(base_algebra(BaseRing(F3)), 3);
    CHECK(base.rank(0, 0) == 1);
    CHECK(base.entries().size() == 1);
}

TEST_CASE("bar complex budget") {
    CHECK_THROWS_AS(hochschild_cohomology(matrix_algebra(F3, 3), 4), BudgetExceeded);
    CHECK_THROWS_AS(hochschild_cohomology(quotient_dga(3, 1).algebra, 2), InputError);
}

TEST_CASE("image of the alpha class under mu") {
    // Direct computation: mu(y (x) 1 - 1 (x) y) = 2 w E_{1y}.
    auto a3 = mu_homology_image(quotient_dga(3, 1));
    CHECK(abs(a3.coefficient.coeff) == 2);
    CHECK(a3.coefficient.v_power == 1);
    CHECK(a3.modulus == 3);
    CHECK(a3.unit);
    CHECK(a3.source_homology == SubquotientPresentation{0, {3}});
    CHECK(a3.target_homology == SubquotientPresentation{0, {3}});

    auto a5 = mu_homology_image(quotient_dga(5, 1));
    CHECK(abs(a5.coefficient.coeff) == 2);
    CHECK(a5.unit);

    auto zero = mu_homology_image(quotient_dga(3, 0));
    CHECK(zero.coefficient.coeff == 0);
    CHECK_FALSE(zero.unit);

    auto two = mu_homology_image(quotient_dga(2, 1));
    CHECK(abs(two.coefficient.coeff) == 2);
    CHECK(two.reduced.coeff == 0);
    CHECK_FALSE(two.unit);

    CHECK_THROWS_AS(mu_homology_image(quotient_dga(1, 1)), InputError);
}
