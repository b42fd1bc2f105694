#include <doctest.h>

#include "fixtures.hpp"
#include "hhalg/resolve.hpp"

using namespace hhalg;
using namespace fixtures;

namespace {

long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Hilbert function of the stage modules: sum_s (-1)^s dim (F_s)_t.
long alternating_stage_dimension(const Resolution& r, int t) {
    long acc = 0;
    for (std::size_t s = 0; s < r.stages.size(); ++s)
        acc += (s % 2 ? -1 : 1) * static_cast<long>(r.stages[s].rank_in_degree(t));
    return acc;
}

Vector single_class(const Resolution& r, std::size_t s, int t) {
    auto reps = ext_representatives(r, r.target, s, t);
    REQUIRE(reps.size() == 1);
    return reps[0];
}

} // namespace

TEST_CASE("exterior algebra on one generator of degree -1") {
    auto a = exterior(BaseRing(F3), 1, -1);
    auto r = minimal_resolution(a, 6, -16, 16);
    CHECK(r.minimal);
    for (auto rank : r.stage_ranks()) CHECK(rank == 1);
    auto t = ext_table(r, r.target);
    for (int s = 0; s <= 6; ++s) {
        CHECK(t.rank(s, -s) == 1);
        CHECK(t.total_rank(s) == 1);
    }
    CHECK(t.entries().size() == 7);
    // Hilbert series: P_A(t) * sum_s (-1)^s P_{V_s}(t) = 1
    for (int deg = -6; deg <= 0; ++deg) CHECK(alternating_stage_dimension(r, deg) == (deg == 0 ? 1 : 0));
}

TEST_CASE("truncated polynomial algebras: periodic resolution oracle") {
    for (std::size_t T : {2u, 3u, 5u}) {
        auto a = polytrunc(F3, 1, T);
        auto r = minimal_resolution(a, 6, -100, 100);
        auto t = ext_table(r, r.target);
        for (int s = 0; s <= 6; ++s) {
            // stage 2k sits in degree kT, stage 2k+1 in degree kT + 1
            int deg = (s / 2) * static_cast<int>(T) + (s % 2);
            CHECK(t.rank(s, deg) == 1);
            CHECK(t.total_rank(s) == 1);
        }
        const int top = 3 * static_cast<int>(T);
        for (int deg = 0; deg < top; ++deg) CHECK(alternating_stage_dimension(r, deg) == (deg == 0 ? 1 : 0));
    }
    auto window = ext_table(polytrunc(F3, 1, 20), 5, -16, 16);
    std::vector<std::size_t> expect{1, 1, 0, 0, 0, 0};
    for (int s = 0; s <= 5; ++s) CHECK(window.total_rank(s) == expect[static_cast<std::size_t>(s)]);
}

TEST_CASE("base algebra resolves in stage 0") {
    auto r = minimal_resolution(base_algebra(BaseRing(F3)), 3, -4, 4);
    CHECK(r.stage_ranks() == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("exterior algebras on n generators: binomial ranks") {
    for (std::size_t n : {1u, 2u, 3u}) {
        auto a = exterior(BaseRing(F3), n, -1);
        auto t = ext_table(a, 6, -16, 16);
        for (int s = 0; s <= 6; ++s)
            CHECK(t.rank(s, -s) == static_cast<std::size_t>(binomial(s + static_cast<long>(n) - 1,
                                                                     static_cast<long>(n) - 1)));
    }
}

TEST_CASE("Lambda(tau0) over F2[v^{+-1}] is rank 1 at (s, s)") {
    auto t = ext_table(lambda_tau(), 8, -16, 16);
    CHECK(t.period() == 2);
    for (int s = 0; s <= 8; ++s) {
        CHECK(t.rank(s, s) == 1);
        CHECK(t.total_rank(s) == 1);
    }
}

TEST_CASE("Yoneda squares") {
    auto r = minimal_resolution(lambda_tau(), 4, -16, 16);
    auto y = single_class(r, 1, 1);
    auto sq = yoneda_square(r, y, 1);
    CHECK(sq.nonzero);
    CHECK(sq.s == 2);
    auto cube = yoneda_power(r, y, 1, 3);
    CHECK(cube.nonzero);

    auto p = minimal_resolution(polytrunc(F3, 1, 20), 4, -16, 16);
    auto x = single_class(p, 1, 1);
    CHECK_FALSE(yoneda_square(p, x, 1).nonzero);

    Vector zero(y.size(), Scalar(0));
    auto z = yoneda_square(r, zero, 1);
    CHECK_FALSE(z.nonzero);
    for (const auto& c : z.cocycle) CHECK(sgn(c) == 0);

    for (std::size_t n : {2u, 3u}) {
        auto e = minimal_resolution(exterior(BaseRing(F3), n, -1), 3, -16, 16);
        auto reps = ext_representatives(e, e.target, 1, -1);
        CHECK(reps.size() == n);
        for (const auto& c : reps) CHECK(yoneda_square(e, c, -1).nonzero);
    }
    CHECK_THROWS_AS(yoneda_square(minimal_resolution(lambda_tau(), 2, -4, 4), y, 1), InputError);
}

TEST_CASE("Ext is independent of the generator ordering") {
    auto ab = [](bool swap) {
        std::size_t a = swap ? 1 : 0, b = swap ? 0 : 1;
        AlgebraPresentation p{BaseRing(F3), {}, {}, std::nullopt, {}, ""};
        p.generators.resize(2);
        p.generators[a] = {"a", 1};
        p.generators[b] = {"b", 2};
        p.relations = {{term(1, {a, a})}, {term(1, {b, b, b})}, {term(1, {b, a}), term(-1, {a, b})}};
        return realize(p);
    };
    CHECK(ext_table(ab(false), 5, -20, 20) == ext_table(ab(true), 5, -20, 20));

    auto x = exterior_presentation(BaseRing(F3), 3, -1);
    auto y = x;
    std::swap(y.generators[0], y.generators[2]);
    for (auto& rel : y.relations)
        for (auto& term : rel)
            for (auto& letter : term.word) letter = letter == 0 ? 2 : (letter == 2 ? 0 : letter);
    CHECK(ext_table(realize(x), 4, -16, 16) == ext_table(realize(y), 4, -16, 16));
}

TEST_CASE("Tor over an exterior algebra") {
    auto a = exterior(BaseRing(F3), 1, -1);
    auto r = minimal_resolution(a, 5, -16, 16);
    auto t = tor_table(ModuleOverAlgebra::augmentation(a, Side::Right), r);
    for (int s = 0; s <= 5; ++s) CHECK(t.rank(s, -s) == 1);
    auto free = tor_table(ModuleOverAlgebra::regular(a, Side::Right), r);
    CHECK(free.rank(0, 0) == 1);
    CHECK(free.total_rank(1) == 0);
    CHECK(tor_table(ModuleOverAlgebra::zero(a, Side::Right), r).entries().empty());
}

TEST_CASE("resolving the regular module") {
    auto a = polytrunc(F3, 2, 4);
    auto r = resolve(ModuleOverAlgebra::regular(a), 3, -16, 16);
    CHECK(r.stage_ranks() == std::vector<std::size_t>{1, 0, 0, 0, 0});
    auto t = ext_table(r, ModuleOverAlgebra::augmentation(a));
    CHECK(t.rank(0, 0) == 1);
    CHECK(t.entries().size() == 1);
}

TEST_CASE("non-augmented algebras use a non-minimal cover") {
    auto m2 = matrix_algebra(F3, 2);
    auto r = resolve(ModuleOverAlgebra::regular(m2), 2, -4, 4);
    CHECK_FALSE(r.minimal);
    auto t = ext_table(r, ModuleOverAlgebra::regular(m2));
    CHECK(t.rank(0, 0) == 4);
    CHECK(t.total_rank(1) == 0);
    CHECK_THROWS_AS(minimal_resolution(m2, 2, -4, 4), InputError);
    CHECK_THROWS_AS(minimal_resolution(polytrunc(ZZ, 1, 2), 2, -4, 4), UnsupportedGround);
}

TEST_CASE("base change through a semisimple subalgebra") {
    auto ra = realize_presentation(k1k1_presentation());
    auto rs = realize_presentation(sigma_presentation());
    CHECK(ra.algebra.rank() == 4);
    auto via = ext_base_change(ra.algebra, rs.algebra, sigma_inclusion(ra, rs), 6, -16, 16);
    CHECK(via == ext_table(lambda_tau(), 6, -16, 16));

    auto l = lambda_tau();
    auto trivial = base_algebra(l.base());
    ExactMatrix unit = ExactMatrix::from_columns(F2, l.rank(), {l.unit()});
    CHECK(ext_base_change(l, trivial, unit, 4, -8, 8) == ext_table(l, 4, -8, 8));

    // Lambda(t0) inside itself: t0 is nilpotent.
    CHECK_THROWS_AS(ext_base_change(l, l, ExactMatrix::identity(F2, 2), 3, -4, 4), InputError);
}
