#include <doctest.h>

#include "hhalg/algebra.hpp"

using namespace hhalg;

namespace {

const GroundRing F2 = GroundRing::prime_field(2);
const GroundRing F3 = GroundRing::prime_field(3);

BaseRing laurent(GroundRing g) { return BaseRing(g, LaurentGenerator{"v", 2}); }

NCTerm term(long c, std::vector<std::size_t> w, int vp = 0) { return NCTerm{Scalar(c), vp, std::move(w)}; }

GradedAlgebra exterior_tau(const BaseRing& b) {
    AlgebraPresentation p{b, {{"t0", 1}}, {{term(1, {0, 0})}}, std::nullopt, {}, "L(t0)"};
    return realize(p);
}

GradedAlgebra b2() {
    AlgebraPresentation p{laurent(F2), {{"t0", 1}}, {{term(1, {0, 0}), term(-1, {}, 1)}}, std::nullopt, {}, "B2"};
    return realize(p);
}

GradedAlgebra one_generator(GroundRing g, int deg, std::vector<NCTerm> relation) {
    AlgebraPresentation p{BaseRing(g), {{"t", deg}}, {relation}, std::nullopt, {}, ""};
    return realize(p);
}

GradedAlgebra matrix_algebra(GroundRing g, std::size_t n) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back({"e" + std::to_string(i), 0});
    return endomorphism_algebra(GradedFreeModule(BaseRing(g), gens));
}

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("realize presentations") {
    auto l = exterior_tau(laurent(F2));
    CHECK(l.rank() == 2);
    CHECK(l.multiply(l.basis_vector(1), l.basis_vector(1)) == vec({0, 0}));

    auto b = b2();
    CHECK(b.rank() == 2);
    // t0 * t0 = v, the canonical basis element 1 in degree 2.
    CHECK(b.multiply(b.basis_vector(1), b.basis_vector(1)) == vec({1, 0}));
    CHECK_FALSE(b.is_augmented());

    auto y3 = one_generator(F3, 2, {term(1, {0, 0, 0})});
    CHECK(y3.rank() == 3);
    CHECK(y3.is_augmented());

    AlgebraPresentation trunc{BaseRing(F3), {{"y", 1}}, {}, 20, {}, "F3[y]"};
    CHECK(realize(trunc).rank() == 21);

    AlgebraPresentation free_unbounded{BaseRing(F3), {{"y", 1}}, {}, std::nullopt, {}, ""};
    CHECK_THROWS_AS(realize(free_unbounded), BudgetExceeded);

    AlgebraPresentation inhomogeneous{BaseRing(F3), {{"a", 1}, {"b", 2}}, {{term(1, {0, 0}), term(-1, {0, 1})}},
                                      std::nullopt, {}, ""};
    CHECK_THROWS_AS(realize(inhomogeneous), InputError);
}

TEST_CASE("two exterior generators anticommute") {
    AlgebraPresentation p{BaseRing(F3),
                          {{"x1", -1}, {"x2", -1}},
                          {{term(1, {0, 0})}, {term(1, {1, 1})}, {term(1, {0, 1}), term(1, {1, 0})}},
                          std::nullopt,
                          {},
                          ""};
    auto r = realize_presentation(p);
    CHECK(r.algebra.rank() == 4);
    auto x1 = r.generator_images[0], x2 = r.generator_images[1];
    auto a = r.algebra.multiply(x1, x2), b = r.algebra.multiply(x2, x1);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(F3.reduce(a[k] + b[k]) == 0);
    CHECK(r.algebra.is_graded_commutative());
}

TEST_CASE("opposite algebra") {
    AlgebraPresentation p{BaseRing(GroundRing::integers(), LaurentGenerator{"v", 2}),
                          {{"y", 1}},
                          {{term(1, {0, 0}), term(-1, {}, 1)}},
                          std::nullopt,
                          {},
                          "A"};
    auto a = realize(p);
    auto op = opposite(a);
    CHECK(op.multiply(op.basis_vector(1), op.basis_vector(1)) == vec({-1, 0}));
    auto back = opposite(op);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) CHECK(back.product(i, j) == a.product(i, j));

    auto comm = one_generator(F3, 2, {term(1, {0, 0, 0})});
    auto cop = opposite(comm);
    for (std::size_t i = 0; i < comm.rank(); ++i)
        for (std::size_t j = 0; j < comm.rank(); ++j) CHECK(cop.product(i, j) == comm.product(i, j));
}

TEST_CASE("tensor products") {
    auto l = exterior_tau(laurent(F2));
    auto env = tensor(l, opposite(l));
    CHECK(env.rank() == 4);
    // (t0 (x) 1)(1 (x) t0) = t0 (x) t0
    CHECK(env.multiply(env.basis_vector(2), env.basis_vector(1)) == env.basis_vector(3));
    auto unit = tensor(l, base_algebra(l.base()));
    CHECK(unit.rank() == l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 0; j < l.rank(); ++j) CHECK(unit.product(i, j) == l.product(i, j));
    auto m2 = matrix_algebra(F3, 2);
    CHECK(tensor(m2, m2).rank() == 16);
}

TEST_CASE("opposite of a tensor product is the swapped tensor of opposites") {
    AlgebraPresentation pa{BaseRing(F3), {{"x", 1}}, {{term(1, {0, 0})}}, std::nullopt, {}, "A"};
    AlgebraPresentation pb{BaseRing(F3), {{"y", 1}, {"z", 2}}, {{term(1, {0, 0})}, {term(1, {1, 1})}, {term(1, {1, 0}), term(-1, {0, 1})}}, std::nullopt, {}, "B"};
    auto a = realize(pa), b = realize(pb);
    auto lhs = opposite(tensor(a, b));
    auto rhs = tensor(opposite(b), opposite(a));
    const std::size_t na = a.rank(), nb = b.rank();
    // e_i (x) f_j  <->  (-1)^{|i||j|} f_j (x) e_i
    auto relabel = [&](std::size_t idx) {
        std::size_t i = idx / nb, j = idx % nb;
        return std::make_pair(j * na + i, koszul(a.degree(i), b.degree(j)));
    };
    for (std::size_t x = 0; x < lhs.rank(); ++x)
        for (std::size_t y = 0; y < lhs.rank(); ++y) {
            Vector mapped(rhs.rank(), Scalar(0));
            for (const auto& [k, c] : lhs.product(x, y)) {
                auto [kk, s] = relabel(k);
                mapped[kk] = F3.reduce(mapped[kk] + s * c);
            }
            auto [xx, sx] = relabel(x);
            auto [yy, sy] = relabel(y);
            Vector direct = rhs.multiply(rhs.basis_vector(xx), rhs.basis_vector(yy));
            for (auto& c : direct) c = F3.reduce(sx * sy * c);
            CHECK(mapped == direct);
        }
}

TEST_CASE("graded center") {
    auto m2 = matrix_algebra(F3, 2);
    auto c = center(m2);
    CHECK(c.rank() == 1);
    for (const auto& z : c.basis)
        for (const auto& w : c.basis) {
            auto prod = m2.multiply(z, w);
            bool inside = false;
            for (const auto& b : c.basis) inside = inside || express_in({b}, prod, F3).has_value();
            CHECK(inside);
        }
    auto comm = one_generator(F3, 2, {term(1, {0, 0, 0})});
    CHECK(center(comm).rank() == comm.rank());

    auto b = b2();
    auto cb = center(b);
    CHECK(cb.per_class.at(0).free_rank == 1);
    CHECK(cb.per_class.at(1).free_rank == 1);
}

TEST_CASE("jacobson radical") {
    CHECK(radical(one_generator(F2, 0, {term(1, {0, 0}), term(-1, {0})})).empty());
    auto nil = radical(one_generator(F2, 0, {term(1, {0, 0})}));
    REQUIRE(nil.size() == 1);
    CHECK(nil[0] == vec({0, 1}));
    // v t1^2 - v^2 t1 with |t1| = 2
    AlgebraPresentation sigma{laurent(F2), {{"t1", 2}}, {{term(1, {0, 0}, 1), term(-1, {0}, 2)}}, std::nullopt, {}, "Sigma"};
    CHECK(radical(realize(sigma)).empty());
    CHECK(radical(exterior_tau(laurent(F2))).size() == 1);
    CHECK(radical(b2()).empty());

    auto cube = one_generator(F3, 0, {term(1, {0, 0, 0})});
    auto rad = radical(cube);
    CHECK(rad.size() == 2);
    auto q = quotient_algebra(cube, rad);
    CHECK(q.algebra.rank() == 1);
    CHECK(radical(q.algebra).empty());

    CHECK_THROWS_AS(radical(one_generator(GroundRing::rationals(), 0, {term(1, {0, 0})})), UnsupportedGround);
}

TEST_CASE("primitive idempotents of an etale algebra") {
    auto etale = one_generator(F3, 0, {term(1, {0, 0}), term(-1, {0})});
    auto ids = primitive_idempotents(etale);
    CHECK(ids.size() == 2);
    for (const auto& e : ids) CHECK(etale.multiply(e, e) == e);
}

TEST_CASE("isomorphism search") {
    auto l = exterior_tau(laurent(F2));
    auto self = algebra_isomorphic(l, l);
    CHECK(self.isomorphic);
    REQUIRE(self.witness);
    CHECK(*self.witness == ExactMatrix::identity(F2, 2));
    auto res = algebra_isomorphic(l, b2());
    CHECK_FALSE(res.isomorphic);
    CHECK(res.candidates_examined == 2);
    CHECK_FALSE(algebra_isomorphic(matrix_algebra(F2, 2), l).isomorphic);
    CHECK_THROWS_AS(algebra_isomorphic(matrix_algebra(F3, 2), matrix_algebra(F3, 2), 10), BudgetExceeded);
}

TEST_CASE("unit kernel") {
    CHECK(unit_kernel(matrix_algebra(F3, 2)).is_zero());
    // Z/6 modelled as Z<y>/(y^2), |y| = 1, dy = 6.
    AlgebraPresentation p{BaseRing(GroundRing::integers()), {{"y", 1}}, {{term(1, {0, 0})}}, std::nullopt,
                          {{0, {term(6, {})}}}, "Z/6"};
    auto a = realize(p);
    CHECK(a.has_differential());
    CHECK(unit_kernel(a).generator == 6);
}

TEST_CASE("unit basis change keeps the algebra") {
    auto m2 = matrix_algebra(F3, 2);
    auto u = with_unit_basis(m2);
    CHECK(u.unit_index() == std::optional<std::size_t>(0));
    CHECK(center(u).rank() == 1);
}
