#include <doctest.h>

#include <random>
#include <set>

#include "hhalg/linalg.hpp"

using namespace hhalg;

namespace {

const GroundRing Z = GroundRing::integers();
const GroundRing Q = GroundRing::rationals();

ExactMatrix random_int_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> dist(-5, 5);
    ExactMatrix m(Z, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(dist(rng)));
    return m;
}

// |F_p^rows / image| by enumerating every source vector.
std::size_t enumerate_cokernel_size(const ExactMatrix& m, long p) {
    std::set<std::vector<long>> image;
    std::vector<long> x(m.cols(), 0);
    while (true) {
        std::vector<long> y(m.rows(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            long acc = 0;
            for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j).get_num().get_si() * x[j];
            y[i] = ((acc % p) + p) % p;
        }
        image.insert(y);
        std::size_t k = 0;
        while (k < x.size() && ++x[k] == p) x[k++] = 0;
        if (k == x.size()) break;
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) total *= static_cast<std::size_t>(p);
    return total / image.size();
}

std::size_t cokernel_size_mod_p(const SubquotientPresentation& c, long p) {
    std::size_t exponent = c.free_rank;
    for (const auto& t : c.torsion)
        if (t % p == 0) ++exponent;
    std::size_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) out *= static_cast<std::size_t>(p);
    return out;
}

void check_smith(const ExactMatrix& m, PivotStrategy strategy) {
    SmithForm s = smith_normal_form(m, strategy);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant_integer(s.U)) == 1);
    CHECK(abs(determinant_integer(s.V)) == 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(sgn(s.D(i, j)) == 0);
    auto diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
        CHECK(mpz_divisible_p(diag[i + 1].get_num().get_mpz_t(), diag[i].get_num().get_mpz_t()));
    for (std::size_t i = s.rank; i < diag.size(); ++i) CHECK(sgn(diag[i]) == 0);
}

} // namespace

TEST_CASE("smith form of small integer matrices") {
    SUBCASE("zero 1x1") {
        auto s = smith_normal_form(ExactMatrix(Z, 1, 1));
        CHECK(s.D == ExactMatrix(Z, 1, 1));
    }
    SUBCASE("[[2,4],[6,8]] has invariant factors 2, 4") {
        auto m = ExactMatrix::from_rows(Z, {{2, 4}, {6, 8}});
        auto s = smith_normal_form(m);
        CHECK(s.D == ExactMatrix::from_rows(Z, {{2, 0}, {0, 4}}));
        // d1 = gcd of entries, d1 d2 = |det|
        CHECK(abs(determinant_integer(m)) == 8);
        check_smith(m, PivotStrategy::MinimalAbsolute);
        check_smith(m, PivotStrategy::FirstNonzero);
    }
    SUBCASE("identity") {
        auto id = ExactMatrix::identity(Z, 4);
        CHECK(smith_normal_form(id).D == id);
    }
    SUBCASE("field elimination gives 0/1 diagonal") {
        auto m = ExactMatrix::from_rows(GroundRing::prime_field(5), {{2, 4}, {1, 2}});
        auto s = smith_normal_form(m);
        CHECK(s.U * m * s.V == s.D);
        CHECK(s.rank == 1);
        CHECK(s.D(0, 0) == 1);
    }
}

TEST_CASE("kernel basis") {
    auto f2 = GroundRing::prime_field(2);
    auto k = kernel_basis(ExactMatrix::from_rows(f2, {{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vector{1, 1});
    CHECK(kernel_basis(ExactMatrix::from_rows(Q, {{1, 2}, {3, 4}})).empty());
    CHECK(kernel_basis(ExactMatrix::from_rows(Z, {{2}})).empty());

    auto kz = kernel_basis(ExactMatrix::from_rows(Z, {{2, 4, 6}}));
    CHECK(kz.size() == 2);
    for (const auto& v : kz) CHECK(ExactMatrix::from_rows(Z, {{2, 4, 6}}).apply(v) == Vector{0});
}

TEST_CASE("cokernel presentations") {
    CHECK(cokernel(ExactMatrix::from_rows(Z, {{2}})) == SubquotientPresentation{0, {2}});
    CHECK(cokernel(ExactMatrix(GroundRing::prime_field(3), 1, 1)) == SubquotientPresentation{1, {}});
    CHECK(cokernel(ExactMatrix::from_rows(Z, {{1, 0}, {0, 6}})) == SubquotientPresentation{0, {6}});
    // Z^2 / <(2, 0), (0, 3)> = Z/6
    CHECK(cokernel(ExactMatrix::from_rows(Z, {{2, 0}, {0, 3}})) == SubquotientPresentation{0, {6}});
}

TEST_CASE("solve") {
    auto id = ExactMatrix::identity(Z, 3);
    Vector b{4, -2, 7};
    CHECK(solve(id, b) == b);
    Vector three{3};
    CHECK_FALSE(solve(ExactMatrix::from_rows(Z, {{2}}), three).has_value());
    auto x = solve(ExactMatrix::from_rows(Q, {{2}}), three);
    REQUIRE(x);
    CHECK((*x)[0] == Scalar(3, 2));
    Vector wrong{1, 2};
    CHECK_THROWS_AS(solve(ExactMatrix::from_rows(Z, {{2}}), wrong), InputError);
}

TEST_CASE("ground ring parsing and reduction") {
    CHECK(GroundRing::parse("F7").characteristic() == 7);
    CHECK_THROWS_AS(GroundRing::parse("F4"), InputError);
    CHECK_THROWS_AS(GroundRing::parse("R"), InputError);
    auto f5 = GroundRing::prime_field(5);
    CHECK(f5.reduce(Scalar(-1)) == 4);
    CHECK(f5.reduce(Scalar(1, 2)) == 3);
    CHECK(f5.inverse(Scalar(2)) == 3);
}

TEST_CASE("homology over Z") {
    // 0 -> Z --2--> Z -> 0 : H_0 = Z/2.
    auto two = ExactMatrix::from_rows(Z, {{2}});
    CHECK(homology_at(ExactMatrix(Z, 0, 1), two) == SubquotientPresentation{0, {2}});
    CHECK(homology_at(two, ExactMatrix(Z, 1, 0)).is_zero());
}

TEST_CASE("random integer matrices: smith identity, strategies and enumeration oracle") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_int_matrix(rng, static_cast<std::size_t>(size(rng)), static_cast<std::size_t>(size(rng)));
        check_smith(m, PivotStrategy::MinimalAbsolute);
        check_smith(m, PivotStrategy::FirstNonzero);
        auto a = cokernel(m, PivotStrategy::MinimalAbsolute);
        CHECK(a == cokernel(m, PivotStrategy::FirstNonzero));
        for (long p : {2L, 3L}) CHECK(cokernel_size_mod_p(a, p) == enumerate_cokernel_size(m, p));
        if (m.rows() == m.cols() && a.free_rank == 0) {
            mpz_class order = 1;
            for (const auto& t : a.torsion) order *= t;
            CHECK(order == abs(determinant_integer(m)));
        }
    }
}

TEST_CASE("rank plus nullity over prime fields") {
    std::mt19937 rng(7);
    for (long p : {2L, 3L, 5L}) {
        auto g = GroundRing::prime_field(p);
        for (int trial = 0; trial < 30; ++trial) {
            std::uniform_int_distribution<int> size(1, 6), entry(0, static_cast<int>(p) - 1);
            std::size_t r = static_cast<std::size_t>(size(rng)), c = static_cast<std::size_t>(size(rng));
            ExactMatrix m(g, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(entry(rng)));
            auto k = kernel_basis(m);
            CHECK(rank(m) + k.size() == c);
            for (const auto& v : k) {
                Vector image = m.apply(v);
                CHECK(std::all_of(image.begin(), image.end(), [](const Scalar& x) { return sgn(x) == 0; }));
            }
        }
    }
}

TEST_CASE("subspace insertion") {
    auto f3 = GroundRing::prime_field(3);
    Subspace s(f3, 3);
    CHECK(s.insert(Vector{1, 2, 0}));
    CHECK(s.insert(Vector{0, 1, 1}));
    CHECK_FALSE(s.insert(Vector{1, 0, 1}));
    CHECK(s.contains(Vector{2, 1, 0}));
    CHECK_FALSE(s.contains(Vector{0, 0, 1}));
    CHECK(s.dimension() == 2);
    Vector v{1, 1, 1};
    Vector r = s.reduce(v);
    CHECK(r == Vector{0, 0, 2});
    for (std::size_t p : s.pivots()) CHECK(sgn(r[p]) == 0);
    Vector diff{f3.reduce(v[0] - r[0]), f3.reduce(v[1] - r[1]), f3.reduce(v[2] - r[2])};
    CHECK(s.contains(diff));
    Subspace q(Q, 2);
    CHECK(q.insert(Vector{Scalar(1, 2), 1}));
    CHECK(q.contains(Vector{1, 2}));
}
