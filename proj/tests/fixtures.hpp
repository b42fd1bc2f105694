#pragma once

// Small algebras shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "hhalg/algebra.hpp"
#include "hhalg/dg.hpp"

namespace fixtures {

using namespace hhalg;

inline const GroundRing F2 = GroundRing::prime_field(2);
inline const GroundRing F3 = GroundRing::prime_field(3);
inline const GroundRing F5 = GroundRing::prime_field(5);
inline const GroundRing ZZ = GroundRing::integers();

inline BaseRing laurent(GroundRing g, int degree = 2) { return BaseRing(g, LaurentGenerator{"v", degree}); }

inline NCTerm term(long c, std::vector<std::size_t> w, int vp = 0) { return NCTerm{Scalar(c), vp, std::move(w)}; }

// Exterior algebra on n generators of the given degree.
inline AlgebraPresentation exterior_presentation(const BaseRing& b, std::size_t n, int degree,
                                                 const std::string& name = "") {
    AlgebraPresentation p{b, {}, {}, std::nullopt, {}, name};
    for (std::size_t i = 0; i < n; ++i) p.generators.push_back({"x" + std::to_string(i + 1), degree});
    for (std::size_t i = 0; i < n; ++i) {
        p.relations.push_back({term(1, {i, i})});
        for (std::size_t j = i + 1; j < n; ++j) p.relations.push_back({term(1, {j, i}), term(1, {i, j})});
    }
    return p;
}

inline GradedAlgebra exterior(const BaseRing& b, std::size_t n, int degree) {
    return realize(exterior_presentation(b, n, degree, "L"));
}

// F_p[y]/(y^T), |y| = degree.
inline GradedAlgebra polytrunc(const GroundRing& g, int degree, std::size_t t) {
    AlgebraPresentation p{BaseRing(g), {{"y", degree}}, {{term(1, std::vector<std::size_t>(t, 0))}}, std::nullopt,
                          {}, "F[y]/(y^" + std::to_string(t) + ")"};
    return realize(p);
}

// Lambda(tau0) over F2[v^{+-1}].
inline GradedAlgebra lambda_tau() {
    AlgebraPresentation p{laurent(F2), {{"t0", 1}}, {{term(1, {0, 0})}}, std::nullopt, {}, "Lambda(t0)"};
    return realize(p);
}

// F2[v^{+-1}][tau0]/(tau0^2 - v).
inline GradedAlgebra b2() {
    AlgebraPresentation p{laurent(F2), {{"t0", 1}}, {{term(1, {0, 0}), term(-1, {}, 1)}}, std::nullopt, {}, "B2"};
    return realize(p);
}

inline GradedAlgebra matrix_algebra(const GroundRing& g, std::size_t n) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back({"e" + std::to_string(i), 0});
    auto a = endomorphism_algebra(GradedFreeModule(BaseRing(g), gens));
    a.set_name("M" + std::to_string(n) + "(" + g.name() + ")");
    return a;
}

// k[e]/(e^2 - e) = k x k.
inline GradedAlgebra etale(const GroundRing& g) {
    AlgebraPresentation p{BaseRing(g), {{"e", 0}}, {{term(1, {0, 0}), term(-1, {0})}}, std::nullopt, {}, "kxk"};
    return realize(p);
}

// A(p, w) over Z[v^{+-1}] with x = p, w = c v.
inline QuotientDGA quotient_dga(long p, long c) {
    return make_quotient_dga(laurent(ZZ), BaseElement{Scalar(p), 0}, BaseElement{Scalar(c), 1});
}

// Truncated K(1)K(1)^op: a0 (degree 1), t1 (degree 2) over F2[v^{+-1}].
inline AlgebraPresentation k1k1_presentation() {
    return AlgebraPresentation{laurent(F2),
                               {{"a0", 1}, {"t1", 2}},
                               {{term(1, {0, 0}), term(-1, {1})},
                                {term(1, {1, 1}, 1), term(-1, {1}, 2)},
                                {term(1, {1, 0}), term(-1, {0, 1})}},
                               std::nullopt,
                               {},
                               "K1K1"};
}

// Sigma = F2[v^{+-1}][t1]/(v t1^2 - v^2 t1).
inline AlgebraPresentation sigma_presentation() {
    return AlgebraPresentation{laurent(F2), {{"t1", 2}}, {{term(1, {0, 0}, 1), term(-1, {0}, 2)}}, std::nullopt, {},
                               "Sigma"};
}

// Columns: images of the Sigma basis words under t1 -> t1.
inline ExactMatrix sigma_inclusion(const Realization& a, const Realization& s) {
    std::vector<Vector> cols;
    for (const auto& w : s.basis_words) {
        std::vector<std::size_t> mapped(w.size(), 1);
        cols.push_back(evaluate(a, {term(1, mapped)}));
    }
    return ExactMatrix::from_columns(a.algebra.ground(), a.algebra.rank(), cols);
}

} // namespace fixtures
