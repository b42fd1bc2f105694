#pragma once

// Hochschild cohomology through the normalized bar complex and through Ext
// over the enveloping algebra, and the action map mu : A (x) A^op -> End(A).

#include <string>

#include "hhalg/dg.hpp"
#include "hhalg/resolve.hpp"
#include "hhalg/table.hpp"

namespace hhalg {

// Largest cochain dimension the bar complex will build.
inline constexpr std::size_t kMaxBarDimension = 4000;

struct ActionMap {
    GradedAlgebra enveloping;     // tensor(A, opposite(A))
    GradedAlgebra endomorphisms;  // endomorphism_dga of A's underlying complex
    ExactMatrix matrix;           // rank(End) x rank(A (x) A^op)
};

// mu(a (x) b)(x) = (-1)^{|b||x|} a x b. Verified to be an algebra map on basis
// pairs and a chain map when A has a differential.
ActionMap action_map_mu(const GradedAlgebra& a);
ChainMap action_chain_map(const ActionMap& mu);
// A as a left module over its enveloping algebra through mu.
ModuleOverAlgebra enveloping_module(const GradedAlgebra& a);

// Per-class Smith-form invertibility of mu (all blocks square, all invariant factors units).
struct IsoVerdict {
    bool iso = false;
    std::string witness;
};
IsoVerdict is_isomorphism(const ExactMatrix& m, const GradedFreeModule& source, const GradedFreeModule& target);

// HH^n(A, A) at (n, t) with t the internal degree of the cochain, n <= n_max,
// t restricted to lo..hi without a Laurent generator. Throws BudgetExceeded
// naming the largest completed n when the cochain dimension exceeds the limit.
BigradedTable hochschild_cohomology(const GradedAlgebra& a, int n_max, int lo = -16, int hi = 16);
// Ext_{A (x) A^op}(A, A) with t negated to match the cochain convention;
// asserted equal to hochschild_cohomology.
BigradedTable hochschild_via_enveloping(const GradedAlgebra& a, int n_max, int lo = -16, int hi = 16);

struct MuImage {
    SubquotientPresentation source_homology; // H_{d+1}(A (x) A^op)
    SubquotientPresentation target_homology; // H_{d+1}(End(A))
    Vector alpha;                            // cycle coordinates in A (x) A^op
    Vector beta;                             // cycle coordinates in End(A)
    BaseElement coefficient;                 // mu(alpha) = coefficient * beta
    mpz_class modulus = 0;                   // order of the target homology (0 over a field)
    BaseElement reduced;                     // coefficient modulo the boundaries
    bool unit = false;
    std::string note;
};
MuImage mu_homology_image(const QuotientDGA& q);

} // namespace hhalg
