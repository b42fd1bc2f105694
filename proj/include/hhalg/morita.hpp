#pragma once

// Finite-window Morita functors for a left R-module E with A acting on E.
//
// F(X) = X (x)_R E and T(X) = X (x)_A E are plain relative tensors. G(Y) =
// Ext_A(E, Y) and S(M) = Ext_R(E, M) go through resolutions of E. The unit,
// counit and evaluation maps are built as matrices so the triangle identities
// and round trips are checked on actual maps. Field grounds, no Laurent
// generator, no differentials.

#include <map>
#include <string>
#include <vector>

#include "hhalg/resolve.hpp"

namespace hhalg {

// X (x)_B Y for X a right and Y a left B-module.
struct TensorQuotient {
    GradedFreeModule module;
    // rank(quotient) x rank(X) * rank(Y); x_i (x) y_j is column i * rank(Y) + j.
    ExactMatrix projection;
    // Quotient generator q is the class of x_i (x) y_j at positions[q].
    std::vector<std::size_t> positions;
};
TensorQuotient tensor_over(const ModuleOverAlgebra& x, const ModuleOverAlgebra& y);

// Hom_B(E, Y) for left B-modules, as vectors in graded_hom_module(E, Y)
// coordinates (f(e_i) has y_j-coefficient at i * rank(Y) + j).
struct HomOver {
    GradedFreeModule module;
    std::vector<Vector> basis;
};
HomOver hom_over(const ModuleOverAlgebra& e, const ModuleOverAlgebra& y);

struct EndoAlgebra {
    GradedAlgebra algebra;        // End_R(E) under composition
    ModuleOverAlgebra e_over_a;   // E as a left End_R(E)-module
    HomOver hom;
};
EndoAlgebra endo_algebra(const ModuleOverAlgebra& e);

struct MoritaContext {
    GradedAlgebra r;
    ModuleOverAlgebra e_r; // E as a left R-module
    GradedAlgebra a;
    ModuleOverAlgebra e_a; // E as a left A-module, same underlying module
    // A is a supplied model of the derived endomorphism algebra rather than End_R(E).
    bool derived_model = false;
    std::string note;
};
// A = End_R(E).
MoritaContext morita_context(const ModuleOverAlgebra& e_r);
// A supplied as the derived endomorphism algebra of E = base; both actions are
// the augmentations.
MoritaContext koszul_context(const GradedAlgebra& r, const GradedAlgebra& a, std::string note);

// X (x)_R E as a left A-module, a (x (x) e) = (-1)^{|a||x|} x (x) a e.
ModuleOverAlgebra functor_F(const ModuleOverAlgebra& x, const MoritaContext& c);
// Ext_A(E, Y).
BigradedTable functor_G(const ModuleOverAlgebra& y, const MoritaContext& c, int s_max, int lo, int hi);
// Hom_A(E, Y) as a right R-module, (f r)(e) = f(r e).
ModuleOverAlgebra functor_G0(const ModuleOverAlgebra& y, const MoritaContext& c);

struct CompletionResult {
    std::string input;
    BigradedTable table; // Ext_A(E, F(M))
    int lo = 0, hi = 0;
    std::vector<std::string> notes;
};
CompletionResult completion(const ModuleOverAlgebra& m, const MoritaContext& c, int s_max, int lo, int hi);
// G0(F(M)) as a right R-module.
ModuleOverAlgebra completion_module(const ModuleOverAlgebra& m, const MoritaContext& c);

struct RoundTrip {
    bool equivalent = false;
    std::string witness;
    int lo = 0, hi = 0;
};
// Y ~ F(G(Y)): higher Ext_A(E, Y) vanishes in the window and the counit
// Hom_A(E, Y) (x)_R E -> Y is an A-linear isomorphism.
RoundTrip roundtrip_FG(const ModuleOverAlgebra& y, const MoritaContext& c, int s_max, int lo, int hi);

struct TriangleCheck {
    bool retract = false; // F(X) -> F(G0 F(X)) -> F(X) is the identity
    bool second = false;  // G0(Y) -> G0(F G0(Y)) -> G0(Y) is the identity
    std::string witness;
};
TriangleCheck triangle_identities(const ModuleOverAlgebra& x, const ModuleOverAlgebra& y, const MoritaContext& c);

// X (x)_A E as a left R-module, r (x (x) e) = (-1)^{|r||x|} x (x) r e.
ModuleOverAlgebra functor_T(const ModuleOverAlgebra& x, const MoritaContext& c);
struct TorsionSide {
    BigradedTable t; // Tor^A(X, E)
    BigradedTable s; // Ext_R(E, M)
};
TorsionSide torsion_side_TS(const ModuleOverAlgebra& x, const ModuleOverAlgebra& m, const MoritaContext& c, int s_max,
                            int lo, int hi);

// Sum over s of the free ranks at each t in lo..hi (zero ranks omitted).
std::map<int, std::size_t> internal_ranks(const BigradedTable& t, int lo, int hi);
std::map<int, std::size_t> internal_ranks(const GradedFreeModule& m, int lo, int hi);

} // namespace hhalg
