#pragma once

// Free resolutions of left modules over finite-rank graded algebras (field
// ground), and the Ext/Tor tables and Yoneda powers computed from them.
//
// Stage s is F_s = A (x) V_s with basis (a, g) at index g * rank(A) + a and
// internal degree |a| + |g|. All differentials have internal degree 0.

#include <optional>
#include <vector>

#include "hhalg/module.hpp"
#include "hhalg/table.hpp"

namespace hhalg {

// Upper bound on the ground dimension of a single stage.
inline constexpr std::size_t kMaxStageDimension = 1500;

struct Resolution {
    GradedAlgebra algebra;
    ModuleOverAlgebra target;
    std::vector<GradedFreeModule> generators; // V_0 .. V_{s_max+1}
    std::vector<GradedFreeModule> stages;     // F_s as base modules
    ExactMatrix augmentation;                 // F_0 -> target
    std::vector<ExactMatrix> differentials;   // differentials[s] : F_s -> F_{s-1}, s >= 1
    int s_max = 0;
    int lo = 0, hi = 0;
    // Every selected generator was a complement of (augmentation ideal) * kernel.
    bool minimal = false;

    std::vector<std::size_t> stage_ranks() const;
    // Image of a + F_s vector under the left action of algebra element e_i.
    Vector act(std::size_t s, std::size_t i, const Vector& x) const;
};

// Resolves n through stage s_max + 1 so that Ext^{s_max} is computable.
// lo..hi is the internal-degree window for reported tables.
Resolution resolve(const ModuleOverAlgebra& n, int s_max, int lo, int hi);
Resolution minimal_resolution(const GradedAlgebra& a, int s_max, int lo, int hi);

// Ext_A^s(target, m) at (s, t) where t = |g| - |m| for the pairing of a
// stage generator g with a basis element of m.
BigradedTable ext_table(const Resolution& r, const ModuleOverAlgebra& m);
// Ext_A(base, base).
BigradedTable ext_table(const GradedAlgebra& a, int s_max, int lo, int hi);
// Tor_s^A(x, target) at (s, t), x a right A-module.
BigradedTable tor_table(const ModuleOverAlgebra& x, const Resolution& r);

// Cochains on stage s with values in m have basis (g, j) at index g * rank(m) + j.
// Returns the coboundary matrix C^s -> C^{s+1}.
ExactMatrix ext_coboundary(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s);
// Cocycles in bidegree (s, t) spanning a complement of the coboundaries.
std::vector<Vector> ext_representatives(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s, int t);
bool is_coboundary(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s, const Vector& cocycle);

struct YonedaResult {
    std::size_t s = 0;
    int t = 0;
    Vector cocycle; // on stage s, values in the target
    bool nonzero = false;
};
// n-fold Yoneda power of a class in Ext^1(target, target) of internal degree t.
YonedaResult yoneda_power(const Resolution& r, const Vector& cocycle, int t, std::size_t n);
YonedaResult yoneda_square(const Resolution& r, const Vector& cocycle, int t);

// Ext of A (x)_S base where S -> A is the given inclusion (columns are images
// of S basis elements). Requires S semisimple and A free over S; the table is
// computed for A and for the quotient A / A S^+ and the two are asserted equal.
BigradedTable ext_base_change(const GradedAlgebra& a, const GradedAlgebra& s, const ExactMatrix& inclusion,
                              int s_max, int lo, int hi);

} // namespace hhalg
