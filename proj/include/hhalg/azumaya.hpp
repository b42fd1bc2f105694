#pragma once

// Azumaya certification: each condition of the classical, generalized (DG)
// and weak definitions is reported separately with its witness.

#include <string>
#include <vector>

#include "hhalg/hochschild.hpp"

namespace hhalg {

enum class Verdict { Pass, Fail, Skipped };
enum class Flavor { Classical, GeneralizedDG, Weak };

std::string to_string(Verdict v);
std::string to_string(Flavor f);

struct Condition {
    std::string name;
    Verdict verdict = Verdict::Skipped;
    std::string witness; // quasi-iso conditions end with "window [lo, hi]"
};

struct AzumayaReport {
    std::string subject;
    Flavor flavor = Flavor::Classical;
    std::vector<Condition> conditions;

    // Fail if any condition fails, else Skipped if any was skipped, else Pass.
    Verdict overall() const;
    const Condition& condition(std::size_t number) const { return conditions.at(number - 1); }
};

struct Window {
    int lo = -16, hi = 16;
};

// (1) finite free rank, (2) base -> H_0(A) injective, (3) mu invertible.
// A must live in degree 0 over a base without Laurent generator; a DG model is
// accepted when its homology is concentrated in degree 0, and then (3) is
// checked as a quasi-isomorphism over the whole degree range.
AzumayaReport check_classical_azumaya(const GradedAlgebra& a);

// (1) perfectness, (2a) I (x) H_0(A) = 0 and (2b) I = 0 for I the unit kernel,
// (3) mu a quasi-isomorphism in the window.
AzumayaReport check_generalized_azumaya(const GradedAlgebra& a, Window w = {});

// (1) dualizable = finite free rank, (2) mu an isomorphism (quasi-isomorphism
// in the window for DG input).
AzumayaReport check_weak_azumaya(const GradedAlgebra& a, Window w = {});

struct SmashVerdict {
    bool iso = false;
    std::size_t source_rank = 0, target_rank = 0;
    ExactMatrix matrix; // rank(End(E1 (x) E2)) x rank(End(E1) (x) End(E2))
    std::string witness;
};
// (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y); checked multiplicative and invertible.
SmashVerdict endo_smash_invariant(const GradedFreeModule& e1, const GradedFreeModule& e2);

} // namespace hhalg
