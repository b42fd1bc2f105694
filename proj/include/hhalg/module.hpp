#pragma once

// Finite-rank graded modules over a GradedAlgebra, given by one action matrix
// per algebra basis element.

#include <string>
#include <vector>

#include "hhalg/algebra.hpp"

namespace hhalg {

enum class Side { Left, Right };

class ModuleOverAlgebra {
public:
    // action[i] is the matrix of m -> e_i m (left) or m -> m e_i (right).
    // Validates degrees, unitality and associativity.
    ModuleOverAlgebra(GradedAlgebra algebra, GradedFreeModule underlying, std::vector<ExactMatrix> action,
                      Side side = Side::Left, std::string name = "");

    // The base ring in degree 0 with the augmentation action.
    static ModuleOverAlgebra augmentation(const GradedAlgebra& a, Side side = Side::Left);
    static ModuleOverAlgebra regular(const GradedAlgebra& a, Side side = Side::Left);
    static ModuleOverAlgebra zero(const GradedAlgebra& a, Side side = Side::Left);

    const GradedAlgebra& algebra() const { return algebra_; }
    const GradedFreeModule& underlying() const { return underlying_; }
    const GroundRing& ground() const { return algebra_.ground(); }
    std::size_t rank() const { return underlying_.rank(); }
    Side side() const { return side_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const ExactMatrix& action(std::size_t i) const { return action_[i]; }
    // Action of an arbitrary algebra element.
    ExactMatrix action_of(const Vector& a) const;

private:
    GradedAlgebra algebra_;
    GradedFreeModule underlying_;
    std::vector<ExactMatrix> action_;
    Side side_;
    std::string name_;
};

// A right A-module as a left A^op-module: a . x = (-1)^{|a||x|} x a (and back).
ModuleOverAlgebra flip_side(const ModuleOverAlgebra& m);

// Homology-free comparison: same rank in every degree class.
bool same_graded_ranks(const GradedFreeModule& a, const GradedFreeModule& b);

} // namespace hhalg
