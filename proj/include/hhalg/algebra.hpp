#pragma once

// Finite-rank graded algebras over a BaseRing, given by structure constants on
// a basis of canonical generators, optionally with a degree -1 differential.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhalg/graded.hpp"

namespace hhalg {

using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

class GradedAlgebra {
public:
    // products[i * rank + j] = e_i e_j. Validates degrees, unit and associativity.
    GradedAlgebra(GradedFreeModule module, std::vector<SparseVector> products, Vector unit, std::string name = "");

    const GradedFreeModule& module() const { return module_; }
    const BaseRing& base() const { return module_.base(); }
    const GroundRing& ground() const { return module_.base().ground(); }
    std::size_t rank() const { return module_.rank(); }
    int degree(std::size_t i) const { return module_.degree(i); }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * rank() + j]; }
    Vector multiply(const Vector& a, const Vector& b) const;
    Vector basis_vector(std::size_t i) const;
    const Vector& unit() const { return unit_; }
    // Index of the unit when it is a basis element.
    std::optional<std::size_t> unit_index() const;
    // Unit is a basis element u and e_i e_j has no u-component for i, j != u.
    bool is_augmented() const;

    bool has_differential() const { return differential_.has_value(); }
    // rank x rank matrix; zero when there is no differential.
    ExactMatrix differential() const;
    // Checks d^2 = 0, degree -1 and the Leibniz rule on all basis pairs.
    GradedAlgebra with_differential(ExactMatrix d) const;

    // Matrices of x -> e_i x and x -> x e_i.
    ExactMatrix left_multiplication(std::size_t i) const;
    ExactMatrix right_multiplication(std::size_t i) const;

    bool is_commutative() const;        // e_i e_j = e_j e_i
    bool is_graded_commutative() const; // e_i e_j = (-1)^{|i||j|} e_j e_i
    std::string describe() const;

private:
    struct Derived {};
    // Associativity is inherited from already validated inputs.
    GradedAlgebra(Derived, GradedFreeModule module, std::vector<SparseVector> products, Vector unit, std::string name);
    void validate(bool associativity);
    friend GradedAlgebra opposite(const GradedAlgebra&);
    friend GradedAlgebra tensor(const GradedAlgebra&, const GradedAlgebra&);
    friend GradedAlgebra endomorphism_algebra(const GradedFreeModule&);

    GradedFreeModule module_;
    std::vector<SparseVector> products_;
    Vector unit_;
    std::string name_;
    std::optional<ExactMatrix> differential_;
};

struct NCTerm {
    Scalar coeff = 1;
    int v_power = 0;
    std::vector<std::size_t> word;

    friend bool operator==(const NCTerm&, const NCTerm&) = default;
};
using NCPolynomial = std::vector<NCTerm>;

struct AlgebraPresentation {
    BaseRing base{GroundRing::rationals()};
    std::vector<Generator> generators;
    std::vector<NCPolynomial> relations;
    // Words of degree > truncation vanish (all generator degrees must be positive).
    std::optional<int> truncation;
    // Differential on generators; extended by the Leibniz rule.
    std::map<std::size_t, NCPolynomial> differential;
    std::string name;
};

struct Realization {
    GradedAlgebra algebra;
    std::vector<Vector> generator_images;
    std::vector<std::vector<std::size_t>> basis_words;
};

// Basis of irreducible words under length-lex rewriting; hard error when the
// rewriting system has an unresolved critical pair.
Realization realize_presentation(const AlgebraPresentation& p);
GradedAlgebra realize(const AlgebraPresentation& p);
// Degree of a polynomial; throws InputError naming the degrees when not homogeneous.
int polynomial_degree(const AlgebraPresentation& p, const NCPolynomial& poly);
Vector evaluate(const Realization& r, const NCPolynomial& poly);

GradedAlgebra base_algebra(const BaseRing& base);
GradedAlgebra opposite(const GradedAlgebra& a);
// Basis e_i (x) f_j at index i * rank(B) + j.
GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b);
// Basis E_ij : e_j -> e_i at index i * n + j, composition product.
GradedAlgebra endomorphism_algebra(const GradedFreeModule& e);
// Same algebra in a basis whose element 0 is the unit.
GradedAlgebra with_unit_basis(const GradedAlgebra& a);

struct QuotientResult {
    GradedAlgebra algebra;
    // rank(quotient) x rank(A) matrix of the projection.
    ExactMatrix projection;
};
// Quotient by the two-sided ideal generated by the given homogeneous elements.
QuotientResult quotient_algebra(const GradedAlgebra& a, const std::vector<Vector>& generators);
// Basis of the two-sided ideal generated by the given elements (field ground).
std::vector<Vector> two_sided_ideal(const GradedAlgebra& a, const std::vector<Vector>& generators);

struct CenterResult {
    std::map<int, SubquotientPresentation> per_class;
    std::vector<Vector> basis;
    std::size_t rank() const { return basis.size(); }
};
// Graded center {z : z a = (-1)^{|z||a|} a z}.
CenterResult center(const GradedAlgebra& a);

// Basis of the (graded) Jacobson radical; prime-field ground only.
std::vector<Vector> radical(const GradedAlgebra& a);

// Primitive idempotents of a commutative semisimple algebra's degree-0 part (prime field).
std::vector<Vector> primitive_idempotents(const GradedAlgebra& s);

struct IsomorphismResult {
    bool isomorphic = false;
    // Column j is the image of basis element j.
    std::optional<ExactMatrix> witness;
    std::size_t candidates_examined = 0;
    std::string reason;
};
// Exhaustive search over unit-preserving degree-0 linear maps (prime-field
// ground). Throws BudgetExceeded when the candidate count exceeds `budget`.
IsomorphismResult algebra_isomorphic(const GradedAlgebra& a, const GradedAlgebra& b, std::size_t budget = 1u << 20);

// Kernel of base -> H_0(A) (or A in degree 0 when there is no differential),
// as the ideal generated by `generator` (0 = zero kernel).
struct UnitKernel {
    mpz_class generator = 0;
    bool is_zero() const { return generator == 0; }
    std::string to_string() const;
};
UnitKernel unit_kernel(const GradedAlgebra& a);

// Coordinates of a homogeneous vector relative to a list of basis vectors (field ground).
std::optional<Vector> express_in(const std::vector<Vector>& basis, const Vector& v, const GroundRing& g);

} // namespace hhalg
