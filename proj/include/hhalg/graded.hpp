#pragma once

// Graded base rings k or k[v, v^-1] with |v| even, and free graded modules over them.
//
// Over k[v^{+-1}] a free module has exactly one canonical basis element per
// generator in every degree congruent to the generator's degree mod |v|, so a
// homogeneous map is a single ground matrix whose v-exponents are implied by
// degrees. Everything downstream works one degree class at a time: the residue
// mod |v| when a Laurent generator is present, the integer degree otherwise.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhalg/linalg.hpp"

namespace hhalg {

struct LaurentGenerator {
    std::string name;
    int degree = 2;

    friend bool operator==(const LaurentGenerator&, const LaurentGenerator&) = default;
};

class BaseRing {
public:
    explicit BaseRing(GroundRing ground, std::optional<LaurentGenerator> laurent = std::nullopt);

    const GroundRing& ground() const { return ground_; }
    const std::optional<LaurentGenerator>& laurent() const { return laurent_; }
    bool has_laurent() const { return laurent_.has_value(); }
    // |v|, or 0 without a Laurent generator.
    int period() const { return laurent_ ? laurent_->degree : 0; }

    // Residue in [0, |v|) or the degree itself.
    int degree_class(int degree) const;
    bool compatible(int a, int b) const { return degree_class(a) == degree_class(b); }
    // k with target = source + k |v|; throws if the degrees are incompatible.
    int v_exponent(int source, int target) const;
    std::string name() const;

    friend bool operator==(const BaseRing&, const BaseRing&) = default;

private:
    GroundRing ground_;
    std::optional<LaurentGenerator> laurent_;
};

// An element c * v^k of the base ring.
struct BaseElement {
    Scalar coeff = 0;
    int v_power = 0;

    int degree(const BaseRing& base) const { return v_power * base.period(); }
    std::string to_string(const BaseRing& base) const;
};

struct Generator {
    std::string name;
    int degree = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

class GradedFreeModule {
public:
    explicit GradedFreeModule(BaseRing base, std::vector<Generator> generators = {});

    const BaseRing& base() const { return base_; }
    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t rank() const { return generators_.size(); }
    int degree(std::size_t i) const { return generators_[i].degree; }
    int degree_class(std::size_t i) const { return base_.degree_class(generators_[i].degree); }

    // Indices of generators in the given degree class, ascending.
    std::vector<std::size_t> indices_in_class(int cls) const;
    // Distinct degree classes present, ascending.
    std::vector<int> classes() const;
    // Rank of the ground-ring piece in a given integer degree.
    std::size_t rank_in_degree(int degree) const { return indices_in_class(base_.degree_class(degree)).size(); }

    friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;

private:
    BaseRing base_;
    std::vector<Generator> generators_;
};

// A degree-`degree` map; entries(i, j) is the ground coefficient of the
// canonical basis element of target generator i in the image of source generator j.
class HomogeneousMap {
public:
    HomogeneousMap(GradedFreeModule source, GradedFreeModule target, int degree, ExactMatrix entries);
    static HomogeneousMap zero(GradedFreeModule source, GradedFreeModule target, int degree);

    const GradedFreeModule& source() const { return source_; }
    const GradedFreeModule& target() const { return target_; }
    int degree() const { return degree_; }
    const ExactMatrix& entries() const { return entries_; }

private:
    GradedFreeModule source_;
    GradedFreeModule target_;
    int degree_;
    ExactMatrix entries_;
};

// One ground matrix per source degree class (keyed by that class); rows and
// columns follow indices_in_class order of target and source.
std::map<int, ExactMatrix> periodic_reduce(const HomogeneousMap& f);

// Restriction of a raw matrix to the block source class -> target class.
ExactMatrix class_block(const ExactMatrix& m, const GradedFreeModule& source, const GradedFreeModule& target,
                        int source_class, int target_class);

// Generators are pairs (m_i, n_j) in degree |n_j| - |m_i|, index i * rank(N) + j.
GradedFreeModule graded_hom_module(const GradedFreeModule& m, const GradedFreeModule& n);
// Rank of the degree-`degree` homomorphisms M -> N.
std::size_t hom_rank_in_degree(const GradedFreeModule& m, const GradedFreeModule& n, int degree);

// (-1)^(a*b) as a ground scalar.
inline int koszul(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

} // namespace hhalg
