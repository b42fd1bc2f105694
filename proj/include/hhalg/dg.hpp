#pragma once

// Complexes of free graded modules with a single (total) grading and a
// degree -1 differential, plus the Hom/tensor/cone constructions on them.

#include <string>
#include <vector>

#include "hhalg/algebra.hpp"
#include "hhalg/table.hpp"

namespace hhalg {

class Complex {
public:
    // Validates that d has degree -1 and squares to zero.
    Complex(GradedFreeModule module, ExactMatrix d);

    static Complex from_algebra(const GradedAlgebra& a);
    // The base ring in degree 0.
    static Complex unit(const BaseRing& base);

    const GradedFreeModule& module() const { return module_; }
    const BaseRing& base() const { return module_.base(); }
    const GroundRing& ground() const { return module_.base().ground(); }
    const ExactMatrix& differential() const { return d_; }
    std::size_t rank() const { return module_.rank(); }

private:
    GradedFreeModule module_;
    ExactMatrix d_;
};

SubquotientPresentation homology_in_degree(const Complex& c, int n);
// Entries at (0, n) for lo <= n <= hi.
BigradedTable homology(const Complex& c, int lo, int hi);
// Alternating rank sum; requires a base without Laurent generator.
long euler_characteristic(const Complex& c);

// Generators Hom(c_i, d_j) at index i * rank(D) + j; df = d f - (-1)^{|f|} f d.
Complex hom_complex(const Complex& c, const Complex& d);
// Generators c_i (x) d_j at index i * rank(D) + j; d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.
Complex tensor_complex(const Complex& c, const Complex& d);

// End(C) in the basis of endomorphism_algebra with df = d f - (-1)^{|f|} f d.
GradedAlgebra endomorphism_dga(const Complex& c);

struct ChainMap {
    Complex source;
    Complex target;
    ExactMatrix matrix; // rank(target) x rank(source)
    int degree = 0;
};
// Checks homogeneity and d f = (-1)^degree f d.
ChainMap make_chain_map(Complex source, Complex target, ExactMatrix matrix, int degree = 0);

// Cone of a degree-0 map f : X -> Y, generators Y then X shifted up by one.
Complex cone(const ChainMap& f);

struct QuasiIsoVerdict {
    bool quasi_iso = false;
    int lo = 0, hi = 0;
    std::vector<int> failing_degrees;
    std::string window() const { return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]"; }
};
// True iff the cone is acyclic in degrees lo..hi.
QuasiIsoVerdict is_quasi_iso(const ChainMap& f, int lo, int hi);

struct QuotientDGA {
    BaseRing base;
    BaseElement x;
    BaseElement w;
    int d = 0; // |x|
    GradedAlgebra algebra;
};
// Basis {1, y}, |y| = |x| + 1, dy = x, y^2 = w.
QuotientDGA make_quotient_dga(const BaseRing& base, BaseElement x, BaseElement w);

} // namespace hhalg
