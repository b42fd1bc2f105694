#include "hhalg/dg.hpp"

namespace hhalg {

Complex::Complex(GradedFreeModule module, ExactMatrix d) : module_(std::move(module)), d_(std::move(d)) {
    HomogeneousMap check(module_, module_, -1, d_);
    if (!(d_ * d_).is_zero()) throw InvariantViolation("complex differential does not square to zero");
}

Complex Complex::from_algebra(const GradedAlgebra& a) { return Complex(a.module(), a.differential()); }

Complex Complex::unit(const BaseRing& base) {
    return Complex(GradedFreeModule(base, {{"1", 0}}), ExactMatrix(base.ground(), 1, 1));
}

SubquotientPresentation homology_in_degree(const Complex& c, int n) {
    const BaseRing& b = c.base();
    const auto& m = c.module();
    ExactMatrix out = class_block(c.differential(), m, m, b.degree_class(n), b.degree_class(n - 1));
    ExactMatrix in = class_block(c.differential(), m, m, b.degree_class(n + 1), b.degree_class(n));
    return homology_at(out, in);
}

BigradedTable homology(const Complex& c, int lo, int hi) {
    BigradedTable t(c.ground());
    for (int n = lo; n <= hi; ++n) t.set(0, n, homology_in_degree(c, n));
    return t;
}

long euler_characteristic(const Complex& c) {
    if (c.base().has_laurent()) throw InputError("Euler characteristic needs a base without Laurent generator");
    long chi = 0;
    for (std::size_t i = 0; i < c.rank(); ++i) chi += (c.module().degree(i) & 1) ? -1 : 1;
    return chi;
}

Complex hom_complex(const Complex& c, const Complex& d) {
    if (!(c.base() == d.base())) throw InputError("Hom complex of complexes over different bases");
    const std::size_t nc = c.rank(), nd = d.rank();
    GradedFreeModule m = graded_hom_module(c.module(), d.module());
    ExactMatrix dm(c.ground(), m.rank(), m.rank());
    const ExactMatrix& dc = c.differential();
    const ExactMatrix& dd = d.differential();
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
            std::size_t col = i * nd + j; // E : c_i -> d_j
            int deg = d.module().degree(j) - c.module().degree(i);
            for (std::size_t k = 0; k < nd; ++k)
                if (sgn(dd(k, j)) != 0) dm.add_to(i * nd + k, col, dd(k, j));
            int s = (deg & 1) ? 1 : -1;
            for (std::size_t q = 0; q < nc; ++q)
                if (sgn(dc(i, q)) != 0) dm.add_to(q * nd + j, col, s * dc(i, q));
        }
    return Complex(std::move(m), std::move(dm));
}

Complex tensor_complex(const Complex& c, const Complex& d) {
    if (!(c.base() == d.base())) throw InputError("tensor complex of complexes over different bases");
    const std::size_t nc = c.rank(), nd = d.rank();
    std::vector<Generator> gens;
    for (const auto& a : c.module().generators())
        for (const auto& b : d.module().generators()) gens.push_back({a.name + "⊗" + b.name, a.degree + b.degree});
    ExactMatrix dm(c.ground(), nc * nd, nc * nd);
    const ExactMatrix& dc = c.differential();
    const ExactMatrix& dd = d.differential();
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
            std::size_t col = i * nd + j;
            for (std::size_t k = 0; k < nc; ++k)
                if (sgn(dc(k, i)) != 0) dm.add_to(k * nd + j, col, dc(k, i));
            int s = (c.module().degree(i) & 1) ? -1 : 1;
            for (std::size_t l = 0; l < nd; ++l)
                if (sgn(dd(l, j)) != 0) dm.add_to(i * nd + l, col, s * dd(l, j));
        }
    return Complex(GradedFreeModule(c.base(), gens), std::move(dm));
}

GradedAlgebra endomorphism_dga(const Complex& c) {
    GradedAlgebra e = endomorphism_algebra(c.module());
    const std::size_t n = c.rank();
    const ExactMatrix& d = c.differential();
    ExactMatrix de(c.ground(), n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t col = i * n + j; // E_ij : e_j -> e_i
            int s = ((c.module().degree(i) - c.module().degree(j)) & 1) ? 1 : -1;
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(d(k, i)) != 0) de.add_to(k * n + j, col, d(k, i));
            for (std::size_t l = 0; l < n; ++l)
                if (sgn(d(j, l)) != 0) de.add_to(i * n + l, col, s * d(j, l));
        }
    return de.is_zero() ? e : e.with_differential(std::move(de));
}

ChainMap make_chain_map(Complex source, Complex target, ExactMatrix matrix, int degree) {
    HomogeneousMap check(source.module(), target.module(), degree, matrix);
    ExactMatrix lhs = target.differential() * matrix;
    ExactMatrix rhs = matrix * source.differential();
    const GroundRing& g = source.ground();
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            Scalar expect = (degree & 1) ? g.reduce(-rhs(i, j)) : rhs(i, j);
            if (lhs(i, j) != expect) throw InvariantViolation("map does not commute with the differentials");
        }
    return ChainMap{std::move(source), std::move(target), std::move(matrix), degree};
}

Complex cone(const ChainMap& f) {
    if (f.degree != 0) throw InputError("cone requires a degree-0 chain map");
    const std::size_t nx = f.source.rank(), ny = f.target.rank(), n = nx + ny;
    std::vector<Generator> gens = f.target.module().generators();
    for (const auto& g : f.source.module().generators()) gens.push_back({"s" + g.name, g.degree + 1});
    ExactMatrix d(f.source.ground(), n, n);
    const ExactMatrix& dy = f.target.differential();
    const ExactMatrix& dx = f.source.differential();
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (sgn(dy(i, j)) != 0) d.set(i, j, dy(i, j));
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            if (sgn(f.matrix(i, j)) != 0) d.set(i, ny + j, f.matrix(i, j));
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            if (sgn(dx(i, j)) != 0) d.set(ny + i, ny + j, -dx(i, j));
    return Complex(GradedFreeModule(f.source.base(), gens), std::move(d));
}

QuasiIsoVerdict is_quasi_iso(const ChainMap& f, int lo, int hi) {
    Complex c = cone(f);
    QuasiIsoVerdict v;
    v.lo = lo;
    v.hi = hi;
    for (int n = lo; n <= hi; ++n)
        if (!homology_in_degree(c, n).is_zero()) v.failing_degrees.push_back(n);
    v.quasi_iso = v.failing_degrees.empty();
    return v;
}

QuotientDGA make_quotient_dga(const BaseRing& base, BaseElement x, BaseElement w) {
    const GroundRing& g = base.ground();
    x.coeff = g.reduce(x.coeff);
    w.coeff = g.reduce(w.coeff);
    if (sgn(x.coeff) == 0) throw InputError("x = 0 is a zero divisor");
    if (!base.has_laurent() && (x.v_power != 0 || w.v_power != 0))
        throw InputError("Laurent powers used over a base without Laurent generator");
    int d = x.degree(base);
    if (d % 2 != 0) throw InputError("|x| must be even");
    if (sgn(w.coeff) != 0 && w.degree(base) != 2 * d + 2)
        throw InputError("|w| = " + std::to_string(w.degree(base)) + " but 2|x| + 2 = " + std::to_string(2 * d + 2));
    GradedFreeModule m(base, {{"1", 0}, {"y", d + 1}});
    std::vector<SparseVector> prods{{{0, Scalar(1)}}, {{1, Scalar(1)}}, {{1, Scalar(1)}}, {}};
    if (sgn(w.coeff) != 0) prods[3] = {{0, w.coeff}};
    GradedAlgebra a(m, std::move(prods), {Scalar(1), Scalar(0)},
                    "A(" + x.to_string(base) + "," + w.to_string(base) + ")");
    ExactMatrix dm(g, 2, 2);
    dm.set(0, 1, x.coeff);
    return QuotientDGA{base, x, w, d, a.with_differential(std::move(dm))};
}

} // namespace hhalg
