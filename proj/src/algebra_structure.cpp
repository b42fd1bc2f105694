#include <algorithm>
#include <set>

#include "hhalg/algebra.hpp"

namespace hhalg {

namespace {

Vector embed(const Vector& local, const std::vector<std::size_t>& idx, std::size_t n) {
    Vector v(n, Scalar(0));
    for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = local[k];
    return v;
}

Vector power(const GradedAlgebra& a, Vector x, unsigned long e) {
    Vector result = a.unit();
    while (e) {
        if (e & 1) result = a.multiply(result, x);
        e >>= 1;
        if (e) x = a.multiply(x, x);
    }
    return result;
}

std::set<int> all_classes(const GradedAlgebra& a) {
    auto c = a.module().classes();
    return {c.begin(), c.end()};
}

} // namespace

CenterResult center(const GradedAlgebra& a) {
    const std::size_t n = a.rank();
    const GroundRing& g = a.ground();
    CenterResult out;
    for (int cls : all_classes(a)) {
        auto idx = a.module().indices_in_class(cls);
        ExactMatrix m(g, n * n, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            std::size_t k = idx[c];
            for (std::size_t j = 0; j < n; ++j) {
                int s = koszul(a.degree(k), a.degree(j));
                for (const auto& [q, x] : a.product(k, j)) m.add_to(j * n + q, c, x);
                for (const auto& [q, x] : a.product(j, k)) m.add_to(j * n + q, c, -s * x);
            }
        }
        auto ker = kernel_basis(m);
        SubquotientPresentation p;
        p.free_rank = ker.size();
        if (!p.is_zero()) out.per_class[cls] = p;
        for (const auto& v : ker) out.basis.push_back(embed(v, idx, n));
    }
    return out;
}

std::vector<Vector> radical(const GradedAlgebra& a) {
    const GroundRing& g = a.ground();
    if (g.kind() != GroundRing::Kind::PrimeField)
        throw UnsupportedGround("radical requires a finite prime field ground, got " + g.name());
    const std::size_t n = a.rank();
    const unsigned long p = static_cast<unsigned long>(g.characteristic());
    std::vector<Vector> out;
    if (a.is_commutative()) {
        // x -> x^(p^m) is linear; its kernel on each degree class is the nilradical there.
        unsigned long q = p;
        while (q < n) q *= p;
        for (int cls : all_classes(a)) {
            auto idx = a.module().indices_in_class(cls);
            std::vector<Vector> images;
            for (auto k : idx) images.push_back(power(a, a.basis_vector(k), q));
            ExactMatrix m = ExactMatrix::from_columns(g, n, images);
            for (const auto& v : kernel_basis(m)) out.push_back(embed(v, idx, n));
        }
        return out;
    }
    if (p <= n)
        throw UnsupportedGround("radical of a noncommutative algebra needs characteristic > rank (" +
                                std::to_string(n) + ")");
    // Trace form: x is radical iff Tr(L_{xy}) = 0 for all y.
    std::vector<Scalar> trace(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
        ExactMatrix l = a.left_multiplication(i);
        for (std::size_t k = 0; k < n; ++k) trace[i] += l(k, k);
    }
    for (int cls : all_classes(a)) {
        auto idx = a.module().indices_in_class(cls);
        ExactMatrix m(g, n, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (std::size_t y = 0; y < n; ++y)
                for (const auto& [k, x] : a.product(idx[c], y)) m.add_to(y, c, x * trace[k]);
        for (const auto& v : kernel_basis(m)) out.push_back(embed(v, idx, n));
    }
    return out;
}

std::vector<Vector> primitive_idempotents(const GradedAlgebra& s) {
    const GroundRing& g = s.ground();
    if (g.kind() != GroundRing::Kind::PrimeField)
        throw UnsupportedGround("idempotent splitting requires a prime field ground");
    if (!s.is_commutative()) throw InputError("idempotent splitting requires a commutative algebra");
    if (!radical(s).empty()) throw InputError("algebra is not semisimple");
    const std::size_t n = s.rank();
    const long p = g.characteristic();
    auto idx = s.module().indices_in_class(s.base().degree_class(0));
    // Frobenius-fixed part of the degree-0 piece: a split semisimple algebra.
    std::vector<Vector> cols;
    for (auto k : idx) {
        Vector img = power(s, s.basis_vector(k), static_cast<unsigned long>(p));
        img[k] -= 1;
        cols.push_back(img);
    }
    std::vector<Vector> fixed;
    for (const auto& v : kernel_basis(ExactMatrix::from_columns(g, n, cols))) fixed.push_back(embed(v, idx, n));

    std::vector<Vector> idempotents{s.unit()};
    for (const auto& b : fixed) {
        std::vector<Vector> refined;
        for (const auto& e : idempotents) {
            Vector be = s.multiply(b, e);
            for (long lambda = 0; lambda < p; ++lambda) {
                Vector part = e;
                for (long mu = 0; mu < p; ++mu) {
                    if (mu == lambda) continue;
                    Scalar inv = g.inverse(Scalar(lambda - mu));
                    Vector factor(n);
                    for (std::size_t k = 0; k < n; ++k) factor[k] = g.reduce((be[k] - mu * e[k]) * inv);
                    part = s.multiply(part, factor);
                }
                if (std::any_of(part.begin(), part.end(), [](const Scalar& x) { return sgn(x) != 0; }))
                    refined.push_back(part);
            }
        }
        idempotents = std::move(refined);
    }
    return idempotents;
}

IsomorphismResult algebra_isomorphic(const GradedAlgebra& a, const GradedAlgebra& b, std::size_t budget) {
    IsomorphismResult res;
    if (!(a.base() == b.base())) {
        res.reason = "different bases";
        return res;
    }
    const GroundRing& g = a.ground();
    if (g.kind() != GroundRing::Kind::PrimeField)
        throw UnsupportedGround("isomorphism search requires a finite prime field ground");
    if (a.rank() != b.rank()) {
        res.reason = "rank mismatch (" + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")";
        return res;
    }
    const std::size_t n = a.rank();
    std::set<int> classes = all_classes(a);
    for (int c : all_classes(b)) classes.insert(c);
    for (int c : classes)
        if (a.module().indices_in_class(c).size() != b.module().indices_in_class(c).size()) {
            res.reason = "degree profile mismatch in class " + std::to_string(c);
            return res;
        }
    // Free entries: (target i, source j) in the same class, v-exponent within [-2, 2].
    auto ua = a.unit_index();
    const BaseRing& base = a.base();
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t j = 0; j < n; ++j) {
        if (ua && j == *ua) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (!base.compatible(a.degree(j), b.degree(i))) continue;
            if (std::abs(base.v_exponent(a.degree(j), b.degree(i))) > 2) continue;
            slots.emplace_back(i, j);
        }
    }
    const long p = g.characteristic();
    double total = 1;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        total *= static_cast<double>(p);
        if (total > static_cast<double>(budget))
            throw BudgetExceeded("isomorphism search needs more than " + std::to_string(budget) + " candidates");
    }
    std::vector<long> digits(slots.size(), 0);
    while (true) {
        ++res.candidates_examined;
        ExactMatrix phi(g, n, n);
        if (ua)
            for (std::size_t i = 0; i < n; ++i)
                if (sgn(b.unit()[i]) != 0) phi.set(i, *ua, b.unit()[i]);
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (digits[k]) phi.set(slots[k].first, slots[k].second, Scalar(digits[k]));
        bool ok = rank(phi) == n && phi.apply(a.unit()) == b.unit();
        for (std::size_t i = 0; ok && i < n; ++i)
            for (std::size_t j = 0; ok && j < n; ++j) {
                Vector lhs = phi.apply(a.multiply(a.basis_vector(i), a.basis_vector(j)));
                Vector rhs = b.multiply(phi.column(i), phi.column(j));
                ok = lhs == rhs;
            }
        if (ok) {
            res.isomorphic = true;
            res.witness = std::move(phi);
            res.reason = "witness found";
            return res;
        }
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    res.reason = "no isomorphism among " + std::to_string(res.candidates_examined) + " candidates";
    return res;
}

std::string UnitKernel::to_string() const {
    if (generator == 0) return "0";
    if (generator == 1) return "(1)";
    return "(" + generator.get_str() + ")";
}

UnitKernel unit_kernel(const GradedAlgebra& a) {
    const GroundRing& g = a.ground();
    const BaseRing& base = a.base();
    const GradedFreeModule& m = a.module();
    ExactMatrix d = a.differential();
    int c0 = base.degree_class(0);
    auto idx0 = m.indices_in_class(c0);
    Vector u(idx0.size());
    for (std::size_t k = 0; k < idx0.size(); ++k) u[k] = a.unit()[idx0[k]];
    ExactMatrix out_block = class_block(d, m, m, c0, base.degree_class(-1));
    ExactMatrix in_block = class_block(d, m, m, base.degree_class(1), c0);
    UnitKernel res;
    if (g.is_field()) {
        if (std::all_of(u.begin(), u.end(), [](const Scalar& x) { return sgn(x) == 0; }) ||
            (in_block.cols() > 0 && solve(in_block, u))) {
            res.generator = 1;
        }
        return res;
    }
    auto cycles = kernel_basis(out_block);
    ExactMatrix k = ExactMatrix::from_columns(g, idx0.size(), cycles);
    ExactMatrix uc(g, idx0.size(), 1);
    for (std::size_t i = 0; i < u.size(); ++i) uc.set(i, 0, u[i]);
    auto ucoords = coordinates_in(k, uc);
    if (!ucoords) throw InvariantViolation("unit is not a cycle");
    auto bcoords = coordinates_in(k, in_block);
    if (!bcoords) throw InvariantViolation("boundaries are not cycles");
    SmithForm s = smith_normal_form(*bcoords);
    Vector c = s.U.apply(ucoords->column(0));
    mpz_class order = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        mpz_class ci = c[i].get_num();
        if (i >= s.rank) {
            if (ci != 0) return res; // infinite order
            continue;
        }
        mpz_class di = abs(s.D(i, i).get_num()), gg;
        mpz_gcd(gg.get_mpz_t(), di.get_mpz_t(), ci.get_mpz_t());
        mpz_class part = di / gg;
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
    }
    res.generator = order;
    return res;
}

} // namespace hhalg
