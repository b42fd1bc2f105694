#include "hhalg/algebra.hpp"

#include <algorithm>

namespace hhalg {

namespace {

void axpy(Vector& out, const Scalar& c, const SparseVector& v) {
    if (sgn(c) == 0) return;
    for (const auto& [k, x] : v) out[k] += c * x;
}

SparseVector normalize(const GroundRing& g, SparseVector v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    for (auto& [k, x] : v) {
        if (!out.empty() && out.back().first == k)
            out.back().second += x;
        else
            out.emplace_back(k, x);
    }
    SparseVector clean;
    for (auto& [k, x] : out) {
        Scalar r = g.reduce(x);
        if (sgn(r) != 0) clean.emplace_back(k, r);
    }
    return clean;
}

SparseVector to_sparse(const GroundRing& g, const Vector& v) {
    SparseVector out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        Scalar r = g.reduce(v[k]);
        if (sgn(r) != 0) out.emplace_back(k, r);
    }
    return out;
}

void reduce_all(const GroundRing& g, Vector& v) {
    for (auto& x : v)
        if (sgn(x) != 0) x = g.reduce(x);
}

bool is_zero_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

std::string basis_label(const GradedFreeModule& m, std::size_t i) { return m.generators()[i].name; }

} // namespace

GradedAlgebra::GradedAlgebra(GradedFreeModule module, std::vector<SparseVector> products, Vector unit, std::string name)
    : module_(std::move(module)), products_(std::move(products)), unit_(std::move(unit)), name_(std::move(name)) {
    validate(true);
}

GradedAlgebra::GradedAlgebra(Derived, GradedFreeModule module, std::vector<SparseVector> products, Vector unit,
                             std::string name)
    : module_(std::move(module)), products_(std::move(products)), unit_(std::move(unit)), name_(std::move(name)) {
    validate(false);
}

void GradedAlgebra::validate(bool associativity) {
    const std::size_t n = rank();
    const GroundRing& g = ground();
    const BaseRing& b = base();
    if (products_.size() != n * n) throw InputError("structure constant table has wrong size");
    if (unit_.size() != n) throw InputError("unit vector has wrong length");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto& p = products_[i * n + j];
            p = normalize(g, std::move(p));
            for (const auto& [k, c] : p) {
                if (k >= n) throw InputError("structure constant index out of range");
                if (!b.compatible(degree(i) + degree(j), degree(k)))
                    throw InputError("product " + basis_label(module_, i) + "*" + basis_label(module_, j) +
                                     " has a component of the wrong degree");
            }
        }
    reduce_all(g, unit_);
    for (std::size_t k = 0; k < n; ++k)
        if (sgn(unit_[k]) != 0 && module_.degree_class(k) != b.degree_class(0))
            throw InputError("unit is not homogeneous of degree 0");
    for (std::size_t j = 0; j < n; ++j) {
        Vector ej = basis_vector(j);
        if (multiply(unit_, ej) != ej || multiply(ej, unit_) != ej)
            throw InvariantViolation("unit is not two-sided on " + basis_label(module_, j));
    }
    if (!associativity) return;
    // Associativity on all basis triples.
    Vector lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                std::fill(lhs.begin(), lhs.end(), Scalar(0));
                std::fill(rhs.begin(), rhs.end(), Scalar(0));
                for (const auto& [m, c] : product(i, j)) axpy(lhs, c, product(m, k));
                for (const auto& [m, c] : product(j, k)) axpy(rhs, c, product(i, m));
                reduce_all(g, lhs);
                reduce_all(g, rhs);
                if (lhs != rhs)
                    throw InvariantViolation("associativity fails on (" + basis_label(module_, i) + "," +
                                             basis_label(module_, j) + "," + basis_label(module_, k) + ")");
            }
}

Vector GradedAlgebra::basis_vector(std::size_t i) const {
    Vector v(rank(), Scalar(0));
    v[i] = 1;
    return v;
}

Vector GradedAlgebra::multiply(const Vector& a, const Vector& b) const {
    const std::size_t n = rank();
    Vector out(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(b[j]) != 0) axpy(out, a[i] * b[j], product(i, j));
    }
    reduce_all(ground(), out);
    return out;
}

std::optional<std::size_t> GradedAlgebra::unit_index() const {
    std::optional<std::size_t> idx;
    for (std::size_t k = 0; k < rank(); ++k) {
        if (sgn(unit_[k]) == 0) continue;
        if (idx || unit_[k] != 1) return std::nullopt;
        idx = k;
    }
    return idx;
}

bool GradedAlgebra::is_augmented() const {
    auto u = unit_index();
    if (!u) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) {
            if (i == *u || j == *u) continue;
            for (const auto& [k, c] : product(i, j))
                if (k == *u) return false;
        }
    if (differential_)
        for (std::size_t j = 0; j < rank(); ++j)
            if (j != *u && sgn((*differential_)(*u, j)) != 0) return false;
    return true;
}

ExactMatrix GradedAlgebra::differential() const {
    return differential_ ? *differential_ : ExactMatrix(ground(), rank(), rank());
}

GradedAlgebra GradedAlgebra::with_differential(ExactMatrix d) const {
    const std::size_t n = rank();
    if (d.rows() != n || d.cols() != n) throw InputError("differential has wrong shape");
    HomogeneousMap check(module_, module_, -1, d); // validates degrees
    if (!(d * d).is_zero()) throw InvariantViolation("differential does not square to zero");
    auto image = [&](std::size_t i) { return d.column(i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vector prod(n, Scalar(0));
            axpy(prod, 1, product(i, j));
            Vector lhs = d.apply(prod);
            Vector r1 = multiply(image(i), basis_vector(j));
            Vector r2 = multiply(basis_vector(i), image(j));
            int sign = (degree(i) & 1) ? -1 : 1;
            Vector rhs(n);
            for (std::size_t k = 0; k < n; ++k) rhs[k] = ground().reduce(r1[k] + sign * r2[k]);
            if (lhs != rhs)
                throw InvariantViolation("Leibniz rule fails on (" + basis_label(module_, i) + "," +
                                         basis_label(module_, j) + ")");
        }
    GradedAlgebra out = *this;
    out.differential_ = std::move(d);
    if (out.differential_->is_zero()) out.differential_.reset();
    return out;
}

ExactMatrix GradedAlgebra::left_multiplication(std::size_t i) const {
    ExactMatrix m(ground(), rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j)
        for (const auto& [k, c] : product(i, j)) m.set(k, j, c);
    return m;
}

ExactMatrix GradedAlgebra::right_multiplication(std::size_t i) const {
    ExactMatrix m(ground(), rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j)
        for (const auto& [k, c] : product(j, i)) m.set(k, j, c);
    return m;
}

bool GradedAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = i + 1; j < rank(); ++j)
            if (product(i, j) != product(j, i)) return false;
    return true;
}

bool GradedAlgebra::is_graded_commutative() const {
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = i; j < rank(); ++j) {
            SparseVector swapped = product(j, i);
            int s = koszul(degree(i), degree(j));
            for (auto& [k, c] : swapped) c = ground().reduce(s * c);
            if (product(i, j) != swapped) return false;
        }
    return true;
}

std::string GradedAlgebra::describe() const {
    std::string s = (name_.empty() ? std::string("algebra") : name_) + " over " + base().name() + ", rank " +
                    std::to_string(rank()) + ", basis {";
    for (std::size_t i = 0; i < rank(); ++i)
        s += (i ? ", " : "") + basis_label(module_, i) + "(" + std::to_string(degree(i)) + ")";
    return s + "}";
}

// ---------------------------------------------------------------------------

GradedAlgebra base_algebra(const BaseRing& base) {
    GradedFreeModule m(base, {{"1", 0}});
    return GradedAlgebra(m, {{{0, Scalar(1)}}}, {Scalar(1)}, base.name());
}

GradedAlgebra opposite(const GradedAlgebra& a) {
    const std::size_t n = a.rank();
    std::vector<SparseVector> prods(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            SparseVector p = a.product(j, i);
            int s = koszul(a.degree(i), a.degree(j));
            for (auto& [k, c] : p) c *= s;
            prods[i * n + j] = std::move(p);
        }
    std::string name = a.name();
    if (name.size() > 3 && name.ends_with("^op"))
        name.resize(name.size() - 3);
    else
        name += "^op";
    GradedAlgebra out(GradedAlgebra::Derived{}, a.module(), std::move(prods), a.unit(), name);
    return a.has_differential() ? out.with_differential(a.differential()) : out;
}

GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a.base() == b.base())) throw InputError("tensor product of algebras over different bases");
    const std::size_t na = a.rank(), nb = b.rank(), n = na * nb;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            gens.push_back({a.module().generators()[i].name + "⊗" + b.module().generators()[j].name,
                            a.degree(i) + b.degree(j)});
    std::vector<SparseVector> prods(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    int s = koszul(b.degree(j), a.degree(k));
                    SparseVector p;
                    for (const auto& [m, c] : a.product(i, k))
                        for (const auto& [q, e] : b.product(j, l)) p.emplace_back(m * nb + q, s * c * e);
                    prods[(i * nb + j) * n + (k * nb + l)] = std::move(p);
                }
    Vector unit(n, Scalar(0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) unit[i * nb + j] = a.unit()[i] * b.unit()[j];
    GradedAlgebra out(GradedAlgebra::Derived{}, GradedFreeModule(a.base(), gens), std::move(prods), std::move(unit),
                      a.name() + "⊗" + b.name());
    if (!a.has_differential() && !b.has_differential()) return out;
    ExactMatrix da = a.differential(), db = b.differential();
    ExactMatrix d(a.ground(), n, n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            std::size_t col = i * nb + j;
            for (std::size_t k = 0; k < na; ++k)
                if (sgn(da(k, i)) != 0) d.add_to(k * nb + j, col, da(k, i));
            int s = (a.degree(i) & 1) ? -1 : 1;
            for (std::size_t l = 0; l < nb; ++l)
                if (sgn(db(l, j)) != 0) d.add_to(i * nb + l, col, s * db(l, j));
        }
    return out.with_differential(std::move(d));
}

GradedAlgebra endomorphism_algebra(const GradedFreeModule& e) {
    const std::size_t n = e.rank(), N = n * n;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gens.push_back({e.generators()[i].name + "<-" + e.generators()[j].name, e.degree(i) - e.degree(j)});
    std::vector<SparseVector> prods(N * N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) prods[(i * n + j) * N + (j * n + l)] = {{i * n + l, Scalar(1)}};
    Vector unit(N, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = 1;
    return GradedAlgebra(GradedAlgebra::Derived{}, GradedFreeModule(e.base(), gens), std::move(prods), std::move(unit),
                         "End");
}

GradedAlgebra with_unit_basis(const GradedAlgebra& a) {
    if (a.unit_index() == std::optional<std::size_t>(0)) return a;
    const std::size_t n = a.rank();
    const GroundRing& g = a.ground();
    const Vector& u = a.unit();
    std::size_t p = n;
    for (std::size_t k = 0; k < n && p == n; ++k)
        if (sgn(u[k]) != 0 && g.is_unit(u[k])) p = k;
    if (p == n) throw UnsupportedGround("unit has no invertible coordinate; cannot extend it to a basis");
    // New basis b_0 = u, then e_k for k != p in order.
    std::vector<std::size_t> order{p};
    for (std::size_t k = 0; k < n; ++k)
        if (k != p) order.push_back(k);
    Scalar inv = g.inverse(u[p]);
    auto to_new = [&](const Vector& old) {
        Vector x(n, Scalar(0));
        Scalar head = g.reduce(old[p] * inv);
        x[0] = head;
        for (std::size_t idx = 1; idx < n; ++idx) x[idx] = g.reduce(old[order[idx]] - u[order[idx]] * head);
        return x;
    };
    auto to_old = [&](std::size_t idx) { return idx == 0 ? u : a.basis_vector(order[idx]); };
    std::vector<Generator> gens;
    for (std::size_t idx = 0; idx < n; ++idx) {
        Generator gen = a.module().generators()[order[idx]];
        if (idx == 0) gen.name = "1";
        gens.push_back(gen);
    }
    std::vector<SparseVector> prods(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prods[i * n + j] = to_sparse(g, to_new(a.multiply(to_old(i), to_old(j))));
    Vector unit(n, Scalar(0));
    unit[0] = 1;
    GradedAlgebra out(GradedFreeModule(a.base(), gens), std::move(prods), std::move(unit), a.name());
    if (!a.has_differential()) return out;
    ExactMatrix d = a.differential(), dn(g, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector img = to_new(d.apply(to_old(j)));
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(img[i]) != 0) dn.set(i, j, img[i]);
    }
    return out.with_differential(std::move(dn));
}

std::vector<Vector> two_sided_ideal(const GradedAlgebra& a, const std::vector<Vector>& generators) {
    if (!a.ground().is_field()) throw UnsupportedGround("ideal closure requires a field ground");
    Subspace span(a.ground(), a.rank());
    std::vector<Vector> queue;
    for (const auto& v : generators)
        if (span.insert(v)) queue.push_back(v);
    while (!queue.empty()) {
        Vector x = std::move(queue.back());
        queue.pop_back();
        for (std::size_t i = 0; i < a.rank(); ++i) {
            Vector e = a.basis_vector(i);
            for (Vector y : {a.multiply(e, x), a.multiply(x, e)})
                if (span.insert(y)) queue.push_back(std::move(y));
        }
    }
    return span.basis();
}

QuotientResult quotient_algebra(const GradedAlgebra& a, const std::vector<Vector>& generators) {
    const std::size_t n = a.rank();
    const GroundRing& g = a.ground();
    auto ideal = two_sided_ideal(a, generators);
    std::vector<std::size_t> pivot_row(n, n);
    for (std::size_t r = 0; r < ideal.size(); ++r) {
        std::size_t p = 0;
        while (sgn(ideal[r][p]) == 0) ++p;
        pivot_row[p] = r;
    }
    std::vector<std::size_t> keep;
    std::vector<std::size_t> position(n, n);
    for (std::size_t k = 0; k < n; ++k)
        if (pivot_row[k] == n) {
            position[k] = keep.size();
            keep.push_back(k);
        }
    ExactMatrix proj(g, keep.size(), n);
    for (std::size_t k = 0; k < n; ++k) {
        if (pivot_row[k] == n) {
            proj.set(position[k], k, Scalar(1));
            continue;
        }
        const Vector& row = ideal[pivot_row[k]];
        for (std::size_t j = k + 1; j < n; ++j)
            if (sgn(row[j]) != 0 && pivot_row[j] == n) proj.set(position[j], k, -row[j]);
    }
    std::vector<Generator> gens;
    for (auto k : keep) gens.push_back(a.module().generators()[k]);
    const std::size_t m = keep.size();
    std::vector<SparseVector> prods(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vector full(n, Scalar(0));
            axpy(full, 1, a.product(keep[i], keep[j]));
            prods[i * m + j] = to_sparse(g, proj.apply(full));
        }
    Vector unit = proj.apply(a.unit());
    GradedAlgebra q(GradedFreeModule(a.base(), gens), std::move(prods), std::move(unit), a.name() + "/I");
    if (a.has_differential()) {
        ExactMatrix d = a.differential();
        Subspace span(g, n);
        for (const auto& v : ideal) span.insert(v);
        for (const auto& v : ideal)
            if (!span.contains(d.apply(v))) throw InputError("ideal is not closed under the differential");
        ExactMatrix dq(g, m, m);
        for (std::size_t j = 0; j < m; ++j) {
            Vector img = proj.apply(d.column(keep[j]));
            for (std::size_t i = 0; i < m; ++i)
                if (sgn(img[i]) != 0) dq.set(i, j, img[i]);
        }
        q = q.with_differential(std::move(dq));
    }
    return {std::move(q), std::move(proj)};
}

std::optional<Vector> express_in(const std::vector<Vector>& basis, const Vector& v, const GroundRing& g) {
    if (basis.empty()) {
        if (is_zero_vector(v)) return Vector{};
        return std::nullopt;
    }
    ExactMatrix m = ExactMatrix::from_columns(g, v.size(), basis);
    return solve(m, v);
}

} // namespace hhalg
