#include "hhalg/hochschild.hpp"

#include <algorithm>

namespace hhalg {

namespace {

Vector multiply_basis(const GradedAlgebra& a, const Vector& v, std::size_t j) {
    return a.multiply(v, a.basis_vector(j));
}

std::size_t power(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

ActionMap action_map_mu(const GradedAlgebra& a) {
    const std::size_t n = a.rank();
    const GroundRing& g = a.ground();
    GradedAlgebra env = tensor(a, opposite(a));
    GradedAlgebra end = endomorphism_dga(Complex::from_algebra(a));
    ExactMatrix mu(g, n * n, n * n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t x = 0; x < n; ++x) {
                Vector ax = multiply_basis(a, a.basis_vector(l), x);
                Vector axb = multiply_basis(a, ax, r);
                int sign = koszul(a.degree(r), a.degree(x));
                for (std::size_t i = 0; i < n; ++i)
                    if (sgn(axb[i]) != 0) mu.add_to(i * n + x, l * n + r, sign * axb[i]);
            }
    if (!(mu.apply(env.unit()) == end.unit())) throw InvariantViolation("mu does not preserve the unit");
    for (std::size_t p = 0; p < env.rank(); ++p)
        for (std::size_t q = 0; q < env.rank(); ++q) {
            Vector lhs = mu.apply(env.multiply(env.basis_vector(p), env.basis_vector(q)));
            Vector rhs = end.multiply(mu.column(p), mu.column(q));
            if (!(lhs == rhs)) throw InvariantViolation("mu is not multiplicative");
        }
    ActionMap out{env, end, mu};
    if (a.has_differential()) action_chain_map(out);
    return out;
}

ChainMap action_chain_map(const ActionMap& mu) {
    return make_chain_map(Complex::from_algebra(mu.enveloping), Complex::from_algebra(mu.endomorphisms), mu.matrix,
                          0);
}

ModuleOverAlgebra enveloping_module(const GradedAlgebra& a) {
    if (a.has_differential()) throw InputError("enveloping module of a DG algebra is not supported");
    ActionMap mu = action_map_mu(a);
    const std::size_t n = a.rank();
    std::vector<ExactMatrix> act;
    for (std::size_t p = 0; p < n * n; ++p) {
        ExactMatrix m(a.ground(), n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(mu.matrix(i * n + j, p)) != 0) m.set(i, j, mu.matrix(i * n + j, p));
        act.push_back(std::move(m));
    }
    return ModuleOverAlgebra(mu.enveloping, a.module(), std::move(act), Side::Left, a.name());
}

IsoVerdict is_isomorphism(const ExactMatrix& m, const GradedFreeModule& source, const GradedFreeModule& target) {
    IsoVerdict v;
    auto classes = source.classes();
    for (int c : target.classes())
        if (std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
    std::sort(classes.begin(), classes.end());
    for (int c : classes) {
        ExactMatrix block = class_block(m, source, target, c, c);
        if (block.rows() != block.cols()) {
            v.witness = "class " + std::to_string(c) + ": " + std::to_string(block.rows()) + "x" +
                        std::to_string(block.cols()) + " block";
            return v;
        }
        std::size_t r = rank(block);
        auto coker = cokernel(block);
        if (r != block.cols() || !coker.is_zero()) {
            v.witness = "class " + std::to_string(c) + ": rank " + std::to_string(r) + " of " +
                        std::to_string(block.cols()) + ", cokernel " + coker.to_string();
            return v;
        }
    }
    v.iso = true;
    v.witness = "invertible in every degree class";
    return v;
}

BigradedTable hochschild_cohomology(const GradedAlgebra& input, int n_max, int lo, int hi) {
    if (input.has_differential()) throw InputError("bar-complex Hochschild cohomology of DG algebras is not supported");
    if (n_max < 0) throw InputError("n_max must be non-negative");
    GradedAlgebra a = with_unit_basis(input);
    const GroundRing& g = a.ground();
    const BaseRing& b = a.base();
    const std::size_t n = a.rank(), r = n - 1;

    // merges[k] = (p, q, c) with e_p e_q = c e_k + ..., over non-unit indices.
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> merges(n);
    for (std::size_t p = 1; p < n; ++p)
        for (std::size_t q = 1; q < n; ++q)
            for (const auto& [k, c] : a.product(p, q))
                if (k != 0) merges[k].emplace_back(p - 1, q - 1, c);

    std::vector<GradedFreeModule> cochains;
    std::vector<std::vector<std::size_t>> tuples_of;
    const std::size_t top = static_cast<std::size_t>(n_max) + 1;
    for (std::size_t k = 0; k <= top; ++k) {
        std::size_t dim = power(r, k) * n;
        if (dim > kMaxBarDimension)
            throw BudgetExceeded("bar cochains in degree " + std::to_string(k) + " have dimension " +
                                 std::to_string(dim) + "; largest completed n = " +
                                 std::to_string(static_cast<long>(k) - 2));
        std::vector<Generator> gens;
        gens.reserve(dim);
        for (std::size_t t = 0; t < power(r, k); ++t) {
            int deg_in = 0;
            std::size_t rest = t;
            for (std::size_t i = 0; i < k; ++i) {
                deg_in += a.degree(rest % r + 1);
                rest /= r;
            }
            for (std::size_t m = 0; m < n; ++m)
                gens.push_back({"c" + std::to_string(t) + "_" + std::to_string(m), a.degree(m) - deg_in});
        }
        cochains.emplace_back(b, std::move(gens));
    }

    // tuple digits, most significant first
    auto digits = [&](std::size_t t, std::size_t k) {
        std::vector<std::size_t> d(k);
        for (std::size_t i = k; i-- > 0;) {
            d[i] = t % r;
            t /= r;
        }
        return d;
    };
    auto index = [&](const std::vector<std::size_t>& d) {
        std::size_t t = 0;
        for (auto x : d) t = t * r + x;
        return t;
    };

    std::vector<ExactMatrix> delta;
    for (std::size_t k = 0; k < top; ++k) {
        ExactMatrix dk(g, cochains[k + 1].rank(), cochains[k].rank());
        for (std::size_t t = 0; t < power(r, k); ++t) {
            auto tup = digits(t, k);
            for (std::size_t m = 0; m < n; ++m) {
                std::size_t col = t * n + m;
                int degf = cochains[k].degree(col);
                for (std::size_t u = 0; u < r; ++u) {
                    std::vector<std::size_t> front{u};
                    front.insert(front.end(), tup.begin(), tup.end());
                    std::vector<std::size_t> back(tup);
                    back.push_back(u);
                    int s1 = koszul(degf, a.degree(u + 1));
                    for (const auto& [q, c] : a.product(u + 1, m)) dk.add_to(index(front) * n + q, col, s1 * c);
                    int s3 = (k + 1) % 2 ? -1 : 1;
                    for (const auto& [q, c] : a.product(m, u + 1)) dk.add_to(index(back) * n + q, col, s3 * c);
                }
                for (std::size_t i = 0; i < k; ++i) {
                    int si = (i + 1) % 2 ? -1 : 1;
                    for (const auto& [p, q, c] : merges[tup[i] + 1]) {
                        std::vector<std::size_t> split(tup.begin(), tup.begin() + static_cast<long>(i));
                        split.push_back(p);
                        split.push_back(q);
                        split.insert(split.end(), tup.begin() + static_cast<long>(i) + 1, tup.end());
                        dk.add_to(index(split) * n + m, col, si * c);
                    }
                }
            }
        }
        delta.push_back(std::move(dk));
    }
    for (std::size_t k = 0; k + 1 < delta.size(); ++k)
        if (!(delta[k + 1] * delta[k]).is_zero()) throw InvariantViolation("bar differential does not square to zero");

    BigradedTable table(g, b.period());
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n_max); ++k)
        for (int c : cochains[k].classes()) {
            if (!b.has_laurent() && (c < lo || c > hi)) continue;
            ExactMatrix out = class_block(delta[k], cochains[k], cochains[k + 1], c, c);
            ExactMatrix in = k == 0 ? ExactMatrix(g, cochains[0].indices_in_class(c).size(), 0)
                                    : class_block(delta[k - 1], cochains[k - 1], cochains[k], c, c);
            table.set(static_cast<int>(k), c, homology_at(out, in));
        }
    table.notes.push_back("normalized bar complex through n = " + std::to_string(n_max));
    return table;
}

BigradedTable hochschild_via_enveloping(const GradedAlgebra& a, int n_max, int lo, int hi) {
    ModuleOverAlgebra m = enveloping_module(a);
    Resolution r = resolve(m, n_max, -hi, -lo);
    BigradedTable ext = ext_table(r, m);
    BigradedTable table(a.ground(), a.base().period());
    for (const auto& [key, value] : ext.entries()) table.set(key.first, -key.second, value);
    BigradedTable bar = hochschild_cohomology(a, n_max, lo, hi);
    if (!(bar == table)) throw InvariantViolation("enveloping Ext and bar-complex Hochschild tables disagree");
    table.notes.push_back("Ext over the enveloping algebra, " +
                          std::string(r.minimal ? "minimal" : "non-minimal") + " resolution");
    table.notes.push_back("agrees with the bar complex through n = " + std::to_string(n_max));
    return table;
}

namespace {

// Cycle lattice of a complex in the class of degree n; throws unless rank 1.
Vector rank_one_cycle(const Complex& c, int n, const char* what) {
    const BaseRing& b = c.base();
    auto cycles =
        kernel_basis(class_block(c.differential(), c.module(), c.module(), b.degree_class(n), b.degree_class(n - 1)));
    if (cycles.size() != 1)
        throw InputError(std::string(what) + " cycles in degree " + std::to_string(n) + " have rank " +
                         std::to_string(cycles.size()) + ", expected 1");
    Vector v = cycles[0];
    mpz_class gcd = 0;
    for (const auto& x : v) mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), x.get_num_mpz_t());
    if (c.ground().kind() == GroundRing::Kind::Integers && gcd != 0)
        for (auto& x : v) x /= gcd;
    return v;
}

Vector scaled(const Vector& v, const Scalar& s) {
    Vector out(v);
    for (auto& x : out) x *= s;
    return out;
}

} // namespace

MuImage mu_homology_image(const QuotientDGA& q) {
    const BaseRing& b = q.base;
    const GroundRing& g = b.ground();
    if (g.is_field()) throw InputError("x is a unit over " + g.name() + ", so the homology vanishes");
    if (abs(q.x.coeff) == 1) throw InputError("x is a unit, so the homology vanishes");
    const int n = q.d + 1;
    ActionMap mu = action_map_mu(q.algebra);
    ChainMap f = action_chain_map(mu);
    const int c = b.degree_class(n);
    auto sidx = f.source.module().indices_in_class(c);
    auto tidx = f.target.module().indices_in_class(c);

    MuImage out;
    out.source_homology = homology_in_degree(f.source, n);
    out.target_homology = homology_in_degree(f.target, n);

    Vector gen = rank_one_cycle(f.source, n, "A (x) A^op");
    Vector beta = rank_one_cycle(f.target, n, "End(A)");
    auto first = std::find_if(beta.begin(), beta.end(), [](const Scalar& x) { return sgn(x) != 0; });
    if (sgn(*first) < 0) beta = scaled(beta, Scalar(-1));
    const std::size_t pivot = static_cast<std::size_t>(first - beta.begin());

    // Among +-gen, keep the lexicographically least one whose image is a beta-multiple.
    std::optional<Vector> alpha;
    Scalar coeff;
    for (const Vector& cand : {gen, scaled(gen, Scalar(-1))}) {
        Vector full(f.source.rank(), Scalar(0));
        for (std::size_t k = 0; k < sidx.size(); ++k) full[sidx[k]] = cand[k];
        Vector image = f.matrix.apply(full);
        Vector local;
        for (auto i : tidx) local.push_back(image[i]);
        Scalar k = local[pivot] / beta[pivot];
        if (!(scaled(beta, k) == local)) continue;
        if (!alpha || cand < *alpha) {
            alpha = cand;
            coeff = k;
        }
    }
    if (!alpha) throw InputError("mu(alpha) is not a multiple of the beta class");
    out.alpha = *alpha;
    out.beta = beta;

    int alpha_degree = f.source.module().degree(sidx[0]);
    int beta_degree = f.target.module().degree(tidx[pivot]);
    out.coefficient = BaseElement{coeff, b.has_laurent() ? b.v_exponent(beta_degree, alpha_degree) : 0};

    // Boundaries in beta-coordinates generate the modulus.
    ExactMatrix in = class_block(f.target.differential(), f.target.module(), f.target.module(), b.degree_class(n + 1), c);
    mpz_class modulus = 0;
    for (std::size_t j = 0; j < in.cols(); ++j) {
        Scalar k = in(pivot, j) / beta[pivot];
        mpz_gcd(modulus.get_mpz_t(), modulus.get_mpz_t(), k.get_num_mpz_t());
    }
    out.modulus = modulus;
    mpz_class num = coeff.get_num();
    if (modulus != 0) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
        num = r;
    }
    out.reduced = BaseElement{Scalar(num), out.coefficient.v_power};
    mpz_class gcd, x = q.x.coeff.get_num();
    mpz_gcd(gcd.get_mpz_t(), num.get_mpz_t(), x.get_mpz_t());
    out.unit = num != 0 && gcd == 1;
    out.note = "alpha is fixed only up to sign; the coefficient is reported for the lexicographically least "
               "generator and may differ by -1";
    return out;
}

} // namespace hhalg
