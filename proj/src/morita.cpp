#include "hhalg/morita.hpp"

#include <algorithm>
#include <set>

namespace hhalg {

namespace {

void require_plain(const GradedAlgebra& a, const char* what) {
    if (!a.ground().is_field()) throw UnsupportedGround(std::string(what) + " needs a field ground");
    if (a.base().has_laurent()) throw InputError(std::string(what) + " does not support a Laurent generator");
    if (a.has_differential()) throw InputError(std::string(what) + " does not support differentials");
}

bool same_algebra(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a.module() == b.module()) || a.unit() != b.unit()) return false;
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j)
            if (a.product(i, j) != b.product(i, j)) return false;
    return true;
}

void require_side(const ModuleOverAlgebra& m, Side side, const std::string& role) {
    if (m.side() != side)
        throw InputError(role + " must be a " + std::string(side == Side::Left ? "left" : "right") + " module");
}

ExactMatrix section(const TensorQuotient& t, std::size_t full) {
    ExactMatrix s(t.projection.ground(), full, t.positions.size());
    for (std::size_t q = 0; q < t.positions.size(); ++q) s.set(t.positions[q], q, Scalar(1));
    return s;
}

// Columns of `targets` in the given basis; every column must lie in the span.
ExactMatrix coordinates(const std::vector<Vector>& basis, const ExactMatrix& targets, const std::string& what) {
    const GroundRing& g = targets.ground();
    if (basis.empty()) {
        if (!targets.is_zero()) throw InvariantViolation(what + " leaves the span of an empty basis");
        return ExactMatrix(g, 0, targets.cols());
    }
    auto c = coordinates_in(ExactMatrix::from_columns(g, targets.rows(), basis), targets);
    if (!c) throw InvariantViolation(what + " is not in the expected span");
    return *c;
}

// Action of each basis element of `acting` on X (x)_B Y through Y, with sign
// (-1)^{|b||x|}, pushed down to the quotient.
std::vector<ExactMatrix> induced_on_tensor(const TensorQuotient& t, const ModuleOverAlgebra& x,
                                           const ModuleOverAlgebra& y_acted) {
    const GroundRing& g = x.ground();
    const std::size_t nx = x.rank(), ny = y_acted.rank(), full = nx * ny;
    const GradedAlgebra& b = y_acted.algebra();
    ExactMatrix sec = section(t, full);
    std::vector<ExactMatrix> out;
    for (std::size_t k = 0; k < b.rank(); ++k) {
        const ExactMatrix& act = y_acted.action(k);
        ExactMatrix whole(g, full, full);
        for (std::size_t i = 0; i < nx; ++i) {
            int s = koszul(b.degree(k), x.underlying().degree(i));
            for (std::size_t j = 0; j < ny; ++j)
                for (std::size_t l = 0; l < ny; ++l)
                    if (sgn(act(l, j)) != 0) whole.set(i * ny + l, i * ny + j, g.reduce(s * act(l, j)));
        }
        ExactMatrix pushed = t.projection * whole;
        ExactMatrix q = pushed * sec;
        if (!(q * t.projection == pushed))
            throw InvariantViolation("action of " + b.module().generators()[k].name +
                                     " does not descend to the relative tensor product");
        out.push_back(std::move(q));
    }
    return out;
}

struct FData {
    TensorQuotient quotient;
    ModuleOverAlgebra module;
};

FData f_with_quotient(const ModuleOverAlgebra& x, const MoritaContext& c) {
    require_side(x, Side::Right, "F input");
    TensorQuotient t = tensor_over(x, c.e_r);
    auto act = induced_on_tensor(t, x, c.e_a);
    ModuleOverAlgebra m(c.a, t.module, std::move(act), Side::Left, x.name() + "⊗_R E");
    return {std::move(t), std::move(m)};
}

struct G0Data {
    HomOver hom;
    ModuleOverAlgebra module;
};

G0Data g0_with_basis(const ModuleOverAlgebra& y, const MoritaContext& c) {
    require_side(y, Side::Left, "G input");
    HomOver h = hom_over(c.e_a, y);
    const GroundRing& g = y.ground();
    const std::size_t ne = c.e_r.rank(), ny = y.rank(), nh = h.basis.size();
    std::vector<ExactMatrix> act;
    for (std::size_t r = 0; r < c.r.rank(); ++r) {
        const ExactMatrix& er = c.e_r.action(r);
        ExactMatrix targets(g, ne * ny, nh);
        for (std::size_t k = 0; k < nh; ++k)
            for (std::size_t i = 0; i < ne; ++i)
                for (std::size_t m = 0; m < ne; ++m) {
                    if (sgn(er(m, i)) == 0) continue;
                    for (std::size_t j = 0; j < ny; ++j)
                        if (sgn(h.basis[k][m * ny + j]) != 0)
                            targets.add_to(i * ny + j, k, er(m, i) * h.basis[k][m * ny + j]);
                }
        act.push_back(coordinates(h.basis, targets, "f . r"));
    }
    ModuleOverAlgebra m(c.r, h.module, std::move(act), Side::Right, "Hom_A(E," + y.name() + ")");
    return {std::move(h), std::move(m)};
}

// eta_X : X -> Hom_A(E, X (x)_R E), x |-> (e |-> x (x) e).
ExactMatrix unit_map(const ModuleOverAlgebra& x, const TensorQuotient& fx, const HomOver& h, std::size_t ne) {
    const GroundRing& g = x.ground();
    const std::size_t nf = fx.positions.size();
    ExactMatrix targets(g, ne * nf, x.rank());
    for (std::size_t i = 0; i < x.rank(); ++i)
        for (std::size_t j = 0; j < ne; ++j)
            for (std::size_t q = 0; q < nf; ++q) {
                const Scalar& v = fx.projection(q, i * ne + j);
                if (sgn(v) != 0) targets.set(j * nf + q, i, v);
            }
    return coordinates(h.basis, targets, "unit map");
}

// Evaluation Hom_A(E, Y) (x)_R E -> Y on the quotient basis.
ExactMatrix counit_map(const HomOver& h, const TensorQuotient& t, std::size_t ne, std::size_t ny,
                       const GroundRing& g) {
    const std::size_t full = h.basis.size() * ne;
    ExactMatrix whole(g, ny, full);
    for (std::size_t k = 0; k < h.basis.size(); ++k)
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                if (sgn(h.basis[k][i * ny + j]) != 0) whole.set(j, k * ne + i, h.basis[k][i * ny + j]);
    ExactMatrix ev = whole * section(t, full);
    if (!(ev * t.projection == whole)) throw InvariantViolation("evaluation is not balanced over R");
    return ev;
}

std::string ranks_text(const ModuleOverAlgebra& m) { return std::to_string(m.rank()); }

} // namespace

TensorQuotient tensor_over(const ModuleOverAlgebra& x, const ModuleOverAlgebra& y) {
    require_side(x, Side::Right, "left factor");
    require_side(y, Side::Left, "right factor");
    if (!same_algebra(x.algebra(), y.algebra())) throw InputError("relative tensor over different algebras");
    const GradedAlgebra& b = x.algebra();
    if (!b.ground().is_field()) throw UnsupportedGround("relative tensor needs a field ground");
    const GroundRing& g = b.ground();
    const std::size_t nx = x.rank(), ny = y.rank(), full = nx * ny;
    Subspace rel(g, full);
    for (std::size_t k = 0; k < b.rank(); ++k) {
        const ExactMatrix& ax = x.action(k);
        const ExactMatrix& ay = y.action(k);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                // (x_i b) (x) y_j - x_i (x) (b y_j)
                Vector v(full, Scalar(0));
                for (std::size_t m = 0; m < nx; ++m) v[m * ny + j] += ax(m, i);
                for (std::size_t l = 0; l < ny; ++l) v[i * ny + l] -= ay(l, j);
                rel.insert(v);
            }
    }
    std::set<std::size_t> pivots(rel.pivots().begin(), rel.pivots().end());
    TensorQuotient t{GradedFreeModule(b.base()), ExactMatrix(), {}};
    std::vector<Generator> gens;
    for (std::size_t p = 0; p < full; ++p)
        if (!pivots.count(p)) {
            t.positions.push_back(p);
            const auto& gx = x.underlying().generators()[p / ny];
            const auto& gy = y.underlying().generators()[p % ny];
            gens.push_back({gx.name + "⊗" + gy.name, gx.degree + gy.degree});
        }
    t.module = GradedFreeModule(b.base(), gens);
    t.projection = ExactMatrix(g, t.positions.size(), full);
    for (std::size_t p = 0; p < full; ++p) {
        Vector e(full, Scalar(0));
        e[p] = 1;
        Vector r = rel.reduce(e);
        for (std::size_t q = 0; q < t.positions.size(); ++q)
            if (sgn(r[t.positions[q]]) != 0) t.projection.set(q, p, r[t.positions[q]]);
    }
    return t;
}

HomOver hom_over(const ModuleOverAlgebra& e, const ModuleOverAlgebra& y) {
    require_side(e, Side::Left, "Hom source");
    require_side(y, Side::Left, "Hom target");
    if (!same_algebra(e.algebra(), y.algebra())) throw InputError("Hom over different algebras");
    const GradedAlgebra& b = e.algebra();
    require_plain(b, "Hom over an algebra");
    const GroundRing& g = b.ground();
    const std::size_t ne = e.rank(), ny = y.rank();
    std::set<int> degrees;
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = 0; j < ny; ++j) degrees.insert(y.underlying().degree(j) - e.underlying().degree(i));

    HomOver out{GradedFreeModule(b.base()), {}};
    std::vector<Generator> gens;
    for (int c : degrees) {
        std::vector<std::size_t> unknowns;
        std::vector<long> column_of(ne * ny, -1);
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                if (y.underlying().degree(j) - e.underlying().degree(i) == c) {
                    column_of[i * ny + j] = static_cast<long>(unknowns.size());
                    unknowns.push_back(i * ny + j);
                }
        // f(a e_i) = (-1)^{|f||a|} a f(e_i), one row per (a, i, y_l).
        std::vector<Vector> rows;
        for (std::size_t a = 0; a < b.rank(); ++a) {
            const ExactMatrix& ae = e.action(a);
            const ExactMatrix& ay = y.action(a);
            int s = koszul(c, b.degree(a));
            for (std::size_t i = 0; i < ne; ++i)
                for (std::size_t l = 0; l < ny; ++l) {
                    Vector row(unknowns.size(), Scalar(0));
                    bool any = false;
                    for (std::size_t k = 0; k < ne; ++k)
                        if (sgn(ae(k, i)) != 0 && column_of[k * ny + l] >= 0) {
                            row[column_of[k * ny + l]] += ae(k, i);
                            any = true;
                        }
                    for (std::size_t j = 0; j < ny; ++j)
                        if (sgn(ay(l, j)) != 0 && column_of[i * ny + j] >= 0) {
                            row[column_of[i * ny + j]] -= s * ay(l, j);
                            any = true;
                        }
                    if (any) rows.push_back(std::move(row));
                }
        }
        ExactMatrix m(g, rows.size(), unknowns.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t u = 0; u < unknowns.size(); ++u)
                if (sgn(rows[r][u]) != 0) m.set(r, u, g.reduce(rows[r][u]));
        for (const Vector& k : kernel_basis(m)) {
            Vector full(ne * ny, Scalar(0));
            for (std::size_t u = 0; u < unknowns.size(); ++u) full[unknowns[u]] = k[u];
            gens.push_back({"h" + std::to_string(out.basis.size()), c});
            out.basis.push_back(std::move(full));
        }
    }
    out.module = GradedFreeModule(b.base(), gens);
    return out;
}

EndoAlgebra endo_algebra(const ModuleOverAlgebra& e) {
    HomOver h = hom_over(e, e);
    const GroundRing& g = e.ground();
    const std::size_t n = e.rank(), nh = h.basis.size();
    std::vector<SparseVector> prods(nh * nh);
    for (std::size_t p = 0; p < nh; ++p) {
        ExactMatrix targets(g, n * n, nh);
        for (std::size_t q = 0; q < nh; ++q)
            // (f o g)_{il} = sum_j g_ij f_jl with f = h_p, g = h_q.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const Scalar& gij = h.basis[q][i * n + j];
                    if (sgn(gij) == 0) continue;
                    for (std::size_t l = 0; l < n; ++l)
                        if (sgn(h.basis[p][j * n + l]) != 0) targets.add_to(i * n + l, q, gij * h.basis[p][j * n + l]);
                }
        ExactMatrix c = coordinates(h.basis, targets, "composition");
        for (std::size_t q = 0; q < nh; ++q)
            for (std::size_t k = 0; k < nh; ++k)
                if (sgn(c(k, q)) != 0) prods[p * nh + q].emplace_back(k, c(k, q));
    }
    ExactMatrix id(g, n * n, 1);
    for (std::size_t i = 0; i < n; ++i) id.set(i * n + i, 0, Scalar(1));
    Vector unit = coordinates(h.basis, id, "identity").column(0);
    GradedAlgebra a(h.module, std::move(prods), std::move(unit), "End(" + e.name() + ")");

    std::vector<ExactMatrix> act;
    for (std::size_t k = 0; k < nh; ++k) {
        ExactMatrix m(g, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (sgn(h.basis[k][i * n + l]) != 0) m.set(l, i, h.basis[k][i * n + l]);
        act.push_back(std::move(m));
    }
    ModuleOverAlgebra ea(a, e.underlying(), std::move(act), Side::Left, e.name());
    return {std::move(a), std::move(ea), std::move(h)};
}

MoritaContext morita_context(const ModuleOverAlgebra& e_r) {
    require_side(e_r, Side::Left, "E");
    require_plain(e_r.algebra(), "Morita context");
    EndoAlgebra ea = endo_algebra(e_r);
    return {e_r.algebra(), e_r, std::move(ea.algebra), std::move(ea.e_over_a), false, "A = End_R(E)"};
}

MoritaContext koszul_context(const GradedAlgebra& r, const GradedAlgebra& a, std::string note) {
    require_plain(r, "Morita context");
    require_plain(a, "Morita context");
    return {r, ModuleOverAlgebra::augmentation(r), a, ModuleOverAlgebra::augmentation(a), true, std::move(note)};
}

ModuleOverAlgebra functor_F(const ModuleOverAlgebra& x, const MoritaContext& c) {
    return f_with_quotient(x, c).module;
}

BigradedTable functor_G(const ModuleOverAlgebra& y, const MoritaContext& c, int s_max, int lo, int hi) {
    return ext_table(resolve(c.e_a, s_max, lo, hi), y);
}

ModuleOverAlgebra functor_G0(const ModuleOverAlgebra& y, const MoritaContext& c) {
    return g0_with_basis(y, c).module;
}

CompletionResult completion(const ModuleOverAlgebra& m, const MoritaContext& c, int s_max, int lo, int hi) {
    CompletionResult out{m.name(), functor_G(functor_F(m, c), c, s_max, lo, hi), lo, hi, {}};
    if (c.derived_model) out.notes.push_back(c.note);
    BigradedTable tor = tor_table(m, resolve(c.e_r, s_max, lo, hi));
    std::string higher;
    for (const auto& [st, v] : tor.entries())
        if (st.first > 0 && st.second >= lo && st.second <= hi && !v.is_zero())
            higher += (higher.empty() ? "" : ", ") + std::string("(") + std::to_string(st.first) + "," +
                      std::to_string(st.second) + ")";
    out.notes.push_back(higher.empty() ? "Tor^R_s(M, E) = 0 for 0 < s <= " + std::to_string(s_max) +
                                             " in the window, so F is derived there"
                                       : "F is the underived tensor; Tor^R(M, E) is nonzero at " + higher);
    out.notes.push_back("corpus-verified in window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return out;
}

ModuleOverAlgebra completion_module(const ModuleOverAlgebra& m, const MoritaContext& c) {
    if (c.derived_model) throw InputError("the completion module needs A = End_R(E)");
    return functor_G0(functor_F(m, c), c);
}

RoundTrip roundtrip_FG(const ModuleOverAlgebra& y, const MoritaContext& c, int s_max, int lo, int hi) {
    if (c.derived_model) throw InputError("the round trip needs A = End_R(E)");
    RoundTrip out;
    out.lo = lo;
    out.hi = hi;
    std::string w = ", window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    BigradedTable g = functor_G(y, c, s_max, lo, hi);
    for (const auto& [st, v] : g.entries())
        if (st.first > 0 && st.second >= lo && st.second <= hi && !v.is_zero()) {
            out.witness = "Ext_A^" + std::to_string(st.first) + "(E, Y) != 0 at t = " + std::to_string(st.second) + w;
            return out;
        }
    G0Data g0 = g0_with_basis(y, c);
    FData fg = f_with_quotient(g0.module, c);
    ExactMatrix ev = counit_map(g0.hom, fg.quotient, c.e_r.rank(), y.rank(), y.ground());
    for (std::size_t a = 0; a < c.a.rank(); ++a)
        if (!(ev * fg.module.action(a) == y.action(a) * ev)) throw InvariantViolation("evaluation is not A-linear");
    if (ev.rows() != ev.cols() || rank(ev) != ev.rows()) {
        out.witness = "counit F(G(Y)) -> Y has rank " + std::to_string(rank(ev)) + " between ranks " +
                      std::to_string(ev.cols()) + " and " + ranks_text(y) + w;
        return out;
    }
    out.equivalent = true;
    out.witness = "counit F(G(Y)) -> Y is an isomorphism of rank " + ranks_text(y) + w;
    return out;
}

TriangleCheck triangle_identities(const ModuleOverAlgebra& x, const ModuleOverAlgebra& y, const MoritaContext& c) {
    if (c.derived_model) throw InputError("triangle identities need A = End_R(E)");
    const GroundRing& g = c.r.ground();
    const std::size_t ne = c.e_r.rank();
    TriangleCheck out;

    // X -> G0 F X, then F of it, then evaluation.
    FData fx = f_with_quotient(x, c);
    G0Data gfx = g0_with_basis(fx.module, c);
    ExactMatrix eta = unit_map(x, fx.quotient, gfx.hom, ne);
    for (std::size_t r = 0; r < c.r.rank(); ++r)
        if (!(eta * x.action(r) == gfx.module.action(r) * eta)) throw InvariantViolation("unit map is not R-linear");
    FData fgfx = f_with_quotient(gfx.module, c);
    ExactMatrix whole(g, gfx.module.rank() * ne, x.rank() * ne);
    for (std::size_t i = 0; i < x.rank(); ++i)
        for (std::size_t k = 0; k < gfx.module.rank(); ++k)
            if (sgn(eta(k, i)) != 0)
                for (std::size_t j = 0; j < ne; ++j) whole.set(k * ne + j, i * ne + j, eta(k, i));
    ExactMatrix f_eta = fgfx.quotient.projection * whole * section(fx.quotient, x.rank() * ne);
    ExactMatrix ev1 = counit_map(gfx.hom, fgfx.quotient, ne, fx.module.rank(), g);
    out.retract = ev1 * f_eta == ExactMatrix::identity(g, fx.module.rank());

    // G0 Y -> G0 F G0 Y -> G0 Y.
    G0Data gy = g0_with_basis(y, c);
    FData fgy = f_with_quotient(gy.module, c);
    G0Data gfgy = g0_with_basis(fgy.module, c);
    ExactMatrix eta2 = unit_map(gy.module, fgy.quotient, gfgy.hom, ne);
    ExactMatrix ev2 = counit_map(gy.hom, fgy.quotient, ne, y.rank(), g);
    const std::size_t nf = fgy.module.rank(), ny = y.rank();
    ExactMatrix post(g, ne * ny, gfgy.hom.basis.size());
    for (std::size_t k = 0; k < gfgy.hom.basis.size(); ++k)
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t q = 0; q < nf; ++q) {
                const Scalar& h = gfgy.hom.basis[k][i * nf + q];
                if (sgn(h) == 0) continue;
                for (std::size_t j = 0; j < ny; ++j)
                    if (sgn(ev2(j, q)) != 0) post.add_to(i * ny + j, k, h * ev2(j, q));
            }
    ExactMatrix g_ev = coordinates(gy.hom.basis, post, "G0 of the counit");
    out.second = g_ev * eta2 == ExactMatrix::identity(g, gy.module.rank());
    out.witness = std::string("retract ") + (out.retract ? "identity" : "not identity") + " on rank " +
                  std::to_string(fx.module.rank()) + "; second triangle " + (out.second ? "identity" : "not identity") +
                  " on rank " + std::to_string(gy.module.rank());
    return out;
}

ModuleOverAlgebra functor_T(const ModuleOverAlgebra& x, const MoritaContext& c) {
    require_side(x, Side::Right, "T input");
    TensorQuotient t = tensor_over(x, c.e_a);
    auto act = induced_on_tensor(t, x, c.e_r);
    return ModuleOverAlgebra(c.r, t.module, std::move(act), Side::Left, x.name() + "⊗_A E");
}

TorsionSide torsion_side_TS(const ModuleOverAlgebra& x, const ModuleOverAlgebra& m, const MoritaContext& c, int s_max,
                            int lo, int hi) {
    require_side(x, Side::Right, "T input");
    require_side(m, Side::Left, "S input");
    return {tor_table(x, resolve(c.e_a, s_max, lo, hi)), ext_table(resolve(c.e_r, s_max, lo, hi), m)};
}

std::map<int, std::size_t> internal_ranks(const BigradedTable& t, int lo, int hi) {
    std::map<int, std::size_t> out;
    for (const auto& [st, v] : t.entries())
        if (st.second >= lo && st.second <= hi && v.free_rank > 0) out[st.second] += v.free_rank;
    return out;
}

std::map<int, std::size_t> internal_ranks(const GradedFreeModule& m, int lo, int hi) {
    std::map<int, std::size_t> out;
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (m.degree(i) >= lo && m.degree(i) <= hi) ++out[m.degree(i)];
    return out;
}

} // namespace hhalg
