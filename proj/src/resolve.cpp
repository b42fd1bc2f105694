#include "hhalg/resolve.hpp"

#include <algorithm>

namespace hhalg {

namespace {

GradedFreeModule free_stage(const GradedAlgebra& a, const GradedFreeModule& v) {
    std::vector<Generator> gens;
    for (const auto& g : v.generators())
        for (const auto& e : a.module().generators()) gens.push_back({e.name + "." + g.name, e.degree + g.degree});
    return GradedFreeModule(a.base(), gens);
}

// e_i * x on A (x) V with rank(V) = rv.
Vector free_act(const GradedAlgebra& a, std::size_t rv, std::size_t i, const Vector& x) {
    const std::size_t ra = a.rank();
    Vector out(ra * rv, Scalar(0));
    for (std::size_t g = 0; g < rv; ++g)
        for (std::size_t e = 0; e < ra; ++e) {
            const Scalar& c = x[g * ra + e];
            if (sgn(c) == 0) continue;
            for (const auto& [k, p] : a.product(i, e)) out[g * ra + k] += c * p;
        }
    for (auto& c : out) c = a.ground().reduce(c);
    return out;
}

// Generator of A (x) V at g, i.e. unit (x) g.
Vector unit_at(const GradedAlgebra& a, std::size_t rv, std::size_t g) {
    Vector out(a.rank() * rv, Scalar(0));
    for (std::size_t e = 0; e < a.rank(); ++e) out[g * a.rank() + e] = a.unit()[e];
    return out;
}

Vector embed(const Vector& local, const std::vector<std::size_t>& idx, std::size_t n) {
    Vector v(n, Scalar(0));
    for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = local[k];
    return v;
}

Vector restrict(const Vector& v, const std::vector<std::size_t>& idx) {
    Vector out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
}

struct Kernel {
    std::vector<Vector> vectors;
    std::vector<int> classes;
};

// Kernel of a degree-0 map, class by class.
Kernel kernel_by_class(const ExactMatrix& phi, const GradedFreeModule& source, const GradedFreeModule& target) {
    Kernel k;
    for (int c : source.classes()) {
        auto idx = source.indices_in_class(c);
        for (const auto& v : kernel_basis(class_block(phi, source, target, c, c))) {
            k.vectors.push_back(embed(v, idx, source.rank()));
            k.classes.push_back(c);
        }
    }
    return k;
}

template <class Act>
std::vector<std::size_t> cover(const GradedAlgebra& a, std::size_t dim, const Kernel& k, Act act, bool& minimal) {
    const GroundRing& g = a.ground();
    std::vector<std::size_t> chosen;
    if (a.is_augmented()) {
        Subspace span(g, dim);
        for (std::size_t i = 0; i < a.rank(); ++i) {
            if (i == *a.unit_index()) continue;
            for (const auto& v : k.vectors) span.insert(act(i, v));
        }
        for (std::size_t j = 0; j < k.vectors.size(); ++j)
            if (span.insert(k.vectors[j])) chosen.push_back(j);
        Subspace generated(g, dim);
        for (auto j : chosen)
            for (std::size_t i = 0; i < a.rank(); ++i) generated.insert(act(i, k.vectors[j]));
        if (generated.dimension() == k.vectors.size()) return chosen;
        chosen.clear();
    }
    minimal = false;
    Subspace generated(g, dim);
    for (std::size_t j = 0; j < k.vectors.size() && generated.dimension() < k.vectors.size(); ++j) {
        if (generated.contains(k.vectors[j])) continue;
        chosen.push_back(j);
        for (std::size_t i = 0; i < a.rank(); ++i) generated.insert(act(i, k.vectors[j]));
    }
    return chosen;
}

void audit_exact(const ExactMatrix& phi, const ExactMatrix& d, const GradedFreeModule& source,
                 const GradedFreeModule& target, const GradedFreeModule& next, std::size_t s) {
    if (!(phi * d).is_zero()) throw InvariantViolation("resolution differentials do not compose to zero");
    for (int c : source.classes()) {
        std::size_t ker = kernel_basis(class_block(phi, source, target, c, c)).size();
        std::size_t im = rank(class_block(d, next, source, c, c));
        if (ker != im)
            throw InvariantViolation("resolution not exact at stage " + std::to_string(s) + " in class " +
                                     std::to_string(c));
    }
}

bool in_window(const BaseRing& b, int t, int lo, int hi) { return b.has_laurent() || (t >= lo && t <= hi); }

GradedFreeModule cochain_module(const GradedFreeModule& v, const GradedFreeModule& m) {
    std::vector<Generator> gens;
    for (const auto& g : v.generators())
        for (const auto& x : m.generators()) gens.push_back({g.name + "*" + x.name, g.degree - x.degree});
    return GradedFreeModule(v.base(), gens);
}

void require_same_algebra(const GradedAlgebra& a, const GradedAlgebra& b) {
    bool same = a.module() == b.module();
    for (std::size_t i = 0; same && i < a.rank(); ++i)
        for (std::size_t j = 0; same && j < a.rank(); ++j) same = a.product(i, j) == b.product(i, j);
    if (!same) throw InputError("module is over a different algebra than the resolution");
}

} // namespace

std::vector<std::size_t> Resolution::stage_ranks() const {
    std::vector<std::size_t> out;
    for (const auto& v : generators) out.push_back(v.rank());
    return out;
}

Vector Resolution::act(std::size_t s, std::size_t i, const Vector& x) const {
    return free_act(algebra, generators[s].rank(), i, x);
}

Resolution resolve(const ModuleOverAlgebra& n, int s_max, int lo, int hi) {
    const GradedAlgebra& a = n.algebra();
    const GroundRing& g = a.ground();
    if (!g.is_field()) throw UnsupportedGround("resolutions require a field ground, got " + g.name());
    if (n.side() != Side::Left) throw InputError("resolve expects a left module");
    if (s_max < 0) throw InputError("s_max must be non-negative");
    if (lo > hi) throw InputError("empty window");

    Resolution r{a, n, {}, {}, ExactMatrix(g, n.rank(), 0), {ExactMatrix(g, 0, 0)}, s_max, lo, hi, true};

    auto new_stage = [&](const Kernel& k, const std::vector<std::size_t>& chosen, std::size_t s) {
        std::vector<Generator> gens;
        for (std::size_t j = 0; j < chosen.size(); ++j)
            gens.push_back({"g" + std::to_string(s) + "_" + std::to_string(j), k.classes[chosen[j]]});
        GradedFreeModule v(a.base(), gens);
        GradedFreeModule f = free_stage(a, v);
        if (f.rank() > kMaxStageDimension)
            throw BudgetExceeded("resolution stage " + std::to_string(s) + " has dimension " +
                                 std::to_string(f.rank()) + " (limit " + std::to_string(kMaxStageDimension) + ")");
        r.generators.push_back(v);
        r.stages.push_back(f);
    };

    // Stage 0 covers n itself.
    Kernel all;
    for (int c : n.underlying().classes())
        for (auto i : n.underlying().indices_in_class(c)) {
            Vector e(n.rank(), Scalar(0));
            e[i] = 1;
            all.vectors.push_back(e);
            all.classes.push_back(c);
        }
    auto act_n = [&](std::size_t i, const Vector& x) { return n.action(i).apply(x); };
    auto chosen = cover(a, n.rank(), all, act_n, r.minimal);
    new_stage(all, chosen, 0);
    {
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < chosen.size(); ++j)
            for (std::size_t e = 0; e < a.rank(); ++e) cols.push_back(act_n(e, all.vectors[chosen[j]]));
        r.augmentation = ExactMatrix::from_columns(g, n.rank(), cols);
        for (int c : n.underlying().classes())
            if (rank(class_block(r.augmentation, r.stages[0], n.underlying(), c, c)) !=
                n.underlying().indices_in_class(c).size())
                throw InvariantViolation("augmentation of the resolution is not surjective");
    }

    for (int s = 0; s <= s_max; ++s) {
        const std::size_t su = static_cast<std::size_t>(s);
        const ExactMatrix phi = s == 0 ? r.augmentation : r.differentials[su];
        const GradedFreeModule target = s == 0 ? n.underlying() : r.stages[su - 1];
        Kernel k = kernel_by_class(phi, r.stages[su], target);
        const std::size_t rv = r.generators[su].rank();
        auto act_f = [&](std::size_t i, const Vector& x) { return free_act(a, rv, i, x); };
        auto pick = cover(a, r.stages[su].rank(), k, act_f, r.minimal);
        new_stage(k, pick, su + 1);
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < pick.size(); ++j)
            for (std::size_t e = 0; e < a.rank(); ++e) cols.push_back(act_f(e, k.vectors[pick[j]]));
        r.differentials.push_back(ExactMatrix::from_columns(g, r.stages[su].rank(), cols));
        audit_exact(phi, r.differentials.back(), r.stages[su], target, r.stages[su + 1], su);
    }
    return r;
}

Resolution minimal_resolution(const GradedAlgebra& a, int s_max, int lo, int hi) {
    return resolve(ModuleOverAlgebra::augmentation(a), s_max, lo, hi);
}

ExactMatrix ext_coboundary(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s) {
    require_same_algebra(r.algebra, m.algebra());
    if (s + 1 >= r.stages.size()) throw InputError("stage " + std::to_string(s + 1) + " was not computed");
    const GradedAlgebra& a = r.algebra;
    const std::size_t ra = a.rank(), rm = m.rank();
    const GradedFreeModule& v = r.generators[s];
    const GradedFreeModule& w = r.generators[s + 1];
    ExactMatrix delta(a.ground(), w.rank() * rm, v.rank() * rm);
    for (std::size_t gp = 0; gp < w.rank(); ++gp) {
        Vector y = r.differentials[s + 1].apply(unit_at(a, w.rank(), gp));
        for (std::size_t g = 0; g < v.rank(); ++g)
            for (std::size_t e = 0; e < ra; ++e) {
                const Scalar& c = y[g * ra + e];
                if (sgn(c) == 0) continue;
                const ExactMatrix& act = m.action(e);
                for (std::size_t j = 0; j < rm; ++j) {
                    int sign = koszul(a.degree(e), v.degree(g) + m.underlying().degree(j));
                    for (std::size_t jp = 0; jp < rm; ++jp)
                        if (sgn(act(jp, j)) != 0) delta.add_to(gp * rm + jp, g * rm + j, sign * c * act(jp, j));
                }
            }
    }
    return delta;
}

namespace {

struct CochainData {
    std::vector<GradedFreeModule> modules;
    std::vector<ExactMatrix> delta; // delta[s] : C^s -> C^{s+1}
};

CochainData cochains(const Resolution& r, const ModuleOverAlgebra& m) {
    CochainData d;
    for (std::size_t s = 0; s < r.stages.size(); ++s) d.modules.push_back(cochain_module(r.generators[s], m.underlying()));
    for (std::size_t s = 0; s + 1 < r.stages.size(); ++s) d.delta.push_back(ext_coboundary(r, m, s));
    for (std::size_t s = 0; s + 2 < r.stages.size(); ++s)
        if (!(d.delta[s + 1] * d.delta[s]).is_zero()) throw InvariantViolation("Ext coboundary does not square to zero");
    return d;
}

ExactMatrix incoming_block(const CochainData& d, std::size_t s, int c) {
    if (s == 0) return ExactMatrix(d.modules[0].base().ground(), d.modules[0].indices_in_class(c).size(), 0);
    return class_block(d.delta[s - 1], d.modules[s - 1], d.modules[s], c, c);
}

} // namespace

BigradedTable ext_table(const Resolution& r, const ModuleOverAlgebra& m) {
    const BaseRing& b = r.algebra.base();
    BigradedTable table(b.ground(), b.period());
    CochainData d = cochains(r, m);
    for (std::size_t s = 0; s <= static_cast<std::size_t>(r.s_max); ++s)
        for (int c : d.modules[s].classes()) {
            if (!in_window(b, c, r.lo, r.hi)) continue;
            ExactMatrix out = class_block(d.delta[s], d.modules[s], d.modules[s + 1], c, c);
            table.set(static_cast<int>(s), c, homology_at(out, incoming_block(d, s, c)));
        }
    table.notes.push_back(r.minimal ? "minimal resolution" : "non-minimal resolution");
    if (!b.has_laurent())
        table.notes.push_back("window " + std::to_string(r.lo) + ".." + std::to_string(r.hi));
    return table;
}

BigradedTable ext_table(const GradedAlgebra& a, int s_max, int lo, int hi) {
    Resolution r = minimal_resolution(a, s_max, lo, hi);
    return ext_table(r, r.target);
}

BigradedTable tor_table(const ModuleOverAlgebra& x, const Resolution& r) {
    if (x.side() != Side::Right) throw InputError("Tor expects a right module in the first argument");
    require_same_algebra(r.algebra, x.algebra());
    const GradedAlgebra& a = r.algebra;
    const BaseRing& b = a.base();
    const std::size_t ra = a.rank(), rx = x.rank();
    std::vector<GradedFreeModule> chains;
    for (const auto& v : r.generators) {
        std::vector<Generator> gens;
        for (const auto& g : v.generators())
            for (const auto& e : x.underlying().generators()) gens.push_back({e.name + "|" + g.name, e.degree + g.degree});
        chains.emplace_back(b, gens);
    }
    // boundary[s] : C_s -> C_{s-1}
    std::vector<ExactMatrix> boundary{ExactMatrix(b.ground(), 0, chains[0].rank())};
    for (std::size_t s = 1; s < chains.size(); ++s) {
        const GradedFreeModule& v = r.generators[s - 1];
        const GradedFreeModule& w = r.generators[s];
        ExactMatrix bd(b.ground(), chains[s - 1].rank(), chains[s].rank());
        for (std::size_t gp = 0; gp < w.rank(); ++gp) {
            Vector y = r.differentials[s].apply(unit_at(a, w.rank(), gp));
            for (std::size_t g = 0; g < v.rank(); ++g)
                for (std::size_t e = 0; e < ra; ++e) {
                    const Scalar& c = y[g * ra + e];
                    if (sgn(c) == 0) continue;
                    const ExactMatrix& act = x.action(e);
                    for (std::size_t i = 0; i < rx; ++i)
                        for (std::size_t j = 0; j < rx; ++j)
                            if (sgn(act(j, i)) != 0) bd.add_to(g * rx + j, gp * rx + i, c * act(j, i));
                }
        }
        boundary.push_back(std::move(bd));
    }
    BigradedTable table(b.ground(), b.period());
    for (std::size_t s = 0; s <= static_cast<std::size_t>(r.s_max); ++s)
        for (int c : chains[s].classes()) {
            if (!in_window(b, c, r.lo, r.hi)) continue;
            ExactMatrix out = s == 0 ? ExactMatrix(b.ground(), 0, chains[0].indices_in_class(c).size())
                                     : class_block(boundary[s], chains[s], chains[s - 1], c, c);
            ExactMatrix in = class_block(boundary[s + 1], chains[s + 1], chains[s], c, c);
            table.set(static_cast<int>(s), c, homology_at(out, in));
        }
    return table;
}

std::vector<Vector> ext_representatives(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s, int t) {
    CochainData d = cochains(r, m);
    if (s >= d.delta.size()) throw InputError("stage " + std::to_string(s) + " out of range");
    const BaseRing& b = r.algebra.base();
    int c = b.degree_class(t);
    auto idx = d.modules[s].indices_in_class(c);
    Subspace span(b.ground(), idx.size());
    ExactMatrix in = incoming_block(d, s, c);
    for (std::size_t j = 0; j < in.cols(); ++j) span.insert(in.column(j));
    std::vector<Vector> out;
    for (const auto& v : kernel_basis(class_block(d.delta[s], d.modules[s], d.modules[s + 1], c, c)))
        if (span.insert(v)) out.push_back(embed(v, idx, d.modules[s].rank()));
    return out;
}

bool is_coboundary(const Resolution& r, const ModuleOverAlgebra& m, std::size_t s, const Vector& cocycle) {
    if (std::all_of(cocycle.begin(), cocycle.end(), [](const Scalar& x) { return sgn(x) == 0; })) return true;
    if (s == 0) return false;
    return solve(ext_coboundary(r, m, s - 1), cocycle).has_value();
}

YonedaResult yoneda_power(const Resolution& r, const Vector& cocycle, int t, std::size_t n) {
    const GradedAlgebra& a = r.algebra;
    const GroundRing& g = a.ground();
    const BaseRing& b = a.base();
    const ModuleOverAlgebra& tgt = r.target;
    const std::size_t ra = a.rank(), rn = tgt.rank();
    if (n == 0) throw InputError("Yoneda power must be positive");
    if (n > static_cast<std::size_t>(r.s_max)) throw InputError("Yoneda power beyond s_max");
    if (cocycle.size() != r.generators[1].rank() * rn) throw InputError("cocycle has the wrong length");
    Vector check = ext_coboundary(r, tgt, 1).apply(cocycle);
    if (std::any_of(check.begin(), check.end(), [](const Scalar& x) { return sgn(x) != 0; }))
        throw InputError("class is not a cocycle");
    const int deg = -t;
    YonedaResult res;
    res.s = n;
    res.t = static_cast<int>(n) * t;
    // lifts[i][gen] = f_i(1 (x) gen) in F_i, for gen in V_{i+1}.
    std::vector<std::vector<Vector>> lifts;
    auto apply_lift = [&](std::size_t i, const Vector& y) {
        Vector out(r.stages[i].rank(), Scalar(0));
        const std::size_t rv = r.generators[i + 1].rank();
        for (std::size_t gen = 0; gen < rv; ++gen)
            for (std::size_t e = 0; e < ra; ++e) {
                const Scalar& c = y[gen * ra + e];
                if (sgn(c) == 0) continue;
                Vector moved = r.act(i, e, lifts[i][gen]);
                int sign = koszul(a.degree(e), deg);
                for (std::size_t k = 0; k < out.size(); ++k) out[k] += sign * c * moved[k];
            }
        for (auto& c : out) c = g.reduce(c);
        return out;
    };
    auto solve_in_class = [&](const ExactMatrix& phi, const GradedFreeModule& src, const GradedFreeModule& dst,
                              int cls, const Vector& rhs) {
        auto sidx = src.indices_in_class(cls);
        auto didx = dst.indices_in_class(cls);
        Vector local = restrict(rhs, didx);
        for (std::size_t k = 0; k < rhs.size(); ++k)
            if (sgn(rhs[k]) != 0 && dst.degree_class(k) != cls) throw InvariantViolation("lift target not homogeneous");
        auto x = solve(class_block(phi, src, dst, cls, cls), local);
        if (!x) throw InvariantViolation("Yoneda lift failed");
        return embed(*x, sidx, src.rank());
    };
    for (std::size_t i = 0; i < n; ++i) {
        const GradedFreeModule& v = r.generators[i + 1];
        std::vector<Vector> level;
        for (std::size_t gen = 0; gen < v.rank(); ++gen) {
            int cls = b.degree_class(v.degree(gen) + deg);
            if (i == 0) {
                Vector value(rn, Scalar(0));
                for (std::size_t j = 0; j < rn; ++j) value[j] = cocycle[gen * rn + j];
                level.push_back(solve_in_class(r.augmentation, r.stages[0], tgt.underlying(), cls, value));
            } else {
                Vector y = r.differentials[i + 1].apply(unit_at(a, v.rank(), gen));
                Vector w = apply_lift(i - 1, y);
                level.push_back(solve_in_class(r.differentials[i], r.stages[i], r.stages[i - 1], cls, w));
            }
        }
        lifts.push_back(std::move(level));
    }
    const GradedFreeModule& vn = r.generators[n];
    res.cocycle.assign(vn.rank() * rn, Scalar(0));
    for (std::size_t gen = 0; gen < vn.rank(); ++gen) {
        Vector u = unit_at(a, vn.rank(), gen);
        for (std::size_t i = n; i-- > 0;) u = apply_lift(i, u);
        Vector value = r.augmentation.apply(u);
        for (std::size_t j = 0; j < rn; ++j) res.cocycle[gen * rn + j] = value[j];
    }
    res.nonzero = !is_coboundary(r, tgt, n, res.cocycle);
    return res;
}

YonedaResult yoneda_square(const Resolution& r, const Vector& cocycle, int t) {
    if (r.s_max < 3) throw InputError("yoneda_square needs s_max >= 3");
    return yoneda_power(r, cocycle, t, 2);
}

BigradedTable ext_base_change(const GradedAlgebra& a, const GradedAlgebra& s, const ExactMatrix& inclusion, int s_max,
                              int lo, int hi) {
    const GroundRing& g = a.ground();
    if (!(a.base() == s.base())) throw InputError("subalgebra over a different base");
    if (inclusion.rows() != a.rank() || inclusion.cols() != s.rank()) throw InputError("inclusion has the wrong shape");
    if (!radical(s).empty()) throw InputError("subalgebra " + s.name() + " is not semisimple");
    if (!s.is_augmented()) throw InputError("subalgebra " + s.name() + " is not augmented");
    auto image = [&](const Vector& x) { return inclusion.apply(x); };
    if (!(image(s.unit()) == a.unit())) throw InputError("inclusion does not preserve the unit");
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < s.rank(); ++j)
            if (!(image(s.multiply(s.basis_vector(i), s.basis_vector(j))) ==
                  a.multiply(inclusion.column(i), inclusion.column(j))))
                throw InputError("inclusion is not multiplicative");
    // Freeness over S = product of fields e S: dim(eA) = r dim(eS) with a common r.
    std::optional<std::size_t> free_rank;
    for (const auto& e : primitive_idempotents(s)) {
        Subspace ea(g, a.rank()), es(g, s.rank());
        Vector ie = image(e);
        for (std::size_t k = 0; k < a.rank(); ++k) ea.insert(a.multiply(ie, a.basis_vector(k)));
        for (std::size_t k = 0; k < s.rank(); ++k) es.insert(s.multiply(e, s.basis_vector(k)));
        if (ea.dimension() % es.dimension() != 0 ||
            (free_rank && *free_rank != ea.dimension() / es.dimension()))
            throw InputError(a.name() + " is not free over " + s.name());
        free_rank = ea.dimension() / es.dimension();
    }
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (i != *s.unit_index()) gens.push_back(inclusion.column(i));
    Subspace left(g, a.rank());
    for (const auto& x : gens)
        for (std::size_t k = 0; k < a.rank(); ++k) left.insert(a.multiply(a.basis_vector(k), x));
    if (left.dimension() != two_sided_ideal(a, gens).size())
        throw InputError("A S^+ is not a two-sided ideal of " + a.name());
    QuotientResult q = quotient_algebra(a, gens);
    BigradedTable direct = ext_table(a, s_max, lo, hi);
    BigradedTable via = ext_table(q.algebra, s_max, lo, hi);
    if (!(direct == via)) throw InvariantViolation("base change tables disagree");
    via.notes.push_back("A free of rank " + std::to_string(free_rank.value_or(0)) + " over " + s.name());
    via.notes.push_back("quotient rank " + std::to_string(q.algebra.rank()));
    return via;
}

} // namespace hhalg
