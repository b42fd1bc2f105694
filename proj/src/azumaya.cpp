#include "hhalg/azumaya.hpp"

#include <algorithm>

namespace hhalg {

namespace {

std::string subject_of(const GradedAlgebra& a) { return a.name().empty() ? std::string("algebra") : a.name(); }

std::string window_text(int lo, int hi) { return "window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"; }

void check_window(const GradedAlgebra& a, Window w) {
    if (w.lo > w.hi) throw InputError("empty window " + window_text(w.lo, w.hi));
    const int period = a.base().period();
    if (period > 0 && w.hi - w.lo + 1 < period)
        throw InputError(window_text(w.lo, w.hi) + " is shorter than one period |" + a.base().laurent()->name +
                         "| = " + std::to_string(period));
}

Condition finite_rank(const GradedAlgebra& a, std::string name) {
    return {std::move(name), Verdict::Pass,
            "free of rank " + std::to_string(a.rank()) + " over " + a.base().name()};
}

std::pair<int, int> degree_span(const GradedFreeModule& m) {
    int lo = 0, hi = 0;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        lo = std::min(lo, m.degree(i));
        hi = std::max(hi, m.degree(i));
    }
    return {lo, hi};
}

Condition mu_quasi_iso(const GradedAlgebra& a, int lo, int hi, std::string name) {
    ChainMap f = action_chain_map(action_map_mu(a));
    QuasiIsoVerdict v = is_quasi_iso(f, lo, hi);
    std::string w = "window " + v.window();
    if (v.quasi_iso) return {std::move(name), Verdict::Pass, "cone of mu acyclic, " + w};
    std::string degs;
    for (int d : v.failing_degrees) degs += (degs.empty() ? "" : ",") + std::to_string(d);
    return {std::move(name), Verdict::Fail, "cone of mu has homology in degrees " + degs + ", " + w};
}

Condition mu_iso(const GradedAlgebra& a, std::string name) {
    ActionMap mu = action_map_mu(a);
    IsoVerdict v = is_isomorphism(mu.matrix, mu.enveloping.module(), mu.endomorphisms.module());
    return {std::move(name), v.iso ? Verdict::Pass : Verdict::Fail, v.witness};
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    }
    return "?";
}

std::string to_string(Flavor f) {
    switch (f) {
    case Flavor::Classical: return "classical";
    case Flavor::GeneralizedDG: return "generalized";
    case Flavor::Weak: return "weak";
    }
    return "?";
}

Verdict AzumayaReport::overall() const {
    bool skipped = false;
    for (const auto& c : conditions) {
        if (c.verdict == Verdict::Fail) return Verdict::Fail;
        if (c.verdict == Verdict::Skipped) skipped = true;
    }
    return skipped ? Verdict::Skipped : Verdict::Pass;
}

AzumayaReport check_classical_azumaya(const GradedAlgebra& a) {
    if (a.base().has_laurent())
        throw InputError("classical check needs a base without Laurent generator; use the generalized check");
    auto [lo, hi] = degree_span(a.module());
    if (!a.has_differential() && (lo != 0 || hi != 0))
        throw InputError("classical check needs an algebra concentrated in degree 0; use the generalized check");
    if (a.has_differential()) {
        Complex c = Complex::from_algebra(a);
        for (int n = lo - 1; n <= hi + 1; ++n)
            if (n != 0 && !homology_in_degree(c, n).is_zero())
                throw InputError("classical check needs homology concentrated in degree 0, found H_" +
                                 std::to_string(n) + " != 0; use the generalized check");
    }

    AzumayaReport r{subject_of(a), Flavor::Classical, {}};
    r.conditions.push_back(finite_rank(a, "finite free rank"));
    UnitKernel k = unit_kernel(a);
    r.conditions.push_back({"faithful: base -> H_0(A) injective", k.is_zero() ? Verdict::Pass : Verdict::Fail,
                            "unit kernel " + k.to_string()});
    if (!a.has_differential()) {
        r.conditions.push_back(mu_iso(a, "mu : A (x) A^op -> End(A) invertible"));
    } else {
        // Every term is free, so the derived tensor and Hom are the plain ones.
        ActionMap mu = action_map_mu(a);
        auto [elo, ehi] = degree_span(mu.enveloping.module());
        auto [tlo, thi] = degree_span(mu.endomorphisms.module());
        r.conditions.push_back(
            mu_quasi_iso(a, std::min(elo, tlo) - 1, std::max(ehi, thi) + 1, "mu : A (x)^L A^op -> RHom(A, A) invertible"));
    }
    return r;
}

AzumayaReport check_generalized_azumaya(const GradedAlgebra& a, Window w) {
    check_window(a, w);
    AzumayaReport r{subject_of(a), Flavor::GeneralizedDG, {}};
    auto [lo, hi] = degree_span(a.module());
    r.conditions.push_back({"perfect", Verdict::Pass,
                            "free of rank " + std::to_string(a.rank()) + " over " + a.base().name() +
                                ", generators in degrees " + std::to_string(lo) + ".." + std::to_string(hi)});

    // I is a principal ideal of the base, so I = 0 or I is free of rank one and
    // I (x) H_0(A) = H_0(A), which vanishes exactly when I is everything.
    UnitKernel k = unit_kernel(a);
    const bool everything = abs(k.generator) == 1;
    Condition tensor_zero{"locality shadow: I (x) H_0(A) = 0", Verdict::Pass, ""};
    Condition ideal_zero{"locality shadow: I = 0", Verdict::Pass, "I = " + k.to_string()};
    if (k.is_zero()) {
        tensor_zero.witness = "I = 0";
    } else if (everything) {
        tensor_zero.witness = "H_0(A) = 0";
        ideal_zero.verdict = Verdict::Fail;
    } else {
        tensor_zero.verdict = Verdict::Fail;
        tensor_zero.witness = "I = " + k.to_string() + " is free of rank one, so I (x) H_0(A) = H_0(A) != 0";
        ideal_zero.verdict = Verdict::Fail;
    }
    r.conditions.push_back(std::move(tensor_zero));
    r.conditions.push_back(std::move(ideal_zero));
    r.conditions.push_back(mu_quasi_iso(a, w.lo, w.hi, "mu : A (x)^L A^op -> RHom(A, A) quasi-iso"));
    return r;
}

AzumayaReport check_weak_azumaya(const GradedAlgebra& a, Window w) {
    check_window(a, w);
    AzumayaReport r{subject_of(a), Flavor::Weak, {}};
    r.conditions.push_back(finite_rank(a, "dualizable"));
    if (a.has_differential())
        r.conditions.push_back(mu_quasi_iso(a, w.lo, w.hi, "mu weak equivalence"));
    else
        r.conditions.push_back(mu_iso(a, "mu weak equivalence"));
    return r;
}

SmashVerdict endo_smash_invariant(const GradedFreeModule& e1, const GradedFreeModule& e2) {
    if (!(e1.base() == e2.base())) throw InputError("modules over different bases");
    const std::size_t n1 = e1.rank(), n2 = e2.rank(), n = n1 * n2;
    std::vector<Generator> gens;
    for (const auto& x : e1.generators())
        for (const auto& y : e2.generators()) gens.push_back({x.name + "⊗" + y.name, x.degree + y.degree});
    GradedAlgebra source = tensor(endomorphism_algebra(e1), endomorphism_algebra(e2));
    GradedAlgebra target = endomorphism_algebra(GradedFreeModule(e1.base(), gens));
    const GroundRing& g = e1.base().ground();

    SmashVerdict out;
    out.source_rank = source.rank();
    out.target_rank = target.rank();
    out.matrix = ExactMatrix(g, target.rank(), source.rank());
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            for (std::size_t k = 0; k < n2; ++k)
                for (std::size_t l = 0; l < n2; ++l) {
                    // E_ij (x) E_kl sends e_j (x) f_l to +-e_i (x) f_k.
                    int s = koszul(e2.degree(k) - e2.degree(l), e1.degree(j));
                    std::size_t col = (i * n1 + j) * n2 * n2 + (k * n2 + l);
                    std::size_t row = (i * n2 + k) * n + (j * n2 + l);
                    out.matrix.set(row, col, g.reduce(Scalar(s)));
                }
    if (!(out.matrix.apply(source.unit()) == target.unit())) throw InvariantViolation("smash map does not preserve the unit");
    for (std::size_t p = 0; p < source.rank(); ++p)
        for (std::size_t q = 0; q < source.rank(); ++q) {
            Vector pq(source.rank(), Scalar(0));
            for (const auto& [m, c] : source.product(p, q)) pq[m] = c;
            if (!(out.matrix.apply(pq) == target.multiply(out.matrix.column(p), out.matrix.column(q))))
                throw InvariantViolation("smash map is not multiplicative");
        }
    IsoVerdict v = is_isomorphism(out.matrix, source.module(), target.module());
    out.iso = v.iso;
    out.witness = v.witness;
    return out;
}

} // namespace hhalg
