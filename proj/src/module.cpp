#include "hhalg/module.hpp"

namespace hhalg {

ModuleOverAlgebra::ModuleOverAlgebra(GradedAlgebra algebra, GradedFreeModule underlying,
                                     std::vector<ExactMatrix> action, Side side, std::string name)
    : algebra_(std::move(algebra)), underlying_(std::move(underlying)), action_(std::move(action)), side_(side),
      name_(std::move(name)) {
    if (!(underlying_.base() == algebra_.base())) throw InputError("module and algebra have different bases");
    if (algebra_.has_differential()) throw InputError("modules over DG algebras are not supported");
    const std::size_t n = algebra_.rank(), r = underlying_.rank();
    if (action_.size() != n)
        throw InputError("module needs " + std::to_string(n) + " action matrices, got " +
                         std::to_string(action_.size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (action_[i].rows() != r || action_[i].cols() != r)
            throw InputError("action matrix " + std::to_string(i) + " has the wrong shape");
        HomogeneousMap check(underlying_, underlying_, algebra_.degree(i), action_[i]);
    }
    if (!(action_of(algebra_.unit()) == ExactMatrix::identity(ground(), r)))
        throw InputError("unit does not act as the identity");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ExactMatrix lhs = side_ == Side::Left ? action_[i] * action_[j] : action_[j] * action_[i];
            ExactMatrix rhs(ground(), r, r);
            for (const auto& [k, c] : algebra_.product(i, j)) rhs = rhs + action_[k] * c;
            if (!(lhs == rhs))
                throw InputError("action is not associative on basis pair (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
        }
}

ExactMatrix ModuleOverAlgebra::action_of(const Vector& a) const {
    ExactMatrix out(ground(), rank(), rank());
    for (std::size_t k = 0; k < a.size(); ++k)
        if (sgn(a[k]) != 0) out = out + action_[k] * a[k];
    return out;
}

ModuleOverAlgebra ModuleOverAlgebra::augmentation(const GradedAlgebra& a, Side side) {
    if (!a.is_augmented()) throw InputError("algebra " + a.name() + " is not augmented");
    std::vector<ExactMatrix> act;
    for (std::size_t i = 0; i < a.rank(); ++i)
        act.push_back(i == *a.unit_index() ? ExactMatrix::identity(a.ground(), 1) : ExactMatrix(a.ground(), 1, 1));
    return ModuleOverAlgebra(a, GradedFreeModule(a.base(), {{"k", 0}}), std::move(act), side, "k");
}

ModuleOverAlgebra ModuleOverAlgebra::regular(const GradedAlgebra& a, Side side) {
    std::vector<ExactMatrix> act;
    for (std::size_t i = 0; i < a.rank(); ++i)
        act.push_back(side == Side::Left ? a.left_multiplication(i) : a.right_multiplication(i));
    return ModuleOverAlgebra(a, a.module(), std::move(act), side, a.name());
}

ModuleOverAlgebra ModuleOverAlgebra::zero(const GradedAlgebra& a, Side side) {
    std::vector<ExactMatrix> act(a.rank(), ExactMatrix(a.ground(), 0, 0));
    return ModuleOverAlgebra(a, GradedFreeModule(a.base()), std::move(act), side, "0");
}

ModuleOverAlgebra flip_side(const ModuleOverAlgebra& m) {
    const GradedAlgebra& a = m.algebra();
    std::vector<ExactMatrix> act;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        ExactMatrix x = m.action(i);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            if (koszul(a.degree(i), m.underlying().degree(c)) == 1) continue;
            for (std::size_t r = 0; r < x.rows(); ++r) x.set(r, c, m.ground().reduce(-x(r, c)));
        }
        act.push_back(std::move(x));
    }
    return ModuleOverAlgebra(opposite(a), m.underlying(), std::move(act),
                             m.side() == Side::Left ? Side::Right : Side::Left, m.name());
}

bool same_graded_ranks(const GradedFreeModule& a, const GradedFreeModule& b) {
    if (!(a.base() == b.base())) return false;
    auto ca = a.classes(), cb = b.classes();
    if (ca != cb) return false;
    for (int c : ca)
        if (a.indices_in_class(c).size() != b.indices_in_class(c).size()) return false;
    return true;
}

} // namespace hhalg
