#include "hhalg/graded.hpp"

#include <set>

namespace hhalg {

BaseRing::BaseRing(GroundRing ground, std::optional<LaurentGenerator> laurent)
    : ground_(ground), laurent_(std::move(laurent)) {
    if (laurent_) {
        if (laurent_->degree <= 0) throw InputError("Laurent generator degree must be positive");
        if (laurent_->degree % 2 != 0)
            throw InputError("Laurent generator '" + laurent_->name + "' has odd degree " +
                             std::to_string(laurent_->degree));
    }
}

int BaseRing::degree_class(int degree) const {
    if (!laurent_) return degree;
    int r = degree % laurent_->degree;
    return r < 0 ? r + laurent_->degree : r;
}

int BaseRing::v_exponent(int source, int target) const {
    if (!laurent_) {
        if (source != target)
            throw InputError("degree mismatch " + std::to_string(source) + " vs " + std::to_string(target));
        return 0;
    }
    int diff = target - source;
    if (diff % laurent_->degree != 0)
        throw InputError("degrees " + std::to_string(source) + " and " + std::to_string(target) +
                         " differ by a non-multiple of |" + laurent_->name + "|");
    return diff / laurent_->degree;
}

std::string BaseRing::name() const {
    std::string s = ground_.name();
    if (laurent_) s += "[" + laurent_->name + "^+-1, |" + laurent_->name + "|=" + std::to_string(laurent_->degree) + "]";
    return s;
}

std::string BaseElement::to_string(const BaseRing& base) const {
    std::string s = coeff.get_str();
    if (v_power != 0 && base.has_laurent() && sgn(coeff) != 0) {
        s += "*" + base.laurent()->name;
        if (v_power != 1) s += "^" + std::to_string(v_power);
    }
    return s;
}

GradedFreeModule::GradedFreeModule(BaseRing base, std::vector<Generator> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {}

std::vector<std::size_t> GradedFreeModule::indices_in_class(int cls) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (base_.degree_class(generators_[i].degree) == cls) out.push_back(i);
    return out;
}

std::vector<int> GradedFreeModule::classes() const {
    std::set<int> s;
    for (const auto& g : generators_) s.insert(base_.degree_class(g.degree));
    return {s.begin(), s.end()};
}

HomogeneousMap::HomogeneousMap(GradedFreeModule source, GradedFreeModule target, int degree, ExactMatrix entries)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), entries_(std::move(entries)) {
    if (!(source_.base() == target_.base())) throw InputError("homogeneous map between modules over different bases");
    if (entries_.rows() != target_.rank() || entries_.cols() != source_.rank())
        throw InputError("homogeneous map matrix has wrong shape");
    const BaseRing& b = source_.base();
    for (std::size_t i = 0; i < entries_.rows(); ++i)
        for (std::size_t j = 0; j < entries_.cols(); ++j)
            if (sgn(entries_(i, j)) != 0 && !b.compatible(source_.degree(j) + degree_, target_.degree(i)))
                throw InputError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") has inconsistent degree: source " + std::to_string(source_.degree(j)) +
                                 " + " + std::to_string(degree_) + " vs target " +
                                 std::to_string(target_.degree(i)));
}

HomogeneousMap HomogeneousMap::zero(GradedFreeModule source, GradedFreeModule target, int degree) {
    ExactMatrix m(source.base().ground(), target.rank(), source.rank());
    return HomogeneousMap(std::move(source), std::move(target), degree, std::move(m));
}

ExactMatrix class_block(const ExactMatrix& m, const GradedFreeModule& source, const GradedFreeModule& target,
                        int source_class, int target_class) {
    auto cols = source.indices_in_class(source_class);
    auto rows = target.indices_in_class(target_class);
    ExactMatrix block(m.ground(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (sgn(m(rows[i], cols[j])) != 0) block.set(i, j, m(rows[i], cols[j]));
    return block;
}

std::map<int, ExactMatrix> periodic_reduce(const HomogeneousMap& f) {
    const BaseRing& b = f.source().base();
    std::set<int> classes;
    for (int c : f.source().classes()) classes.insert(c);
    for (std::size_t i = 0; i < f.target().rank(); ++i) classes.insert(b.degree_class(f.target().degree(i) - f.degree()));
    std::map<int, ExactMatrix> out;
    for (int c : classes)
        out.emplace(c, class_block(f.entries(), f.source(), f.target(), c, b.degree_class(c + f.degree())));
    return out;
}

GradedFreeModule graded_hom_module(const GradedFreeModule& m, const GradedFreeModule& n) {
    if (!(m.base() == n.base())) throw InputError("Hom between modules over different bases");
    std::vector<Generator> gens;
    for (const auto& a : m.generators())
        for (const auto& b : n.generators()) gens.push_back({"Hom(" + a.name + "," + b.name + ")", b.degree - a.degree});
    return GradedFreeModule(m.base(), std::move(gens));
}

std::size_t hom_rank_in_degree(const GradedFreeModule& m, const GradedFreeModule& n, int degree) {
    return graded_hom_module(m, n).rank_in_degree(degree);
}

} // namespace hhalg
