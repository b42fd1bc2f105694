#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hhalg/algebra.hpp"

namespace hhalg {

namespace {

using Word = std::vector<std::size_t>;

// Length first, then lexicographic by generator index.
struct LengthLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using Poly = std::map<Word, Scalar, LengthLex>;

struct Rule {
    Word lhs;
    Poly rhs;
};

class Rewriter {
public:
    Rewriter(const AlgebraPresentation& p) : p_(p), ground_(p.base.ground()) {
        if (p.truncation)
            for (const auto& g : p.generators)
                if (g.degree <= 0)
                    throw InputError("truncation requires positive generator degrees ('" + g.name + "' has degree " +
                                     std::to_string(g.degree) + ")");
        for (const auto& rel : p.relations) {
            polynomial_degree(p, rel);
            Poly poly;
            for (const auto& t : rel) add(poly, t.word, t.coeff);
            truncate(poly);
            if (poly.empty()) continue;
            auto lead = std::prev(poly.end());
            if (!ground_.is_unit(lead->second))
                throw InputError("leading coefficient " + lead->second.get_str() + " of a relation is not a unit in " +
                                 ground_.name());
            Scalar inv = ground_.inverse(lead->second);
            Rule r{lead->first, {}};
            for (auto it = poly.begin(); it != lead; ++it) add(r.rhs, it->first, -it->second * inv);
            rules_.push_back(std::move(r));
        }
    }

    int word_degree(const Word& w) const {
        int d = 0;
        for (auto g : w) d += p_.generators[g].degree;
        return d;
    }

    void add(Poly& poly, const Word& w, const Scalar& c) const {
        Scalar r = ground_.reduce(poly[w] + c);
        if (sgn(r) == 0)
            poly.erase(w);
        else
            poly[w] = r;
    }

    void truncate(Poly& poly) const {
        if (!p_.truncation) return;
        for (auto it = poly.begin(); it != poly.end();)
            it = word_degree(it->first) > *p_.truncation ? poly.erase(it) : std::next(it);
    }

    // Position of the first rule occurrence in w, as (rule index, offset).
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const Word& l = rules_[r].lhs;
            if (l.size() > w.size()) continue;
            auto it = std::search(w.begin(), w.end(), l.begin(), l.end());
            if (it != w.end()) return std::make_pair(r, static_cast<std::size_t>(it - w.begin()));
        }
        return std::nullopt;
    }

    bool irreducible(const Word& w) const {
        if (p_.truncation && word_degree(w) > *p_.truncation) return false;
        return !find_redex(w);
    }

    Poly normal_form(Poly poly) const {
        truncate(poly);
        while (true) {
            bool changed = false;
            for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
                auto redex = find_redex(it->first);
                if (!redex) continue;
                Word w = it->first;
                Scalar c = it->second;
                poly.erase(w);
                const Rule& rule = rules_[redex->first];
                Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(redex->second));
                Word suffix(w.begin() + static_cast<std::ptrdiff_t>(redex->second + rule.lhs.size()), w.end());
                for (const auto& [rw, rc] : rule.rhs) {
                    Word nw = prefix;
                    nw.insert(nw.end(), rw.begin(), rw.end());
                    nw.insert(nw.end(), suffix.begin(), suffix.end());
                    if (p_.truncation && word_degree(nw) > *p_.truncation) continue;
                    add(poly, nw, c * rc);
                }
                changed = true;
                break;
            }
            if (!changed) return poly;
        }
    }

    Poly replace(const Word& w, std::size_t offset, const Rule& rule) const {
        Poly out;
        Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(offset));
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(offset + rule.lhs.size()), w.end());
        for (const auto& [rw, rc] : rule.rhs) {
            Word nw = prefix;
            nw.insert(nw.end(), rw.begin(), rw.end());
            nw.insert(nw.end(), suffix.begin(), suffix.end());
            add(out, nw, rc);
        }
        return out;
    }

    std::string word_string(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + p_.generators[w[i]].name;
        return s;
    }

    void check_confluence() const {
        auto resolve = [&](const Word& w, const Poly& a, const Poly& b) {
            if (normal_form(a) != normal_form(b))
                throw InputError("rewriting system is not confluent: ambiguity on " + word_string(w));
        };
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (std::size_t j = 0; j < rules_.size(); ++j) {
                const Word& l1 = rules_[i].lhs;
                const Word& l2 = rules_[j].lhs;
                for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
                    if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
                    Word w = l1;
                    w.insert(w.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
                    resolve(w, replace(w, 0, rules_[i]), replace(w, l1.size() - k, rules_[j]));
                }
                if (i != j && l2.size() <= l1.size()) {
                    auto it = std::search(l1.begin(), l1.end(), l2.begin(), l2.end());
                    if (it != l1.end())
                        resolve(l1, replace(l1, 0, rules_[i]),
                                replace(l1, static_cast<std::size_t>(it - l1.begin()), rules_[j]));
                }
            }
    }

private:
    const AlgebraPresentation& p_;
    GroundRing ground_;
    std::vector<Rule> rules_;
};

constexpr std::size_t kMaxRank = 4096;

} // namespace

int polynomial_degree(const AlgebraPresentation& p, const NCPolynomial& poly) {
    std::optional<int> deg;
    for (const auto& t : poly) {
        if (sgn(t.coeff) == 0) continue;
        int d = t.v_power * p.base.period();
        for (auto g : t.word) {
            if (g >= p.generators.size()) throw InputError("unknown generator index in polynomial");
            d += p.generators[g].degree;
        }
        if (t.v_power != 0 && !p.base.has_laurent()) throw InputError("Laurent power used over a base without one");
        if (!deg) {
            deg = d;
        } else if (*deg != d) {
            throw InputError("non-homogeneous relation: terms of degree " + std::to_string(*deg) + " and " +
                             std::to_string(d));
        }
    }
    return deg.value_or(0);
}

Realization realize_presentation(const AlgebraPresentation& p) {
    Rewriter rw(p);
    rw.check_confluence();

    // Irreducible words, breadth first by length.
    std::vector<Word> basis{Word{}};
    std::vector<Word> level{Word{}};
    while (!level.empty()) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (std::size_t g = 0; g < p.generators.size(); ++g) {
                Word nw = w;
                nw.push_back(g);
                if (rw.irreducible(nw)) next.push_back(std::move(nw));
            }
        std::sort(next.begin(), next.end());
        basis.insert(basis.end(), next.begin(), next.end());
        if (basis.size() > kMaxRank)
            throw BudgetExceeded("rank does not stabilize: more than " + std::to_string(kMaxRank) +
                                 " irreducible words (add relations or a truncation)");
        level = std::move(next);
    }

    std::map<Word, std::size_t> index;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index[basis[i]] = i;
        gens.push_back({rw.word_string(basis[i]), rw.word_degree(basis[i])});
    }
    const std::size_t n = basis.size();
    auto to_vector = [&](const Poly& poly) {
        Vector v(n, Scalar(0));
        for (const auto& [w, c] : poly) v[index.at(w)] = c;
        return v;
    };
    std::vector<SparseVector> prods(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Word w = basis[i];
            w.insert(w.end(), basis[j].begin(), basis[j].end());
            Poly poly;
            rw.add(poly, w, 1);
            for (const auto& [nw, c] : rw.normal_form(poly)) prods[i * n + j].emplace_back(index.at(nw), c);
        }
    Vector unit(n, Scalar(0));
    unit[0] = 1;
    GradedAlgebra algebra(GradedFreeModule(p.base, gens), std::move(prods), std::move(unit), p.name);

    std::vector<Vector> images;
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
        Poly poly;
        rw.add(poly, Word{g}, 1);
        images.push_back(to_vector(rw.normal_form(poly)));
    }
    Realization r{std::move(algebra), std::move(images), basis};

    if (!p.differential.empty()) {
        std::vector<Vector> dgen(p.generators.size(), Vector(n, Scalar(0)));
        for (const auto& [g, poly] : p.differential) {
            if (g >= p.generators.size()) throw InputError("differential on an unknown generator");
            if (!poly.empty()) {
                int d = polynomial_degree(p, poly);
                if (!p.base.compatible(d, p.generators[g].degree - 1))
                    throw InputError("differential of '" + p.generators[g].name + "' has degree " + std::to_string(d) +
                                     ", expected " + std::to_string(p.generators[g].degree - 1));
            }
            dgen[g] = evaluate(r, poly);
        }
        ExactMatrix d(p.base.ground(), n, n);
        for (std::size_t b = 0; b < n; ++b) {
            const Word& w = basis[b];
            Vector total(n, Scalar(0));
            int prefix_degree = 0;
            for (std::size_t pos = 0; pos < w.size(); ++pos) {
                Vector term = r.algebra.unit();
                for (std::size_t q = 0; q < pos; ++q) term = r.algebra.multiply(term, r.generator_images[w[q]]);
                term = r.algebra.multiply(term, dgen[w[pos]]);
                for (std::size_t q = pos + 1; q < w.size(); ++q)
                    term = r.algebra.multiply(term, r.generator_images[w[q]]);
                int s = (prefix_degree & 1) ? -1 : 1;
                for (std::size_t k = 0; k < n; ++k) total[k] += s * term[k];
                prefix_degree += p.generators[w[pos]].degree;
            }
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(total[k]) != 0) d.set(k, b, total[k]);
        }
        r.algebra = r.algebra.with_differential(std::move(d));
    }
    return r;
}

GradedAlgebra realize(const AlgebraPresentation& p) { return realize_presentation(p).algebra; }

Vector evaluate(const Realization& r, const NCPolynomial& poly) {
    const auto& a = r.algebra;
    Vector out(a.rank(), Scalar(0));
    for (const auto& t : poly) {
        Vector term = a.unit();
        for (auto g : t.word) {
            if (g >= r.generator_images.size()) throw InputError("unknown generator index in polynomial");
            term = a.multiply(term, r.generator_images[g]);
        }
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += t.coeff * term[k];
    }
    for (auto& x : out) x = a.ground().reduce(x);
    return out;
}

} // namespace hhalg
