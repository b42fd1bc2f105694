#pragma once

// JSON definition files: bases, algebras, modules, Morita contexts and batch
// tasks. Relation strings use the grammar in docs/definition-format.md.

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhalg/azumaya.hpp"
#include "hhalg/morita.hpp"

namespace hhalg::cli {

// Parses one polynomial over the given generators; `v` is the Laurent symbol
// when the base has one. Errors carry the column (1-based) inside the text.
NCPolynomial parse_expression(const std::string& text, const std::vector<Generator>& generators,
                              const BaseRing& base);
std::string format_expression(const NCPolynomial& p, const std::vector<Generator>& generators, const BaseRing& base);

struct AlgebraDef {
    std::string name;
    std::string kind = "presentation"; // presentation | matrix | endomorphism | quotient_dga
    std::optional<BaseRing> base;      // overrides the file's base
    std::vector<Generator> generators;
    std::vector<NCPolynomial> relations;
    std::optional<int> truncation;
    std::vector<std::pair<std::string, NCPolynomial>> differential;
    std::size_t size = 0;     // matrix
    std::vector<int> degrees; // endomorphism
    NCPolynomial x, w;        // quotient_dga, in the Laurent symbol only

    friend bool operator==(const AlgebraDef&, const AlgebraDef&) = default;
};

struct ModuleDef {
    std::string name;
    std::string algebra;
    std::string side = "left";
    std::string kind = "explicit"; // explicit | augmentation | regular | zero
    std::vector<Generator> generators;
    // Matrix of each algebra generator (presentation algebras only).
    std::vector<std::pair<std::string, std::vector<std::vector<long>>>> actions;

    friend bool operator==(const ModuleDef&, const ModuleDef&) = default;
};

struct ContextDef {
    std::string name;
    std::string kind = "endomorphism"; // endomorphism (module E) | koszul (algebras r, a)
    std::string module;
    std::string r, a;
    std::string note;
    std::vector<std::string> inputs; // right R-modules; "R" is the regular one

    friend bool operator==(const ContextDef&, const ContextDef&) = default;
};

struct DefinitionFile {
    BaseRing base{GroundRing::rationals()};
    std::vector<AlgebraDef> algebras;
    std::vector<ModuleDef> modules;
    std::vector<ContextDef> contexts;
    std::vector<nlohmann::ordered_json> tasks;

    friend bool operator==(const DefinitionFile&, const DefinitionFile&) = default;
};

// Validates names, references, degrees and relations. InputError messages
// carry "line L, column C" when a position is known.
DefinitionFile parse_definition(const std::string& text);
std::string emit_definition(const DefinitionFile& d);

// Canonical JSON of one algebra definition with its effective base; used for cache keys.
std::string canonical_algebra(const DefinitionFile& d, const std::string& name);

class Library {
public:
    explicit Library(DefinitionFile d) : def_(std::move(d)) {}
    const DefinitionFile& definition() const { return def_; }

    const GradedAlgebra& algebra(const std::string& name);
    const QuotientDGA& quotient(const std::string& name);
    ModuleOverAlgebra module(const std::string& name);
    MoritaContext context(const std::string& name);
    const AlgebraDef& algebra_def(const std::string& name) const;
    const ContextDef& context_def(const std::string& name) const;

private:
    DefinitionFile def_;
    std::map<std::string, Realization> realized_;
    std::map<std::string, GradedAlgebra> algebras_;
    std::map<std::string, QuotientDGA> quotients_;
};

} // namespace hhalg::cli
