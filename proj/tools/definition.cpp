#include "definition.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "hhalg/errors.hpp"

namespace hhalg::cli {

using nlohmann::ordered_json;

namespace {

// Column-tagged failure inside one expression string.
struct ExprError {
    std::size_t column;
    std::string message;
};

using Key = std::pair<std::vector<std::size_t>, int>; // word, v power
using Poly = std::map<Key, Scalar>;

class ExprParser {
public:
    ExprParser(const std::string& text, const std::vector<Generator>& gens, const BaseRing& base)
        : s_(text), gens_(gens), base_(base) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at = std::string::npos) const {
        throw ExprError{(at == std::string::npos ? i_ : at) + 1, msg};
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void add(Poly& into, const Poly& p, int sign) const {
        for (const auto& [k, c] : p) {
            Scalar v = base_.ground().reduce(into[k] + sign * c);
            if (v == 0)
                into.erase(k);
            else
                into[k] = v;
        }
    }

    Poly mul(const Poly& a, const Poly& b) const {
        Poly out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                Key k{ka.first, ka.second + kb.second};
                k.first.insert(k.first.end(), kb.first.begin(), kb.first.end());
                add(out, Poly{{k, ca * cb}}, 1);
            }
        return out;
    }

    Poly expr() {
        Poly out;
        int sign = 1;
        if (eat('-'))
            sign = -1;
        else
            eat('+');
        add(out, term(), sign);
        while (true) {
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else
                break;
            add(out, term(), sign);
        }
        return out;
    }

    Poly term() {
        Poly p = factor();
        while (eat('*')) p = mul(p, factor());
        return p;
    }

    long integer() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected an integer");
        if (i_ - start > 9) fail("integer too large", start);
        return std::stol(s_.substr(start, i_ - start));
    }

    Poly factor() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Scalar v = base_.ground().from_int(integer());
            return v == 0 ? Poly{} : Poly{{Key{{}, 0}, v}};
        }
        if (c == '(') {
            ++i_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            skip();
            if (i_ < s_.size() && s_[i_] == '^') fail("'^' applies to a single generator");
            return p;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name = s_.substr(start, i_ - start);
            bool laurent = base_.has_laurent() && name == base_.laurent()->name;
            std::optional<std::size_t> gen;
            for (std::size_t g = 0; g < gens_.size(); ++g)
                if (gens_[g].name == name) gen = g;
            if (!laurent && !gen) fail("unknown symbol '" + name + "'", start);
            long power = 1;
            if (eat('^')) {
                std::size_t at = i_;
                bool neg = eat('-');
                power = integer();
                if (neg) {
                    if (!laurent) fail("negative power of generator '" + name + "'", at);
                    power = -power;
                }
            }
            if (laurent) return Poly{{Key{{}, static_cast<int>(power)}, Scalar(1)}};
            return Poly{{Key{std::vector<std::size_t>(static_cast<std::size_t>(power), *gen), 0}, Scalar(1)}};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const std::vector<Generator>& gens_;
    const BaseRing& base_;
    std::size_t i_ = 0;
};

NCPolynomial to_nc(const Poly& p) {
    NCPolynomial out;
    for (const auto& [k, c] : p) out.push_back(NCTerm{c, k.second, k.first});
    // Longest words first, then lexicographic; v powers ascending.
    std::stable_sort(out.begin(), out.end(),
                     [](const NCTerm& a, const NCTerm& b) { return a.word.size() > b.word.size(); });
    return out;
}

NCPolynomial parse_located(const std::string& text, const std::vector<Generator>& gens, const BaseRing& base) {
    return to_nc(ExprParser(text, gens, base).parse());
}

// Byte offset -> 1-based line and column.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void located(const std::string& text, std::size_t offset, const std::string& msg) {
    auto [l, c] = line_col(text, offset);
    throw InputError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg);
}

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    // Locates the next occurrence of a string literal so expression errors can
    // be reported at file coordinates.
    std::size_t find_literal(const std::string& s) {
        std::string lit = ordered_json(s).dump();
        auto pos = text_.find(lit, cursor_);
        if (pos == std::string::npos) pos = text_.find(lit);
        if (pos == std::string::npos) return 0;
        cursor_ = pos + lit.size();
        last_literal_ = pos;
        return pos + 1;
    }
    // Reports at the opening quote of the most recently located literal.
    [[noreturn]] void error_at_literal(const std::string& msg) const { located(text_, last_literal_, msg); }
    std::size_t find_key(const std::string& key) {
        std::string lit = ordered_json(key).dump();
        auto pos = text_.find(lit, cursor_);
        if (pos == std::string::npos) return cursor_;
        cursor_ = pos + lit.size();
        return pos;
    }
    [[noreturn]] void error(const std::string& msg) const { located(text_, cursor_, msg); }

    NCPolynomial expression(const ordered_json& j, const std::vector<Generator>& gens, const BaseRing& base,
                            const std::string& what) {
        if (!j.is_string()) error(what + " must be a string");
        const auto s = j.get<std::string>();
        std::size_t at = find_literal(s);
        try {
            return parse_located(s, gens, base);
        } catch (const ExprError& e) {
            located(text_, at + e.column - 1, what + " '" + s + "': " + e.message);
        }
    }

    const std::string& text() const { return text_; }

private:
    const std::string& text_;
    std::size_t cursor_ = 0;
    std::size_t last_literal_ = 0;
};

void allow_keys(Reader& r, const ordered_json& j, std::initializer_list<const char*> keys, const std::string& what) {
    if (!j.is_object()) r.error(what + " must be an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = std::any_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; });
        if (!ok) {
            r.find_key(k);
            r.error("unknown key '" + k + "' in " + what);
        }
    }
}

template <class T>
T get(Reader& r, const ordered_json& j, const char* key, const std::string& what) {
    if (!j.contains(key)) r.error(what + " is missing '" + key + "'");
    // nlohmann converts 1.5 to 1 silently.
    auto integral = [](const ordered_json& v) { return v.is_number_integer(); };
    bool ok = true;
    if constexpr (std::is_integral_v<T>) {
        ok = integral(j.at(key));
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
        ok = j.at(key).is_array() && std::all_of(j.at(key).begin(), j.at(key).end(), integral);
    }
    if constexpr (std::is_unsigned_v<T>) ok = ok && j.at(key).is_number_unsigned();
    if (!ok) {
        r.find_key(key);
        r.error("'" + std::string(key) + "' in " + what + " has the wrong type");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        r.find_key(key);
        r.error("'" + std::string(key) + "' in " + what + " has the wrong type");
    }
}

BaseRing read_base(Reader& r, const ordered_json& j) {
    allow_keys(r, j, {"ground", "laurent"}, "base");
    GroundRing g = GroundRing::rationals();
    try {
        g = GroundRing::parse(get<std::string>(r, j, "ground", "base"));
    } catch (const InputError& e) {
        r.find_key("ground");
        r.error(e.what());
    }
    if (!j.contains("laurent")) return BaseRing(g);
    const auto& l = j.at("laurent");
    allow_keys(r, l, {"name", "degree"}, "laurent");
    try {
        return BaseRing(g, LaurentGenerator{get<std::string>(r, l, "name", "laurent"), get<int>(r, l, "degree", "laurent")});
    } catch (const InputError& e) {
        r.find_key("laurent");
        r.error(e.what());
    }
}

ordered_json write_base(const BaseRing& b) {
    ordered_json j;
    j["ground"] = b.ground().name();
    if (b.has_laurent()) j["laurent"] = ordered_json{{"name", b.laurent()->name}, {"degree", b.laurent()->degree}};
    return j;
}

std::vector<Generator> read_generators(Reader& r, const ordered_json& j, const std::string& what) {
    if (!j.is_array()) r.error("generators of " + what + " must be an array");
    std::vector<Generator> out;
    std::set<std::string> seen;
    for (const auto& g : j) {
        allow_keys(r, g, {"name", "degree"}, "generator of " + what);
        Generator gen{get<std::string>(r, g, "name", "generator"), get<int>(r, g, "degree", "generator")};
        r.find_literal(gen.name);
        if (gen.name.empty() || !(std::isalpha(static_cast<unsigned char>(gen.name[0])) || gen.name[0] == '_') ||
            !std::all_of(gen.name.begin(), gen.name.end(),
                         [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
            r.error("generator name '" + gen.name + "' is not an identifier");
        if (!seen.insert(gen.name).second) r.error("duplicate generator '" + gen.name + "' in " + what);
        out.push_back(gen);
    }
    return out;
}

ordered_json write_generators(const std::vector<Generator>& gens) {
    auto a = ordered_json::array();
    for (const auto& g : gens) a.push_back(ordered_json{{"name", g.name}, {"degree", g.degree}});
    return a;
}

BaseRing effective_base(const DefinitionFile& d, const AlgebraDef& a) { return a.base.value_or(d.base); }

AlgebraPresentation presentation(const DefinitionFile& d, const AlgebraDef& a) {
    AlgebraPresentation p{effective_base(d, a), a.generators, a.relations, a.truncation, {}, a.name};
    for (const auto& [g, poly] : a.differential)
        for (std::size_t i = 0; i < a.generators.size(); ++i)
            if (a.generators[i].name == g) p.differential[i] = poly;
    return p;
}

BaseElement base_element(const NCPolynomial& p, const std::string& what) {
    if (p.empty()) return BaseElement{0, 0};
    if (p.size() != 1 || !p[0].word.empty()) throw InputError(what + " must be a single term c v^k");
    return BaseElement{p[0].coeff, p[0].v_power};
}

AlgebraDef read_algebra(Reader& r, const ordered_json& j, const DefinitionFile& d) {
    allow_keys(r, j,
               {"name", "kind", "base", "generators", "relations", "truncation", "differential", "size", "degrees", "x",
                "w"},
               "algebra");
    AlgebraDef a;
    a.name = get<std::string>(r, j, "name", "algebra");
    r.find_literal(a.name);
    const std::string what = "algebra '" + a.name + "'";
    if (j.contains("kind")) a.kind = get<std::string>(r, j, "kind", what);
    if (j.contains("base")) a.base = read_base(r, j.at("base"));
    BaseRing base = effective_base(d, a);

    auto only = [&](std::initializer_list<const char*> keys) {
        for (const char* k : {"generators", "relations", "truncation", "differential", "size", "degrees", "x", "w"})
            if (j.contains(k) && std::none_of(keys.begin(), keys.end(), [&](const char* a) { return std::string(a) == k; })) {
                r.find_key(k);
                r.error("'" + std::string(k) + "' does not apply to " + a.kind + " " + what);
            }
    };

    if (a.kind == "presentation") {
        only({"generators", "relations", "truncation", "differential"});
        a.generators = read_generators(r, j.contains("generators") ? j.at("generators") : ordered_json::array(), what);
        if (j.contains("truncation")) a.truncation = get<int>(r, j, "truncation", what);
        AlgebraPresentation p{base, a.generators, {}, a.truncation, {}, a.name};
        if (j.contains("relations")) {
            if (!j.at("relations").is_array()) r.error("relations of " + what + " must be an array");
            for (const auto& rel : j.at("relations")) {
                std::string text = rel.is_string() ? rel.get<std::string>() : "";
                auto poly = r.expression(rel, a.generators, base, "relation");
                try {
                    polynomial_degree(p, poly);
                } catch (const InputError& e) {
                    r.error_at_literal("relation '" + text + "': " + e.what());
                }
                a.relations.push_back(poly);
            }
        }
        if (a.relations.empty() && !a.truncation && !a.generators.empty())
            r.error(what + " has no relations; a free algebra needs 'truncation'");
        if (j.contains("differential")) {
            const auto& dj = j.at("differential");
            if (!dj.is_object()) r.error("differential of " + what + " must be an object");
            for (const auto& [g, e] : dj.items()) {
                r.find_key(g);
                if (std::none_of(a.generators.begin(), a.generators.end(), [&](const Generator& x) { return x.name == g; }))
                    r.error("differential names unknown generator '" + g + "'");
                auto poly = r.expression(e, a.generators, base, "differential");
                a.differential.emplace_back(g, poly);
            }
        }
    } else if (a.kind == "matrix") {
        only({"size"});
        a.size = get<std::size_t>(r, j, "size", what);
        if (a.size == 0) r.error(what + " needs size >= 1");
    } else if (a.kind == "endomorphism") {
        only({"degrees"});
        a.degrees = get<std::vector<int>>(r, j, "degrees", what);
        if (a.degrees.empty()) r.error(what + " needs at least one degree");
    } else if (a.kind == "quotient_dga") {
        only({"x", "w"});
        if (!j.contains("x") || !j.contains("w")) r.error(what + " needs 'x' and 'w'");
        a.x = r.expression(j.at("x"), {}, base, "x");
        a.w = r.expression(j.at("w"), {}, base, "w");
        try {
            base_element(a.x, "x");
            base_element(a.w, "w");
        } catch (const InputError& e) {
            r.error(what + ": " + e.what());
        }
    } else {
        r.find_key("kind");
        r.error("unknown algebra kind '" + a.kind + "'");
    }
    return a;
}

ModuleDef read_module(Reader& r, const ordered_json& j, const DefinitionFile& d) {
    allow_keys(r, j, {"name", "algebra", "side", "kind", "generators", "actions"}, "module");
    ModuleDef m;
    m.name = get<std::string>(r, j, "name", "module");
    r.find_literal(m.name);
    const std::string what = "module '" + m.name + "'";
    m.algebra = get<std::string>(r, j, "algebra", what);
    if (j.contains("side")) m.side = get<std::string>(r, j, "side", what);
    if (j.contains("kind")) m.kind = get<std::string>(r, j, "kind", what);
    if (m.side != "left" && m.side != "right") r.error(what + ": side must be 'left' or 'right'");
    auto alg = std::find_if(d.algebras.begin(), d.algebras.end(), [&](const AlgebraDef& a) { return a.name == m.algebra; });
    if (alg == d.algebras.end()) {
        r.find_literal(m.algebra);
        r.error(what + " refers to unknown algebra '" + m.algebra + "'");
    }
    if (m.kind == "explicit") {
        if (alg->kind != "presentation") r.error(what + ": explicit actions need a presentation algebra");
        m.generators = read_generators(r, j.contains("generators") ? j.at("generators") : ordered_json::array(), what);
        if (j.contains("actions")) {
            const auto& aj = j.at("actions");
            if (!aj.is_object()) r.error("actions of " + what + " must be an object");
            for (const auto& [g, mat] : aj.items()) {
                r.find_key(g);
                if (std::none_of(alg->generators.begin(), alg->generators.end(), [&](const Generator& x) { return x.name == g; }))
                    r.error(what + ": '" + g + "' is not a generator of '" + m.algebra + "'");
                std::vector<std::vector<long>> rows;
                try {
                    for (const auto& row : mat)
                        for (const auto& x : row)
                            if (!x.is_number_integer()) throw std::invalid_argument("entry");
                    rows = mat.get<std::vector<std::vector<long>>>();
                } catch (const std::exception&) {
                    r.error(what + ": action of '" + g + "' must be an integer matrix");
                }
                bool square = rows.size() == m.generators.size() &&
                              std::all_of(rows.begin(), rows.end(), [&](const auto& row) { return row.size() == rows.size(); });
                if (!square) r.error(what + ": action of '" + g + "' must be " + std::to_string(m.generators.size()) + " x " +
                                     std::to_string(m.generators.size()));
                m.actions.emplace_back(g, rows);
            }
        }
    } else if (m.kind == "augmentation" || m.kind == "regular" || m.kind == "zero") {
        if (j.contains("generators") || j.contains("actions")) r.error(what + ": only explicit modules list generators");
    } else {
        r.find_key("kind");
        r.error("unknown module kind '" + m.kind + "'");
    }
    return m;
}

ContextDef read_context(Reader& r, const ordered_json& j, const DefinitionFile& d) {
    allow_keys(r, j, {"name", "kind", "module", "r", "a", "note", "inputs"}, "context");
    ContextDef c;
    c.name = get<std::string>(r, j, "name", "context");
    r.find_literal(c.name);
    const std::string what = "context '" + c.name + "'";
    if (j.contains("kind")) c.kind = get<std::string>(r, j, "kind", what);
    if (j.contains("note")) c.note = get<std::string>(r, j, "note", what);
    if (j.contains("inputs")) c.inputs = get<std::vector<std::string>>(r, j, "inputs", what);
    auto has_algebra = [&](const std::string& n) {
        return std::any_of(d.algebras.begin(), d.algebras.end(), [&](const AlgebraDef& a) { return a.name == n; });
    };
    auto find_module = [&](const std::string& n) {
        return std::find_if(d.modules.begin(), d.modules.end(), [&](const ModuleDef& m) { return m.name == n; });
    };
    std::string r_name;
    if (c.kind == "endomorphism") {
        if (j.contains("r") || j.contains("a")) r.error(what + ": 'r' and 'a' apply to koszul contexts");
        c.module = get<std::string>(r, j, "module", what);
        auto m = find_module(c.module);
        if (m == d.modules.end()) r.error(what + " refers to unknown module '" + c.module + "'");
        if (m->side != "left") r.error(what + ": E must be a left module");
        r_name = m->algebra;
    } else if (c.kind == "koszul") {
        if (j.contains("module")) r.error(what + ": 'module' applies to endomorphism contexts");
        c.r = get<std::string>(r, j, "r", what);
        c.a = get<std::string>(r, j, "a", what);
        for (const auto& n : {c.r, c.a})
            if (!has_algebra(n)) r.error(what + " refers to unknown algebra '" + n + "'");
        r_name = c.r;
    } else {
        r.find_key("kind");
        r.error("unknown context kind '" + c.kind + "'");
    }
    for (const auto& in : c.inputs) {
        if (in == "R") continue;
        auto m = find_module(in);
        if (m == d.modules.end()) r.error(what + " refers to unknown module '" + in + "'");
        if (m->algebra != r_name || m->side != "right")
            r.error(what + ": input '" + in + "' must be a right module over '" + r_name + "'");
    }
    return c;
}

const std::set<std::string> kTaskCommands{"ext", "hochschild", "azumaya", "morita", "homology", "mu-image"};

void check_task(Reader& r, const ordered_json& t, const DefinitionFile& d, const std::set<std::string>& algebras,
                const std::set<std::string>& contexts) {
    allow_keys(r, t, {"command", "algebra", "context", "smax", "nmax", "window", "flavor", "check", "format", "seed"},
               "task");
    auto cmd = get<std::string>(r, t, "command", "task");
    r.find_literal(cmd);
    if (!kTaskCommands.count(cmd)) r.error("unknown task command '" + cmd + "'");
    if (t.contains("algebra") && !algebras.count(get<std::string>(r, t, "algebra", "task")))
        r.error("task refers to unknown algebra '" + t.at("algebra").get<std::string>() + "'");
    if (t.contains("context") && !contexts.count(get<std::string>(r, t, "context", "task")))
        r.error("task refers to unknown context '" + t.at("context").get<std::string>() + "'");
    if (cmd == "morita" && d.contexts.empty() && !t.contains("context")) r.error("morita task needs a context");
}

} // namespace

NCPolynomial parse_expression(const std::string& text, const std::vector<Generator>& generators, const BaseRing& base) {
    try {
        return parse_located(text, generators, base);
    } catch (const ExprError& e) {
        throw InputError("column " + std::to_string(e.column) + ": " + e.message);
    }
}

std::string format_expression(const NCPolynomial& p, const std::vector<Generator>& generators, const BaseRing& base) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t n = 0; n < p.size(); ++n) {
        const auto& t = p[n];
        std::vector<std::string> factors;
        if (t.v_power != 0) {
            std::string v = base.has_laurent() ? base.laurent()->name : "v";
            factors.push_back(t.v_power == 1 ? v : v + "^" + std::to_string(t.v_power));
        }
        for (std::size_t i = 0; i < t.word.size();) {
            std::size_t j = i;
            while (j < t.word.size() && t.word[j] == t.word[i]) ++j;
            std::string g = generators.at(t.word[i]).name;
            factors.push_back(j - i == 1 ? g : g + "^" + std::to_string(j - i));
            i = j;
        }
        bool negative = t.coeff < 0;
        Scalar mag = negative ? Scalar(-t.coeff) : t.coeff;
        std::string body;
        if (mag != 1 || factors.empty()) body = mag.get_str();
        for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
        if (n == 0)
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

DefinitionFile parse_definition(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string msg = e.what();
        auto colon = msg.find("syntax error");
        located(text, e.byte > 0 ? e.byte - 1 : 0, colon == std::string::npos ? msg : msg.substr(colon));
    }
    Reader r(text);
    allow_keys(r, root, {"base", "algebras", "modules", "contexts", "tasks"}, "definition file");
    DefinitionFile d;
    if (root.contains("base")) d.base = read_base(r, root.at("base"));

    std::set<std::string> names, algebras, contexts;
    auto unique = [&](const std::string& n) {
        if (n.empty()) r.error("names must be non-empty");
        if (!names.insert(n).second) r.error("duplicate name '" + n + "'");
    };
    auto array = [&](const char* key) -> const ordered_json& {
        static const ordered_json empty = ordered_json::array();
        if (!root.contains(key)) return empty;
        if (!root.at(key).is_array()) {
            r.find_key(key);
            r.error("'" + std::string(key) + "' must be an array");
        }
        return root.at(key);
    };

    for (const auto& a : array("algebras")) {
        d.algebras.push_back(read_algebra(r, a, d));
        unique(d.algebras.back().name);
        algebras.insert(d.algebras.back().name);
    }
    for (const auto& m : array("modules")) {
        d.modules.push_back(read_module(r, m, d));
        unique(d.modules.back().name);
    }
    for (const auto& c : array("contexts")) {
        d.contexts.push_back(read_context(r, c, d));
        unique(d.contexts.back().name);
        contexts.insert(d.contexts.back().name);
    }
    for (const auto& t : array("tasks")) {
        check_task(r, t, d, algebras, contexts);
        d.tasks.push_back(t);
    }
    return d;
}

namespace {

ordered_json write_algebra(const DefinitionFile& d, const AlgebraDef& a, bool with_base) {
    ordered_json j;
    j["name"] = a.name;
    if (a.kind != "presentation") j["kind"] = a.kind;
    if (a.base || with_base) j["base"] = write_base(effective_base(d, a));
    BaseRing base = effective_base(d, a);
    if (a.kind == "presentation") {
        j["generators"] = write_generators(a.generators);
        auto rels = ordered_json::array();
        for (const auto& p : a.relations) rels.push_back(format_expression(p, a.generators, base));
        j["relations"] = rels;
        if (a.truncation) j["truncation"] = *a.truncation;
        if (!a.differential.empty()) {
            ordered_json dj = ordered_json::object();
            for (const auto& [g, p] : a.differential) dj[g] = format_expression(p, a.generators, base);
            j["differential"] = dj;
        }
    } else if (a.kind == "matrix") {
        j["size"] = a.size;
    } else if (a.kind == "endomorphism") {
        j["degrees"] = a.degrees;
    } else {
        j["x"] = format_expression(a.x, {}, base);
        j["w"] = format_expression(a.w, {}, base);
    }
    return j;
}

} // namespace

std::string emit_definition(const DefinitionFile& d) {
    ordered_json root;
    root["base"] = write_base(d.base);
    auto algs = ordered_json::array();
    for (const auto& a : d.algebras) algs.push_back(write_algebra(d, a, false));
    root["algebras"] = algs;
    if (!d.modules.empty()) {
        auto mods = ordered_json::array();
        for (const auto& m : d.modules) {
            ordered_json j;
            j["name"] = m.name;
            j["algebra"] = m.algebra;
            if (m.side != "left") j["side"] = m.side;
            if (m.kind != "explicit") j["kind"] = m.kind;
            if (m.kind == "explicit") {
                j["generators"] = write_generators(m.generators);
                ordered_json acts = ordered_json::object();
                for (const auto& [g, rows] : m.actions) acts[g] = rows;
                j["actions"] = acts;
            }
            mods.push_back(j);
        }
        root["modules"] = mods;
    }
    if (!d.contexts.empty()) {
        auto ctxs = ordered_json::array();
        for (const auto& c : d.contexts) {
            ordered_json j;
            j["name"] = c.name;
            j["kind"] = c.kind;
            if (c.kind == "endomorphism") {
                j["module"] = c.module;
            } else {
                j["r"] = c.r;
                j["a"] = c.a;
            }
            if (!c.note.empty()) j["note"] = c.note;
            if (!c.inputs.empty()) j["inputs"] = c.inputs;
            ctxs.push_back(j);
        }
        root["contexts"] = ctxs;
    }
    if (!d.tasks.empty()) root["tasks"] = d.tasks;
    return root.dump(2) + "\n";
}

std::string canonical_algebra(const DefinitionFile& d, const std::string& name) {
    for (const auto& a : d.algebras)
        if (a.name == name) return write_algebra(d, a, true).dump();
    throw InputError("unknown algebra '" + name + "'");
}

const AlgebraDef& Library::algebra_def(const std::string& name) const {
    for (const auto& a : def_.algebras)
        if (a.name == name) return a;
    throw InputError("unknown algebra '" + name + "'");
}

const ContextDef& Library::context_def(const std::string& name) const {
    for (const auto& c : def_.contexts)
        if (c.name == name) return c;
    throw InputError("unknown context '" + name + "'");
}

const GradedAlgebra& Library::algebra(const std::string& name) {
    if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
    const auto& a = algebra_def(name);
    BaseRing base = effective_base(def_, a);
    if (a.kind == "presentation") {
        auto rz = realize_presentation(presentation(def_, a));
        rz.algebra.set_name(a.name);
        realized_.emplace(name, rz);
        return algebras_.emplace(name, rz.algebra).first->second;
    }
    if (a.kind == "quotient_dga") {
        auto q = make_quotient_dga(base, base_element(a.x, "x"), base_element(a.w, "w"));
        q.algebra.set_name(a.name);
        quotients_.emplace(name, q);
        return algebras_.emplace(name, q.algebra).first->second;
    }
    std::vector<Generator> gens;
    if (a.kind == "matrix")
        for (std::size_t i = 0; i < a.size; ++i) gens.push_back({"e" + std::to_string(i), 0});
    else
        for (std::size_t i = 0; i < a.degrees.size(); ++i) gens.push_back({"e" + std::to_string(i), a.degrees[i]});
    auto alg = endomorphism_algebra(GradedFreeModule(base, gens));
    alg.set_name(a.name);
    return algebras_.emplace(name, alg).first->second;
}

const QuotientDGA& Library::quotient(const std::string& name) {
    if (algebra_def(name).kind != "quotient_dga") throw InputError("algebra '" + name + "' is not a quotient_dga");
    algebra(name);
    return quotients_.at(name);
}

ModuleOverAlgebra Library::module(const std::string& name) {
    auto it = std::find_if(def_.modules.begin(), def_.modules.end(), [&](const ModuleDef& m) { return m.name == name; });
    if (it == def_.modules.end()) throw InputError("unknown module '" + name + "'");
    const ModuleDef& m = *it;
    const GradedAlgebra& a = algebra(m.algebra);
    Side side = m.side == "left" ? Side::Left : Side::Right;
    if (m.kind == "augmentation") return ModuleOverAlgebra::augmentation(a, side);
    if (m.kind == "regular") return ModuleOverAlgebra::regular(a, side);
    if (m.kind == "zero") return ModuleOverAlgebra::zero(a, side);

    const auto& def = algebra_def(m.algebra);
    const auto& words = realized_.at(m.algebra).basis_words;
    const GroundRing& g = a.ground();
    std::size_t n = m.generators.size();
    std::vector<ExactMatrix> gen_action;
    for (const auto& gen : def.generators) {
        ExactMatrix mat(g, n, n);
        for (const auto& [gname, rows] : m.actions)
            if (gname == gen.name) mat = ExactMatrix::from_rows(g, rows);
        gen_action.push_back(mat);
    }
    // e_w acts as the product of generator matrices: left w1 w2 .. wk, right wk .. w1.
    std::vector<ExactMatrix> action;
    for (const auto& w : words) {
        ExactMatrix mat = ExactMatrix::identity(g, n);
        for (std::size_t k = 0; k < w.size(); ++k)
            mat = side == Side::Left ? mat * gen_action[w[k]] : gen_action[w[k]] * mat;
        action.push_back(mat);
    }
    return ModuleOverAlgebra(a, GradedFreeModule(a.base(), m.generators), action, side, m.name);
}

MoritaContext Library::context(const std::string& name) {
    const auto& c = context_def(name);
    if (c.kind == "endomorphism") return morita_context(module(c.module));
    return koszul_context(algebra(c.r), algebra(c.a), c.note);
}

} // namespace hhalg::cli
