#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "cache.hpp"
#include "hhalg/errors.hpp"

namespace hhalg::cli {

using nlohmann::ordered_json;

namespace {

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::string bounds(const Options& o) {
    return "smax=" + std::to_string(o.smax) + " nmax=" + std::to_string(o.nmax) + " window=" + std::to_string(o.lo) +
           ":" + std::to_string(o.hi);
}

std::string algebra_name(const DefinitionFile& d, const Options& o) {
    if (!o.algebra.empty()) return o.algebra;
    if (d.algebras.empty()) throw InputError("the definition file has no algebras");
    return d.algebras.front().name;
}

std::string context_name(const DefinitionFile& d, const Options& o) {
    if (!o.context.empty()) return o.context;
    if (d.contexts.empty()) throw InputError("the definition file has no contexts");
    return d.contexts.front().name;
}

void emit_table(Outcome& r, const BigradedTable& t, const Options& o) {
    r.out += o.format == "json" ? t.to_json() : t.to_tsv();
    if (!o.quiet)
        for (const auto& n : t.notes) r.err += "note: " + n + "\n";
}

template <class F>
BigradedTable cached(const Options& o, const std::string& material, F compute) {
    Cache cache(o.cache_dir);
    const std::string key = cache_key(material + "\n" + bounds(o));
    if (auto hit = cache.load(key)) return *hit;
    BigradedTable t = compute();
    cache.store(key, t);
    return t;
}

Outcome table_command(const DefinitionFile& d, const Options& o) {
    Library lib(d);
    const std::string name = algebra_name(d, o);
    const std::string material = o.command + "\n" + canonical_algebra(d, name);
    BigradedTable t = cached(o, material, [&] {
        const auto& a = lib.algebra(name);
        if (o.command == "ext") return ext_table(a, o.smax, o.lo, o.hi);
        if (o.command == "hochschild") return hochschild_cohomology(a, o.nmax, o.lo, o.hi);
        return homology(Complex::from_algebra(a), o.lo, o.hi);
    });
    Outcome r;
    emit_table(r, t, o);
    return r;
}

AzumayaReport check(const GradedAlgebra& a, const Options& o) {
    Window w{o.lo, o.hi};
    if (o.flavor == "classical") return check_classical_azumaya(a);
    if (o.flavor == "generalized") return check_generalized_azumaya(a, w);
    return check_weak_azumaya(a, w);
}

void emit_report(Outcome& r, const AzumayaReport& rep, const Options& o) {
    if (o.format == "json") {
        ordered_json j;
        j["subject"] = rep.subject;
        j["flavor"] = to_string(rep.flavor);
        auto conds = ordered_json::array();
        for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
            const auto& c = rep.conditions[i];
            conds.push_back(ordered_json{{"condition", i + 1},
                                         {"name", c.name},
                                         {"verdict", to_string(c.verdict)},
                                         {"witness", c.witness}});
        }
        j["conditions"] = conds;
        j["overall"] = to_string(rep.overall());
        r.out += j.dump(2) + "\n";
        return;
    }
    r.out += "condition\tname\tverdict\twitness\n";
    for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
        const auto& c = rep.conditions[i];
        r.out += std::to_string(i + 1) + "\t" + one_line(c.name) + "\t" + to_string(c.verdict) + "\t" +
                 one_line(c.witness) + "\n";
    }
    r.out += "overall\t" + one_line(rep.subject) + "\t" + to_string(rep.overall()) + "\t" + to_string(rep.flavor) + "\n";
}

Outcome azumaya_sampled(const DefinitionFile& d, const Options& o) {
    std::mt19937_64 rng(o.seed.value_or(0));
    std::uniform_int_distribution<int> size(1, 3), degree(-3, 3);
    Outcome r;
    auto rows = ordered_json::array();
    if (o.format != "json") r.out += "sample\tdegrees\toverall\n";
    for (std::size_t k = 0; k < o.sample; ++k) {
        std::vector<Generator> gens;
        int n = size(rng);
        std::string degs;
        for (int i = 0; i < n; ++i) {
            int deg = degree(rng);
            if (d.base.has_laurent()) deg = ((deg % d.base.period()) + d.base.period()) % d.base.period();
            gens.push_back({"e" + std::to_string(i), deg});
            degs += (i ? "," : "") + std::to_string(deg);
        }
        auto a = endomorphism_algebra(GradedFreeModule(d.base, gens));
        a.set_name("End(" + degs + ")");
        auto rep = check(a, o);
        if (o.format == "json")
            rows.push_back(ordered_json{{"sample", k}, {"degrees", degs}, {"overall", to_string(rep.overall())}});
        else
            r.out += std::to_string(k) + "\t" + degs + "\t" + to_string(rep.overall()) + "\n";
    }
    if (o.format == "json") r.out += rows.dump(2) + "\n";
    return r;
}

Outcome azumaya_command(const DefinitionFile& d, const Options& o) {
    if (o.flavor != "classical" && o.flavor != "generalized" && o.flavor != "weak")
        throw InputError("--flavor must be classical, generalized or weak");
    if (o.sample > 0) return azumaya_sampled(d, o);
    Library lib(d);
    Outcome r;
    emit_report(r, check(lib.algebra(algebra_name(d, o)), o), o);
    return r;
}

Outcome mu_image_command(const DefinitionFile& d, const Options& o) {
    Library lib(d);
    const auto name = algebra_name(d, o);
    const auto& q = lib.quotient(name);
    MuImage m = mu_homology_image(q);
    std::vector<std::pair<std::string, std::string>> rows{
        {"algebra", name},
        {"source_homology", m.source_homology.to_string()},
        {"target_homology", m.target_homology.to_string()},
        {"coefficient", m.coefficient.to_string(q.base)},
        {"modulus", m.modulus.get_str()},
        {"reduced", m.reduced.to_string(q.base)},
        {"unit", m.unit ? "yes" : "no"},
        {"note", m.note},
    };
    Outcome r;
    if (o.format == "json") {
        ordered_json j;
        for (const auto& [k, v] : rows) j[k] = v;
        j["unit"] = m.unit;
        r.out += j.dump(2) + "\n";
    } else {
        r.out += "field\tvalue\n";
        for (const auto& [k, v] : rows) r.out += k + "\t" + one_line(v) + "\n";
    }
    return r;
}

ModuleOverAlgebra input_module(Library& lib, const MoritaContext& c, const std::string& name) {
    if (name == "R") return ModuleOverAlgebra::regular(c.r, Side::Right);
    return lib.module(name);
}

std::string ranks_string(const std::map<int, std::size_t>& m) {
    std::string s;
    for (const auto& [t, n] : m) s += (s.empty() ? "" : ",") + std::to_string(t) + ":" + std::to_string(n);
    return s.empty() ? "none" : s;
}

Outcome morita_command(const DefinitionFile& d, const Options& o) {
    Library lib(d);
    const auto cname = context_name(d, o);
    const auto& cdef = lib.context_def(cname);
    MoritaContext c = lib.context(cname);
    std::vector<std::string> inputs = cdef.inputs.empty() ? std::vector<std::string>{"R"} : cdef.inputs;
    Outcome r;
    const bool json = o.format == "json";
    auto doc = ordered_json::array();

    if (o.check == "completion") {
        for (const auto& in : inputs) {
            auto m = input_module(lib, c, in);
            auto res = completion(m, c, o.smax, o.lo, o.hi);
            bool agree = internal_ranks(res.table, o.lo, o.hi) == internal_ranks(m.underlying(), o.lo, o.hi);
            if (json) {
                doc.push_back(ordered_json{{"input", in},
                                           {"notes", res.notes},
                                           {"ranks_agree", agree},
                                           {"table", ordered_json::parse(res.table.to_json())}});
                continue;
            }
            r.out += "# input " + in + "\n";
            for (const auto& n : res.notes) r.out += "# note " + one_line(n) + "\n";
            r.out += "# in-window ranks agree with input: " + std::string(agree ? "yes" : "no") + "\n";
            r.out += res.table.to_tsv();
        }
    } else if (o.check == "roundtrip") {
        if (!json) r.out += "y\tequivalent\twitness\n";
        std::vector<std::pair<std::string, ModuleOverAlgebra>> ys{{"A", ModuleOverAlgebra::regular(c.a)}, {"E", c.e_a}};
        for (const auto& [name, y] : ys) {
            auto rt = roundtrip_FG(y, c, o.smax, o.lo, o.hi);
            if (json)
                doc.push_back(ordered_json{{"y", name}, {"equivalent", rt.equivalent}, {"witness", rt.witness}});
            else
                r.out += name + "\t" + (rt.equivalent ? "yes" : "no") + "\t" + one_line(rt.witness) + "\n";
        }
    } else if (o.check == "triangle") {
        if (!json) r.out += "x\tretract\tsecond\twitness\n";
        for (const auto& in : inputs) {
            auto t = triangle_identities(input_module(lib, c, in), ModuleOverAlgebra::regular(c.a), c);
            if (json)
                doc.push_back(ordered_json{{"x", in}, {"retract", t.retract}, {"second", t.second}, {"witness", t.witness}});
            else
                r.out += in + "\t" + (t.retract ? "yes" : "no") + "\t" + (t.second ? "yes" : "no") + "\t" +
                         one_line(t.witness) + "\n";
        }
    } else if (o.check == "torsion") {
        auto x = ModuleOverAlgebra::regular(c.a, Side::Right);
        auto m = functor_T(x, c);
        auto ts = torsion_side_TS(x, m, c, o.smax, o.lo, o.hi);
        bool agree = internal_ranks(ts.s, o.lo, o.hi) == internal_ranks(c.a.module(), o.lo, o.hi);
        if (json) {
            doc.push_back(ordered_json{{"T", ordered_json::parse(ts.t.to_json())},
                                       {"S", ordered_json::parse(ts.s.to_json())},
                                       {"S_ranks", ranks_string(internal_ranks(ts.s, o.lo, o.hi))},
                                       {"ranks_agree", agree}});
        } else {
            r.out += "# T = Tor^A(A, E)\n" + ts.t.to_tsv();
            r.out += "# S(T(A)) = Ext_R(E, T(A))\n" + ts.s.to_tsv();
            r.out += "# in-window ranks of S(T(A)) agree with A: " + std::string(agree ? "yes" : "no") + "\n";
        }
    } else {
        throw InputError("--check must be completion, roundtrip, triangle or torsion");
    }
    if (json) r.out += doc.dump(2) + "\n";
    return r;
}

Options task_options(const ordered_json& t, const Options& defaults) {
    Options o = defaults;
    o.command = t.at("command").get<std::string>();
    if (t.contains("algebra")) o.algebra = t.at("algebra").get<std::string>();
    if (t.contains("context")) o.context = t.at("context").get<std::string>();
    if (t.contains("smax")) o.smax = t.at("smax").get<int>();
    if (t.contains("nmax")) o.nmax = t.at("nmax").get<int>();
    if (t.contains("window")) std::tie(o.lo, o.hi) = parse_window(t.at("window").get<std::string>());
    if (t.contains("flavor")) o.flavor = t.at("flavor").get<std::string>();
    if (t.contains("check")) o.check = t.at("check").get<std::string>();
    if (t.contains("format")) o.format = t.at("format").get<std::string>();
    if (t.contains("seed")) o.seed = t.at("seed").get<std::uint64_t>();
    return o;
}

} // namespace

std::pair<int, int> parse_window(const std::string& text) {
    auto colon = text.find(':', text.empty() ? 0 : 1);
    if (colon == std::string::npos) throw InputError("window must be LO:HI, got '" + text + "'");
    try {
        std::size_t used_lo = 0, used_hi = 0;
        int lo = std::stoi(text.substr(0, colon), &used_lo);
        int hi = std::stoi(text.substr(colon + 1), &used_hi);
        if (used_lo != colon || used_hi != text.size() - colon - 1) throw std::invalid_argument(text);
        if (lo > hi) throw InputError("window " + text + " has LO > HI");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw InputError("window must be LO:HI, got '" + text + "'");
    }
}

Outcome run_on(const DefinitionFile& d, const Options& o) {
    try {
        if (o.format != "tsv" && o.format != "json") throw InputError("--format must be tsv or json");
        if (o.smax < 0 || o.nmax < 0) throw InputError("--smax and --nmax must be non-negative");
        if (o.lo > o.hi) throw InputError("window has LO > HI");
        if (o.command == "ext" || o.command == "hochschild" || o.command == "homology") return table_command(d, o);
        if (o.command == "azumaya") return azumaya_command(d, o);
        if (o.command == "mu-image") return mu_image_command(d, o);
        if (o.command == "morita") return morita_command(d, o);
        if (o.command == "batch") return run_batch(d, o);
        throw InputError("unknown command '" + o.command + "'");
    } catch (const BudgetExceeded& e) {
        return Outcome{kBudgetExceeded, "", std::string("budget exceeded: ") + e.what() + "\n"};
    } catch (const InputError& e) {
        return Outcome{kInputError, "", std::string("input error: ") + e.what() + "\n"};
    } catch (const nlohmann::json::exception& e) {
        return Outcome{kInputError, "", std::string("input error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return Outcome{kInputError, "", std::string("error: ") + e.what() + "\n"};
    }
}

Outcome run_batch(const DefinitionFile& d, const Options& defaults) {
    if (d.tasks.empty()) return Outcome{kInputError, "", "input error: the definition file has no tasks\n"};
    std::vector<std::future<Outcome>> jobs;
    for (const auto& t : d.tasks) {
        jobs.push_back(std::async(std::launch::async, [&d, &defaults, t] {
            Options o;
            try {
                o = task_options(t, defaults);
            } catch (const std::exception& e) {
                return Outcome{kInputError, "", std::string("input error: ") + e.what() + "\n"};
            }
            if (o.command == "batch") return Outcome{kInputError, "", "input error: tasks cannot nest batch\n"};
            return run_on(d, o);
        }));
    }
    Outcome all;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        Outcome r = jobs[i].get();
        std::string label = d.tasks[i].at("command").get<std::string>();
        for (const char* k : {"algebra", "context", "flavor", "check"})
            if (d.tasks[i].contains(k)) label += " " + d.tasks[i].at(k).get<std::string>();
        all.out += "# task " + std::to_string(i + 1) + ": " + label + "\n" + r.out;
        all.err += r.err;
        all.code = std::max(all.code, r.code);
    }
    return all;
}

Outcome run(const Options& o) {
    std::ifstream in(o.file);
    if (o.file.empty() || !in) return Outcome{kInputError, "", "input error: cannot read '" + o.file + "'\n"};
    std::stringstream ss;
    ss << in.rdbuf();
    DefinitionFile d;
    try {
        d = parse_definition(ss.str());
    } catch (const InputError& e) {
        return Outcome{kInputError, "", "input error: " + o.file + ": " + e.what() + "\n"};
    }
    return run_on(d, o);
}

} // namespace hhalg::cli
