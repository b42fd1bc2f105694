#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cache.hpp"
#include "commands.hpp"
#include "definition.hpp"
#include "fixtures.hpp"
#include "hhalg/errors.hpp"

using namespace hhalg;
using namespace hhalg::cli;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = HHALG_CORPUS_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> corpus_files() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(kCorpus))
        if (e.path().extension() == ".def") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string error_of(const std::string& text) {
    try {
        parse_definition(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

fs::path fresh_dir(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("hhalg-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("B2 definition realizes a rank 2 algebra") {
    auto d = parse_definition(R"({
  "base": {"ground": "F2", "laurent": {"name": "v", "degree": 2}},
  "algebras": [{"name": "B2", "generators": [{"name": "t0", "degree": 1}], "relations": ["t0^2 - v"]}]
})");
    Library lib(d);
    const auto& b2 = lib.algebra("B2");
    CHECK(b2.rank() == 2);
    CHECK(algebra_isomorphic(b2, fixtures::b2()).isomorphic);
    // Over F2 the sign reduces away.
    CHECK(format_expression(d.algebras[0].relations[0], d.algebras[0].generators, d.base) == "t0^2 + v");
}

TEST_CASE("relation errors") {
    auto err = error_of(R"({
  "base": {"ground": "F2"},
  "algebras": [{"name": "T",
    "generators": [{"name": "t0", "degree": 1}, {"name": "t1", "degree": 2}],
    "relations": ["t0^2 - t0*t1"]}]
})");
    CHECK(err.find("line 5, column 19") != std::string::npos);
    CHECK(err.find("degree 2") != std::string::npos);
    CHECK(err.find("3") != std::string::npos);

    err = error_of(R"({"algebras": [{"name": "T", "generators": [{"name": "a", "degree": 1}], "relations": ["a^2 + b"]}]})");
    CHECK(err.find("unknown symbol 'b'") != std::string::npos);
    // The literal opens at column 87; 'b' is the seventh character inside it.
    CHECK(err.find("line 1, column 94") != std::string::npos);

    err = error_of("{\n  \"algebras\": [\n    {\"name\": \"T\" \"generators\": []}\n  ]\n}");
    // Reported at the end of the offending token.
    CHECK(err.find("line 3, column 29") != std::string::npos);
    CHECK(err.find("syntax error") != std::string::npos);

    CHECK(error_of(R"({"algebras": [{"name": "F", "generators": [{"name": "a", "degree": 1}]}]})").find("truncation") !=
          std::string::npos);
    CHECK(error_of(R"({"algebras": [{"name": "T", "generators": [{"name": "a", "degree": 1}], "relations": ["(a + a)^2"]}]})")
              .find("single generator") != std::string::npos);
    CHECK(error_of(R"({"algebras": [{"name": "T", "generators": [{"name": "a", "degree": 1}], "relations": ["a^-1"]}]})")
              .find("negative power") != std::string::npos);
}

TEST_CASE("name and reference validation") {
    CHECK(error_of(R"({"algebras": [{"name": "A", "kind": "matrix", "size": 2}, {"name": "A", "kind": "matrix", "size": 1}]})")
              .find("duplicate name 'A'") != std::string::npos);
    CHECK(error_of(R"({"algebras": [], "modules": [{"name": "M", "algebra": "X", "kind": "regular"}]})")
              .find("unknown algebra 'X'") != std::string::npos);
    CHECK(error_of(R"({"algebras": [{"name": "A", "kind": "matrix", "size": 2}], "tasks": [{"command": "ext", "algebra": "B"}]})")
              .find("unknown algebra 'B'") != std::string::npos);
    CHECK(error_of(R"({"algebras": [{"name": "A", "kind": "matrix", "sise": 2}]})").find("unknown key 'sise'") !=
          std::string::npos);
    CHECK(error_of(R"({"algebras": [{"name": "A", "generators": [{"name": "a", "degree": 1.5}], "truncation": 2}]})")
              .find("wrong type") != std::string::npos);
    CHECK(error_of(R"({"base": {"ground": "F4"}})").find("line 1") != std::string::npos);
}

TEST_CASE("free algebra truncated at T") {
    auto d = parse_definition(
        R"({"algebras": [{"name": "F", "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}], "truncation": 3}]})");
    Library lib(d);
    // Words of length <= 3 in two letters: 1 + 2 + 4 + 8.
    CHECK(lib.algebra("F").rank() == 15);
}

TEST_CASE("parser round trip on the corpus") {
    auto files = corpus_files();
    CHECK(files.size() == 8);
    for (const auto& f : files) {
        CAPTURE(f.string());
        auto d = parse_definition(slurp(f));
        auto emitted = emit_definition(d);
        auto again = parse_definition(emitted);
        CHECK(again == d);
        CHECK(emit_definition(again) == emitted);
    }
}

TEST_CASE("expression round trip on random polynomials") {
    std::mt19937_64 rng(7);
    std::vector<Generator> gens{{"a", 1}, {"b", 2}, {"c3", 0}};
    for (const auto& base : {BaseRing(fixtures::ZZ), fixtures::laurent(fixtures::F5), BaseRing(fixtures::F3)}) {
        for (int k = 0; k < 100; ++k) {
            std::string text;
            int terms = 1 + static_cast<int>(rng() % 4);
            for (int t = 0; t < terms; ++t) {
                long c = static_cast<long>(rng() % 9) - 4;
                text += (t ? (c < 0 ? " - " : " + ") : (c < 0 ? "-" : "")) + std::to_string(std::labs(c));
                for (int l = static_cast<int>(rng() % 4); l > 0; --l) text += "*" + gens[rng() % 3].name;
                if (base.has_laurent() && rng() % 2) text += "*v^" + std::to_string(static_cast<int>(rng() % 5) - 2);
            }
            CAPTURE(text);
            auto p = parse_expression(text, gens, base);
            auto q = parse_expression(format_expression(p, gens, base), gens, base);
            CHECK(p == q);
        }
    }
    // Parentheses distribute; products of generators concatenate words.
    auto p = parse_expression("(a + b)*(a - b)", gens, BaseRing(fixtures::ZZ));
    CHECK(format_expression(p, gens, BaseRing(fixtures::ZZ)) == "a^2 - a*b + b*a - b^2");
    CHECK(parse_expression("2*a - a - a", gens, BaseRing(fixtures::ZZ)).empty());
}

TEST_CASE("explicit modules extend generator actions to the basis") {
    auto d = parse_definition(slurp(fs::path(kCorpus) / "etale.def"));
    Library lib(d);
    auto e = lib.module("E");
    CHECK(e.rank() == 1);
    CHECK(lib.module("N").side() == Side::Right);
    auto c = lib.context("first_factor");
    CHECK(c.a.rank() == 1);

    auto bad = parse_definition(R"({
  "base": {"ground": "F3"},
  "algebras": [{"name": "L", "generators": [{"name": "x", "degree": 1}], "relations": ["x^2"]}],
  "modules": [{"name": "M", "algebra": "L",
               "generators": [{"name": "p", "degree": 0}, {"name": "q", "degree": 1}, {"name": "r", "degree": 2}],
               "actions": {"x": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]}}]
})");
    Library bl(bad);
    // x^2 sends p to r, but x^2 = 0 in L.
    CHECK_THROWS_AS(bl.module("M"), InputError);
    auto good = bad;
    good.modules[0].actions[0].second = {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}};
    CHECK(Library(good).module("M").rank() == 3);
}

TEST_CASE("exit codes and outputs") {
    Options o;
    o.file = (fs::path(kCorpus) / "exterior1.def").string();
    o.command = "ext";
    o.smax = 6;
    auto r = run(o);
    CHECK(r.code == kComputed);
    CHECK(r.out == "s\tt\tfree_rank\ttorsion\n0\t0\t1\t\n1\t1\t1\t\n2\t2\t1\t\n3\t3\t1\t\n4\t4\t1\t\n5\t5\t1\t\n6\t6\t1\t\n");

    o.file = (fs::path(kCorpus) / "ku2.def").string();
    o.command = "azumaya";
    o.flavor = "weak";
    o.algebra = "Lambda";
    r = run(o);
    CHECK(r.code == kComputed);
    CHECK(r.out.find("overall\tLambda\tfail\tweak") != std::string::npos);

    o.flavor = "strong";
    CHECK(run(o).code == kInputError);
    o.file = "/nonexistent.def";
    CHECK(run(o).code == kInputError);

    o.file = (fs::path(kCorpus) / "azumaya_dg.def").string();
    o.command = "homology";
    o.algebra = "A3v";
    o.lo = -2;
    o.hi = 2;
    r = run(o);
    CHECK(r.code == kComputed);
    CHECK(r.out == "s\tt\tfree_rank\ttorsion\n0\t-2\t0\t3\n0\t0\t0\t3\n0\t2\t0\t3\n");

    o.command = "mu-image";
    r = run(o);
    CHECK(r.out.find("unit\tyes") != std::string::npos);
    o.command = "ext"; // Z ground
    CHECK(run(o).code == kInputError);

    auto big = parse_definition(
        R"({"base": {"ground": "F3"}, "algebras": [{"name": "F", "generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}], "truncation": 3}]})");
    Options b;
    b.command = "ext";
    CHECK(run_on(big, b).code == kBudgetExceeded);

    CHECK_THROWS_AS(parse_window("3"), InputError);
    CHECK_THROWS_AS(parse_window("4:-4"), InputError);
    CHECK(parse_window("-6:6") == std::pair<int, int>{-6, 6});
}

TEST_CASE("sampled End(E) under the weak check") {
    auto d = parse_definition(R"({"base": {"ground": "F5"}, "algebras": []})");
    Options o;
    o.command = "azumaya";
    o.flavor = "weak";
    o.sample = 5;
    o.seed = 11;
    auto r = run_on(d, o);
    CHECK(r.code == kComputed);
    CHECK(r.out.find("fail") == std::string::npos);
    CHECK(run_on(d, o).out == r.out);
}

TEST_CASE("determinism and cache correctness on every corpus task") {
    auto dir = fresh_dir("cache");
    for (const auto& f : corpus_files()) {
        CAPTURE(f.string());
        auto d = parse_definition(slurp(f));
        Options o;
        o.command = "batch";
        auto cold = run_on(d, o);
        CHECK(cold.code == kComputed);
        CHECK(run_on(d, o).out == cold.out);

        o.cache_dir = dir.string();
        auto filling = run_on(d, o);
        auto warm = run_on(d, o);
        CHECK(filling.out == cold.out);
        CHECK(warm.out == cold.out);
        CHECK(warm.err == cold.err);
    }
    // Only tables are cached, and nothing is left half-written.
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".json");
    fs::remove_all(dir);
}

TEST_CASE("cache keys and entries") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(cache_key("x") != cache_key("y"));
    CHECK(cache_key("x").size() == 16);

    auto dir = fresh_dir("entries");
    Cache c(dir.string());
    BigradedTable t(fixtures::F3);
    t.set(1, 2, SubquotientPresentation{1, {}});
    t.notes.push_back("n");
    CHECK_FALSE(c.load("k").has_value());
    c.store("k", t);
    auto back = c.load("k");
    REQUIRE(back.has_value());
    CHECK(back->to_json() == t.to_json());

    // A corrupt entry is a miss.
    std::ofstream(c.path("bad")) << "{not json";
    CHECK_FALSE(c.load("bad").has_value());
    CHECK_FALSE(Cache("").enabled());
    fs::remove_all(dir);
}
