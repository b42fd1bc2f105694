#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "commands.hpp"
#include "hhalg/errors.hpp"

int main(int argc, char** argv) {
    using namespace hhalg::cli;

    CLI::App app{"Exact graded homological algebra: Ext, Hochschild, Azumaya and Morita checks"};
    app.require_subcommand(1);

    Options o;
    std::string window = "-16:16";
    std::string cache_dir;
    bool no_cache = false;
    std::uint64_t seed = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--file", o.file, "definition file (JSON)")->required();
        sub->add_option("--algebra", o.algebra, "algebra name (default: first in file)");
        sub->add_option("--smax", o.smax, "largest resolution degree")->capture_default_str();
        sub->add_option("--nmax", o.nmax, "largest Hochschild degree")->capture_default_str();
        sub->add_option("--window", window, "internal-degree window LO:HI")->capture_default_str();
        sub->add_option("--format", o.format, "tsv or json")->capture_default_str();
        sub->add_option("--cache-dir", cache_dir, "cache directory (overrides HHALG_CACHE_DIR)");
        sub->add_flag("--no-cache", no_cache, "disable the cache");
        sub->add_option("--seed", seed, "seed for property sampling");
        sub->add_flag("--quiet", o.quiet, "suppress notes on stderr");
    };

    for (const char* name : {"ext", "hochschild", "homology", "mu-image", "batch"}) common(app.add_subcommand(name));
    auto* az = app.add_subcommand("azumaya", "certify Azumaya conditions");
    common(az);
    az->add_option("--flavor", o.flavor, "classical, generalized or weak")->capture_default_str();
    az->add_option("--sample", o.sample, "check End(E) for this many seeded random free E over the file's base");
    auto* mo = app.add_subcommand("morita", "Morita completion, round trip, triangle and torsion checks");
    common(mo);
    mo->add_option("--context", o.context, "context name (default: first in file)");
    mo->add_option("--check", o.check, "completion, roundtrip, triangle or torsion")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    o.command = app.get_subcommands().front()->get_name();
    try {
        std::tie(o.lo, o.hi) = parse_window(window);
    } catch (const hhalg::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    if (app.get_subcommands().front()->count("--seed")) o.seed = seed;
    if (!no_cache) {
        if (!cache_dir.empty())
            o.cache_dir = cache_dir;
        else if (const char* env = std::getenv("HHALG_CACHE_DIR"); env && *env)
            o.cache_dir = env;
        else
            o.cache_dir = ".hhalg-cache";
    }

    Outcome r = run(o);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
