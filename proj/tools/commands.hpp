#pragma once

// Subcommand dispatch. Output is buffered so batch tasks can run concurrently
// and still print in task order.

#include <cstdint>
#include <optional>
#include <string>

#include "definition.hpp"

namespace hhalg::cli {

enum ExitCode : int { kComputed = 0, kInputError = 1, kBudgetExceeded = 2 };

struct Options {
    std::string command;
    std::string file;
    std::string algebra; // default: first algebra in the file
    std::string context; // default: first context in the file
    int smax = 8;
    int nmax = 4;
    int lo = -16, hi = 16;
    std::string format = "tsv";
    std::string cache_dir; // empty disables the cache
    std::optional<std::uint64_t> seed;
    std::size_t sample = 0; // azumaya: check End(E) for this many sampled E
    bool quiet = false;
    std::string flavor = "classical";
    std::string check = "completion";
};

struct Outcome {
    int code = kComputed;
    std::string out;
    std::string err;
};

// Parses "LO:HI"; throws InputError.
std::pair<int, int> parse_window(const std::string& text);

// Reads --file and runs one subcommand (or every task for "batch").
Outcome run(const Options& o);
// Runs one subcommand against an already parsed definition.
Outcome run_on(const DefinitionFile& d, const Options& o);
// Runs the file's task list concurrently; outputs are concatenated in task order.
Outcome run_batch(const DefinitionFile& d, const Options& defaults);

} // namespace hhalg::cli
