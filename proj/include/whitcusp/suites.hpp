#pragma once

#include <cstdint>
#include <string>

#include "whitcusp/report.hpp"

namespace whitcusp {

// Batch-run configuration. theta = -1 resolves to the lowest regular exponent
// for the chosen q during validation (rank-2 suites only).
struct RunConfig {
    int q = 2;
    int r = 2;
    int n = 1;
    int precision = 12;
    long theta = -1;
    std::string suite = "all";
    std::int64_t budget = 10'000'000;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    bool timings = false;
};

// Lowest regular exponent for q when theta < 0; otherwise theta itself,
// checked for regularity (throws NotRegular).
long resolve_theta(int q, long theta);

// key=value lines on top of base; '#' starts a comment; unknown keys throw.
RunConfig load_config_file(const std::string& path, RunConfig base = RunConfig());

// Checks every invariant (q prime, r in {2,3}, representation suites need
// r = 2, budget at least the minimal enumeration, known suite/format) and
// returns the config with theta resolved. Throws ConfigError.
RunConfig validated(RunConfig cfg);

// Runs the selected suite deterministically for (config, seed); cases are
// sorted by id. The budget bounds each case's enumeration separately, and a
// blown budget is a failing case, not an abort.
SuiteReport run_suite(const RunConfig& cfg);

// Inspection dumps (TSV): the cuspidal character on every residue group
// element, and the Whittaker shell support profile.
std::string dump_char_table(int q, long theta);
std::string dump_support(int q, long theta);

}  // namespace whitcusp
