#pragma once

#include <map>
#include <string>
#include <vector>

#include "summatoria/common.hpp"

namespace summatoria::cli {

inline constexpr u64 kNMaxCap = 1'000'000'000;

// One run of the CLI. Config-file keys mirror the field names; command-line
// flags override file values.
struct RunConfig {
    u64 n_max = 0;  // 0 = take it from an explicit grid
    std::string grid_spec = "geometric";
    std::string function;
    std::string model;
    unsigned workers = 1;
    std::string checkpoint_path;
    std::string out_path;  // empty = stdout
    std::string format = "csv";
    u64 prime_bound = 100'000;
    u32 power_bound = 40;
    std::string prime_cache_dir;  // from SUMMATORIA_CACHE
};

// "1e6", "1000000", "2.5e3" -> integer; rejects non-integral or negative.
u64 parse_magnitude(const std::string& s, const char* field);

// Grid specs: "geometric", "geometric:r=<ratio>,start=<n>", or an explicit
// comma list of ascending integers. Geometric grids require n_max and append
// it when the last point falls short; explicit lists must stay within n_max
// when one is given.
std::vector<u64> parse_grid(const std::string& spec, u64 n_max);

// Plain-text `key = value` lines, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& text);

}  // namespace summatoria::cli
