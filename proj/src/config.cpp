#include "summatoria/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "summatoria/summatory.hpp"

namespace summatoria::cli {

u64 parse_magnitude(const std::string& s, const char* field) {
    if (s.empty()) throw ConfigError(std::string(field) + ": empty value");
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw ConfigError(std::string(field) + ": malformed number '" + s + "'");
    if (!(v >= 0) || !std::isfinite(v))
        throw ConfigError(std::string(field) + ": non-negative value required");
    double r = std::round(v);
    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
        throw ConfigError(std::string(field) + ": integer value required, got '" + s + "'");
    if (r > 9.2e18) throw ConfigError(std::string(field) + ": value too large");
    return static_cast<u64>(r);
}

static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<u64> parse_grid(const std::string& spec, u64 n_max) {
    if (n_max > kNMaxCap) throw ConfigError("n_max: exceeds cap of 1e9");
    if (spec == "geometric" || spec.starts_with("geometric:")) {
        double ratio = summatory::kDefaultGridRatio;
        u64 start = summatory::kDefaultGridStart;
        if (spec.starts_with("geometric:")) {
            std::string params = spec.substr(10);
            std::stringstream ss(params);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("grid: expected key=value in '" + item + "'");
                std::string key(trim(item.substr(0, eq)));
                std::string value(trim(item.substr(eq + 1)));
                if (key == "r") {
                    char* end = nullptr;
                    ratio = std::strtod(value.c_str(), &end);
                    if (end != value.c_str() + value.size() || !(ratio > 1.0))
                        throw ConfigError("grid: ratio must be a number > 1, got '" + value + "'");
                } else if (key == "start") {
                    start = parse_magnitude(value, "grid start");
                    if (start < 1) throw ConfigError("grid: start >= 1 required");
                } else {
                    throw ConfigError("grid: unknown parameter '" + key + "'");
                }
            }
        }
        if (n_max == 0) throw ConfigError("n_max: required for a geometric grid");
        if (n_max < start)
            throw ConfigError("n_max: smaller than the grid start " + std::to_string(start));
        return summatory::geometric_grid(start, ratio, n_max);
    }
    // explicit comma list
    std::vector<u64> grid;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string token(trim(item));
        if (token.empty()) throw ConfigError("grid: empty entry in list");
        grid.push_back(parse_magnitude(token, "grid"));
    }
    if (grid.empty()) throw ConfigError("grid: empty list");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1) throw ConfigError("grid: entries must be >= 1");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw ConfigError("grid: entries must be strictly increasing");
    }
    if (n_max != 0 && grid.back() > n_max)
        throw ConfigError("grid: entry " + std::to_string(grid.back()) + " exceeds n_max");
    if (grid.back() > kNMaxCap) throw ConfigError("grid: exceeds cap of 1e9");
    return grid;
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key(trim(sv.substr(0, eq)));
        std::string value(trim(sv.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

}  // namespace summatoria::cli
