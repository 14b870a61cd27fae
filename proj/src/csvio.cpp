#include "summatoria/csvio.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace summatoria::io {

std::string format_double(double v) {
    char buf[48];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view s) {
    // strtod accepts hex floats, which from_chars(general) does not
    std::string z(s);
    char* end = nullptr;
    double v = std::strtod(z.c_str(), &end);
    if (end != z.c_str() + z.size())
        throw ConfigError("malformed number: " + z);
    return v;
}

static std::string format_hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

namespace {

struct ParsedCsv {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

ParsedCsv parse_csv(std::string_view text) {
    ParsedCsv out;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            auto eq = line.find('=');
            if (eq != std::string_view::npos) {
                std::string key(trim(line.substr(0, eq)));
                std::string value(trim(line.substr(eq + 1)));
                out.meta[key] = value;
            }
            continue;
        }
        if (!header_seen) {
            out.header = split_csv_line(line);
            header_seen = true;
        } else {
            out.rows.push_back(split_csv_line(line));
        }
    }
    return out;
}

bool looks_integral(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

u64 parse_u64(std::string_view s, const char* what) {
    u64 v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ConfigError(std::string("malformed ") + what + ": " + std::string(s));
    return v;
}

i64 parse_i64(std::string_view s, const char* what) {
    i64 v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw ConfigError(std::string("malformed ") + what + ": " + std::string(s));
    return v;
}

void append_series_body(std::string& out, const summatory::SummatorySeries& s) {
    out += "# function = " + s.function_name + "\n";
    out += "# n_max = " + std::to_string(s.n_max) + "\n";
    out += std::string("# integer = ") + (s.integer_valued() ? "1" : "0") + "\n";
    out += "n,S,mean\n";
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        out += std::to_string(s.grid[i]);
        out += ',';
        if (s.integer_valued())
            out += std::to_string((*s.exact_values)[i]);
        else
            out += format_double(s.values[i]);
        out += ',';
        out += format_double(s.values[i] / double(s.grid[i]));
        out += '\n';
    }
}

}  // namespace

std::string series_to_csv(const summatory::SummatorySeries& series) {
    std::string out;
    append_series_body(out, series);
    return out;
}

summatory::SummatorySeries series_from_csv(std::string_view text) {
    auto parsed = parse_csv(text);
    if (parsed.header != std::vector<std::string>{"n", "S", "mean"})
        throw ConfigError("series CSV: expected header n,S,mean");
    summatory::SummatorySeries s;
    if (auto it = parsed.meta.find("function"); it != parsed.meta.end())
        s.function_name = it->second;
    // explicit metadata wins; fall back to sniffing the S column
    bool integral = !parsed.rows.empty();
    for (const auto& row : parsed.rows) {
        if (row.size() != 3) throw ConfigError("series CSV: expected 3 columns");
        if (!looks_integral(row[1])) integral = false;
    }
    if (auto it = parsed.meta.find("integer"); it != parsed.meta.end())
        integral = it->second == "1" && integral;
    if (integral) s.exact_values.emplace();
    for (const auto& row : parsed.rows) {
        s.grid.push_back(parse_u64(row[0], "n"));
        if (integral) {
            i64 v = parse_i64(row[1], "S");
            s.exact_values->push_back(v);
            s.values.push_back(double(v));
        } else {
            s.values.push_back(parse_double(row[1]));
        }
    }
    if (auto it = parsed.meta.find("n_max"); it != parsed.meta.end())
        s.n_max = parse_u64(it->second, "n_max");
    else if (!s.grid.empty())
        s.n_max = s.grid.back();
    return s;
}

std::string checkpoint_to_csv(const summatory::SummatorySeries& series,
                              const summatory::ResumeState& state) {
    std::string out;
    out += "# state_restart = " + std::to_string(state.restart_lo) + "\n";
    out += "# state_block = " + std::to_string(state.block_size) + "\n";
    out += "# state_acc_sum = " + format_hex(state.acc_sum) + "\n";
    out += "# state_acc_comp = " + format_hex(state.acc_comp) + "\n";
    out += "# state_exact = " + std::to_string(state.exact_acc) + "\n";
    append_series_body(out, series);
    return out;
}

Checkpoint checkpoint_from_csv(std::string_view text) {
    Checkpoint cp;
    cp.series = series_from_csv(text);
    auto parsed = parse_csv(text);
    auto& meta = parsed.meta;
    if (meta.count("state_restart") && meta.count("state_block") &&
        meta.count("state_acc_sum") && meta.count("state_acc_comp") &&
        meta.count("state_exact")) {
        summatory::ResumeState st;
        st.restart_lo = parse_u64(meta["state_restart"], "state_restart");
        st.block_size = parse_u64(meta["state_block"], "state_block");
        st.acc_sum = parse_double(meta["state_acc_sum"]);
        st.acc_comp = parse_double(meta["state_acc_comp"]);
        st.exact_acc = parse_i64(meta["state_exact"], "state_exact");
        // prefix values for grid points below the restart point
        for (std::size_t i = 0; i < cp.series.grid.size(); ++i) {
            if (cp.series.grid[i] >= st.restart_lo) break;
            st.values.push_back(cp.series.values[i]);
            if (cp.series.integer_valued())
                st.exact_values.push_back((*cp.series.exact_values)[i]);
        }
        cp.state = std::move(st);
    }
    return cp;
}

std::string report_to_csv(const validation::ValidationReport& rep) {
    std::string out;
    out += "# function = " + rep.function_name + "\n";
    out += "# model = " + rep.model_name + "\n";
    out += "# verdict = " + std::string(validation::verdict_name(rep.verdict)) + "\n";
    if (rep.fit.status == validation::FitStatus::ok) {
        out += "# fitted_exponent = " + format_double(rep.fit.fit.alpha) + "\n";
        out += "# fit_r2 = " + format_double(rep.fit.fit.r_squared) + "\n";
        out += "# fit_points = " + std::to_string(rep.fit.fit.points_used) + "\n";
    } else if (rep.fit.status == validation::FitStatus::exact_match) {
        out += "# fitted_exponent = exact_match\n";
    }
    if (rep.stabilization) {
        out += "# stabilization_estimate = " + format_double(rep.stabilization->estimate) + "\n";
        out += "# stabilization_spread = " + format_double(rep.stabilization->spread) + "\n";
        out += std::string("# stabilization_stable = ") +
               (rep.stabilization->stable ? "true" : "false") + "\n";
    }
    out += "# upper_ratio_max = " + format_double(rep.upper_ratio_max) + "\n";
    out += "# zero_residuals = " + std::to_string(rep.zero_residuals) + "\n";
    out += "# ratio_cap = " + format_double(rep.policy.ratio_cap) + "\n";
    out += "# exponent_slack = " + format_double(rep.policy.exponent_slack) + "\n";
    out += "# stability_tol = " + format_double(rep.policy.stability_tol) + "\n";
    out += "# stability_k = " + std::to_string(rep.policy.stability_k) + "\n";
    out += "n,main,residual,envelope,ratio\n";
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        out += std::to_string(rep.grid[i]);
        out += ',';
        out += format_double(rep.main_values[i]);
        out += ',';
        out += format_double(rep.residuals[i]);
        out += ',';
        out += format_double(rep.envelopes[i]);
        out += ',';
        out += format_double(rep.ratios[i]);
        out += '\n';
    }
    return out;
}

std::string report_to_text(const validation::ValidationReport& rep) {
    std::ostringstream os;
    os << "validation: " << rep.function_name << " vs " << rep.model_name << "\n";
    if (!rep.grid.empty())
        os << "  grid: " << rep.grid.size() << " checkpoints, n = " << rep.grid.front()
           << " .. " << rep.grid.back() << "\n";
    os << "  |R|/envelope: min " << format_double(rep.ratio_min) << ", max "
       << format_double(rep.ratio_max) << ", last " << format_double(rep.ratio_last)
       << " (upper-half max " << format_double(rep.upper_ratio_max) << ")\n";
    switch (rep.fit.status) {
        case validation::FitStatus::ok:
            os << "  fitted exponent: " << format_double(rep.fit.fit.alpha) << " (r^2 "
               << format_double(rep.fit.fit.r_squared) << ", " << rep.fit.fit.points_used
               << " points)\n";
            break;
        case validation::FitStatus::exact_match:
            os << "  fitted exponent: none (residuals identically zero)\n";
            break;
        case validation::FitStatus::too_few_points:
            os << "  fitted exponent: unavailable (too few nonzero points)\n";
            break;
    }
    if (rep.stabilization)
        os << "  stabilization of R/envelope (last " << rep.policy.stability_k
           << "): estimate " << format_double(rep.stabilization->estimate) << ", spread "
           << format_double(rep.stabilization->spread)
           << (rep.stabilization->stable ? " -> stable" : " -> not stable") << "\n";
    if (rep.zero_residuals > 0)
        os << "  zero residuals: " << rep.zero_residuals << " checkpoint(s)\n";
    os << "  thresholds: ratio_cap " << format_double(rep.policy.ratio_cap)
       << ", exponent_slack " << format_double(rep.policy.exponent_slack)
       << ", stability_tol " << format_double(rep.policy.stability_tol) << ", k "
       << rep.policy.stability_k << "\n";
    os << "  verdict: " << validation::verdict_name(rep.verdict) << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputeError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ComputeError("short write: " + path);
}

bool file_exists(const std::string& path) {
    std::error_code ec;
    return std::filesystem::exists(path, ec);
}

}  // namespace summatoria::io
