// summatoria: exact summatory functions of arithmetic functions by segmented
// sieve, asymptotic main-term models, and residual-based validation reports.
//
// Commands: compute, validate, plot, table, list-functions, list-models.
// Exit codes: 0 ok/consistent, 1 inconsistent, 2 config error, 3 compute
// error, 4 inconclusive.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "summatoria/config.hpp"
#include "summatoria/csvio.hpp"
#include "summatoria/models.hpp"
#include "summatoria/summatory.hpp"
#include "summatoria/svg.hpp"
#include "summatoria/validation.hpp"

using namespace summatoria;

namespace {

struct Options {
    cli::RunConfig run;
    std::string n_max_str;
    std::string prime_bound_str;
    std::string power_bound_str;
    std::string config_path;
    std::string in_path;
    std::string ref_str;
    bool abs_values = false;
};

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--function", opt.run.function, "function name (see list-functions)");
    cmd->add_option("--model", opt.run.model, "model spec (see list-models)");
    cmd->add_option("--grid", opt.run.grid_spec,
                    "grid: 'geometric[:r=<ratio>,start=<n>]' or comma list");
    cmd->add_option("--n-max", opt.n_max_str, "largest n (accepts 1e6 notation, cap 1e9)");
    cmd->add_option("--workers", opt.run.workers, "sieve worker threads");
    cmd->add_option("--checkpoint", opt.run.checkpoint_path, "checkpoint CSV for resumable runs");
    cmd->add_option("--out", opt.run.out_path, "output path (default stdout)");
    cmd->add_option("--format", opt.run.format, "output format: csv|text|svg");
    cmd->add_option("--prime-bound", opt.prime_bound_str,
                    "prime truncation for product models (accepts 1e6 notation)");
    cmd->add_option("--power-bound", opt.power_bound_str, "prime-power truncation depth");
    cmd->add_option("--config", opt.config_path, "config file with key = value lines");
}

// Flags override file values: a config entry applies only when the matching
// option was not given on the command line.
void apply_config_file(CLI::App* cmd, Options& opt) {
    if (opt.config_path.empty()) return;
    auto kv = cli::parse_config_file(io::read_file(opt.config_path));
    auto unset = [&](const char* flag) {
        auto* o = cmd->get_option_no_throw(flag);
        return o != nullptr && o->count() == 0;
    };
    for (const auto& [key, value] : kv) {
        if (key == "function" && unset("--function")) opt.run.function = value;
        else if (key == "model" && unset("--model")) opt.run.model = value;
        else if (key == "grid" && unset("--grid")) opt.run.grid_spec = value;
        else if (key == "n_max" && unset("--n-max")) opt.n_max_str = value;
        else if (key == "workers" && unset("--workers"))
            opt.run.workers = static_cast<unsigned>(cli::parse_magnitude(value, "workers"));
        else if (key == "checkpoint" && unset("--checkpoint")) opt.run.checkpoint_path = value;
        else if (key == "out" && unset("--out")) opt.run.out_path = value;
        else if (key == "format" && unset("--format")) opt.run.format = value;
        else if (key == "prime_bound" && unset("--prime-bound")) opt.prime_bound_str = value;
        else if (key == "power_bound" && unset("--power-bound")) opt.power_bound_str = value;
        else if (key == "function" || key == "model" || key == "grid" || key == "n_max" ||
                 key == "workers" || key == "checkpoint" || key == "out" || key == "format" ||
                 key == "prime_bound" || key == "power_bound")
            continue;  // present on the command line; flag wins
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }
}

void finalize(Options& opt) {
    if (!opt.n_max_str.empty()) {
        opt.run.n_max = cli::parse_magnitude(opt.n_max_str, "n_max");
        if (opt.run.n_max > cli::kNMaxCap) throw ConfigError("n_max: exceeds cap of 1e9");
    }
    if (!opt.prime_bound_str.empty())
        opt.run.prime_bound = cli::parse_magnitude(opt.prime_bound_str, "prime_bound");
    if (!opt.power_bound_str.empty())
        opt.run.power_bound =
            static_cast<u32>(cli::parse_magnitude(opt.power_bound_str, "power_bound"));
    if (opt.run.workers < 1) throw ConfigError("workers: must be >= 1");
    if (const char* cache = std::getenv("SUMMATORIA_CACHE"))
        opt.run.prime_cache_dir = cache;
}

stream::StreamConfig stream_config(const cli::RunConfig& run) {
    stream::StreamConfig cfg;
    cfg.workers = run.workers;
    cfg.n_cap = cli::kNMaxCap;
    if (!run.prime_cache_dir.empty())
        cfg.prime_cache_path = run.prime_cache_dir + "/primes.bin";
    return cfg;
}

void emit(const cli::RunConfig& run, const std::string& content) {
    if (run.out_path.empty())
        std::fwrite(content.data(), 1, content.size(), stdout);
    else
        io::write_file(run.out_path, content);
}

// ---------------------------------------------------------------------------
// Function vocabulary: registry names, plus series with their own streaming
// passes (mertens, theta, pi, prime-argument sums).
// ---------------------------------------------------------------------------

summatory::SummatorySeries compute_named_series(
    const std::string& name, std::vector<u64> grid, const stream::StreamConfig& cfg,
    const summatory::ResumeState* resume, summatory::ResumeState* state_out) {
    summatory::SummatorySeries s;
    if (name == "mertens") {
        auto spec = *arith::find_builtin("mobius");
        s = summatory::compute_summatory(spec, std::move(grid), cfg, resume, state_out);
    } else if (name == "theta" || name == "chebyshev_theta") {
        auto spec = *arith::find_builtin("log");
        s = summatory::prime_sum(spec, std::move(grid), cfg, resume, state_out);
    } else if (name == "pi" || name == "prime_count") {
        auto spec = *arith::find_builtin("prime_indicator");
        s = summatory::compute_summatory(spec, std::move(grid), cfg, resume, state_out);
    } else if (name.starts_with("prime:")) {
        auto spec = arith::find_builtin(name.substr(6));
        if (!spec || spec->kind != arith::FunctionKind::pointwise)
            throw ConfigError("function: '" + name + "' needs a pointwise registry name");
        s = summatory::prime_sum(*spec, std::move(grid), cfg, resume, state_out);
    } else {
        auto spec = arith::find_builtin(name);
        if (!spec) throw ConfigError("function: unknown name '" + name + "'");
        s = summatory::compute_summatory(*spec, std::move(grid), cfg, resume, state_out);
    }
    s.function_name = name;
    return s;
}

summatory::SummatorySeries compute_series_with_checkpoint(const Options& opt,
                                                          const std::vector<u64>& grid) {
    auto cfg = stream_config(opt.run);
    if (opt.run.function.empty()) throw ConfigError("function: required");

    std::optional<summatory::ResumeState> resume;
    if (!opt.run.checkpoint_path.empty() && io::file_exists(opt.run.checkpoint_path)) {
        auto cp = io::checkpoint_from_csv(io::read_file(opt.run.checkpoint_path));
        bool grid_prefix = cp.series.grid.size() <= grid.size();
        for (std::size_t i = 0; grid_prefix && i < cp.series.grid.size(); ++i)
            grid_prefix = cp.series.grid[i] == grid[i];
        if (cp.state && cp.series.function_name == opt.run.function && grid_prefix &&
            cp.state->block_size == cfg.block_size) {
            resume = std::move(cp.state);
        } else {
            std::fprintf(stderr, "note: checkpoint %s does not match this run; recomputing\n",
                         opt.run.checkpoint_path.c_str());
        }
    }

    summatory::ResumeState state_out;
    auto series = compute_named_series(opt.run.function, grid, cfg,
                                       resume ? &*resume : nullptr, &state_out);
    if (!opt.run.checkpoint_path.empty())
        io::write_file(opt.run.checkpoint_path, io::checkpoint_to_csv(series, state_out));
    return series;
}

// ---------------------------------------------------------------------------
// Model vocabulary
// ---------------------------------------------------------------------------

models::AsymptoticModel make_model(const Options& opt) {
    const std::string& spec = opt.run.model;
    if (spec.empty()) throw ConfigError("model: required");
    auto cfg = stream_config(opt.run);
    if (spec.starts_with("additive_mean:")) return models::additive_mean_model(spec.substr(14));
    if (spec.starts_with("density:"))
        return models::density_limit_model(io::parse_double(spec.substr(8)));
    if (spec.starts_with("power_sum:"))
        return models::power_sum_model(io::parse_double(spec.substr(10)));
    if (spec == "theta") {
        models::AsymptoticModel m;
        m.name = "theta";
        m.formula = "n + O(n/ln n)";
        m.main = [](double n) { return n; };
        m.envelope = [](double n) { return n / std::log(n); };
        m.claimed_exponent = 1.0;
        m.n_floor = 3.0;
        return m;
    }
    if (spec == "prime_count") {
        models::AsymptoticModel m;
        m.name = "prime_count";
        m.formula = "n/ln n + O(n/ln^2 n)";
        m.main = [](double n) { return n / std::log(n); };
        m.envelope = [](double n) { return n / (std::log(n) * std::log(n)); };
        m.claimed_exponent = 1.0;
        m.n_floor = 3.0;
        return m;
    }
    if (spec == "wirsing") {
        auto fn = arith::find_builtin(opt.run.function);
        if (!fn) throw ConfigError("model wirsing: needs --function from the registry");
        auto w = models::wirsing_mean_value(*fn, opt.run.prime_bound, opt.run.power_bound, cfg);
        auto m = models::density_limit_model(w.value);
        m.name = "wirsing(d*=" + io::format_double(w.value) +
                 (w.diverged ? ", diverged" : "") + ")";
        return m;
    }
    if (spec.starts_with("kubilius:")) {
        double kappa = io::parse_double(spec.substr(9));
        auto fn = arith::find_builtin(opt.run.function);
        if (!fn) throw ConfigError("model kubilius: needs --function from the registry");
        auto fspec = *fn;
        u64 pb = opt.run.prime_bound;
        u32 wb = opt.run.power_bound;
        models::AsymptoticModel m;
        m.name = "kubilius:" + io::format_double(kappa);
        m.formula = "n (ln n)^(k-1)/Gamma(k) * prod_p + O(n sqrt(ln ln n / ln n))";
        m.main = [fspec, kappa, pb, wb, cfg](double n) {
            return models::kubilius_main_term(fspec, kappa, static_cast<u64>(n), pb, wb, cfg);
        };
        m.envelope = [](double n) {
            return n * std::sqrt(std::log(std::log(n)) / std::log(n));
        };
        m.claimed_exponent = 1.0;
        m.n_floor = 20.0;
        return m;
    }
    throw ConfigError("model: unknown spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_compute(Options& opt) {
    auto grid = cli::parse_grid(opt.run.grid_spec, opt.run.n_max);
    auto series = compute_series_with_checkpoint(opt, grid);
    emit(opt.run, io::series_to_csv(series));
    return 0;
}

int cmd_validate(Options& opt) {
    auto model = make_model(opt);
    auto grid = cli::parse_grid(opt.run.grid_spec, opt.run.n_max);
    auto series = compute_series_with_checkpoint(opt, grid);
    auto report = validation::validate(series, model);
    if (!opt.run.out_path.empty())
        io::write_file(opt.run.out_path, io::report_to_csv(report));
    else if (opt.run.format == "csv")
        std::fputs(io::report_to_csv(report).c_str(), stdout);
    std::fputs(io::report_to_text(report).c_str(), stdout);
    switch (report.verdict) {
        case validation::Verdict::consistent: return 0;
        case validation::Verdict::inconsistent: return 1;
        case validation::Verdict::inconclusive: return 4;
    }
    return 3;
}

summatory::SummatorySeries load_or_compute_series(Options& opt) {
    if (!opt.in_path.empty()) {
        if (!io::file_exists(opt.in_path)) throw ConfigError("in: no such file " + opt.in_path);
        return io::series_from_csv(io::read_file(opt.in_path));
    }
    auto grid = cli::parse_grid(opt.run.grid_spec, opt.run.n_max);
    return compute_series_with_checkpoint(opt, grid);
}

int cmd_plot(Options& opt) {
    auto series = load_or_compute_series(opt);
    if (series.grid.empty()) throw ConfigError("plot: series has no checkpoints");
    svg::PlotSpec plot;
    plot.xs.assign(series.grid.begin(), series.grid.end());
    if (!opt.run.model.empty()) {
        auto model = make_model(opt);
        auto report = validation::validate(series, model);
        plot.ys = report.ratios;
        plot.title = series.function_name + " vs " + model.name + ": |R|/envelope";
        plot.y_label = "|R(n)|/envelope(n)";
    } else {
        plot.ys.resize(series.grid.size());
        for (std::size_t i = 0; i < series.grid.size(); ++i) {
            double m = summatory::mean_value(series, i);
            plot.ys[i] = opt.abs_values ? std::abs(m) : m;
        }
        plot.title = series.function_name + ": S(n)/n";
        plot.y_label = opt.abs_values ? "|S(n)/n|" : "S(n)/n";
    }
    if (!opt.ref_str.empty()) plot.reference = io::parse_double(opt.ref_str);
    emit(opt.run, svg::render(plot));
    return 0;
}

int cmd_table(Options& opt) {
    auto series = load_or_compute_series(opt);
    std::vector<std::array<std::string, 3>> rows;
    rows.push_back({"n", "S", "mean"});
    for (std::size_t i = 0; i < series.grid.size(); ++i)
        rows.push_back({std::to_string(series.grid[i]),
                        series.integer_valued() ? std::to_string((*series.exact_values)[i])
                                                : io::format_double(series.values[i]),
                        io::format_double(summatory::mean_value(series, i))});
    std::size_t w0 = 0, w1 = 0, w2 = 0;
    for (const auto& r : rows) {
        w0 = std::max(w0, r[0].size());
        w1 = std::max(w1, r[1].size());
        w2 = std::max(w2, r[2].size());
    }
    std::string out = "# " + series.function_name + "\n";
    for (const auto& r : rows) {
        out += std::string(w0 - r[0].size(), ' ') + r[0] + "  ";
        out += std::string(w1 - r[1].size(), ' ') + r[1] + "  ";
        out += std::string(w2 - r[2].size(), ' ') + r[2] + "\n";
    }
    emit(opt.run, out);
    return 0;
}

int cmd_list_functions() {
    std::puts("registry functions (--function):");
    for (const auto& name : arith::builtin_names()) {
        if (name == "power_<k>") {
            std::puts("  power_<k>            pointwise m^k, k > 0 (e.g. power_2)");
            continue;
        }
        auto spec = arith::find_builtin(name);
        std::printf("  %-20s %s\n", name.c_str(), std::string(kind_name(spec->kind)).c_str());
    }
    std::puts("series with dedicated passes:");
    std::puts("  mertens              summatory Mobius function M(n)");
    std::puts("  theta                Chebyshev theta: sum of ln p over p <= n");
    std::puts("  pi                   prime counting function");
    std::puts("  prime:<name>         sum of f(p) over p <= n for a pointwise f");
    return 0;
}

int cmd_list_models() {
    std::puts("models (--model):");
    std::puts("  additive_mean:log_phi    n ln n + O(n)");
    std::puts("  additive_mean:omega      n ln ln n + O(n)");
    std::puts("  additive_mean:big_omega  n ln ln n + O(n)");
    std::puts("  density:<d*>             d* n + o(n)");
    std::puts("  power_sum:<k>            n^(k+1)/(k+1) + O(n^k)");
    std::puts("  theta                    n + O(n/ln n)");
    std::puts("  prime_count              n/ln n + O(n/ln^2 n)");
    std::puts("  wirsing                  density model from the truncated mean-value product");
    std::puts("                           (--prime-bound, --power-bound)");
    std::puts("  kubilius:<kappa>         n (ln n)^(k-1)/Gamma(k) * product main term");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"summatoria: exact summatory functions and asymptotic validation"};
    app.require_subcommand(1);

    Options opt;
    auto* compute = app.add_subcommand("compute", "compute a summatory series as CSV");
    add_common_options(compute, opt);
    auto* validate = app.add_subcommand("validate", "confront a series with a model");
    add_common_options(validate, opt);
    auto* plot = app.add_subcommand("plot", "render a convergence plot as SVG");
    add_common_options(plot, opt);
    plot->add_option("--in", opt.in_path, "existing series CSV to plot");
    plot->add_option("--ref", opt.ref_str, "horizontal reference line");
    plot->add_flag("--abs", opt.abs_values, "plot |S(n)/n| instead of S(n)/n");
    auto* table = app.add_subcommand("table", "print a series as an aligned text table");
    add_common_options(table, opt);
    table->add_option("--in", opt.in_path, "existing series CSV to print");
    auto* list_fn = app.add_subcommand("list-functions", "print the function registry");
    auto* list_md = app.add_subcommand("list-models", "print the model vocabulary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(active, opt);
        finalize(opt);
        if (active == compute) return cmd_compute(opt);
        if (active == validate) return cmd_validate(opt);
        if (active == plot) return cmd_plot(opt);
        if (active == table) return cmd_table(opt);
        if (active == list_fn) return cmd_list_functions();
        if (active == list_md) return cmd_list_models();
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "compute error: %s\n", e.what());
        return 3;
    }
}
