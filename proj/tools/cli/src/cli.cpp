#include "lagfpt_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <system_error>

#include "lagfpt/lagfpt.hpp"

namespace lagfpt::cli {

std::optional<GbmModel> find_preset(std::string_view name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p.model;
    return std::nullopt;
}

GridSpec parse_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw ConfigError("grid must look like t_min:t_max:points, got '" + std::string(text) + "'");
    auto number = [&](std::string_view part, auto& value) {
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size())
            throw ConfigError("grid field '" + std::string(part) + "' is not a number");
    };
    GridSpec g;
    number(text.substr(0, first), g.t_min);
    number(text.substr(first + 1, second - first - 1), g.t_max);
    number(text.substr(second + 1), g.points);
    if (!(g.t_max > 0.0) || !(g.t_max > g.t_min)) throw ConfigError("grid needs t_max > max(t_min, 0)");
    if (g.points < 1) throw ConfigError("grid needs at least one point");
    return g;
}

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    try {
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os) throw SampleIoError("cannot open '" + tmp.string() + "' for writing");
            body(os);
            os.flush();
            if (!os) throw SampleIoError("write failure on '" + tmp.string() + "'");
        }
        std::filesystem::rename(tmp, path);
    } catch (const std::filesystem::filesystem_error& e) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw SampleIoError(e.what());
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

namespace {

using json = nlohmann::ordered_json;

struct Invocation {
    std::string preset;
    double mu = 0.0, sigma = 0.0, S = 10.0, y0 = 1.0;
    int n = 0;
    double epsilon = 1e-6;
    int n_cap = kMaxMomentOrder;
    std::size_t paths = 10'000;
    double dt = 1e-3;
    double t_max = 0.0;
    std::uint64_t seed = 1;
    std::string source = "milstein";
    std::string method = "mle";
    int r_max = kMaxKStatisticOrder;
    std::string grid;
    std::string out;
    std::string sample;

    CLI::Option* mu_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* S_opt = nullptr;
    CLI::Option* y0_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* n_cap_opt = nullptr;
    CLI::Option* t_max_opt = nullptr;

    bool fixed_degree() const { return n_opt->count() > 0; }

    std::optional<GbmModel> model() const {
        std::optional<GbmModel> m;
        if (!preset.empty()) m = find_preset(preset);
        const bool has_mu = mu_opt->count() > 0, has_sigma = sigma_opt->count() > 0;
        if (!m && (has_mu || has_sigma)) {
            if (!(has_mu && has_sigma)) throw ConfigError("--mu and --sigma must be given together without a preset");
            m = GbmModel{mu, sigma, 1.0, 10.0};
        }
        if (!m) return std::nullopt;
        if (has_mu) m->mu = mu;
        if (has_sigma) m->sigma = sigma;
        if (S_opt->count() > 0) m->S = S;
        if (y0_opt->count() > 0) m->y0 = y0;
        m->validate();
        return m;
    }

    GbmModel require_model() const {
        auto m = model();
        if (!m) throw ConfigError("a model is required: give --preset or --mu and --sigma");
        return *m;
    }

    /// Threshold geometry for fitting, from the model when one is given.
    std::pair<double, double> geometry() const {
        if (!preset.empty() || mu_opt->count() > 0) {
            const auto m = model();
            return {m->S, m->y0};
        }
        if (!(y0 > 0.0) || !(S > y0)) throw InvalidModel("need 0 < y0 < S");
        return {S, y0};
    }

    json config(std::string_view command, const std::optional<GbmModel>& m) const {
        json j;
        j["command"] = command;
        j["preset"] = preset.empty() ? json(nullptr) : json(preset);
        if (m) {
            j["mu"] = m->mu;
            j["sigma"] = m->sigma;
            j["S"] = m->S;
            j["y0"] = m->y0;
        }
        return j;
    }
};

std::vector<double> resolve_grid(const std::string& spec, double mean, double variance, json& cfg) {
    GridSpec g = spec.empty() ? GridSpec{0.0, diagnostic_t_max(mean, variance), 1000} : parse_grid(spec);
    cfg["grid"] = format_number(g.t_min) + ":" + format_number(g.t_max) + ":" + std::to_string(g.points);
    return uniform_grid(g.t_min, g.t_max, g.points);
}

void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(out);
        return;
    }
    write_atomically(path, body);
}

std::string kv(std::string_view key, const std::string& value) { return std::string(key) + ": " + value; }

struct GridTable {
    std::vector<std::string> header;
    std::vector<double> t, g_true, g_hat;
    double sup_err = std::numeric_limits<double>::quiet_NaN();
};

GridTable tabulate(const LaguerreExpansion& e, const std::vector<double>& grid, const std::optional<IgParams>& truth) {
    GridTable table;
    table.t = grid;
    table.g_true.reserve(grid.size());
    table.g_hat.reserve(grid.size());
    double sup = 0.0;
    for (double t : grid) {
        const double gh = ghat_eval(e, t);
        const double gt = truth ? ig_pdf(*truth, t) : std::numeric_limits<double>::quiet_NaN();
        table.g_hat.push_back(gh);
        table.g_true.push_back(gt);
        if (truth) sup = std::max(sup, std::abs(gt - gh));
    }
    if (truth) table.sup_err = sup;
    return table;
}

void write_table(std::ostream& os, const GridTable& table) {
    for (const auto& h : table.header) os << "# " << h << '\n';
    os << "t,g_true,g_hat,abs_err\n";
    for (std::size_t i = 0; i < table.t.size(); ++i) {
        os << format_number(table.t[i]) << ',' << format_number(table.g_true[i]) << ',' << format_number(table.g_hat[i])
           << ',' << format_number(std::abs(table.g_true[i] - table.g_hat[i])) << '\n';
    }
    if (!os) throw SampleIoError("write failure");
}

void describe_expansion(std::vector<std::string>& header, const LaguerreExpansion& e, BetaRegime regime,
                        std::string_view stop_reason, const std::vector<double>& grid) {
    const auto neg = scan_negativity(e, grid);
    header.push_back(kv("n", std::to_string(e.degree())));
    header.push_back(kv("h_hat_n", format_number(e.h_hat())));
    header.push_back(kv("negative_points", std::to_string(neg.negative_points)));
    header.push_back(kv("stop_reason", std::string(stop_reason)));
    header.push_back(kv("regime", std::string(to_string(regime))));
    header.push_back(kv("alpha", format_number(e.reference().alpha)));
    header.push_back(kv("beta", format_number(e.reference().beta)));
}

int cmd_approx(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const GbmModel m = inv.require_model();
    const IgParams p = ig_from_gbm(m);
    const GammaReference ref = default_reference(p.b, p.variance());
    json cfg = inv.config("approx", m);

    std::optional<LaguerreExpansion> e;
    std::string reason = "fixed";
    bool cap_reached = false;
    if (inv.fixed_degree()) {
        if (inv.n < 0 || inv.n > kMaxMomentOrder) throw ConfigError("--n must lie in [0, 64]");
        cfg["n"] = inv.n;
        e = build_expansion(ref, ig_moments_recursive(p, std::max(inv.n, 1)), inv.n);
    } else {
        if (inv.n_cap < 1 || inv.n_cap > kMaxMomentOrder) throw ConfigError("--n-cap must lie in [1, 64]");
        cfg["adaptive"] = true;
        cfg["epsilon"] = inv.epsilon;
        cfg["n_cap"] = inv.n_cap;
        auto r = build_adaptive(ref, ig_moments_recursive(p, inv.n_cap), AdaptiveOptions{inv.epsilon, inv.n_cap});
        reason = to_string(r.reason);
        cap_reached = r.reason == StopReason::CapReached;
        e = std::move(r.expansion);
    }
    const auto grid = resolve_grid(inv.grid, p.b, p.variance(), cfg);

    GridTable table = tabulate(*e, grid, p);
    table.header.push_back("lagfpt approx");
    table.header.push_back(kv("config", cfg.dump()));
    describe_expansion(table.header, *e, check_beta_admissible(ref, p.b, p.variance()), reason, grid);
    table.header.push_back(kv("sup_abs_err", format_number(table.sup_err)));
    emit(inv.out, out, [&](std::ostream& os) { write_table(os, table); });

    if (cap_reached) {
        err << "lagfpt: degree cap " << inv.n_cap << " reached before the normalization criterion tripped\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream&) {
    const GbmModel m = inv.require_model();
    if (inv.paths < 1) throw ConfigError("--paths must be positive");
    json cfg = inv.config("simulate", m);
    cfg["source"] = inv.source;
    cfg["paths"] = inv.paths;
    cfg["seed"] = inv.seed;

    std::optional<FptSample> sample;
    if (inv.source == "milstein") {
        if (!(inv.dt > 0.0)) throw ConfigError("--dt must be positive");
        cfg["dt"] = inv.dt;
        SimulationOptions o;
        o.paths = inv.paths;
        o.dt = inv.dt;
        o.seed = inv.seed;
        if (inv.t_max_opt->count() > 0) {
            if (!(inv.t_max > 0.0)) throw ConfigError("--t-max must be positive");
            o.t_max = inv.t_max;
            cfg["t_max"] = inv.t_max;
        }
        sample = simulate_gbm_fpt(m, o);
    } else {
        sample = sample_ig_exact(ig_from_gbm(m), inv.paths, inv.seed);
    }
    const std::vector<std::string> header{
        "lagfpt simulate",
        kv("config", cfg.dump()),
        kv("size", std::to_string(sample->size())),
        kv("censored", std::to_string(sample->meta().censored)),
    };
    emit(inv.out, out, [&](std::ostream& os) { write_sample(os, *sample, header); });
    return kExitOk;
}

int cmd_fit(const Invocation& inv, std::ostream& out, std::ostream&) {
    const auto truth = inv.model();
    const auto [S, y0] = inv.geometry();
    const FptSample sample = read_sample_file(inv.sample);

    FitResult r;
    if (inv.method == "mm") {
        r = mm_fit(sample, S, y0);
    } else {
        MleOptions o;
        o.n = inv.fixed_degree() ? inv.n : 34;
        if (o.n < 0 || o.n > kMaxMomentOrder) throw ConfigError("--n must lie in [0, 64]");
        o.S = S;
        o.y0 = y0;
        r = mle_fit(sample, o, inv.seed);
    }

    json rep;
    rep["method"] = to_string(r.method);
    rep["sample"] = inv.sample;
    rep["sample_size"] = sample.size();
    rep["S"] = S;
    rep["y0"] = y0;
    rep["mu_hat"] = r.mu_hat;
    rep["sigma2_hat"] = r.sigma2_hat;
    if (r.method == FitMethod::Mle) {
        const auto& d = r.diagnostics;
        rep["n"] = *r.n_used;
        rep["seed"] = *r.seed;
        rep["loglik"] = *r.loglik;
        rep["start_loglik"] = d.start_loglik;
        rep["annealing_loglik"] = d.annealing_loglik;
        rep["annealing_proposals"] = d.annealing.proposals;
        rep["annealing_accepted"] = d.annealing.accepted;
        rep["polish_evaluations"] = d.polish_evaluations;
        rep["polish_converged"] = d.polish_converged;
        rep["non_convergence_flag"] = d.non_convergence_flag;
        rep["nonpositive_points"] = d.nonpositive_points;
        rep["h_hat_deviation"] = d.h_hat_deviation;
    }
    if (truth) {
        const double s2 = truth->sigma * truth->sigma;
        rep["preset"] = inv.preset.empty() ? json(nullptr) : json(inv.preset);
        rep["mu_true"] = truth->mu;
        rep["sigma2_true"] = s2;
        rep["mu_rel_err"] = std::abs(r.mu_hat - truth->mu) / truth->mu;
        rep["sigma2_rel_err"] = std::abs(r.sigma2_hat - s2) / s2;
    }
    emit(inv.out, out, [&](std::ostream& os) {
        os << rep.dump(2) << '\n';
        if (!os) throw SampleIoError("write failure");
    });
    return kExitOk;
}

int cmd_sample_approx(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const auto model = inv.model();
    const FptSample sample = read_sample_file(inv.sample);
    json cfg = inv.config("sample-approx", model);
    cfg["sample"] = inv.sample;
    cfg["r_max"] = inv.r_max;

    SampleApproxOptions o;
    o.r_max = inv.r_max;
    const bool fixed = inv.fixed_degree();
    if (fixed) {
        if (inv.n < 0 || inv.n > kMaxMomentOrder) throw ConfigError("--n must lie in [0, 64]");
        cfg["n"] = inv.n;
        o.adaptive = AdaptiveOptions{std::numeric_limits<double>::infinity(), std::max(inv.n, 1)};
    } else {
        o.adaptive = AdaptiveOptions{inv.epsilon, inv.n_cap_opt->count() > 0 ? inv.n_cap : inv.r_max};
        if (o.adaptive.n_cap < 1 || o.adaptive.n_cap > kMaxMomentOrder) throw ConfigError("--n-cap must lie in [1, 64]");
        cfg["adaptive"] = true;
        cfg["epsilon"] = inv.epsilon;
        cfg["n_cap"] = o.adaptive.n_cap;
    }
    SampleApproximation a = approximate_from_sample(sample, o);
    LaguerreExpansion e = fixed && inv.n == 0 ? LaguerreExpansion(a.reference) : a.adaptive.expansion;

    std::string reason = "fixed";
    bool cap_failure = false;
    if (!fixed) {
        reason = to_string(a.adaptive.reason);
        if (a.adaptive.reason == StopReason::CapReached) {
            // Stopping at the estimated order is the designed limit, not a failure.
            if (o.adaptive.n_cap <= o.r_max) reason = "kstat-order";
            else cap_failure = true;
        }
    }

    const double k1 = a.kstats[1], k2 = a.kstats[2];
    const auto grid = resolve_grid(inv.grid, k1, k2, cfg);
    std::optional<IgParams> truth;
    if (model) truth = ig_from_gbm(*model);

    GridTable table = tabulate(e, grid, truth);
    table.header.push_back("lagfpt sample-approx");
    table.header.push_back(kv("config", cfg.dump()));
    table.header.push_back(kv("sample_size", std::to_string(sample.size())));
    table.header.push_back(kv("kstat_order", std::to_string(a.kstats.max_order())));
    json ks = json::array();
    for (int r = 1; r <= a.kstats.max_order(); ++r) ks.push_back(a.kstats[r]);
    table.header.push_back(kv("kstats", ks.dump()));
    table.header.push_back(kv("cumulants_extrapolated", a.cumulants_extrapolated ? "true" : "false"));
    describe_expansion(table.header, e, check_beta_admissible(a.reference, k1, k2), reason, grid);
    if (truth) table.header.push_back(kv("sup_abs_err", format_number(table.sup_err)));
    emit(inv.out, out, [&](std::ostream& os) { write_table(os, table); });

    if (cap_failure) {
        err << "lagfpt: degree cap " << o.adaptive.n_cap << " reached before the normalization criterion tripped\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Laguerre-Gamma approximation of GBM first-passage-time densities", "lagfpt"};
    app.set_config("--config", "", "TOML/INI file using the long flag names as keys; flags win");
    app.require_subcommand(1);

    Invocation inv;
    app.add_option("--preset", inv.preset, "Parameter preset")->check(CLI::IsMember({"A", "B", "C"}));
    inv.mu_opt = app.add_option("--mu", inv.mu, "Drift");
    inv.sigma_opt = app.add_option("--sigma", inv.sigma, "Volatility");
    inv.S_opt = app.add_option("--S", inv.S, "Threshold level (default 10)");
    inv.y0_opt = app.add_option("--y0", inv.y0, "Start level (default 1)");
    inv.n_opt = app.add_option("--n", inv.n, "Fixed expansion degree (fit: likelihood degree, default 34)");
    app.add_flag("--adaptive", "Choose the degree by the normalization criterion (default)")->excludes(inv.n_opt);
    app.add_option("--epsilon", inv.epsilon, "Normalization tolerance")->capture_default_str();
    inv.n_cap_opt = app.add_option("--n-cap", inv.n_cap, "Largest degree tried (sample-approx: default r-max)")
                        ->capture_default_str();
    app.add_option("--paths", inv.paths, "Number of simulated FPTs")->capture_default_str();
    app.add_option("--dt", inv.dt, "Milstein step")->capture_default_str();
    inv.t_max_opt = app.add_option("--t-max", inv.t_max, "Milstein horizon (default b + 20 sd)");
    app.add_option("--seed", inv.seed, "Master seed")->capture_default_str();
    app.add_option("--source", inv.source, "FPT generator")
        ->check(CLI::IsMember({"milstein", "exact"}))
        ->capture_default_str();
    app.add_option("--method", inv.method, "Estimator")->check(CLI::IsMember({"mle", "mm"}))->capture_default_str();
    app.add_option("--r-max", inv.r_max, "Highest k-statistic order")
        ->check(CLI::Range(2, kMaxKStatisticOrder))
        ->capture_default_str();
    app.add_option("--grid", inv.grid, "Evaluation grid t_min:t_max:points");
    app.add_option("--out", inv.out, "Output file (stdout when omitted)");

    auto* approx = app.add_subcommand("approx", "Expansion from the analytic moments, tabulated on a grid");
    auto* simulate = app.add_subcommand("simulate", "Generate an FPT sample file");
    auto* fit = app.add_subcommand("fit", "Estimate (mu, sigma^2) from an FPT sample file");
    auto* sample_approx = app.add_subcommand("sample-approx", "Expansion from k-statistics of an FPT sample file");
    fit->add_option("sample", inv.sample, "Sample file")->required();
    sample_approx->add_option("sample", inv.sample, "Sample file")->required();
    for (auto* sub : {approx, simulate, fit, sample_approx}) sub->fallthrough();

    std::vector<const char*> argv{"lagfpt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::FileError& e) {
        err << "lagfpt: " << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (approx->parsed()) return cmd_approx(inv, out, err);
        if (simulate->parsed()) return cmd_simulate(inv, out, err);
        if (fit->parsed()) return cmd_fit(inv, out, err);
        return cmd_sample_approx(inv, out, err);
    } catch (const SampleIoError& e) {
        err << "lagfpt: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::logic_error& e) {
        err << "lagfpt: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "lagfpt: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace lagfpt::cli
