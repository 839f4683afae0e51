#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scaling_lab/acceptance.hpp"
#include "scaling_lab/bounds.hpp"
#include "scaling_lab/experiments.hpp"
#include "scaling_lab/fading.hpp"
#include "scaling_lab/genie.hpp"
#include "scaling_lab/numeric.hpp"
#include "scaling_lab/relay.hpp"
#include "scaling_lab/report.hpp"
#include "scaling_lab/rng.hpp"

namespace {

using namespace scaling_lab;

// Model selection shared by the sample/genie/relay commands.
struct ModelFlags {
    std::string name = "rayleigh";
    ModelSpec spec;

    CLI::Option* name_opt = nullptr;

    void attach(CLI::App* cmd) {
        name_opt = cmd->add_option("--model", name,
                                   "fading family: rayleigh, log_normal, nakagami, extremal, "
                                   "pareto, pareto_general");
        cmd->add_option("--mean-power", spec.mean_power, "mean power gain (rayleigh, nakagami)");
        cmd->add_option("--sigma-db", spec.sigma_db, "shadowing spread in dB (log_normal)");
        cmd->add_option("--shape", spec.shape, "fading figure (nakagami)");
        cmd->add_option("--mu", spec.mu, "mean gain (extremal)");
        cmd->add_option("--sigma", spec.sigma, "gain standard deviation (extremal)");
        cmd->add_option("--pop", spec.population,
                        "extremal population size (0 tracks the network size)");
        cmd->add_option("--alpha", spec.alpha, "path-loss exponent (pareto)");
        cmd->add_option("--nu", spec.nu, "tail index in (0,1) (pareto_general)");
        cmd->add_option("--c0", spec.c0, "tail scale (pareto_general)");
    }

    bool family_given() const { return name_opt && name_opt->count() > 0; }

    Family family() const {
        std::string key = name;
        for (char& ch : key) {
            if (ch == '-') ch = '_';
        }
        if (key == "extremal") key = "extremal_mv";
        if (key == "pareto") key = "pareto_pathloss";
        return family_from_name(key);
    }

    // Overwrites the model portion of cfg with the flag values when any
    // model flag was passed; parameter flags carry their defaults, so a
    // family switch picks up consistent parameters.
    void apply(ExperimentConfig& cfg, const CLI::App* cmd) const {
        if (family_given()) {
            ModelSpec merged = spec;
            merged.family = family();
            cfg.model = merged;
            return;
        }
        // keep config-file model, but let explicit parameter flags poke it
        auto touch = [&](const char* flag, auto member) {
            if (cmd->count(flag) > 0) cfg.model.*member = spec.*member;
        };
        touch("--mean-power", &ModelSpec::mean_power);
        touch("--sigma-db", &ModelSpec::sigma_db);
        touch("--shape", &ModelSpec::shape);
        touch("--mu", &ModelSpec::mu);
        touch("--sigma", &ModelSpec::sigma);
        touch("--pop", &ModelSpec::population);
        touch("--alpha", &ModelSpec::alpha);
        touch("--nu", &ModelSpec::nu);
        touch("--c0", &ModelSpec::c0);
    }
};

int default_workers() {
    if (const char* env = std::getenv("SCALING_LAB_WORKERS")) {
        try {
            int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring bad SCALING_LAB_WORKERS value \"" << env << "\"\n";
    }
    return 1;
}

std::uint64_t random_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Writes results.csv, summary.json, manifest.json into out_dir.
void write_artifacts(const ExperimentResult& result, const std::string& out_dir,
                     const std::string& started, const std::string& finished) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / "results.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (dir / "results.csv").string());
        write_results_csv(result, csv);
    }
    write_text_file(dir / "summary.json", summary_json(result).dump(2) + "\n");
    write_text_file(dir / "manifest.json",
                    manifest_json(result, started, finished).dump(2) + "\n");
    std::cout << "wrote " << (dir / "results.csv").string() << ", summary.json, manifest.json\n";
}

void print_summaries(const ExperimentResult& result) {
    std::cout << "scheme: " << scheme_name(result.config.scheme) << "\n";
    std::cout << "model: " << result.config.model.describe() << "\n";
    for (const NSummary& s : result.summaries) {
        std::cout << "  n=" << s.n << " m=" << format_full(s.m) << " trials=" << s.trials
                  << " mean_throughput=" << format_full(s.mean_throughput)
                  << " std_err=" << format_full(s.std_err_throughput)
                  << " distinct_rate=" << format_full(s.distinct_event_rate)
                  << " link_success=" << format_full(s.mean_link_success) << "\n";
    }
    if (result.fit) {
        std::cout << "fit: slope=" << format_full(result.fit->slope) << " (95% CI ["
                  << format_full(result.fit->ci_low) << ", " << format_full(result.fit->ci_high)
                  << "]) r2=" << format_full(result.fit->r_squared) << "\n";
    }
}

int cmd_sample(const ModelFlags& model_flags, int n_samples, std::uint64_t seed, bool seed_given,
               const std::string& out_path) {
    if (n_samples < 1) throw std::invalid_argument("sample: --n-samples must be >= 1");
    ModelSpec spec = model_flags.spec;
    spec.family = model_flags.family();
    if (spec.family == Family::extremal_mv && spec.population == 0)
        throw std::invalid_argument("sample: extremal draws need --pop (no network size to track)");
    FadingModel model = spec.instantiate(spec.population);

    if (!seed_given) {
        seed = random_seed();
        std::cout << "seed: " << seed << " (chosen at random)\n";
    }
    Rng rng(seed);
    std::vector<double> samples(static_cast<std::size_t>(n_samples));
    for (double& s : samples) s = model.sample(rng);

    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << "sample\n";
        for (double s : samples) out << format_full(s) << '\n';
    }

    SampleStats st = sample_stats(samples);
    std::cout << "model: " << model.describe() << "\n";
    std::cout << "samples: " << n_samples << " -> " << out_path << "\n";
    std::cout << "mean: " << format_full(st.mean) << "\n";
    std::cout << "variance: " << format_full(st.variance) << "\n";
    MomentReport moments = model.moments();
    if (moments.mean_finite) std::cout << "model mean: " << format_full(moments.mean) << "\n";
    if (moments.variance_finite)
        std::cout << "model variance: " << format_full(moments.variance) << "\n";

    if (model.family() == Family::extremal_mv) {
        const int pop = model.population();
        const int blocks = n_samples / pop;
        if (blocks >= 1) {
            double threshold = extreme_mean(model);
            long long exceed = 0;
            CompensatedSum max_sum;
            for (int b = 0; b < blocks; ++b) {
                double mx = samples[static_cast<std::size_t>(b) * pop];
                for (int i = 1; i < pop; ++i)
                    mx = std::max(mx, samples[static_cast<std::size_t>(b) * pop + i]);
                max_sum.add(mx);
                if (mx >= threshold) ++exceed;
            }
            std::cout << "block size: " << pop << " (blocks: " << blocks << ")\n";
            std::cout << "block max mean: " << format_full(max_sum.value() / blocks)
                      << " (exact: " << format_full(threshold) << ")\n";
            std::cout << "block max mean-exceedance: "
                      << format_full(static_cast<double>(exceed) / blocks) << " (tends to 1/2)\n";
        } else {
            std::cout << "block max: skipped (need at least " << pop << " samples)\n";
        }
    }
    if (model.family() == Family::pareto_pathloss || model.family() == Family::pareto_general) {
        double x99 = model.quantile(0.99);
        long long above = 0;
        for (double s : samples) {
            if (s > x99) ++above;
        }
        double empirical = static_cast<double>(above) / n_samples;
        std::cout << "tail threshold (p99): " << format_full(x99) << "\n";
        std::cout << "tail ratio (empirical/model at p99): " << format_full(empirical / 0.01)
                  << " (tends to 1)\n";
    }
    return 0;
}

void print_m_star_histogram(const ExperimentResult& result) {
    for (const NSummary& s : result.summaries) {
        std::cout << "n=" << s.n << ": mean m_star=" << format_full(s.m) << " over " << s.trials
                  << " trials\n";
        std::vector<int> histogram;
        for (const TrialResult& t : result.trials) {
            if (t.n != s.n) continue;
            if (t.m >= static_cast<int>(histogram.size())) histogram.resize(t.m + 1, 0);
            ++histogram[t.m];
        }
        for (std::size_t m = 0; m < histogram.size(); ++m) {
            if (histogram[m] > 0) std::cout << "  m_star=" << m << ": " << histogram[m] << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo and analytic engine for SINR-threshold scheduling throughput"};
    app.require_subcommand(1);

    // --- sample ---
    CLI::App* sample = app.add_subcommand("sample", "draw gains and report distribution facts");
    ModelFlags sample_model;
    sample_model.attach(sample);
    sample_model.name_opt->required();
    int sample_count = 10000;
    sample->add_option("--n-samples", sample_count, "number of draws");
    std::uint64_t sample_seed = 0;
    CLI::Option* sample_seed_opt = sample->add_option("--seed", sample_seed, "rng seed");
    std::string sample_out = "samples.csv";
    sample->add_option("--out", sample_out, "CSV output path");

    // --- genie ---
    CLI::App* genie = app.add_subcommand("genie", "exhaustive search for the largest valid set");
    std::string genie_mode = "single";
    genie->add_option("--mode", genie_mode, "single | two-hop")
        ->check(CLI::IsMember({"single", "two-hop"}));
    int genie_n = 8;
    CLI::Option* genie_n_opt = genie->add_option("--n", genie_n, "network size");
    ModelFlags genie_model;
    genie_model.attach(genie);
    bool genie_force = false;
    genie->add_flag("--force-exponential", genie_force,
                    "lift the exhaustive-search size limits");
    std::string genie_config;
    genie->add_option("--config", genie_config, "JSON config file (flags override)");

    // --- relay ---
    CLI::App* relay = app.add_subcommand("relay", "two-hop opportunistic relaying experiment");
    std::string relay_scheme = "opportunistic_two_hop";
    relay->add_option("--scheme", relay_scheme, "opportunistic_two_hop | pareto_linear")
        ->check(CLI::IsMember({"opportunistic_two_hop", "pareto_linear"}));
    ModelFlags relay_model;
    relay_model.attach(relay);
    std::vector<int> relay_grid;
    relay->add_option("--n-grid", relay_grid, "network sizes, e.g. --n-grid 256 512 1024")
        ->delimiter(',');
    std::string relay_m_rule;
    relay->add_option("--m-rule", relay_m_rule, "sqrt-opt | equal-n | fixed:<k>");
    std::string relay_config;
    relay->add_option("--config", relay_config, "JSON config file (flags override)");

    // shared numeric flags for genie + relay
    double rho = 10.0, beta0 = 1.0;
    int trials = 100;
    std::uint64_t seed = 1;
    int workers = default_workers();
    std::string out_dir = "out";
    for (CLI::App* cmd : {genie, relay}) {
        cmd->add_option("--rho", rho, "transmit power over noise");
        cmd->add_option("--beta0", beta0, "SINR threshold");
        cmd->add_option("--trials", trials, "realizations per n");
        cmd->add_option("--seed", seed, "base rng seed");
        cmd->add_option("--workers", workers, "worker threads (env SCALING_LAB_WORKERS)");
        cmd->add_option("--out", out_dir, "output directory");
    }

    // --- bounds ---
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "emit analytic bound curves");
    std::string bound_kind = "sinr-upper";
    bounds_cmd->add_option("--kind", bound_kind,
                           "sinr-upper | genie-existence | distinct-prob")
        ->check(CLI::IsMember({"sinr-upper", "genie-existence", "distinct-prob"}));
    std::vector<double> bound_m_grid{4, 8, 16, 32, 64, 128, 256};
    bounds_cmd->add_option("--m-grid", bound_m_grid, "active-set sizes")->delimiter(',');
    double bound_mean = 1.0, bound_variance = 1.0, bound_rho = 10.0, bound_beta0 = 1.0;
    bounds_cmd->add_option("--mean", bound_mean, "gain mean");
    bounds_cmd->add_option("--variance", bound_variance, "gain variance");
    bounds_cmd->add_option("--rho", bound_rho, "transmit power over noise");
    bounds_cmd->add_option("--beta0", bound_beta0, "SINR threshold");
    double bound_n = 100.0, bound_p = 0.1;
    bounds_cmd->add_option("--n", bound_n, "network size (genie-existence, distinct-prob)");
    bounds_cmd->add_option("--p", bound_p, "per-link success probability (genie-existence)");
    std::string bound_mode = "single";
    bounds_cmd->add_option("--mode", bound_mode, "single | two-hop (genie-existence)")
        ->check(CLI::IsMember({"single", "two-hop"}));
    std::string bound_out;
    bounds_cmd->add_option("--out", bound_out, "CSV path (default: stdout)");

    // --- verify ---
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    bool quick = false;
    verify->add_flag("--quick", quick, "reduced trial counts");
    std::string report_path = "verify_report.json";
    verify->add_option("--report", report_path, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample) {
            return cmd_sample(sample_model, sample_count, sample_seed,
                              sample_seed_opt->count() > 0, sample_out);
        }

        if (*genie || *relay) {
            CLI::App* cmd = *genie ? genie : relay;
            const std::string& config_path = *genie ? genie_config : relay_config;
            ExperimentConfig cfg;
            bool seed_from_config = false;
            if (!config_path.empty()) {
                cfg = load_config(config_path);
                std::ifstream in(config_path);
                nlohmann::json j;
                in >> j;
                seed_from_config = j.contains("base_seed");
            }
            if (*genie) {
                cfg.scheme = genie_mode == "single" ? Scheme::genie_single : Scheme::genie_two_hop;
                if (genie_n_opt->count() > 0 || cfg.n_grid.empty()) cfg.n_grid = {genie_n};
                if (genie_force) cfg.genie_limits.accept_exponential_cost = true;
                genie_model.apply(cfg, genie);
            } else {
                if (cmd->count("--scheme") > 0 || config_path.empty())
                    cfg.scheme = scheme_from_name(relay_scheme);
                relay_model.apply(cfg, relay);
                if (cmd->count("--n-grid") > 0) cfg.n_grid = relay_grid;
                if (cfg.n_grid.empty()) cfg.n_grid = {256, 512, 1024};
                if (cmd->count("--m-rule") > 0) cfg.m_rule = m_rule_from_name(relay_m_rule);
                if (cfg.scheme == Scheme::pareto_linear) {
                    if (cmd->count("--m-rule") == 0 && config_path.empty())
                        cfg.m_rule.kind = MRule::Kind::equal_n;
                    if (cmd->count("--model") == 0 && config_path.empty())
                        cfg.model.family = Family::pareto_pathloss;
                }
            }
            if (cmd->count("--rho") > 0) cfg.rho = rho;
            if (cmd->count("--beta0") > 0) cfg.beta0 = beta0;
            if (cmd->count("--trials") > 0) cfg.trials = trials;
            if (cmd->count("--workers") > 0 || !seed_from_config) cfg.workers = workers;
            if (cmd->count("--seed") > 0) {
                cfg.base_seed = seed;
            } else if (!seed_from_config) {
                cfg.base_seed = random_seed();
                std::cout << "seed: " << cfg.base_seed << " (chosen at random)\n";
            }

            std::string started = utc_timestamp();
            ExperimentResult result = run(cfg);
            std::string finished = utc_timestamp();
            print_summaries(result);
            if (*genie) print_m_star_histogram(result);
            write_artifacts(result, out_dir, started, finished);
            return 0;
        }

        if (*bounds_cmd) {
            std::vector<BoundCurve> curves;
            if (bound_kind == "sinr-upper") {
                BoundCurve value{"sinr_success_upper", {}};
                BoundCurve exp_term{"interference_lower_tail_term", {}};
                BoundCurve cheb_term{"signal_chebyshev_term", {}};
                for (double m : bound_m_grid) {
                    SinrUpperBound b =
                        sinr_success_upper(m, bound_mean, bound_variance, bound_beta0, bound_rho);
                    value.points.push_back({m, b.value});
                    exp_term.points.push_back({m, b.exp_term});
                    cheb_term.points.push_back({m, b.chebyshev_term});
                }
                curves = {value, exp_term, cheb_term};
            } else if (bound_kind == "genie-existence") {
                GenieMode mode =
                    bound_mode == "single" ? GenieMode::single_hop : GenieMode::two_hop;
                BoundCurve curve{std::string("genie_existence_upper_") +
                                     (mode == GenieMode::single_hop ? "single" : "two_hop"),
                                 {}};
                for (double m : bound_m_grid)
                    curve.points.push_back({m, genie_existence_upper(bound_n, m, bound_p, mode)});
                curves = {curve};
            } else {  // distinct-prob
                BoundCurve exact{"prob_all_distinct", {}};
                BoundCurve lower{"prob_all_distinct_lower", {}};
                for (double m : bound_m_grid) {
                    exact.points.push_back({m, prob_all_distinct(bound_n, m)});
                    lower.points.push_back({m, prob_all_distinct_lower(bound_n, m)});
                }
                curves = {exact, lower};
            }
            if (bound_out.empty()) {
                write_bound_curves_csv(curves, std::cout);
            } else {
                std::ofstream out(bound_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write " + bound_out);
                write_bound_curves_csv(curves, out);
                std::cout << "wrote " << bound_out << "\n";
            }
            return 0;
        }

        if (*verify) {
            AcceptanceReport report = run_acceptance(quick, std::cout);
            write_text_file(report_path, acceptance_json(report).dump(2) + "\n");
            std::cout << "report: " << report_path << "\n";
            return report.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}
