#include "scaling_lab/report.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>
#include <stdexcept>

namespace scaling_lab {

std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

MRule m_rule_from_name(const std::string& name) {
    MRule rule;
    if (name == "sqrt-opt") {
        rule.kind = MRule::Kind::sqrt_opt;
    } else if (name == "equal-n") {
        rule.kind = MRule::Kind::equal_n;
    } else if (name.rfind("fixed:", 0) == 0) {
        rule.kind = MRule::Kind::fixed;
        try {
            rule.fixed_m = std::stoi(name.substr(6));
        } catch (const std::exception&) {
            throw std::invalid_argument("m_rule: bad fixed count in \"" + name + "\"");
        }
    } else {
        throw std::invalid_argument("m_rule: expected sqrt-opt, equal-n, or fixed:<k>, got \"" +
                                    name + "\"");
    }
    return rule;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json model{{"family", family_name(config.model.family)}};
    switch (config.model.family) {
        case Family::rayleigh: model["mean_power"] = config.model.mean_power; break;
        case Family::log_normal: model["sigma_db"] = config.model.sigma_db; break;
        case Family::nakagami:
            model["shape"] = config.model.shape;
            model["mean_power"] = config.model.mean_power;
            break;
        case Family::extremal_mv:
            model["mu"] = config.model.mu;
            model["sigma"] = config.model.sigma;
            model["population"] = config.model.population;
            break;
        case Family::pareto_pathloss: model["alpha"] = config.model.alpha; break;
        case Family::pareto_general:
            model["nu"] = config.model.nu;
            model["c0"] = config.model.c0;
            break;
    }
    return nlohmann::json{
        {"scheme", scheme_name(config.scheme)},
        {"model", model},
        {"n_grid", config.n_grid},
        {"m_rule", config.m_rule.describe()},
        {"rho", config.rho},
        {"beta0", config.beta0},
        {"trials", config.trials},
        {"base_seed", config.base_seed},
        {"workers", config.workers},
        {"genie_limits",
         {{"single_hop_max_n", config.genie_limits.single_hop_max_n},
          {"two_hop_max_n", config.genie_limits.two_hop_max_n},
          {"accept_exponential_cost", config.genie_limits.accept_exponential_cost}}},
    };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    try {
        if (j.contains("scheme")) config.scheme = scheme_from_name(j.at("scheme").get<std::string>());
        if (j.contains("model")) {
            const auto& m = j.at("model");
            if (m.contains("family"))
                config.model.family = family_from_name(m.at("family").get<std::string>());
            if (m.contains("mean_power")) config.model.mean_power = m.at("mean_power").get<double>();
            if (m.contains("sigma_db")) config.model.sigma_db = m.at("sigma_db").get<double>();
            if (m.contains("shape")) config.model.shape = m.at("shape").get<double>();
            if (m.contains("mu")) config.model.mu = m.at("mu").get<double>();
            if (m.contains("sigma")) config.model.sigma = m.at("sigma").get<double>();
            if (m.contains("population")) config.model.population = m.at("population").get<int>();
            if (m.contains("alpha")) config.model.alpha = m.at("alpha").get<double>();
            if (m.contains("nu")) config.model.nu = m.at("nu").get<double>();
            if (m.contains("c0")) config.model.c0 = m.at("c0").get<double>();
        }
        if (j.contains("n_grid")) config.n_grid = j.at("n_grid").get<std::vector<int>>();
        if (j.contains("m_rule")) config.m_rule = m_rule_from_name(j.at("m_rule").get<std::string>());
        if (j.contains("rho")) config.rho = j.at("rho").get<double>();
        if (j.contains("beta0")) config.beta0 = j.at("beta0").get<double>();
        if (j.contains("trials")) config.trials = j.at("trials").get<int>();
        if (j.contains("base_seed")) config.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("workers")) config.workers = j.at("workers").get<int>();
        if (j.contains("genie_limits")) {
            const auto& g = j.at("genie_limits");
            if (g.contains("single_hop_max_n"))
                config.genie_limits.single_hop_max_n = g.at("single_hop_max_n").get<int>();
            if (g.contains("two_hop_max_n"))
                config.genie_limits.two_hop_max_n = g.at("two_hop_max_n").get<int>();
            if (g.contains("accept_exponential_cost"))
                config.genie_limits.accept_exponential_cost =
                    g.at("accept_exponential_cost").get<bool>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return config;
}

void write_results_csv(const ExperimentResult& result, std::ostream& os) {
    const bool genie = result.config.scheme == Scheme::genie_single ||
                       result.config.scheme == Scheme::genie_two_hop;
    if (genie) {
        os << "n,trial,m_star,throughput_bits\n";
        for (const TrialResult& r : result.trials) {
            os << r.n << ',' << r.trial_index << ',' << r.m << ','
               << format_full(r.throughput_bits) << '\n';
        }
        return;
    }
    os << "n,m,trial,throughput_bits,distinct_event,link_success_rate,hop1_distinct_fraction,"
          "hop2_scheduled_fraction\n";
    for (const TrialResult& r : result.trials) {
        os << r.n << ',' << r.m << ',' << r.trial_index << ',' << format_full(r.throughput_bits)
           << ',' << (r.distinct_event ? 1 : 0) << ',' << format_full(r.per_link_success_rate)
           << ',' << format_full(r.hop1_distinct_fraction) << ','
           << format_full(r.hop2_scheduled_fraction) << '\n';
    }
}

namespace {

nlohmann::json summaries_json(const ExperimentResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const NSummary& s : result.summaries) {
        rows.push_back({
            {"n", s.n},
            {"m", s.m},
            {"trials", s.trials},
            {"mean_throughput", s.mean_throughput},
            {"median_throughput", s.median_throughput},
            {"std_err_throughput", s.std_err_throughput},
            {"mean_throughput_distinct_only", s.mean_throughput_distinct_only},
            {"distinct_event_rate", s.distinct_event_rate},
            {"mean_link_success", s.mean_link_success},
            {"mean_hop1_distinct_fraction", s.mean_hop1_distinct_fraction},
            {"mean_hop2_scheduled_fraction", s.mean_hop2_scheduled_fraction},
        });
    }
    return rows;
}

nlohmann::json fit_json(const ExperimentResult& result) {
    if (!result.fit) return nullptr;
    return nlohmann::json{
        {"slope", result.fit->slope},       {"intercept", result.fit->intercept},
        {"ci_low", result.fit->ci_low},     {"ci_high", result.fit->ci_high},
        {"r_squared", result.fit->r_squared},
    };
}

}  // namespace

nlohmann::json summary_json(const ExperimentResult& result) {
    return nlohmann::json{
        {"schema_version", 1},
        {"scheme", scheme_name(result.config.scheme)},
        {"model", result.config.model.describe()},
        {"summaries", summaries_json(result)},
        {"fit", fit_json(result)},
    };
}

nlohmann::json manifest_json(const ExperimentResult& result, const std::string& started_utc,
                             const std::string& finished_utc) {
    return nlohmann::json{
        {"schema_version", 1},
        {"artifact_version", scaling_lab_version},
        {"config", config_to_json(result.config)},
        {"base_seed", result.config.base_seed},
        {"started_utc", started_utc},
        {"finished_utc", finished_utc},
        {"summaries", summaries_json(result)},
        {"fit", fit_json(result)},
    };
}

}  // namespace scaling_lab
