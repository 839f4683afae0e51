#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "scaling_lab/experiments.hpp"

namespace scaling_lab {

inline constexpr const char* scaling_lab_version = "0.1.0";

// %.17g — enough digits for an exact double round trip.
std::string format_full(double x);

// Current wall-clock time as an ISO-8601 UTC string.
std::string utc_timestamp();

MRule m_rule_from_name(const std::string& name);  // "sqrt-opt" | "equal-n" | "fixed:<k>"

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Per-trial rows.  Relay schemes: n,m,trial,throughput_bits,distinct_event,
// link_success_rate,hop1_distinct_fraction,hop2_scheduled_fraction.  Genie
// schemes: n,trial,m_star,throughput_bits.
void write_results_csv(const ExperimentResult& result, std::ostream& os);

nlohmann::json summary_json(const ExperimentResult& result);

// Everything needed to reproduce the run: config echo, artifact version,
// seed, timestamps, per-n summaries, and the scaling fit.
nlohmann::json manifest_json(const ExperimentResult& result, const std::string& started_utc,
                             const std::string& finished_utc);

}  // namespace scaling_lab
