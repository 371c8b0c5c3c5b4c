#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "queuesim/generative.hpp"
#include "queuesim/risk.hpp"
#include "queuesim/summary.hpp"
#include "queuesim/types.hpp"

namespace queuesim::io {

using nlohmann::json;

/// Raised for documents that are valid JSON but do not match the schema.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON has no infinity; the string "inf" (any case, optional sign "+") and
// "infinity" stand in for it wherever an unbounded value is allowed.
[[nodiscard]] double parse_time(const json& value, std::string_view field);
[[nodiscard]] json time_json(double value);

[[nodiscard]] PatienceSpec parse_patience(const json& doc);
[[nodiscard]] json to_json(const PatienceSpec& spec);

/// close_service is capped at close_full, so an absent close_service equals close_full.
[[nodiscard]] AmenityConfig parse_config(const json& doc);
[[nodiscard]] json to_json(const AmenityConfig& config);

/// Queue file: {"arrive", "use_full", "patience"?, "config"}. Absent patience
/// means users wait indefinitely.
[[nodiscard]] QueueInputs parse_queue_inputs(const json& doc);
[[nodiscard]] json to_json(const QueueInputs& inputs);

/// Model file: {"lambda", "mu", "patience"?, "config", "burn_in"?, "max_users"?}.
[[nodiscard]] GenerativeModel parse_model(const json& doc);
[[nodiscard]] json to_json(const GenerativeModel& model);

[[nodiscard]] json to_json(const QueueOutcome& outcome);
[[nodiscard]] QueueOutcome parse_outcome(const json& doc);

/// "facility=30,wait=1,unserved=2"
[[nodiscard]] CostSpec parse_costs(std::string_view text);
/// "A..B" or a single count "A".
[[nodiscard]] std::pair<std::size_t, std::size_t> parse_range(std::string_view text);
/// Comma separated probabilities.
[[nodiscard]] std::vector<double> parse_probs(std::string_view text);

/// Shortest round-trip text for a double; "NA" for NaN, "Inf" for infinity.
[[nodiscard]] std::string csv_number(double value);

[[nodiscard]] std::string users_csv(const QueueOutcome& outcome);
[[nodiscard]] std::string facilities_csv(const QueueOutcome& outcome);
[[nodiscard]] std::string summary_csv(const SummaryTable& table);
[[nodiscard]] std::string risk_csv(const RiskSweep& sweep);
[[nodiscard]] std::string replicates_csv(const RiskSweep& sweep);
[[nodiscard]] std::string steady_state_csv(const SteadyStateResult& result);

/// Human-readable queue information: configuration, user table, facility table.
[[nodiscard]] std::string format_queue_report(const QueueOutcome& outcome);
[[nodiscard]] std::string format_summary_report(const SummaryTable& table, const AmenityConfig& config);

} // namespace queuesim::io
