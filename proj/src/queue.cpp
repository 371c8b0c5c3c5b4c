#include "queuesim/queue.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace queuesim {

namespace {

std::string join_errors(const std::vector<std::string>& errors)
{
    std::string out = "invalid queue inputs";
    for (const auto& e : errors) {
        out += "; ";
        out += e;
    }
    return out;
}

bool non_negative_finite(Time t) { return std::isfinite(t) && t >= 0.0; }

// Positive or +inf; NaN fails.
bool positive_or_unbounded(Time t) { return t > 0.0; }

} // namespace

InvalidInputs::InvalidInputs(std::vector<std::string> errors)
    : std::invalid_argument(join_errors(errors))
    , errors_(std::move(errors))
{
}

ValidationReport validate_config(const AmenityConfig& config)
{
    ValidationReport report;
    auto& errors = report.errors;
    if (config.facilities < 1) {
        errors.emplace_back("facility count must be at least 1");
    }
    if (!non_negative_finite(config.revive)) {
        errors.push_back(fmt::format("revival-time must be finite and non-negative, got {}", config.revive));
    }
    const bool arrive_ok = positive_or_unbounded(config.close_arrive);
    const bool service_ok = positive_or_unbounded(config.close_service);
    const bool full_ok = positive_or_unbounded(config.close_full);
    if (!arrive_ok) {
        errors.push_back(fmt::format("close_arrive must be positive, got {}", config.close_arrive));
    }
    if (!service_ok) {
        errors.push_back(fmt::format("close_service must be positive, got {}", config.close_service));
    }
    if (!full_ok) {
        errors.push_back(fmt::format("close_full must be positive, got {}", config.close_full));
    }
    if (arrive_ok && service_ok && full_ok &&
        !(config.close_arrive <= config.close_service && config.close_service <= config.close_full)) {
        errors.push_back(fmt::format(
            "closure ordering violated: need close_arrive <= close_service <= close_full, got {} / {} / {}",
            config.close_arrive, config.close_service, config.close_full));
    }
    if (!config.initial_delays.empty()) {
        if (config.initial_delays.size() != config.facilities) {
            errors.push_back(fmt::format("initial_delays has {} entries for {} facilities",
                                         config.initial_delays.size(), config.facilities));
        }
        bool all_ok = true;
        for (std::size_t i = 0; i < config.initial_delays.size(); ++i) {
            if (!non_negative_finite(config.initial_delays[i])) {
                all_ok = false;
                errors.push_back(fmt::format("initial delay of facility {} must be finite and non-negative, got {}",
                                             i + 1, config.initial_delays[i]));
            }
        }
        if (all_ok) {
            const Time lowest = *std::min_element(config.initial_delays.begin(), config.initial_delays.end());
            if (lowest != 0.0) {
                report.warnings.push_back(fmt::format(
                    "smallest initial delay is {}; time 0 is normally the first facility opening", lowest));
            }
        }
    }
    return report;
}

ValidationReport validate_inputs(const QueueInputs& inputs)
{
    ValidationReport report = validate_config(inputs.config);
    auto& errors = report.errors;
    if (inputs.arrive.size() != inputs.use_full.size()) {
        errors.push_back(fmt::format("arrive has {} entries but use_full has {}", inputs.arrive.size(),
                                     inputs.use_full.size()));
    }
    for (std::size_t k = 0; k < inputs.arrive.size(); ++k) {
        if (!non_negative_finite(inputs.arrive[k])) {
            errors.push_back(fmt::format("arrival-time of user {} must be finite and non-negative, got {}", k + 1,
                                         inputs.arrive[k]));
        }
        if (k > 0 && inputs.arrive[k] < inputs.arrive[k - 1]) {
            errors.push_back(fmt::format("arrivals not non-decreasing at user {}", k + 1));
        }
    }
    for (std::size_t k = 0; k < inputs.use_full.size(); ++k) {
        if (!non_negative_finite(inputs.use_full[k])) {
            errors.push_back(fmt::format("intended-use-time of user {} must be finite and non-negative, got {}",
                                         k + 1, inputs.use_full[k]));
        }
    }
    for (auto& e : validate_patience(inputs.patience, inputs.arrive.size())) {
        errors.push_back(std::move(e));
    }
    return report;
}

std::size_t queue_priority(Time arrive, Time wait, std::span<const Time> prior_exits)
{
    const Time at = arrive + wait;
    return 1 + static_cast<std::size_t>(
                   std::count_if(prior_exits.begin(), prior_exits.end(), [at](Time exit) { return exit > at; }));
}

MaxPriority max_queue_priority(std::span<const Time> patience_row, Time arrive, std::span<const Time> prior_exits)
{
    for (std::size_t p = patience_row.size(); p > 1; --p) {
        if (queue_priority(arrive, patience_row[p - 1], prior_exits) >= p) {
            return {p, patience_row[p - 1]};
        }
    }
    // Priority 1 always qualifies.
    return {1, patience_row.empty() ? kInfinity : patience_row.front()};
}

DelayState DelayState::initial(const AmenityConfig& config)
{
    DelayState state;
    state.free_at.resize(config.facilities);
    for (std::size_t i = 0; i < config.facilities; ++i) {
        state.free_at[i] = config.initial_delay(i);
    }
    return state;
}

Time DelayState::delay(std::size_t facility) const { return std::max(free_at.at(facility) - time, 0.0); }

std::vector<Time> DelayState::delays() const
{
    std::vector<Time> out(free_at.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = delay(i);
    }
    return out;
}

UserRecord step_user(DelayState& state, std::size_t user, Time arrive, Time use_full, const PatienceSpec& patience,
                     std::span<const Time> prior_exits, const AmenityConfig& config)
{
    state.time = arrive;

    UserRecord rec;
    rec.arrive = arrive;
    rec.use_full = use_full;
    rec.unserved = use_full;
    rec.initiation = arrive;
    rec.leave = arrive;
    if (arrive >= config.close_arrive) {
        return rec;
    }

    // Lowest index among the facilities with the smallest remaining delay;
    // every facility already free counts as delay 0.
    std::size_t index = 0;
    for (std::size_t i = 1; i < state.free_at.size(); ++i) {
        if (std::max(state.free_at[i], arrive) < std::max(state.free_at[index], arrive)) {
            index = i;
        }
    }
    const Time start = std::max(state.free_at[index], arrive);

    const std::size_t limit = std::min(user, queue_priority(arrive, 0.0, prior_exits));
    std::vector<Time> row(limit);
    for (std::size_t p = 1; p <= limit; ++p) {
        row[p - 1] = patience_value(patience, user, p);
    }
    const MaxPriority maxp = max_queue_priority(row, arrive, prior_exits);

    // Give-up instant: patience expiry or service closure, whichever is first.
    const Time give_up = std::min(arrive + maxp.patience, config.close_service);
    rec.served = start < give_up;
    rec.initiation = rec.served ? start : give_up;
    rec.wait = rec.initiation - arrive;
    if (!rec.served) {
        return rec;
    }

    if (use_full < config.close_full - start) {
        rec.use = use_full;
        rec.leave = start + use_full;
    }
    else {
        rec.use = std::max(config.close_full - start, 0.0);
        rec.leave = std::max(config.close_full, start);
    }
    rec.unserved = use_full - rec.use;
    rec.facility = index + 1;
    state.free_at[index] = rec.leave + config.revive;
    return rec;
}

QueueOutcome run_queue(const QueueInputs& inputs, const RunOptions& options)
{
    auto report = validate_inputs(inputs);
    if (!report.ok()) {
        throw InvalidInputs(std::move(report.errors));
    }

    const auto& config = inputs.config;
    const std::size_t users = inputs.users();

    QueueOutcome outcome;
    outcome.config = config;
    outcome.users.reserve(users);
    if (options.forward_priorities) {
        outcome.forward_priorities.emplace(users);
    }

    DelayState state = DelayState::initial(config);
    // Exits of earlier users that may still lie after the current arrival;
    // older ones can never count toward a queue-priority again.
    std::vector<Time> pending_exits;
    for (std::size_t k = 0; k < users; ++k) {
        const Time arrive = inputs.arrive[k];
        std::erase_if(pending_exits, [arrive](Time exit) { return exit <= arrive; });

        if (options.forward_priorities) {
            auto& row = (*outcome.forward_priorities)[k];
            row.assign(k + 1, 0);
            if (arrive < config.close_arrive) {
                for (std::size_t p = 1; p <= k + 1; ++p) {
                    row[p - 1] = queue_priority(arrive, patience_value(inputs.patience, k + 1, p), pending_exits);
                }
            }
        }

        UserRecord rec =
            step_user(state, k + 1, arrive, inputs.use_full[k], inputs.patience, pending_exits, config);
        pending_exits.push_back(rec.initiation);
        outcome.users.push_back(rec);
    }

    outcome.facilities = facility_summary(outcome.users, config);
    return outcome;
}

std::vector<FacilityRecord> facility_summary(std::span<const UserRecord> users, const AmenityConfig& config)
{
    std::vector<FacilityRecord> facilities(config.facilities);
    for (std::size_t i = 0; i < config.facilities; ++i) {
        facilities[i].open = config.initial_delay(i);
        facilities[i].end_service = facilities[i].open;
    }
    for (const auto& u : users) {
        if (!u.facility) {
            continue;
        }
        auto& f = facilities.at(*u.facility - 1);
        f.use += u.use;
        f.end_service = std::max(f.end_service, u.leave);
        ++f.users_served;
    }
    for (auto& f : facilities) {
        f.revive = config.revive * static_cast<double>(f.users_served);
    }
    return facilities;
}

} // namespace queuesim
