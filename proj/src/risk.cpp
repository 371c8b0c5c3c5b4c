#include "queuesim/risk.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "parallel.hpp"
#include "queuesim/queue.hpp"

namespace queuesim {

std::vector<std::string> validate_costs(const CostSpec& costs)
{
    std::vector<std::string> errors;
    auto check = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            errors.push_back(fmt::format("{} cost must be positive and finite, got {}", name, v));
        }
    };
    check(costs.facility, "facility");
    check(costs.wait, "wait");
    check(costs.unserved, "unserved");
    return errors;
}

double loss(const QueueOutcome& outcome, const CostSpec& costs)
{
    double wait = 0.0;
    double unserved = 0.0;
    for (const auto& u : outcome.users) {
        wait += u.wait;
        if (u.arrive < outcome.config.close_arrive) {
            unserved += u.unserved;
        }
    }
    return costs.facility * static_cast<double>(outcome.config.facilities) + costs.wait * wait +
           costs.unserved * unserved;
}

UserMeans user_means(std::span<const UserRecord> users, Time from)
{
    UserMeans m;
    for (const auto& u : users) {
        if (u.arrive < from) {
            continue;
        }
        m.wait += u.wait;
        m.use += u.use;
        m.unserved += u.unserved;
        ++m.users;
    }
    if (m.users > 0) {
        const auto n = static_cast<double>(m.users);
        m.wait /= n;
        m.use /= n;
        m.unserved /= n;
    }
    return m;
}

namespace {

double mean_of(const std::vector<double>& xs)
{
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}

void check_sweep(const GenerativeModel& model, std::size_t first, std::size_t last, const SimulationOptions& options)
{
    auto errors = validate_model(model);
    if (first < 1 || last < first) {
        errors.push_back(fmt::format("facility range {}..{} is empty or starts below 1", first, last));
    }
    if (options.replicates < 1) {
        errors.emplace_back("at least one replicate is required");
    }
    if (!model.config.initial_delays.empty()) {
        errors.emplace_back("facility sweeps do not support initial delays");
    }
    if (std::isinf(model.config.close_arrive) && !model.max_users) {
        errors.emplace_back("arrivals never close; a max-users cap is required");
    }
    if (!errors.empty()) {
        throw InvalidInputs(std::move(errors));
    }
}

RiskSweep run_sweep(const GenerativeModel& model, const CostSpec* costs, std::size_t first, std::size_t last,
                    const SimulationOptions& options)
{
    check_sweep(model, first, last, options);
    if (costs) {
        if (auto errors = validate_costs(*costs); !errors.empty()) {
            throw InvalidInputs(std::move(errors));
        }
    }

    const std::size_t counts = last - first + 1;
    const std::size_t reps = options.replicates;
    RiskSweep sweep;
    sweep.points.resize(counts);
    for (std::size_t j = 0; j < counts; ++j) {
        auto& p = sweep.points[j];
        p.facilities = first + j;
        if (costs) {
            p.loss.resize(reps);
        }
        p.mean_wait.resize(reps);
        p.mean_use.resize(reps);
        p.mean_unserved.resize(reps);
    }

    auto record = [&](std::size_t j, std::size_t rep, QueueInputs& inputs) {
        auto& p = sweep.points[j];
        inputs.config.facilities = p.facilities;
        const QueueOutcome outcome = run_queue(inputs);
        const UserMeans means = user_means(outcome.users);
        p.mean_wait[rep] = means.wait;
        p.mean_use[rep] = means.use;
        p.mean_unserved[rep] = means.unserved;
        if (costs) {
            p.loss[rep] = loss(outcome, *costs);
        }
    };

    detail::parallel_for(reps, options.workers, [&](std::size_t rep) {
        if (options.independent_seeds) {
            for (std::size_t j = 0; j < counts; ++j) {
                RandomStream stream(derive_seed(options.seed, first + j), rep + 1);
                QueueInputs inputs = sample_inputs(model, stream);
                record(j, rep, inputs);
            }
        }
        else {
            RandomStream stream(options.seed, rep + 1);
            QueueInputs inputs = sample_inputs(model, stream);
            for (std::size_t j = 0; j < counts; ++j) {
                record(j, rep, inputs);
            }
        }
    });

    for (auto& p : sweep.points) {
        p.risk = costs ? mean_of(p.loss) : std::numeric_limits<double>::quiet_NaN();
    }
    if (costs) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < counts; ++j) {
            if (sweep.points[j].risk < sweep.points[best].risk) {
                best = j;
            }
        }
        sweep.argmin = sweep.points[best].facilities;
    }
    return sweep;
}

} // namespace

RiskEstimate estimate_risk(const GenerativeModel& model, std::size_t facilities, const CostSpec& costs,
                           std::size_t replicates, std::uint64_t seed, unsigned workers)
{
    SimulationOptions options;
    options.replicates = replicates;
    options.seed = seed;
    options.workers = workers;
    RiskSweep sweep = run_sweep(model, &costs, facilities, facilities, options);
    auto& point = sweep.points.front();
    return {point.risk, std::move(point.loss)};
}

const FacilityPoint& RiskSweep::at(std::size_t facilities) const
{
    for (const auto& p : points) {
        if (p.facilities == facilities) {
            return p;
        }
    }
    throw std::out_of_range(fmt::format("facility count {} not in sweep", facilities));
}

RiskSweep simulate_facilities(const GenerativeModel& model, std::size_t first, std::size_t last,
                              const SimulationOptions& options)
{
    return run_sweep(model, nullptr, first, last, options);
}

RiskSweep optimize_facilities(const GenerativeModel& model, const CostSpec& costs, std::size_t first,
                              std::size_t last, const SimulationOptions& options)
{
    return run_sweep(model, &costs, first, last, options);
}

std::size_t suggested_stop(const RiskSweep& sweep, std::size_t run)
{
    if (sweep.points.empty()) {
        throw std::invalid_argument("empty sweep");
    }
    std::size_t rises = 0;
    for (std::size_t j = 1; j < sweep.points.size(); ++j) {
        rises = sweep.points[j].risk > sweep.points[j - 1].risk ? rises + 1 : 0;
        if (rises >= run) {
            return sweep.points[j].facilities;
        }
    }
    return sweep.points.back().facilities;
}

UserMeans SteadyStateResult::average() const
{
    UserMeans avg;
    for (const auto& r : replicates) {
        if (r.users == 0) {
            continue;
        }
        avg.wait += r.wait;
        avg.use += r.use;
        avg.unserved += r.unserved;
        ++avg.users;
    }
    if (avg.users > 0) {
        const auto n = static_cast<double>(avg.users);
        avg.wait /= n;
        avg.use /= n;
        avg.unserved /= n;
    }
    return avg;
}

SteadyStateResult steady_state_metrics(const GenerativeModel& model, const SteadyStateOptions& options)
{
    const Time horizon = std::min(model.config.close_arrive, options.run_length);
    std::vector<std::string> errors;
    if (std::isinf(horizon) && !model.max_users) {
        errors.emplace_back("steady-state runs over an unbounded horizon need a max-users cap");
    }
    if (!(model.burn_in < horizon)) {
        errors.push_back(fmt::format("burn-in {} must be before the run length {}", model.burn_in, horizon));
    }
    if (options.simulation.replicates < 1) {
        errors.emplace_back("at least one replicate is required");
    }
    if (!(options.run_length > 0.0)) {
        errors.push_back(fmt::format("run length must be positive, got {}", options.run_length));
    }
    for (auto& e : validate_model(model)) {
        errors.push_back(std::move(e));
    }
    if (!errors.empty()) {
        throw InvalidInputs(std::move(errors));
    }

    SteadyStateResult result;
    result.replicates.resize(options.simulation.replicates);
    detail::parallel_for(result.replicates.size(), options.simulation.workers, [&](std::size_t rep) {
        RandomStream stream(options.simulation.seed, rep + 1);
        QueueInputs inputs;
        inputs.arrive = sample_arrivals(model.arrival_rate, horizon, stream, model.max_users);
        inputs.use_full = sample_use_times(model.mean_use, inputs.arrive.size(), stream);
        inputs.patience = model.patience;
        inputs.config = model.config;
        const QueueOutcome outcome = run_queue(inputs);
        result.replicates[rep] = user_means(outcome.users, model.burn_in);
    });
    for (const auto& r : result.replicates) {
        if (r.users == 0) {
            ++result.empty_replicates;
        }
    }
    return result;
}

} // namespace queuesim
