#include "queuesim/generative.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "queuesim/queue.hpp"

namespace queuesim {

GenerativeModel reference_model(std::size_t facilities)
{
    GenerativeModel model;
    model.arrival_rate = 1.5;
    model.mean_use = 6.0;
    model.patience = ExpDecay{5.0, 2.0};
    model.config.facilities = facilities;
    model.config.revive = 2.0;
    model.config.close_arrive = 30.0;
    model.config.close_service = 35.0;
    model.config.close_full = 35.0;
    return model;
}

std::vector<std::string> validate_model(const GenerativeModel& model)
{
    std::vector<std::string> errors;
    if (!(model.arrival_rate > 0.0) || !std::isfinite(model.arrival_rate)) {
        errors.push_back(fmt::format("arrival rate must be positive and finite, got {}", model.arrival_rate));
    }
    if (!(model.mean_use > 0.0) || !std::isfinite(model.mean_use)) {
        errors.push_back(fmt::format("mean use-time must be positive and finite, got {}", model.mean_use));
    }
    if (!(model.burn_in >= 0.0) || !std::isfinite(model.burn_in)) {
        errors.push_back(fmt::format("burn-in must be finite and non-negative, got {}", model.burn_in));
    }
    if (std::holds_alternative<ExplicitMatrix>(model.patience)) {
        errors.emplace_back("a generative model needs a parametric patience function, not a matrix");
    }
    else {
        for (auto& e : validate_patience(model.patience, 0)) {
            errors.push_back(std::move(e));
        }
    }
    for (auto& e : validate_config(model.config).errors) {
        errors.push_back(std::move(e));
    }
    return errors;
}

std::vector<Time> sample_arrivals(double rate, Time horizon, RandomStream& stream, std::optional<std::size_t> max_users)
{
    if (std::isinf(horizon) && !max_users) {
        throw std::invalid_argument("sampling arrivals over an unbounded horizon needs a max-users cap");
    }
    std::vector<Time> arrivals;
    Time t = 0.0;
    while (!max_users || arrivals.size() < *max_users) {
        t += stream.exponential(rate);
        if (t >= horizon) {
            break;
        }
        arrivals.push_back(t);
    }
    return arrivals;
}

std::vector<Time> sample_use_times(Time mean_use, std::size_t count, RandomStream& stream)
{
    std::vector<Time> out(count);
    for (auto& u : out) {
        u = stream.uniform(0.0, 2.0 * mean_use);
    }
    return out;
}

QueueInputs sample_inputs(const GenerativeModel& model, RandomStream& stream)
{
    auto errors = validate_model(model);
    if (std::isinf(model.config.close_arrive) && !model.max_users) {
        errors.emplace_back("arrivals never close; a max-users cap is required");
    }
    if (!errors.empty()) {
        throw InvalidInputs(std::move(errors));
    }
    QueueInputs inputs;
    inputs.arrive = sample_arrivals(model.arrival_rate, model.config.close_arrive, stream, model.max_users);
    inputs.use_full = sample_use_times(model.mean_use, inputs.arrive.size(), stream);
    inputs.patience = model.patience;
    inputs.config = model.config;
    return inputs;
}

} // namespace queuesim
