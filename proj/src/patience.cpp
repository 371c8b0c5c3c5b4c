#include "queuesim/patience.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace queuesim {

namespace {

template <class... Ts> struct overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overload(Ts...) -> overload<Ts...>;

} // namespace

Time patience_value(const PatienceSpec& spec, std::size_t user, std::size_t priority)
{
    if (priority < 1 || priority > user) {
        throw std::out_of_range(
            fmt::format("priority {} out of range 1..{} for user {}", priority, user, user));
    }
    return std::visit(
        overload{
            [&](const ExplicitMatrix& m) -> Time {
                if (user > m.rows.size() || m.rows[user - 1].size() < priority) {
                    throw std::out_of_range(
                        fmt::format("patience matrix has no entry ({}, {})", user, priority));
                }
                return m.rows[user - 1][priority - 1];
            },
            [&](const ExpDecay& d) -> Time {
                return d.scale * std::exp(-static_cast<double>(priority) / d.shape);
            },
            [&](const QueueCap& c) -> Time { return priority <= c.capacity ? kInfinity : 0.0; },
            [](const Constant& c) -> Time { return c.value; },
        },
        spec);
}

PatienceMatrix build_patience_matrix(const PatienceSpec& spec, std::size_t users)
{
    if (const auto* m = std::get_if<ExplicitMatrix>(&spec)) {
        return m->rows;
    }
    PatienceMatrix out(users);
    for (std::size_t k = 1; k <= users; ++k) {
        auto& row = out[k - 1];
        row.reserve(k);
        for (std::size_t p = 1; p <= k; ++p) {
            row.push_back(patience_value(spec, k, p));
        }
    }
    return out;
}

std::vector<std::string> validate_patience(const PatienceSpec& spec, std::size_t users)
{
    std::vector<std::string> errors;
    std::visit(
        overload{
            [&](const ExplicitMatrix& m) {
                if (m.rows.size() != users) {
                    errors.push_back(fmt::format(
                        "patience matrix has {} rows but there are {} users", m.rows.size(), users));
                }
                for (std::size_t k = 0; k < m.rows.size(); ++k) {
                    const auto& row = m.rows[k];
                    if (row.size() != k + 1) {
                        errors.push_back(fmt::format(
                            "patience matrix not lower-triangular: row {} has {} entries, expected {}",
                            k + 1, row.size(), k + 1));
                        continue;
                    }
                    for (std::size_t p = 0; p < row.size(); ++p) {
                        if (std::isnan(row[p]) || row[p] < 0.0) {
                            errors.push_back(fmt::format(
                                "patience ({}, {}) must be non-negative, got {}", k + 1, p + 1, row[p]));
                        }
                        else if (p > 0 && row[p] > row[p - 1]) {
                            errors.push_back(fmt::format(
                                "patience row {} not non-increasing in priority at {}", k + 1, p + 1));
                        }
                    }
                }
            },
            [&](const ExpDecay& d) {
                if (!(d.scale > 0.0) || !std::isfinite(d.scale)) {
                    errors.push_back(fmt::format("exp-decay scale must be positive and finite, got {}", d.scale));
                }
                if (!(d.shape > 0.0) || !std::isfinite(d.shape)) {
                    errors.push_back(fmt::format("exp-decay shape must be positive and finite, got {}", d.shape));
                }
            },
            [](const QueueCap&) {},
            [&](const Constant& c) {
                if (std::isnan(c.value) || c.value < 0.0) {
                    errors.push_back(fmt::format("constant patience must be non-negative, got {}", c.value));
                }
            },
        },
        spec);
    return errors;
}

std::string patience_kind(const PatienceSpec& spec)
{
    return std::visit(overload{
                          [](const ExplicitMatrix&) { return std::string{"matrix"}; },
                          [](const ExpDecay&) { return std::string{"exp-decay"}; },
                          [](const QueueCap&) { return std::string{"queue-cap"}; },
                          [](const Constant&) { return std::string{"constant"}; },
                      },
                      spec);
}

} // namespace queuesim
