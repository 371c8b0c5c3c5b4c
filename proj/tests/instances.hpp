#pragma once

// Random queue instances for property and oracle tests.

#include <algorithm>
#include <cmath>
#include <random>

#include "queuesim/types.hpp"

namespace instances {

struct Options {
    std::size_t max_users = 50;
    std::size_t max_facilities = 5;
    /// Snap every time to multiples of 0.5 so exact ties become common.
    bool grid = false;
    bool initial_delays = true;
};

inline double snap(double v, bool grid) { return grid ? std::round(v * 2.0) / 2.0 : v; }

inline queuesim::PatienceSpec random_patience(std::mt19937_64& rng, std::size_t users, bool grid)
{
    using namespace queuesim;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return Constant{kInfinity};
    case 1: return Constant{snap(5.0 * unit(rng), grid)};
    case 2: return ExpDecay{1.0 + 7.0 * unit(rng), 0.5 + 3.5 * unit(rng)};
    case 3: return QueueCap{std::uniform_int_distribution<std::size_t>(0, 4)(rng)};
    default: {
        ExplicitMatrix m;
        for (std::size_t k = 1; k <= users; ++k) {
            std::vector<Time> row(k);
            for (auto& v : row) {
                v = unit(rng) < 0.15 ? kInfinity : snap(10.0 * unit(rng), grid);
            }
            std::sort(row.begin(), row.end(), std::greater<>());
            m.rows.push_back(std::move(row));
        }
        return m;
    }
    }
}

inline queuesim::QueueInputs random_instance(std::mt19937_64& rng, const Options& opt = {})
{
    using namespace queuesim;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    QueueInputs in;
    const std::size_t users = std::uniform_int_distribution<std::size_t>(0, opt.max_users)(rng);
    const double rate = 0.3 + 2.7 * unit(rng);
    const double mean_use = 1.0 + 7.0 * unit(rng);
    std::exponential_distribution<double> gap(rate);
    double t = 0.0;
    for (std::size_t k = 0; k < users; ++k) {
        t += gap(rng);
        in.arrive.push_back(snap(t, opt.grid));
        in.use_full.push_back(snap(2.0 * mean_use * unit(rng), opt.grid));
    }

    auto& cfg = in.config;
    cfg.facilities = std::uniform_int_distribution<std::size_t>(1, opt.max_facilities)(rng);
    cfg.revive = unit(rng) < 0.5 ? 0.0 : 2.0;
    if (unit(rng) < 0.5) {
        cfg.close_arrive = std::max(0.5, snap(5.0 + 35.0 * unit(rng), opt.grid));
        cfg.close_service = unit(rng) < 0.2 ? kInfinity
                                            : cfg.close_arrive + (unit(rng) < 0.5 ? 0.0 : snap(10.0 * unit(rng), opt.grid));
        cfg.close_full =
            unit(rng) < 0.5 ? cfg.close_service : cfg.close_service + snap(10.0 * unit(rng), opt.grid);
    }
    if (opt.initial_delays && unit(rng) < 0.2) {
        cfg.initial_delays.resize(cfg.facilities);
        for (auto& d : cfg.initial_delays) {
            d = snap(5.0 * unit(rng), opt.grid);
        }
        cfg.initial_delays[std::uniform_int_distribution<std::size_t>(0, cfg.facilities - 1)(rng)] = 0.0;
    }
    in.patience = random_patience(rng, users, opt.grid);
    return in;
}

} // namespace instances
