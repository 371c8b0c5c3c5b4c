#include "event_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

namespace oracle {

using namespace queuesim;

QueueOutcome event_sim(const QueueInputs& in)
{
    const auto& cfg = in.config;
    const std::size_t users = in.arrive.size();

    QueueOutcome out;
    out.config = cfg;
    out.users.resize(users);

    std::vector<Time> free_at(cfg.facilities);
    for (std::size_t i = 0; i < cfg.facilities; ++i) {
        free_at[i] = cfg.initial_delays.empty() ? 0.0 : cfg.initial_delays[i];
    }

    // deadlines[k][p-1] = absolute time at which user k+1 gives up if still
    // at priority p or worse.
    std::vector<std::vector<Time>> deadlines(users);
    for (std::size_t k = 0; k < users; ++k) {
        for (std::size_t p = 1; p <= k + 1; ++p) {
            deadlines[k].push_back(in.arrive[k] + patience_value(in.patience, k + 1, p));
        }
    }

    std::deque<std::size_t> queue;
    std::size_t next_arrival = 0;
    Time now = -kInfinity;

    while (next_arrival < users || !queue.empty()) {
        Time t = next_arrival < users ? in.arrive[next_arrival] : kInfinity;
        if (!queue.empty()) {
            for (Time f : free_at) {
                if (f > now) {
                    t = std::min(t, f);
                }
            }
            if (cfg.close_service > now) {
                t = std::min(t, cfg.close_service);
            }
            for (std::size_t k : queue) {
                for (Time d : deadlines[k]) {
                    if (d > now) {
                        t = std::min(t, d);
                    }
                }
            }
        }
        if (std::isinf(t)) {
            // Only reachable if someone waits forever, which finite facility
            // clocks rule out.
            break;
        }
        now = t;

        while (next_arrival < users && in.arrive[next_arrival] <= now) {
            const std::size_t k = next_arrival++;
            auto& u = out.users[k];
            u.arrive = in.arrive[k];
            u.use_full = in.use_full[k];
            u.unserved = in.use_full[k];
            u.initiation = u.arrive;
            u.leave = u.arrive;
            if (u.arrive < cfg.close_arrive) {
                queue.push_back(k);
            }
        }

        std::deque<std::size_t> still_waiting;
        for (std::size_t k : queue) {
            auto& u = out.users[k];
            const std::size_t priority = still_waiting.size() + 1;
            bool gives_up = now >= cfg.close_service;
            for (std::size_t p = 1; !gives_up && p <= std::min(priority, k + 1); ++p) {
                gives_up = deadlines[k][p - 1] <= now;
            }
            if (gives_up) {
                u.wait = now - u.arrive;
                u.initiation = now;
                continue;
            }
            std::optional<std::size_t> idle;
            for (std::size_t i = 0; i < free_at.size(); ++i) {
                if (free_at[i] <= now) {
                    idle = i;
                    break;
                }
            }
            if (!idle) {
                still_waiting.push_back(k);
                continue;
            }
            u.wait = now - u.arrive;
            u.initiation = now;
            u.served = true;
            u.facility = *idle + 1;
            // a service cut short ends exactly at the full closure
            const bool cut = !(u.use_full < cfg.close_full - now);
            u.use = cut ? cfg.close_full - now : u.use_full;
            u.leave = cut ? cfg.close_full : now + u.use_full;
            u.unserved = u.use_full - u.use;
            free_at[*idle] = u.leave + cfg.revive;
        }
        queue = std::move(still_waiting);
    }

    out.facilities.resize(cfg.facilities);
    for (std::size_t i = 0; i < cfg.facilities; ++i) {
        auto& f = out.facilities[i];
        f.open = cfg.initial_delays.empty() ? 0.0 : cfg.initial_delays[i];
        f.end_service = f.open;
        for (const auto& u : out.users) {
            if (u.facility == i + 1) {
                f.use += u.use;
                f.end_service = std::max(f.end_service, u.leave);
                ++f.users_served;
            }
        }
        f.revive = cfg.revive * static_cast<double>(f.users_served);
    }
    return out;
}

} // namespace oracle
