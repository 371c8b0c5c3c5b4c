#pragma once

// Outcome invariants shared by the property tests and the acceptance binary.
// Each checker returns a description of every violation it found.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "queuesim/queue.hpp"
#include "queuesim/risk.hpp"
#include "queuesim/summary.hpp"

namespace invariants {

using namespace queuesim;
using Violations = std::vector<std::string>;

inline bool close_enough(double a, double b, double rel = 1e-12)
{
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// a > b beyond rounding
inline bool exceeds(double a, double b) { return a > b && !close_enough(a, b); }

inline void users(const QueueInputs& in, const QueueOutcome& out, Violations& v)
{
    const auto& cfg = in.config;
    if (out.users.size() != in.users()) {
        v.push_back("user count differs from inputs");
        return;
    }
    for (std::size_t k = 0; k < out.users.size(); ++k) {
        const auto& u = out.users[k];
        auto fail = [&](const char* what) { v.push_back(fmt::format("user {}: {}", k + 1, what)); };
        if (u.arrive != in.arrive[k] || u.use_full != in.use_full[k]) fail("inputs not carried through");
        if (!(u.wait >= 0.0)) fail("negative wait");
        if (!(u.use >= 0.0 && u.use <= u.use_full)) fail("use outside [0, use_full]");
        if (u.unserved != u.use_full - u.use) fail("unserved != use_full - use");
        if (u.served != u.facility.has_value()) fail("served flag and facility disagree");
        if (!close_enough(u.initiation, u.arrive + u.wait)) fail("initiation != arrive + wait");
        if (exceeds(u.wait, std::max(cfg.close_service - u.arrive, 0.0))) fail("wait beyond service closure");
        if (exceeds(u.use, std::max(cfg.close_full - u.initiation, 0.0))) fail("use beyond full closure");
        if (exceeds(u.wait, patience_value(in.patience, k + 1, 1))) fail("wait beyond priority-1 patience");
        if (u.served) {
            if (!close_enough(u.leave, u.arrive + u.wait + u.use)) fail("leave != arrive + wait + use");
            if (u.leave > cfg.close_full) fail("served user leaves after full closure");
            if (!(u.initiation < cfg.close_service)) fail("service starts at or after service closure");
            if (u.initiation < cfg.initial_delay(*u.facility - 1)) fail("service before facility opens");
        }
        else {
            if (u.use != 0.0) fail("unserved user has use");
            if (u.leave != u.arrive) fail("unserved user leave != arrive");
        }
        if (u.arrive >= cfg.close_arrive && (u.wait != 0.0 || u.served)) fail("closed arrival waited or served");
    }
}

inline void fcfs(const QueueOutcome& out, Violations& v)
{
    Time last = -kInfinity;
    for (std::size_t k = 0; k < out.users.size(); ++k) {
        const auto& u = out.users[k];
        if (u.served) {
            if (u.initiation < last) {
                v.push_back(fmt::format("user {}: starts before an earlier served user", k + 1));
            }
            last = u.initiation;
        }
    }
}

inline void facilities(const QueueOutcome& out, Violations& v)
{
    const auto& cfg = out.config;
    std::map<std::size_t, std::vector<const UserRecord*>> by_facility;
    for (const auto& u : out.users) {
        if (u.facility) {
            by_facility[*u.facility].push_back(&u);
        }
    }
    for (auto& [f, list] : by_facility) {
        std::stable_sort(list.begin(), list.end(),
                  [](const UserRecord* a, const UserRecord* b) { return a->initiation < b->initiation; });
        for (std::size_t j = 1; j < list.size(); ++j) {
            const Time free_at = list[j - 1]->initiation + list[j - 1]->use + cfg.revive;
            if (list[j]->initiation < free_at - 1e-9 * std::max(1.0, free_at)) {
                v.push_back(fmt::format("facility {}: services closer than the revival-time", f));
            }
        }
    }
    if (out.facilities.size() != cfg.facilities) {
        v.push_back("facility count differs from config");
        return;
    }
    for (std::size_t i = 0; i < cfg.facilities; ++i) {
        const auto& f = out.facilities[i];
        double use = 0.0;
        std::size_t count = 0;
        for (const auto& u : out.users) {
            if (u.facility == i + 1) {
                use += u.use;
                ++count;
            }
        }
        if (f.use != use) v.push_back(fmt::format("facility {}: use != sum of user use", i + 1));
        if (f.users_served != count) v.push_back(fmt::format("facility {}: wrong served count", i + 1));
        if (f.revive != cfg.revive * static_cast<double>(count))
            v.push_back(fmt::format("facility {}: revive != r x served", i + 1));
        if (f.open != cfg.initial_delay(i)) v.push_back(fmt::format("facility {}: wrong opening", i + 1));
        if (f.use + f.revive > f.end_service - f.open + cfg.revive + 1e-9 * std::max(1.0, f.end_service))
            v.push_back(fmt::format("facility {}: busy time exceeds its span", i + 1));
    }
}

inline void delays(const QueueInputs& in, Violations& v)
{
    DelayState state = DelayState::initial(in.config);
    std::vector<Time> exits;
    std::vector<Time> available = state.free_at;
    for (std::size_t k = 0; k < in.users(); ++k) {
        const auto rec = step_user(state, k + 1, in.arrive[k], in.use_full[k], in.patience, exits, in.config);
        exits.push_back(rec.initiation);
        const auto remaining = state.delays();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const Time at = state.time + remaining[i];
            if (remaining[i] < 0.0) v.push_back(fmt::format("user {}: negative delay", k + 1));
            if (at < available[i] - 1e-12 * std::max(1.0, at))
                v.push_back(fmt::format("user {}: facility {} availability moved earlier", k + 1, i + 1));
            available[i] = at;
        }
    }
}

inline void patience(const QueueInputs& in, Violations& v)
{
    for (std::size_t k = 1; k <= in.users(); ++k) {
        for (std::size_t p = 2; p <= k; ++p) {
            if (patience_value(in.patience, k, p) > patience_value(in.patience, k, p - 1)) {
                v.push_back(fmt::format("user {}: patience increases at priority {}", k, p));
            }
        }
    }
}

inline void summary(const QueueOutcome& out, Violations& v)
{
    if (out.users.empty()) {
        return;
    }
    const auto table = summarize(out);
    const double full = table.at(Metric::use_full).mean;
    if (!close_enough(table.at(Metric::use).mean + table.at(Metric::unserved).mean, full))
        v.push_back("mean(use) + mean(unserved) != mean(use_full)");
    for (double p : metric_values(out.users, Metric::use_prop)) {
        if (!(p >= 0.0 && p <= 1.0)) v.push_back("use_prop outside [0, 1]");
    }
    for (Metric m : kAllMetrics) {
        const auto& s = table.at(m);
        if (s.count == 0) continue;
        auto values = metric_values(out.users, m);
        std::sort(values.begin(), values.end());
        if (s.quantiles.front() != values.front() || s.quantiles.back() != values.back())
            v.push_back(fmt::format("{}: extreme quantiles are not min and max", metric_name(m)));
        if (!std::is_sorted(s.quantiles.begin(), s.quantiles.end()))
            v.push_back(fmt::format("{}: quantiles decrease", metric_name(m)));
    }
}

inline void loss(const QueueOutcome& out, Violations& v)
{
    const CostSpec costs{30.0, 1.0, 2.0};
    const double floor = costs.facility * static_cast<double>(out.config.facilities);
    const double value = queuesim::loss(out, costs);
    if (value < floor) v.push_back("loss below the facility cost");
    bool idle = true;
    for (const auto& u : out.users) {
        if (u.arrive < out.config.close_arrive && (u.wait > 0.0 || u.unserved > 0.0)) idle = false;
    }
    if ((value == floor) != idle) v.push_back("loss equals the facility cost for the wrong reason");
    CostSpec free = costs;
    free.facility = 0.0;
    if (!close_enough(value - queuesim::loss(out, free), floor)) v.push_back("facility component of loss != C_F n");
}

inline Violations all(const QueueInputs& in, const QueueOutcome& out)
{
    Violations v;
    users(in, out, v);
    fcfs(out, v);
    facilities(out, v);
    delays(in, v);
    patience(in, v);
    summary(out, v);
    loss(out, v);
    return v;
}

} // namespace invariants
