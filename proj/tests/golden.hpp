#pragma once

// Published 20-user, 3-facility worked example. Inputs are rebuilt from the
// printed output: arrivals verbatim, intended use = use + unserved.

#include <array>
#include <optional>

#include "queuesim/types.hpp"

namespace golden {

struct Row {
    double arrive;
    double wait;
    double use;
    double leave;
    double unserved;
    std::optional<std::size_t> facility;
};

inline constexpr std::size_t kUsers = 20;

inline const std::array<Row, kUsers> kUserTable{{
    {1.132773, 0.000000, 1.295324, 2.428096, 0.000000, 1},
    {2.905237, 0.000000, 8.684531, 11.589768, 0.000000, 2},
    {3.123797, 0.000000, 4.935293, 8.059090, 0.000000, 3},
    {3.333490, 1.094606, 9.851356, 14.279452, 0.000000, 1},
    {3.987593, 3.032653, 0.000000, 3.987593, 7.7647223, std::nullopt},
    {8.330046, 1.729045, 9.395193, 19.454283, 0.000000, 3},
    {10.174389, 3.032653, 0.000000, 10.174389, 6.6364357, std::nullopt},
    {10.983913, 1.839397, 0.000000, 10.983913, 6.3566350, std::nullopt},
    {12.418764, 1.171004, 9.472275, 23.062043, 0.000000, 2},
    {12.639333, 3.032653, 0.000000, 12.639333, 0.2799744, std::nullopt},
    {14.725436, 1.554016, 5.726761, 22.006213, 0.000000, 1},
    {15.868481, 3.032653, 0.000000, 15.868481, 8.7877649, std::nullopt},
    {17.724886, 3.032653, 0.000000, 17.724886, 8.3127787, std::nullopt},
    {24.360787, 0.000000, 5.731435, 30.092223, 0.000000, 1},
    {25.942602, 0.000000, 9.057398, 35.000000, 1.2771158, 2},
    {27.495468, 0.000000, 5.257165, 32.752633, 0.000000, 3},
    {30.309521, 0.000000, 0.000000, 30.309521, 2.9375673, std::nullopt},
    {31.291641, 0.000000, 0.000000, 31.291641, 0.8481486, std::nullopt},
    {31.797041, 0.000000, 0.000000, 31.797041, 1.1935939, std::nullopt},
    {32.679761, 0.000000, 0.000000, 32.679761, 3.7952605, std::nullopt},
}};

struct FacilityRow {
    double open;
    double end_service;
    double use;
    double revive;
};

inline constexpr std::array<FacilityRow, 3> kFacilityTable{{
    {0.0, 30.09222, 22.60488, 8.0},
    {0.0, 35.00000, 27.21420, 6.0},
    {0.0, 32.75263, 19.58765, 6.0},
}};

// Summary table: columns wait, use, unserved, use_full, use_prop.
inline constexpr std::array<double, 5> kMean{1.1275667, 3.4703365, 2.4094999, 5.8798364, 0.4938211};
inline constexpr std::array<double, 5> kSd{1.2960294, 4.0454886, 3.2593190, 3.2562273, 0.5073632};
inline constexpr std::array<double, 5> kProbs{0.0, 0.25, 0.5, 0.75, 1.0};
inline constexpr std::array<std::array<double, 5>, 5> kQuantiles{{
    {0.0000000, 0.0000000, 0.0000000, 0.2799744, 0.0000000},
    {0.0000000, 0.0000000, 0.0000000, 3.5808372, 0.0000000},
    {0.5473032, 0.6476618, 0.5640615, 6.0440352, 0.4382111},
    {2.1377112, 6.4697094, 4.4356041, 8.7103397, 1.0000000},
    {3.0326533, 9.8513555, 8.7877649, 10.3345137, 1.0000000},
}};

inline queuesim::QueueInputs inputs()
{
    queuesim::QueueInputs in;
    for (const auto& r : kUserTable) {
        in.arrive.push_back(r.arrive);
        in.use_full.push_back(r.use + r.unserved);
    }
    in.patience = queuesim::ExpDecay{5.0, 2.0};
    in.config.facilities = 3;
    in.config.revive = 2.0;
    in.config.close_arrive = 30.0;
    in.config.close_service = 35.0;
    in.config.close_full = 35.0;
    return in;
}

} // namespace golden
