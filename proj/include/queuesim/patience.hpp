#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "queuesim/time.hpp"

namespace queuesim {

/// Per-user patience given explicitly. `rows[k]` holds the patience of user
/// k+1 at priorities 1..k+1, so row k has exactly k+1 entries.
struct ExplicitMatrix {
    std::vector<std::vector<Time>> rows;

    bool operator==(const ExplicitMatrix&) const = default;
};

/// w(priority) = scale * exp(-priority / shape), identical for every user.
struct ExpDecay {
    Time scale = 1.0;
    double shape = 1.0;

    bool operator==(const ExpDecay&) const = default;
};

/// Finite-queue behaviour: infinite patience up to `capacity`, zero beyond.
struct QueueCap {
    std::size_t capacity = 0;

    bool operator==(const QueueCap&) const = default;
};

struct Constant {
    Time value = kInfinity;

    bool operator==(const Constant&) const = default;
};

using PatienceSpec = std::variant<ExplicitMatrix, ExpDecay, QueueCap, Constant>;

using PatienceMatrix = std::vector<std::vector<Time>>;

/// Patience of `user` while at queue `priority`; both are 1-based and
/// priority must lie in 1..user. Throws std::out_of_range otherwise.
[[nodiscard]] Time patience_value(const PatienceSpec& spec, std::size_t user, std::size_t priority);

/// Lower-triangular matrix of patience values for users 1..users.
[[nodiscard]] PatienceMatrix build_patience_matrix(const PatienceSpec& spec, std::size_t users);

/// Problems with `spec` when used for an instance of `users` users; empty
/// when valid.
[[nodiscard]] std::vector<std::string> validate_patience(const PatienceSpec& spec, std::size_t users);

[[nodiscard]] std::string patience_kind(const PatienceSpec& spec);

} // namespace queuesim
