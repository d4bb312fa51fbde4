// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Per-slot charging scheduler.
//
// Each energy storage unit (ESU) asks for `power` kW in the current slot and
// reports its state of charge and the number of slots left before it must be
// full. A priority combines emptiness and urgency; the slot's headroom
// (bus capacity minus the regular load) is packed with a ratio-greedy
// knapsack over priority per kW, and whatever headroom is left after the walk
// goes to the best-ranked ESU that did not fit.
//
// All quantities are integers. Fractions in [0, 1] are carried per-mille so
// that every replica computes bit-identical schedules.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "chargechain/bytes.hpp"

namespace chargechain::scheduler {

using Kilowatts = std::int64_t;
using PerMille = std::int32_t;

inline constexpr PerMille kPerMilleOne = 1000;
/// Upper bound on any single power value; keeps priority-power products inside int64.
inline constexpr Kilowatts kMaxPower = Kilowatts{1} << 48;

class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct SchedulerParams {
    PerMille beta1 = 500;  // weight of emptiness (1 - SoC)
    PerMille beta2 = 500;  // weight of urgency F(TCC)
    Kilowatts capacity = 0;
    Kilowatts regular_load = 0;

    [[nodiscard]] Kilowatts headroom() const { return capacity - regular_load; }
    /// Throws InvalidInput unless the weights sum to 1000 and 0 <= regular_load <= capacity.
    void validate() const;
};

struct EsuDemand {
    Address id;
    Kilowatts power = 0;
    PerMille soc = 0;         // [0, 1000)
    std::int32_t tcc = 1;     // slots, >= 1
    std::uint64_t arrival_seq = 0;

    void validate() const;
    bool operator==(const EsuDemand&) const = default;
};

struct Priority {
    PerMille value = 0;  // [0, 1000]

    auto operator<=>(const Priority&) const = default;
};

struct SlotSchedule {
    std::map<Address, Kilowatts> granted;
    std::vector<Address> fully_scheduled;       // rank order
    std::optional<Address> partially_scheduled;
    std::vector<Address> deferred;              // rank order, includes the partial recipient

    [[nodiscard]] Kilowatts total_granted() const;
    [[nodiscard]] Kilowatts granted_to(const Address& id) const;

    bool operator==(const SlotSchedule&) const = default;
};

/// Urgency term: 1000 at one slot left, 500 at two, 0 from three slots on.
PerMille f_of_tcc(std::int32_t tcc);

Priority priority(const EsuDemand& demand, const SchedulerParams& params);

/// Descending priority-per-kW order, compared exactly by cross-multiplication;
/// ties go to the earlier arrival.
std::vector<Address> rank(std::span<const EsuDemand> demands, const SchedulerParams& params);

/// Ratio-greedy knapsack with the remainder rule.
SlotSchedule schedule_slot(std::span<const EsuDemand> demands, const SchedulerParams& params);

/// First-come-first-serve baseline: serves arrivals in order until one does
/// not fit, gives it the remainder and defers everything after it.
SlotSchedule schedule_slot_fcfs(std::span<const EsuDemand> demands, const SchedulerParams& params);

enum class Policy : std::uint8_t { Proposed = 0, Fcfs = 1 };

SlotSchedule schedule(Policy policy, std::span<const EsuDemand> demands, const SchedulerParams& params);

double charging_index(Kilowatts granted_total, Kilowatts requested_total);

}  // namespace chargechain::scheduler
