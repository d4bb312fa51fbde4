// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace chargechain::scheduler {

void SchedulerParams::validate() const {
    if (beta1 < 0 || beta2 < 0 || beta1 + beta2 != kPerMilleOne) {
        throw InvalidInput("weights must be non-negative and sum to 1000, got " + std::to_string(beta1) + " + " +
                           std::to_string(beta2));
    }
    if (capacity < 0 || regular_load < 0 || capacity > kMaxPower) {
        throw InvalidInput("capacity and regular load must be non-negative");
    }
    if (regular_load > capacity) {
        throw InvalidInput("regular load " + std::to_string(regular_load) + " exceeds capacity " +
                           std::to_string(capacity));
    }
}

void EsuDemand::validate() const {
    if (power <= 0 || power > kMaxPower) {
        throw InvalidInput("requested power must be positive, got " + std::to_string(power));
    }
    if (soc < 0 || soc >= kPerMilleOne) {
        throw InvalidInput("state of charge must be in [0, 1000), got " + std::to_string(soc));
    }
    if (tcc < 1) {
        throw InvalidInput("time to complete charge must be at least one slot, got " + std::to_string(tcc));
    }
}

Kilowatts SlotSchedule::total_granted() const {
    return std::accumulate(granted.begin(), granted.end(), Kilowatts{0},
                           [](Kilowatts acc, const auto& kv) { return acc + kv.second; });
}

Kilowatts SlotSchedule::granted_to(const Address& id) const {
    auto it = granted.find(id);
    return it == granted.end() ? 0 : it->second;
}

PerMille f_of_tcc(std::int32_t tcc) {
    if (tcc < 1) {
        throw InvalidInput("time to complete charge must be at least one slot");
    }
    switch (tcc) {
        case 1: return 1000;
        case 2: return 500;
        default: return 0;
    }
}

Priority priority(const EsuDemand& demand, const SchedulerParams& params) {
    params.validate();
    demand.validate();
    const std::int64_t weighted = std::int64_t{params.beta1} * (kPerMilleOne - demand.soc) +
                                  std::int64_t{params.beta2} * f_of_tcc(demand.tcc);
    return {static_cast<PerMille>(weighted / kPerMilleOne)};
}

namespace {

struct Ranked {
    const EsuDemand* demand;
    PerMille value;
};

void validate_slot(std::span<const EsuDemand> demands, const SchedulerParams& params) {
    params.validate();
    std::set<std::uint64_t> seqs;
    std::set<Address> ids;
    for (const auto& d : demands) {
        d.validate();
        if (!seqs.insert(d.arrival_seq).second) {
            throw InvalidInput("duplicate arrival sequence " + std::to_string(d.arrival_seq));
        }
        if (!ids.insert(d.id).second) {
            throw InvalidInput("duplicate ESU address " + d.id.hex());
        }
    }
}

// Strict total order: higher value/power first, then earlier arrival.
bool ranks_before(const Ranked& a, const Ranked& b) {
    const std::int64_t lhs = std::int64_t{a.value} * b.demand->power;
    const std::int64_t rhs = std::int64_t{b.value} * a.demand->power;
    if (lhs != rhs) return lhs > rhs;
    return a.demand->arrival_seq < b.demand->arrival_seq;
}

std::vector<Ranked> ranked_order(std::span<const EsuDemand> demands, const SchedulerParams& params) {
    std::vector<Ranked> order;
    order.reserve(demands.size());
    for (const auto& d : demands) order.push_back({&d, priority(d, params).value});
    std::sort(order.begin(), order.end(), ranks_before);
    return order;
}

std::vector<const EsuDemand*> arrival_order(std::span<const EsuDemand> demands) {
    std::vector<const EsuDemand*> order;
    order.reserve(demands.size());
    for (const auto& d : demands) order.push_back(&d);
    std::sort(order.begin(), order.end(),
              [](const EsuDemand* a, const EsuDemand* b) { return a->arrival_seq < b->arrival_seq; });
    return order;
}

// Remainder goes to the first skipped entry; every skipped entry is deferred.
void assign_remainder(SlotSchedule& out, std::span<const EsuDemand* const> skipped, Kilowatts remaining) {
    if (!skipped.empty() && remaining > 0) {
        out.granted[skipped.front()->id] = remaining;
        out.partially_scheduled = skipped.front()->id;
    }
    for (const auto* d : skipped) out.deferred.push_back(d->id);
}

}  // namespace

std::vector<Address> rank(std::span<const EsuDemand> demands, const SchedulerParams& params) {
    validate_slot(demands, params);
    std::vector<Address> out;
    out.reserve(demands.size());
    for (const auto& r : ranked_order(demands, params)) out.push_back(r.demand->id);
    return out;
}

SlotSchedule schedule_slot(std::span<const EsuDemand> demands, const SchedulerParams& params) {
    validate_slot(demands, params);
    SlotSchedule out;
    Kilowatts remaining = params.headroom();
    std::vector<const EsuDemand*> skipped;
    for (const auto& r : ranked_order(demands, params)) {
        if (r.demand->power <= remaining) {
            out.granted[r.demand->id] = r.demand->power;
            out.fully_scheduled.push_back(r.demand->id);
            remaining -= r.demand->power;
        } else {
            skipped.push_back(r.demand);
        }
    }
    assign_remainder(out, skipped, remaining);
    return out;
}

SlotSchedule schedule_slot_fcfs(std::span<const EsuDemand> demands, const SchedulerParams& params) {
    validate_slot(demands, params);
    SlotSchedule out;
    Kilowatts remaining = params.headroom();
    const auto order = arrival_order(demands);
    std::size_t i = 0;
    for (; i < order.size() && order[i]->power <= remaining; ++i) {
        out.granted[order[i]->id] = order[i]->power;
        out.fully_scheduled.push_back(order[i]->id);
        remaining -= order[i]->power;
    }
    assign_remainder(out, std::span(order).subspan(i), remaining);
    return out;
}

SlotSchedule schedule(Policy policy, std::span<const EsuDemand> demands, const SchedulerParams& params) {
    return policy == Policy::Fcfs ? schedule_slot_fcfs(demands, params) : schedule_slot(demands, params);
}

double charging_index(Kilowatts granted_total, Kilowatts requested_total) {
    if (requested_total <= 0) {
        throw InvalidInput("charging index needs a positive requested total");
    }
    if (granted_total < 0 || granted_total > requested_total) {
        throw InvalidInput("granted total " + std::to_string(granted_total) + " outside [0, " +
                           std::to_string(requested_total) + "]");
    }
    return static_cast<double>(granted_total) / static_cast<double>(requested_total);
}

}  // namespace chargechain::scheduler
