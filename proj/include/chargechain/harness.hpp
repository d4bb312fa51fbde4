// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Monte Carlo comparison of the priority scheduler against first-come-first-serve.
//
// Every run starts with a batch of ESUs, adds Poisson(lambda) new requests per
// slot and drives the contract slot by slot. Workloads are drawn from streams
// keyed by (seed, run, slot) only, so both schedulers see the same arrivals.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "chargechain/scheduler.hpp"

namespace chargechain::harness {

using scheduler::Kilowatts;
using scheduler::PerMille;
using scheduler::Policy;

struct SimConfig {
    std::int32_t num_slots = 30;
    Kilowatts battery_capacity = 200;
    Kilowatts headroom = 1000;
    std::int32_t initial_esus = 10;
    std::vector<double> lambdas{2, 4, 6, 8, 10};
    double tcc_mean = 4.0;
    std::int32_t runs = 80;
    std::uint64_t seed = 20190101;
    PerMille beta1 = 500;
    PerMille beta2 = 500;
    std::uint32_t threads = 0;  // 0: hardware concurrency

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

void to_json(nlohmann::json& j, const SimConfig& c);
/// Missing fields keep their defaults; unknown fields are rejected.
void from_json(const nlohmann::json& j, SimConfig& c);

const char* to_string(Policy policy);

/// Deterministic generator for one (seed, run, slot) stream.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t run, std::uint64_t slot);

/// Geometric on {1, 2, ...} with the given mean.
std::int32_t sample_tcc(std::mt19937_64& rng, double mean);
std::int32_t sample_arrivals(std::mt19937_64& rng, double lambda);
/// battery * (1000 - soc) / 1000 rounded half-up, at least 1 kW.
Kilowatts requested_power(Kilowatts battery_capacity, PerMille soc);

/// New demands for one slot: `initial_esus` at slot 0, Poisson(lambda) afterwards.
/// Addresses encode (run, slot, index); arrival_seq is left at 0 for the contract to assign.
std::vector<scheduler::EsuDemand> generate_population(const SimConfig& config, double lambda, std::uint64_t run,
                                                      std::int32_t slot);

struct RunResult {
    std::vector<double> indices;  // per ESU, arrival order
    double mean_index = 0.0;
    Policy policy = Policy::Proposed;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t run = 0;
    Kilowatts requested_total = 0;
    Kilowatts granted_total = 0;

    bool operator==(const RunResult&) const = default;
};

RunResult run_once(const SimConfig& config, Policy policy, double lambda, std::uint64_t run);

struct SweepRow {
    double lambda = 0.0;
    Policy policy = Policy::Proposed;
    double mean_index = 0.0;
    double stderr_index = 0.0;
    std::int32_t runs = 0;
    std::uint64_t seed = 0;
    std::vector<double> run_means;  // one per run, run order
};

/// Rows ordered by lambda (config order), proposed before fcfs.
std::vector<SweepRow> sweep_lambda(const SimConfig& config);

/// Header `lambda,scheduler,mean_index,stderr,runs,seed`.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Percentile bootstrap interval for the mean of `samples`.
Interval bootstrap_mean_ci(const std::vector<double>& samples, double level, std::int32_t resamples,
                           std::uint64_t seed);

}  // namespace chargechain::harness
