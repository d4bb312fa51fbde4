// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "chargechain/ledger.hpp"

namespace chargechain::harness {

namespace {

constexpr std::uint32_t kPopulationStream = 1;

void require(bool ok, const std::string& field, const std::string& msg) {
    if (!ok) throw std::invalid_argument("config field '" + field + "': " + msg);
}

}  // namespace

void SimConfig::validate() const {
    require(num_slots >= 1, "num_slots", "must be at least 1");
    require(battery_capacity > 0, "battery_capacity", "must be positive");
    require(headroom >= 0, "headroom", "must be non-negative");
    require(initial_esus >= 0, "initial_esus", "must be non-negative");
    require(!lambdas.empty(), "lambdas", "must not be empty");
    std::set<double> seen;
    for (double l : lambdas) {
        require(std::isfinite(l) && l >= 0, "lambdas", "rates must be finite and non-negative");
        require(seen.insert(l).second, "lambdas", "duplicate rate " + std::to_string(l));
    }
    require(std::isfinite(tcc_mean) && tcc_mean >= 1.0, "tcc_mean", "must be at least 1");
    require(runs >= 1, "runs", "must be at least 1");
    require(beta1 >= 0 && beta2 >= 0 && beta1 + beta2 == scheduler::kPerMilleOne, "beta1/beta2",
            "must be non-negative and sum to 1000");
}

void to_json(nlohmann::json& j, const SimConfig& c) {
    j = nlohmann::json{{"num_slots", c.num_slots},   {"battery_capacity", c.battery_capacity},
                       {"headroom", c.headroom},     {"initial_esus", c.initial_esus},
                       {"lambdas", c.lambdas},       {"tcc_mean", c.tcc_mean},
                       {"runs", c.runs},             {"seed", c.seed},
                       {"beta1", c.beta1},           {"beta2", c.beta2},
                       {"threads", c.threads}};
}

void from_json(const nlohmann::json& j, SimConfig& c) {
    static const std::set<std::string> known{"num_slots", "battery_capacity", "headroom", "initial_esus",
                                             "lambdas",   "tcc_mean",         "runs",     "seed",
                                             "beta1",     "beta2",            "threads"};
    if (!j.is_object()) throw std::invalid_argument("simulation config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        require(known.contains(key), key, "unknown field");
    }
    auto field = [&](const char* name, auto& out) {
        if (!j.contains(name)) return;
        try {
            j.at(name).get_to(out);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("config field '") + name + "': " + e.what());
        }
    };
    field("num_slots", c.num_slots);
    field("battery_capacity", c.battery_capacity);
    field("headroom", c.headroom);
    field("initial_esus", c.initial_esus);
    field("lambdas", c.lambdas);
    field("tcc_mean", c.tcc_mean);
    field("runs", c.runs);
    field("seed", c.seed);
    field("beta1", c.beta1);
    field("beta2", c.beta2);
    field("threads", c.threads);
}

const char* to_string(Policy policy) { return policy == Policy::Fcfs ? "fcfs" : "proposed"; }

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t run, std::uint64_t slot) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(run),  static_cast<std::uint32_t>(run >> 32),
                      static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(slot >> 32),
                      kPopulationStream};
    return std::mt19937_64(seq);
}

std::int32_t sample_tcc(std::mt19937_64& rng, double mean) {
    std::geometric_distribution<std::int32_t> failures(1.0 / mean);
    return failures(rng) + 1;
}

std::int32_t sample_arrivals(std::mt19937_64& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    std::poisson_distribution<std::int32_t> arrivals(lambda);
    return arrivals(rng);
}

Kilowatts requested_power(Kilowatts battery_capacity, PerMille soc) {
    const Kilowatts scaled = battery_capacity * (scheduler::kPerMilleOne - soc);
    return std::max<Kilowatts>(1, (scaled + scheduler::kPerMilleOne / 2) / scheduler::kPerMilleOne);
}

std::vector<scheduler::EsuDemand> generate_population(const SimConfig& config, double lambda, std::uint64_t run,
                                                      std::int32_t slot) {
    auto rng = make_stream(config.seed, run, static_cast<std::uint64_t>(slot));
    const std::int32_t count = slot == 0 ? config.initial_esus : sample_arrivals(rng, lambda);
    std::uniform_int_distribution<PerMille> soc_dist(0, scheduler::kPerMilleOne - 1);

    std::vector<scheduler::EsuDemand> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int32_t i = 0; i < count; ++i) {
        scheduler::EsuDemand d;
        ByteWriter w;
        w.u64(run);
        w.u32(static_cast<std::uint32_t>(slot));
        w.u64(static_cast<std::uint64_t>(i));
        d.id = Address::from_span(w.bytes());
        d.soc = soc_dist(rng);
        d.tcc = sample_tcc(rng, config.tcc_mean);
        d.power = requested_power(config.battery_capacity, d.soc);
        out.push_back(d);
    }
    return out;
}

RunResult run_once(const SimConfig& config, Policy policy, double lambda, std::uint64_t run) {
    ledger::DeployPayload deploy;
    deploy.capacity = config.headroom;
    deploy.regular_load = 0;
    deploy.community = "simulation";
    deploy.beta1 = config.beta1;
    deploy.beta2 = config.beta2;
    deploy.battery_capacity = config.battery_capacity;
    auto state = ledger::deploy(deploy);

    std::vector<Address> order;
    std::map<Address, std::pair<Kilowatts, Kilowatts>> totals;  // requested, granted
    for (std::int32_t slot = 0; slot < config.num_slots; ++slot) {
        for (const auto& d : generate_population(config, lambda, run, slot)) {
            ledger::admit(state, d);
            order.push_back(d.id);
            totals[d.id] = {d.power, 0};
        }
        const auto schedule = ledger::run_slot(state, policy);
        for (const auto& [id, kw] : schedule.granted) totals.at(id).second += kw;
    }

    RunResult result;
    result.policy = policy;
    result.lambda = lambda;
    result.seed = config.seed;
    result.run = run;
    result.indices.reserve(order.size());
    for (const auto& id : order) {
        const auto [requested, granted] = totals.at(id);
        result.indices.push_back(scheduler::charging_index(granted, requested));
        result.requested_total += requested;
        result.granted_total += granted;
    }
    result.mean_index = result.indices.empty()
                            ? 1.0
                            : std::accumulate(result.indices.begin(), result.indices.end(), 0.0) /
                                  static_cast<double>(result.indices.size());
    return result;
}

std::vector<SweepRow> sweep_lambda(const SimConfig& config) {
    config.validate();
    const std::size_t n_lambda = config.lambdas.size();
    const std::size_t n_runs = static_cast<std::size_t>(config.runs);
    constexpr Policy kPolicies[] = {Policy::Proposed, Policy::Fcfs};

    // means[(lambda * 2 + policy) * runs + run]
    std::vector<double> means(n_lambda * 2 * n_runs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < n_lambda * n_runs; task = next++) {
            const std::size_t li = task / n_runs;
            const std::size_t run = task % n_runs;
            for (std::size_t p = 0; p < 2; ++p) {
                means[(li * 2 + p) * n_runs + run] = run_once(config, kPolicies[p], config.lambdas[li], run).mean_index;
            }
        }
    };
    std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_lambda * n_runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    std::vector<SweepRow> rows;
    for (std::size_t li = 0; li < n_lambda; ++li) {
        for (std::size_t p = 0; p < 2; ++p) {
            SweepRow row;
            row.lambda = config.lambdas[li];
            row.policy = kPolicies[p];
            row.runs = config.runs;
            row.seed = config.seed;
            const auto first = means.begin() + static_cast<std::ptrdiff_t>((li * 2 + p) * n_runs);
            row.run_means.assign(first, first + static_cast<std::ptrdiff_t>(n_runs));
            const double n = static_cast<double>(n_runs);
            row.mean_index = std::accumulate(row.run_means.begin(), row.run_means.end(), 0.0) / n;
            if (n_runs > 1) {
                double ss = 0.0;
                for (double m : row.run_means) ss += (m - row.mean_index) * (m - row.mean_index);
                row.stderr_index = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "lambda,scheduler,mean_index,stderr,runs,seed\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%g,%s,%.6f,%.6f,%d,%llu\n", r.lambda, to_string(r.policy), r.mean_index,
                      r.stderr_index, r.runs, static_cast<unsigned long long>(r.seed));
        out << buf;
    }
}

Interval bootstrap_mean_ci(const std::vector<double>& samples, double level, std::int32_t resamples,
                           std::uint64_t seed) {
    if (samples.empty() || resamples < 1 || !(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap needs samples, resamples >= 1 and level in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    for (auto& s : stats) {
        double sum = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) sum += samples[pick(rng)];
        s = sum / static_cast<double>(samples.size());
    }
    std::sort(stats.begin(), stats.end());
    const double tail = (1.0 - level) / 2.0;
    auto at = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(stats.size() - 1)));
        return stats[std::min(idx, stats.size() - 1)];
    };
    return {at(tail), at(1.0 - tail)};
}

}  // namespace chargechain::harness
