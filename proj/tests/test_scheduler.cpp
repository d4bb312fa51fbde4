// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace chargechain;
using namespace chargechain::scheduler;
using testkit::demand;

namespace {

SchedulerParams with_capacity(Kilowatts c, Kilowatts pr = 0) {
    SchedulerParams p;
    p.capacity = c;
    p.regular_load = pr;
    return p;
}

}  // namespace

TEST_SUITE("scheduler") {

TEST_CASE("F steps down with time to complete") {
    CHECK(f_of_tcc(1) == 1000);
    CHECK(f_of_tcc(2) == 500);
    CHECK(f_of_tcc(3) == 0);
    CHECK(f_of_tcc(7) == 0);
    CHECK_THROWS_AS(f_of_tcc(0), InvalidInput);
    for (int k = 1; k < 50; ++k) CHECK(f_of_tcc(k + 1) <= f_of_tcc(k));
}

TEST_CASE("priority examples") {
    const SchedulerParams p = with_capacity(10);
    CHECK(priority(demand(0, 1, 0, 1), p).value == 1000);
    CHECK(priority(demand(0, 1, 990, 7), p).value == 5);
    CHECK(priority(demand(0, 1, 400, 2), p).value == 550);
    CHECK(0.5 * 0.6 + 0.5 * 0.5 == doctest::Approx(0.55));

    CHECK(priority(demand(0, 5, 200, 1), p).value == 900);
    CHECK(priority(demand(0, 4, 400, 1), p).value == 800);
    CHECK(priority(demand(0, 4, 0, 3), p).value == 500);
}

TEST_CASE("priority truncates once at the end") {
    SchedulerParams p = with_capacity(10);
    p.beta1 = 333;
    p.beta2 = 667;
    // 333 * 999 + 667 * 500 = 666167 -> 666
    CHECK(priority(demand(0, 1, 1, 2), p).value == 666);
}

TEST_CASE("priority matches the rational reference and is monotone") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> beta(0, 1000), soc(0, 998), tcc(1, 6);
    for (int i = 0; i < 2000; ++i) {
        SchedulerParams p = with_capacity(1);
        p.beta1 = beta(rng);
        p.beta2 = 1000 - p.beta1;
        const auto d = demand(0, 1, soc(rng), tcc(rng));
        const auto u = priority(d, p).value;
        CHECK(u == testkit::reference_priority_permille(d, p));
        CHECK(u >= 0);
        CHECK(u <= 1000);
        auto fuller = d;
        fuller.soc += 1;
        CHECK(priority(fuller, p).value <= u);
        auto later = d;
        later.tcc += 1;
        CHECK(priority(later, p).value <= u);
    }
}

TEST_CASE("demand validation") {
    const SchedulerParams p = with_capacity(10);
    CHECK_THROWS_AS(priority(demand(0, 0, 0, 1), p), InvalidInput);
    CHECK_THROWS_AS(priority(demand(0, 1, 1000, 1), p), InvalidInput);
    CHECK_THROWS_AS(priority(demand(0, 1, -1, 1), p), InvalidInput);
    CHECK_THROWS_AS(priority(demand(0, 1, 0, 0), p), InvalidInput);

    SchedulerParams bad = p;
    bad.beta1 = 600;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    CHECK_THROWS_AS(with_capacity(100, 200).validate(), InvalidInput);

    std::vector<EsuDemand> dup{demand(0, 1, 0, 1), demand(0, 2, 0, 1)};
    CHECK_THROWS_AS(schedule_slot(dup, p), InvalidInput);
    dup[1].id = testkit::address_n(9);
    CHECK_THROWS_AS(schedule_slot(dup, p), InvalidInput);
}

TEST_CASE("rank orders by priority per kW") {
    const SchedulerParams p = with_capacity(10);
    std::vector<EsuDemand> ds{demand(0, 5, 200, 1), demand(1, 4, 400, 1), demand(2, 4, 0, 3)};
    CHECK(rank(ds, p) == std::vector<Address>{ds[1].id, ds[0].id, ds[2].id});
    // Rational check of the expected order: 0.20 > 0.18 > 0.125.
    CHECK(testkit::Rational(800, 4) > testkit::Rational(900, 5));
    CHECK(testkit::Rational(900, 5) > testkit::Rational(500, 4));

    std::vector<EsuDemand> tied{demand(3, 4, 100, 2), demand(1, 4, 100, 2)};
    CHECK(rank(tied, p) == std::vector<Address>{tied[1].id, tied[0].id});

    std::vector<EsuDemand> one{demand(0, 4, 100, 2)};
    CHECK(rank(one, p) == std::vector<Address>{one[0].id});
}

TEST_CASE("rank compares ratios exactly") {
    // 999/1000 vs 1000/1001 differ by less than any per-kW integer division can see.
    const SchedulerParams p = with_capacity(10);
    auto a = demand(0, 1000, 2, 1);  // U = 999
    auto b = demand(1, 1001, 0, 1);  // U = 1000
    CHECK(priority(a, p).value == 999);
    std::vector<EsuDemand> ds{a, b};
    CHECK(rank(ds, p).front() == b.id);
}

TEST_CASE("schedule_slot worked example") {
    const SchedulerParams p = with_capacity(10);
    std::vector<EsuDemand> ds{demand(0, 5, 200, 1), demand(1, 4, 400, 1), demand(2, 4, 0, 3)};
    const auto s = schedule_slot(ds, p);
    CHECK(s.fully_scheduled == std::vector<Address>{ds[1].id, ds[0].id});
    CHECK(s.granted_to(ds[1].id) == 4);
    CHECK(s.granted_to(ds[0].id) == 5);
    REQUIRE(s.partially_scheduled.has_value());
    CHECK(*s.partially_scheduled == ds[2].id);
    CHECK(s.granted_to(ds[2].id) == 1);
    CHECK(s.deferred == std::vector<Address>{ds[2].id});
    CHECK(s.total_granted() == 10);
}

TEST_CASE("schedule_slot edge cases") {
    std::vector<EsuDemand> ds{demand(0, 5, 200, 1), demand(1, 4, 400, 1)};
    const auto none = schedule_slot(ds, with_capacity(0));
    CHECK(none.granted.empty());
    CHECK(none.fully_scheduled.empty());
    CHECK_FALSE(none.partially_scheduled);
    CHECK(none.deferred.size() == 2);

    std::vector<EsuDemand> one{demand(0, 3, 0, 1)};
    const auto s = schedule_slot(one, with_capacity(10));
    CHECK(s.granted_to(one[0].id) == 3);
    CHECK_FALSE(s.partially_scheduled);
    CHECK(s.deferred.empty());

    CHECK(schedule_slot({}, with_capacity(10)) == SlotSchedule{});
}

TEST_CASE("skipping keeps scanning for smaller demands") {
    // Rank: A (1000/9), B (500/8), C (0/1). B does not fit after A; C still does.
    const SchedulerParams p = with_capacity(10);
    std::vector<EsuDemand> ds{demand(0, 9, 0, 1), demand(1, 8, 0, 3), demand(2, 1, 999, 5)};
    const auto s = schedule_slot(ds, p);
    CHECK(s.fully_scheduled == std::vector<Address>{ds[0].id, ds[2].id});
    CHECK(s.deferred == std::vector<Address>{ds[1].id});
    CHECK_FALSE(s.partially_scheduled);
    CHECK(s.total_granted() == 10);
}

TEST_CASE("fcfs example and head-of-line stop") {
    const SchedulerParams p = with_capacity(6);
    std::vector<EsuDemand> ds{demand(0, 4, 0, 1), demand(1, 4, 0, 1), demand(2, 1, 0, 1)};
    const auto s = schedule_slot_fcfs(ds, p);
    CHECK(s.fully_scheduled == std::vector<Address>{ds[0].id});
    CHECK(s.partially_scheduled == ds[1].id);
    CHECK(s.granted_to(ds[1].id) == 2);
    CHECK(s.deferred == std::vector<Address>{ds[1].id, ds[2].id});
    CHECK(s.granted_to(ds[2].id) == 0);

    const auto all = schedule_slot_fcfs(ds, with_capacity(100));
    CHECK(all.fully_scheduled.size() == 3);
    CHECK(all.deferred.empty());
    CHECK(schedule_slot_fcfs({}, p) == SlotSchedule{});

    // Input order does not matter, arrival_seq does.
    std::vector<EsuDemand> shuffled{ds[2], ds[0], ds[1]};
    CHECK(schedule_slot_fcfs(shuffled, p) == s);
    CHECK(schedule(Policy::Fcfs, ds, p) == s);
    CHECK(schedule(Policy::Proposed, ds, p) == schedule_slot(ds, p));
}

TEST_CASE("charging index") {
    CHECK(charging_index(150, 200) == 0.75);
    CHECK(charging_index(200, 200) == 1.0);
    CHECK(charging_index(0, 200) == 0.0);
    CHECK_THROWS(charging_index(0, 0));
    CHECK_THROWS(charging_index(201, 200));
    CHECK_THROWS(charging_index(-1, 200));
}

TEST_CASE("random instances match the reference scheduler") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto inst = testkit::random_slot(rng, 12);
        const auto got = schedule_slot(inst.demands, inst.params);
        CHECK(got == testkit::reference_schedule(inst.demands, inst.params));
        CHECK(got == schedule_slot(inst.demands, inst.params));

        std::vector<Address> expect;
        for (const auto& d : testkit::reference_rank(inst.demands, inst.params)) expect.push_back(d.id);
        CHECK(rank(inst.demands, inst.params) == expect);
    }
}

TEST_CASE("schedule invariants hold for both policies") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 2000; ++i) {
        const auto inst = testkit::random_slot(rng, 20);
        const Kilowatts headroom = inst.params.headroom();
        const Kilowatts demand_total = std::accumulate(inst.demands.begin(), inst.demands.end(), Kilowatts{0},
                                                       [](Kilowatts a, const EsuDemand& d) { return a + d.power; });
        std::map<Address, Kilowatts> asked;
        for (const auto& d : inst.demands) asked[d.id] = d.power;
        for (Policy policy : {Policy::Proposed, Policy::Fcfs}) {
            const auto s = schedule(policy, inst.demands, inst.params);
            CHECK(s.total_granted() <= headroom);
            CHECK(s.total_granted() == std::min(demand_total, headroom));
            for (const auto& id : s.fully_scheduled) CHECK(s.granted_to(id) == asked.at(id));
            if (s.partially_scheduled) {
                CHECK(s.granted_to(*s.partially_scheduled) > 0);
                CHECK(s.granted_to(*s.partially_scheduled) < asked.at(*s.partially_scheduled));
                CHECK(s.deferred.front() == *s.partially_scheduled);
            }
            CHECK(s.fully_scheduled.size() + s.deferred.size() == inst.demands.size());
        }
    }
}

TEST_CASE("equal powers: greedy picks the top priorities and reaches the optimum") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        auto inst = testkit::random_slot(rng, 12, true);
        inst.params.beta1 = 500;
        inst.params.beta2 = 500;
        const auto s = schedule_slot(inst.demands, inst.params);
        std::int64_t total = 0;
        std::set<Address> chosen(s.fully_scheduled.begin(), s.fully_scheduled.end());
        std::vector<std::int64_t> picked, rest;
        for (const auto& d : inst.demands) {
            const auto u = priority(d, inst.params).value;
            (chosen.contains(d.id) ? picked : rest).push_back(u);
            if (chosen.contains(d.id)) total += u;
        }
        if (!picked.empty() && !rest.empty()) {
            CHECK(*std::min_element(picked.begin(), picked.end()) >= *std::max_element(rest.begin(), rest.end()));
        }
        CHECK(total == testkit::brute_force_optimum(inst.demands, inst.params));
    }
}

}  // TEST_SUITE
