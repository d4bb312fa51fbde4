// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures and reference implementations for the unit and acceptance tests.
// The reference scheduler is deliberately naive: rational arithmetic, selection sort,
// no shared code with the library beyond the data types.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "chargechain/credentials.hpp"
#include "chargechain/ledger.hpp"
#include "chargechain/scheduler.hpp"

namespace chargechain::testkit {

using scheduler::EsuDemand;
using scheduler::Kilowatts;
using scheduler::SchedulerParams;
using scheduler::SlotSchedule;
using Rational = boost::rational<std::int64_t>;

inline const bool kCryptoReady = (crypto::init(), true);

inline Address address_n(std::uint64_t n) {
    ByteWriter w;
    w.u64(0xC0FFEE);
    w.u64(n);
    w.u32(0);
    return Address::from_span(w.bytes());
}

inline EsuDemand demand(std::uint64_t seq, Kilowatts power, std::int32_t soc, std::int32_t tcc) {
    EsuDemand d;
    d.id = address_n(seq);
    d.power = power;
    d.soc = soc;
    d.tcc = tcc;
    d.arrival_seq = seq;
    return d;
}

// Priority as a real number in [0, 1], straight from the weighted sum.
inline Rational reference_priority(const EsuDemand& d, const SchedulerParams& p) {
    Rational f = d.tcc == 1 ? Rational(1) : d.tcc == 2 ? Rational(1, 2) : Rational(0);
    return Rational(p.beta1, 1000) * (Rational(1) - Rational(d.soc, 1000)) + Rational(p.beta2, 1000) * f;
}

// The contract stores U in per-mille, truncated once.
inline std::int64_t reference_priority_permille(const EsuDemand& d, const SchedulerParams& p) {
    const Rational u = reference_priority(d, p) * 1000;
    return u.numerator() / u.denominator();
}

inline std::vector<EsuDemand> reference_rank(std::vector<EsuDemand> pool, const SchedulerParams& p) {
    std::vector<EsuDemand> out;
    while (!pool.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i) {
            const Rational ri(reference_priority_permille(pool[i], p), pool[i].power);
            const Rational rb(reference_priority_permille(pool[best], p), pool[best].power);
            if (ri > rb || (ri == rb && pool[i].arrival_seq < pool[best].arrival_seq)) best = i;
        }
        out.push_back(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

inline SlotSchedule reference_schedule(const std::vector<EsuDemand>& demands, const SchedulerParams& p) {
    SlotSchedule s;
    Kilowatts left = p.capacity - p.regular_load;
    for (const auto& d : reference_rank(demands, p)) {
        if (d.power <= left) {
            left -= d.power;
            s.granted[d.id] = d.power;
            s.fully_scheduled.push_back(d.id);
        } else {
            s.deferred.push_back(d.id);
        }
    }
    if (left > 0 && !s.deferred.empty()) {
        s.granted[s.deferred.front()] = left;
        s.partially_scheduled = s.deferred.front();
    }
    return s;
}

// Max of sum(U) over subsets that fit, by enumeration. U in per-mille.
inline std::int64_t brute_force_optimum(const std::vector<EsuDemand>& demands, const SchedulerParams& p) {
    const std::size_t n = demands.size();
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Kilowatts load = 0;
        std::int64_t value = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                load += demands[i].power;
                value += reference_priority_permille(demands[i], p);
            }
        }
        if (load <= p.capacity - p.regular_load) best = std::max(best, value);
    }
    return best;
}

struct RandomSlot {
    SchedulerParams params;
    std::vector<EsuDemand> demands;
};

// Small random instances with plenty of ratio ties.
inline RandomSlot random_slot(std::mt19937_64& rng, std::size_t max_esus, bool equal_power = false) {
    RandomSlot out;
    std::uniform_int_distribution<std::int32_t> beta(0, 1000);
    out.params.beta1 = beta(rng);
    out.params.beta2 = 1000 - out.params.beta1;
    std::uniform_int_distribution<std::size_t> count(0, max_esus);
    std::uniform_int_distribution<Kilowatts> power(1, 12);
    std::uniform_int_distribution<std::int32_t> soc_coarse(0, 9);
    std::uniform_int_distribution<std::int32_t> soc_fine(0, 999);
    std::uniform_int_distribution<std::int32_t> tcc(1, 5);
    std::bernoulli_distribution coarse(0.5);
    const std::size_t n = count(rng);
    const Kilowatts shared_power = power(rng);
    Kilowatts total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t soc = coarse(rng) ? soc_coarse(rng) * 100 : soc_fine(rng);
        auto d = demand(i, equal_power ? shared_power : power(rng), soc, tcc(rng));
        total += d.power;
        out.demands.push_back(d);
    }
    std::shuffle(out.demands.begin(), out.demands.end(), rng);
    std::uniform_int_distribution<Kilowatts> cap(0, total + 10);
    out.params.capacity = cap(rng);
    std::uniform_int_distribution<Kilowatts> pr(0, out.params.capacity);
    out.params.regular_load = coarse(rng) ? 0 : pr(rng);
    return out;
}

// A deployed community with a cooperative utility and one registered identity.
struct Community {
    explicit Community(std::uint64_t seed, std::string community = "G1", credentials::Day start_day = 20370)
        : rng(seed),
          utility(credentials::UtilityKeyPair::generate(rng)),
          owner(crypto::SigningKeyPair::generate(rng)),
          identity(crypto::SigningKeyPair::generate(rng)),
          issuer(utility, {100000, 7}) {
        issuer.register_identity(identity.public_key);
        payload.owner_pk = owner.public_key;
        payload.utility_pk = utility.public_key;
        payload.capacity = 1200;
        payload.regular_load = 200;
        payload.community = std::move(community);
        payload.start_day = start_day;
    }

    [[nodiscard]] ledger::Transaction deploy_tx() { return ledger::Transaction::deploy(owner, payload, rng); }

    [[nodiscard]] credentials::CommonMessage common(std::optional<credentials::Day> day = std::nullopt) const {
        return {issuer.policy().period_start(day.value_or(payload.start_day)), payload.community};
    }

    credentials::IssuedCredential credential(std::optional<credentials::Day> day = std::nullopt) {
        return credentials::acquire_token(issuer, identity, common(day), rng);
    }

    [[nodiscard]] ledger::RequestPayload request_payload(const credentials::IssuedCredential& cred, Kilowatts power,
                                                         std::int32_t soc, std::int32_t tcc) const {
        ledger::RequestPayload p;
        p.power = power;
        p.soc = soc;
        p.tcc = tcc;
        p.ts = payload.start_day;
        p.community = payload.community;
        p.pseudonym_pk = cred.pseudonym.public_key();
        p.token = cred.token;
        return p;
    }

    ledger::Transaction request(const credentials::IssuedCredential& cred, Kilowatts power, std::int32_t soc,
                                std::int32_t tcc) {
        return ledger::Transaction::charging_request(cred.pseudonym, request_payload(cred, power, soc, tcc), rng);
    }

    ledger::Transaction request(Kilowatts power, std::int32_t soc, std::int32_t tcc) {
        return request(credential(), power, soc, tcc);
    }

    ledger::Transaction load_post(Kilowatts pr) { return ledger::Transaction::load_post(owner, pr, rng); }

    crypto::SeededRng rng;
    credentials::UtilityKeyPair utility;
    crypto::SigningKeyPair owner;
    crypto::SigningKeyPair identity;
    credentials::Issuer issuer;
    ledger::DeployPayload payload;
};

// Deploy, then a mix of requests (some duplicated), load posts and slot triggers.
inline std::vector<ledger::Transaction> scripted_log(Community& c, std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<Kilowatts> power(1, 200);
    std::uniform_int_distribution<std::int32_t> soc(0, 999);
    std::uniform_int_distribution<std::int32_t> tcc(1, 6);
    std::uniform_int_distribution<Kilowatts> pr(0, 1100);

    std::vector<ledger::Transaction> log{c.deploy_tx()};
    std::vector<credentials::IssuedCredential> used;
    std::uint64_t slot = 0;
    while (log.size() < length) {
        const int k = kind(rng);
        if (k < 6) {
            used.push_back(c.credential());
            log.push_back(c.request(used.back(), power(rng), soc(rng), tcc(rng)));
        } else if (k == 6 && !used.empty()) {
            log.push_back(c.request(used[rng() % used.size()], power(rng), soc(rng), tcc(rng)));
        } else if (k == 7) {
            log.push_back(c.load_post(pr(rng)));
        } else {
            log.push_back(ledger::Transaction::slot_trigger(slot++, c.payload.start_day));
        }
    }
    return log;
}

}  // namespace chargechain::testkit
