// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic simulated ledger hosting the charging-coordination contract.
//
// A single sequencer orders transactions into hash-linked blocks; any number
// of replicas re-execute the same log and must arrive at the same state root
// at every height. There is no mining and no fork choice.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chargechain/credentials.hpp"
#include "chargechain/crypto.hpp"
#include "chargechain/scheduler.hpp"

namespace chargechain::ledger {

using credentials::Day;
using crypto::Point;
using scheduler::Kilowatts;
using scheduler::PerMille;

enum class TxKind : std::uint8_t { Deploy = 0, ChargingRequest = 1, UtilityLoadPost = 2, SlotTrigger = 3 };

const char* to_string(TxKind kind);

/// Contract constructor arguments; carried by the genesis transaction.
struct DeployPayload {
    Point owner_pk;    // utility signing key; posts regular load
    Point utility_pk;  // token issuer key
    Kilowatts capacity = 0;
    Kilowatts regular_load = 0;
    std::string community;
    PerMille beta1 = 500;
    PerMille beta2 = 500;
    Kilowatts battery_capacity = 200;
    std::uint32_t period_days = 7;
    Day start_day = 0;

    [[nodiscard]] Bytes encode() const;
    static DeployPayload decode(ByteView b);

    bool operator==(const DeployPayload&) const = default;
};

/// R_v: the charging request submitted under a one-shot pseudonym.
struct RequestPayload {
    Kilowatts power = 0;
    PerMille soc = 0;
    std::int32_t tcc = 1;
    Day ts = 0;
    std::string community;
    Point pseudonym_pk;
    credentials::Token token;

    [[nodiscard]] Bytes encode() const;
    static RequestPayload decode(ByteView b);

    bool operator==(const RequestPayload&) const = default;
};

struct LoadPostPayload {
    Kilowatts regular_load = 0;

    [[nodiscard]] Bytes encode() const;
    static LoadPostPayload decode(ByteView b);

    bool operator==(const LoadPostPayload&) const = default;
};

/// Scheduled end-of-slot execution. `slot` must match the contract's slot
/// counter; `next_day` becomes the contract date for the following slot.
struct SlotTriggerPayload {
    std::uint64_t slot = 0;
    Day next_day = 0;

    [[nodiscard]] Bytes encode() const;
    static SlotTriggerPayload decode(ByteView b);

    bool operator==(const SlotTriggerPayload&) const = default;
};

struct Transaction {
    TxKind kind = TxKind::SlotTrigger;
    Address sender;
    Bytes payload;
    std::optional<crypto::SchnorrSignature> signature;  // absent only for slot triggers

    /// Domain tag, kind, sender and payload: what the sender signs.
    [[nodiscard]] Bytes signing_bytes() const;
    [[nodiscard]] Bytes encode() const;
    static Transaction decode(ByteView b);
    static Transaction decode(ByteReader& r);

    static Transaction deploy(const crypto::SigningKeyPair& owner, const DeployPayload& payload, crypto::Rng& rng);
    static Transaction charging_request(const credentials::PseudonymKeyPair& pseudonym, const RequestPayload& payload,
                                        crypto::Rng& rng);
    static Transaction load_post(const crypto::SigningKeyPair& owner, Kilowatts regular_load, crypto::Rng& rng);
    static Transaction slot_trigger(std::uint64_t slot, Day next_day);

    bool operator==(const Transaction&) const = default;
};

enum class RejectReason : std::uint8_t {
    None = 0,
    Malformed,
    NotDeployed,
    AlreadyDeployed,
    BadSignature,
    NotOwner,
    InvalidDemand,
    SenderMismatch,
    WrongCommunity,
    StalePeriod,
    InvalidToken,
    SpentPseudonym,
    InvalidLoad,
    WrongSlot,
    InvalidDeploy,
};

const char* to_string(RejectReason reason);

struct Receipt {
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    std::optional<scheduler::SlotSchedule> schedule;  // slot triggers only
    Hash32 post_state;  // state root right after this transaction; set by Replica

    static Receipt ok() { return {true, RejectReason::None, std::nullopt, {}}; }
    static Receipt rejected(RejectReason r) { return {false, r, std::nullopt, {}}; }

    [[nodiscard]] Bytes encode() const;
    static Receipt decode(ByteReader& r);

    bool operator==(const Receipt&) const = default;
};

Bytes encode_schedule(const scheduler::SlotSchedule& schedule);
scheduler::SlotSchedule decode_schedule(ByteReader& r);

struct EsuRecord {
    Kilowatts power = 0;        // outstanding demand
    PerMille soc = 0;
    std::int32_t tcc = 1;
    PerMille priority = 0;
    bool xv = false;            // fully served in the last executed slot
    Kilowatts scheduled_power = 0;
    std::uint64_t arrival_seq = 0;

    bool operator==(const EsuRecord&) const = default;
};

/// On-ledger record set of the charging-coordination contract.
struct ContractState {
    Address owner;
    Point owner_pk;
    Point utility_pk;
    Kilowatts capacity = 0;
    Kilowatts regular_load = 0;
    Kilowatts max_capacity = 0;  // C - PR for the upcoming slot
    std::string community;
    PerMille beta1 = 500;
    PerMille beta2 = 500;
    Kilowatts battery_capacity = 200;
    std::uint32_t period_days = 7;
    Day current_day = 0;
    std::uint64_t current_slot = 0;
    std::uint64_t next_arrival_seq = 0;
    std::map<Address, EsuRecord> esu_records;
    std::vector<Address> esu_order;  // submission order
    std::set<Address> spent_pseudonyms;

    [[nodiscard]] scheduler::SchedulerParams params() const;
    [[nodiscard]] Day period_start(Day day) const { return day - day % period_days; }
    [[nodiscard]] credentials::CommonMessage expected_common() const;

    /// Canonical serialization: fixed field order, maps and sets in address order.
    [[nodiscard]] Bytes serialize() const;
    [[nodiscard]] Hash32 state_root() const;

    bool operator==(const ContractState&) const = default;
};

/// Throws scheduler::InvalidInput if the payload is inconsistent (e.g. PR > C).
ContractState deploy(const DeployPayload& payload);

bool is_authorized(const ContractState& state, const Transaction& tx, const RequestPayload& payload);

Receipt receive_charging_request(ContractState& state, const Transaction& tx);
Receipt post_utility_load(ContractState& state, const Transaction& tx);

/// Executes the knapsack over current records. Fully served records leave the
/// contract; deferred ones carry over with reduced demand, TCC decremented
/// (floored at 1) and SoC raised by whatever was delivered.
scheduler::SlotSchedule run_slot(ContractState& state, scheduler::Policy policy = scheduler::Policy::Proposed);

/// Trusted admission without credentials, for local simulation drivers.
/// Assigns the next arrival sequence number.
void admit(ContractState& state, const scheduler::EsuDemand& demand);

/// One contract replica: executes transactions strictly in log order.
class Replica {
  public:
    Receipt apply(const Transaction& tx);

    [[nodiscard]] const std::optional<ContractState>& state() const { return state_; }
    [[nodiscard]] Hash32 state_root() const;

  private:
    Receipt execute(const Transaction& tx);

    std::optional<ContractState> state_;
};

struct Block {
    std::uint64_t height = 0;
    Hash32 prev_hash;
    std::vector<Transaction> txs;
    std::vector<Receipt> receipts;
    Hash32 state_root;
    Hash32 block_hash;

    /// Digest over height, prev_hash, transactions, receipts and state_root.
    [[nodiscard]] Hash32 compute_hash() const;
    [[nodiscard]] Bytes encode() const;
    static Block decode(ByteView b);

    bool operator==(const Block&) const = default;
};

class ChainError : public std::runtime_error {
  public:
    ChainError(std::uint64_t height, const std::string& what)
        : std::runtime_error("block " + std::to_string(height) + ": " + what), height_(height) {}
    [[nodiscard]] std::uint64_t height() const { return height_; }

  private:
    std::uint64_t height_;
};

/// Sequencer-side chain: a replica plus the blocks it produced.
class Chain {
  public:
    Chain() = default;
    /// Re-executes `blocks`; throws ChainError at the first inconsistency.
    static Chain load(std::vector<Block> blocks);

    const Block& append_block(std::vector<Transaction> txs);

    [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
    [[nodiscard]] const Replica& replica() const { return replica_; }
    [[nodiscard]] std::uint64_t height() const { return blocks_.size(); }

  private:
    Replica replica_;
    std::vector<Block> blocks_;
};

struct ChainCheck {
    bool ok = true;
    std::optional<std::uint64_t> failing_height;
    std::string reason;
};

ChainCheck check_chain(std::span<const Block> blocks);
bool verify_chain(std::span<const Block> blocks);

/// Builds blocks from a flat transaction log: a Deploy transaction forms a
/// block on its own, every other block closes after a SlotTrigger, and any
/// trailing transactions form a final block.
std::vector<Block> replay_log(std::span<const Transaction> log);

// Newline-delimited hex files, one canonical encoding per line. read_tx_log
// throws DecodeError; read_chain throws ChainError whose height is the line index.
void write_tx_log(std::ostream& out, std::span<const Transaction> txs);
std::vector<Transaction> read_tx_log(std::istream& in);
void write_chain(std::ostream& out, std::span<const Block> blocks);
std::vector<Block> read_chain(std::istream& in);

}  // namespace chargechain::ledger
