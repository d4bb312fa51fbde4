// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/ledger.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace chargechain::ledger {

namespace {

constexpr std::string_view kTxDomain = "chargechain/tx/v1";
constexpr std::string_view kStateDomain = "chargechain/contract-state/v1";
constexpr std::string_view kBlockDomain = "chargechain/block/v1";

Point read_point(ByteReader& r) {
    auto p = Point::from_bytes(r.fixed(Point::kBytes));
    if (!p) throw DecodeError("invalid group element");
    return *p;
}

template <typename T, typename Fn>
T decode_all(ByteView b, Fn&& fn) {
    ByteReader r(b);
    T out = fn(r);
    r.expect_done();
    return out;
}

}  // namespace

const char* to_string(TxKind kind) {
    switch (kind) {
        case TxKind::Deploy: return "deploy";
        case TxKind::ChargingRequest: return "charging-request";
        case TxKind::UtilityLoadPost: return "utility-load-post";
        case TxKind::SlotTrigger: return "slot-trigger";
    }
    return "unknown";
}

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::Malformed: return "malformed payload";
        case RejectReason::NotDeployed: return "contract not deployed";
        case RejectReason::AlreadyDeployed: return "contract already deployed";
        case RejectReason::BadSignature: return "bad signature";
        case RejectReason::NotOwner: return "sender is not the utility";
        case RejectReason::InvalidDemand: return "demand out of range";
        case RejectReason::SenderMismatch: return "sender does not match key";
        case RejectReason::WrongCommunity: return "wrong community";
        case RejectReason::StalePeriod: return "request outside the current issuance period";
        case RejectReason::InvalidToken: return "token does not verify";
        case RejectReason::SpentPseudonym: return "pseudonym already used";
        case RejectReason::InvalidLoad: return "regular load out of range";
        case RejectReason::WrongSlot: return "slot trigger out of sequence";
        case RejectReason::InvalidDeploy: return "invalid contract parameters";
    }
    return "unknown";
}

// --- payloads -------------------------------------------------------------------

Bytes DeployPayload::encode() const {
    ByteWriter w;
    w.fixed(owner_pk.view());
    w.fixed(utility_pk.view());
    w.i64(capacity);
    w.i64(regular_load);
    w.str(community);
    w.u32(static_cast<std::uint32_t>(beta1));
    w.u32(static_cast<std::uint32_t>(beta2));
    w.i64(battery_capacity);
    w.u32(period_days);
    w.u32(start_day);
    return std::move(w).take();
}

DeployPayload DeployPayload::decode(ByteView b) {
    return decode_all<DeployPayload>(b, [](ByteReader& r) {
        DeployPayload p;
        p.owner_pk = read_point(r);
        p.utility_pk = read_point(r);
        p.capacity = r.i64();
        p.regular_load = r.i64();
        p.community = r.str();
        p.beta1 = static_cast<PerMille>(r.u32());
        p.beta2 = static_cast<PerMille>(r.u32());
        p.battery_capacity = r.i64();
        p.period_days = r.u32();
        p.start_day = r.u32();
        return p;
    });
}

Bytes RequestPayload::encode() const {
    ByteWriter w;
    w.i64(power);
    w.u32(static_cast<std::uint32_t>(soc));
    w.u32(static_cast<std::uint32_t>(tcc));
    w.u32(ts);
    w.str(community);
    w.fixed(pseudonym_pk.view());
    w.fixed(token.encode());
    return std::move(w).take();
}

RequestPayload RequestPayload::decode(ByteView b) {
    return decode_all<RequestPayload>(b, [](ByteReader& r) {
        RequestPayload p;
        p.power = r.i64();
        p.soc = static_cast<PerMille>(r.u32());
        p.tcc = static_cast<std::int32_t>(r.u32());
        p.ts = r.u32();
        p.community = r.str();
        p.pseudonym_pk = read_point(r);
        p.token = credentials::Token::decode(r);
        return p;
    });
}

Bytes LoadPostPayload::encode() const {
    ByteWriter w;
    w.i64(regular_load);
    return std::move(w).take();
}

LoadPostPayload LoadPostPayload::decode(ByteView b) {
    return decode_all<LoadPostPayload>(b, [](ByteReader& r) { return LoadPostPayload{r.i64()}; });
}

Bytes SlotTriggerPayload::encode() const {
    ByteWriter w;
    w.u64(slot);
    w.u32(next_day);
    return std::move(w).take();
}

SlotTriggerPayload SlotTriggerPayload::decode(ByteView b) {
    return decode_all<SlotTriggerPayload>(b, [](ByteReader& r) {
        SlotTriggerPayload p;
        p.slot = r.u64();
        p.next_day = r.u32();
        return p;
    });
}

// --- transactions -----------------------------------------------------------------

Bytes Transaction::signing_bytes() const {
    ByteWriter w;
    w.str(kTxDomain);
    w.u8(static_cast<std::uint8_t>(kind));
    w.fixed(sender);
    w.var(payload);
    return std::move(w).take();
}

Bytes Transaction::encode() const {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(kind));
    w.fixed(sender);
    w.var(payload);
    w.u8(signature ? 1 : 0);
    if (signature) w.fixed(signature->encode());
    return std::move(w).take();
}

Transaction Transaction::decode(ByteReader& r) {
    Transaction tx;
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(TxKind::SlotTrigger)) {
        throw DecodeError("unknown transaction kind " + std::to_string(kind));
    }
    tx.kind = static_cast<TxKind>(kind);
    tx.sender = r.fixed<Address::size>();
    tx.payload = r.var();
    switch (r.u8()) {
        case 0: break;
        case 1: {
            auto sig = crypto::SchnorrSignature::decode(r.fixed(crypto::SchnorrSignature::kBytes));
            if (!sig) throw DecodeError("invalid signature encoding");
            tx.signature = *sig;
            break;
        }
        default: throw DecodeError("invalid signature flag");
    }
    return tx;
}

Transaction Transaction::decode(ByteView b) {
    return decode_all<Transaction>(b, [](ByteReader& r) { return decode(r); });
}

Transaction Transaction::deploy(const crypto::SigningKeyPair& owner, const DeployPayload& payload, crypto::Rng& rng) {
    Transaction tx{TxKind::Deploy, owner.address(), payload.encode(), std::nullopt};
    tx.signature = owner.sign(tx.signing_bytes(), rng);
    return tx;
}

Transaction Transaction::charging_request(const credentials::PseudonymKeyPair& pseudonym,
                                          const RequestPayload& payload, crypto::Rng& rng) {
    Transaction tx{TxKind::ChargingRequest, pseudonym.address, payload.encode(), std::nullopt};
    tx.signature = credentials::sign_request(pseudonym, tx.signing_bytes(), rng);
    return tx;
}

Transaction Transaction::load_post(const crypto::SigningKeyPair& owner, Kilowatts regular_load, crypto::Rng& rng) {
    Transaction tx{TxKind::UtilityLoadPost, owner.address(), LoadPostPayload{regular_load}.encode(), std::nullopt};
    tx.signature = owner.sign(tx.signing_bytes(), rng);
    return tx;
}

Transaction Transaction::slot_trigger(std::uint64_t slot, Day next_day) {
    return {TxKind::SlotTrigger, Address{}, SlotTriggerPayload{slot, next_day}.encode(), std::nullopt};
}

// --- receipts ---------------------------------------------------------------------

Bytes encode_schedule(const scheduler::SlotSchedule& schedule) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(schedule.granted.size()));
    for (const auto& [id, kw] : schedule.granted) {
        w.fixed(id);
        w.i64(kw);
    }
    w.u32(static_cast<std::uint32_t>(schedule.fully_scheduled.size()));
    for (const auto& id : schedule.fully_scheduled) w.fixed(id);
    w.u8(schedule.partially_scheduled ? 1 : 0);
    if (schedule.partially_scheduled) w.fixed(*schedule.partially_scheduled);
    w.u32(static_cast<std::uint32_t>(schedule.deferred.size()));
    for (const auto& id : schedule.deferred) w.fixed(id);
    return std::move(w).take();
}

scheduler::SlotSchedule decode_schedule(ByteReader& r) {
    scheduler::SlotSchedule s;
    for (std::uint32_t n = r.u32(); n > 0; --n) {
        const auto id = r.fixed<Address::size>();
        s.granted[id] = r.i64();
    }
    for (std::uint32_t n = r.u32(); n > 0; --n) s.fully_scheduled.push_back(r.fixed<Address::size>());
    switch (r.u8()) {
        case 0: break;
        case 1: s.partially_scheduled = r.fixed<Address::size>(); break;
        default: throw DecodeError("invalid partial flag");
    }
    for (std::uint32_t n = r.u32(); n > 0; --n) s.deferred.push_back(r.fixed<Address::size>());
    return s;
}

Bytes Receipt::encode() const {
    ByteWriter w;
    w.u8(accepted ? 1 : 0);
    w.u8(static_cast<std::uint8_t>(reason));
    w.u8(schedule ? 1 : 0);
    if (schedule) w.fixed(encode_schedule(*schedule));
    w.fixed(post_state);
    return std::move(w).take();
}

Receipt Receipt::decode(ByteReader& r) {
    Receipt out;
    const std::uint8_t accepted = r.u8();
    if (accepted > 1) throw DecodeError("invalid receipt status");
    out.accepted = accepted == 1;
    const std::uint8_t reason = r.u8();
    if (reason > static_cast<std::uint8_t>(RejectReason::InvalidDeploy)) throw DecodeError("invalid reject reason");
    out.reason = static_cast<RejectReason>(reason);
    switch (r.u8()) {
        case 0: break;
        case 1: out.schedule = decode_schedule(r); break;
        default: throw DecodeError("invalid schedule flag");
    }
    out.post_state = r.fixed<Hash32::size>();
    return out;
}

// --- contract -------------------------------------------------------------------

scheduler::SchedulerParams ContractState::params() const { return {beta1, beta2, capacity, regular_load}; }

credentials::CommonMessage ContractState::expected_common() const {
    return {period_start(current_day), community};
}

Bytes ContractState::serialize() const {
    ByteWriter w;
    w.str(kStateDomain);
    w.fixed(owner);
    w.fixed(owner_pk.view());
    w.fixed(utility_pk.view());
    w.i64(capacity);
    w.i64(regular_load);
    w.i64(max_capacity);
    w.str(community);
    w.u32(static_cast<std::uint32_t>(beta1));
    w.u32(static_cast<std::uint32_t>(beta2));
    w.i64(battery_capacity);
    w.u32(period_days);
    w.u32(current_day);
    w.u64(current_slot);
    w.u64(next_arrival_seq);
    w.u32(static_cast<std::uint32_t>(esu_records.size()));
    for (const auto& [id, rec] : esu_records) {
        w.fixed(id);
        w.i64(rec.power);
        w.u32(static_cast<std::uint32_t>(rec.soc));
        w.u32(static_cast<std::uint32_t>(rec.tcc));
        w.u32(static_cast<std::uint32_t>(rec.priority));
        w.u8(rec.xv ? 1 : 0);
        w.i64(rec.scheduled_power);
        w.u64(rec.arrival_seq);
    }
    w.u32(static_cast<std::uint32_t>(esu_order.size()));
    for (const auto& id : esu_order) w.fixed(id);
    w.u32(static_cast<std::uint32_t>(spent_pseudonyms.size()));
    for (const auto& id : spent_pseudonyms) w.fixed(id);
    return std::move(w).take();
}

Hash32 ContractState::state_root() const { return crypto::sha256(serialize()); }

ContractState deploy(const DeployPayload& payload) {
    const scheduler::SchedulerParams params{payload.beta1, payload.beta2, payload.capacity, payload.regular_load};
    params.validate();
    if (payload.battery_capacity <= 0) {
        throw scheduler::InvalidInput("battery capacity must be positive");
    }
    if (payload.period_days == 0) {
        throw scheduler::InvalidInput("issuance period must be at least one day");
    }
    if (payload.community.empty()) {
        throw scheduler::InvalidInput("community identifier must not be empty");
    }
    ContractState s;
    s.owner = crypto::address_of(payload.owner_pk);
    s.owner_pk = payload.owner_pk;
    s.utility_pk = payload.utility_pk;
    s.capacity = payload.capacity;
    s.regular_load = payload.regular_load;
    s.max_capacity = payload.capacity - payload.regular_load;
    s.community = payload.community;
    s.beta1 = payload.beta1;
    s.beta2 = payload.beta2;
    s.battery_capacity = payload.battery_capacity;
    s.period_days = payload.period_days;
    s.current_day = payload.start_day;
    return s;
}

bool is_authorized(const ContractState& state, const Transaction& tx, const RequestPayload& payload) {
    if (tx.sender != crypto::address_of(payload.pseudonym_pk)) return false;
    if (payload.community != state.community) return false;
    if (state.period_start(payload.ts) != state.period_start(state.current_day)) return false;
    if (!credentials::verify_token(payload.token, payload.pseudonym_pk, state.utility_pk, state.expected_common())) {
        return false;
    }
    if (!tx.signature || !credentials::verify_request(payload.pseudonym_pk, tx.signing_bytes(), *tx.signature)) {
        return false;
    }
    return !state.spent_pseudonyms.contains(tx.sender);
}

namespace {

// Same checks as is_authorized, reporting which one failed.
RejectReason authorization_failure(const ContractState& state, const Transaction& tx, const RequestPayload& payload) {
    if (tx.sender != crypto::address_of(payload.pseudonym_pk)) return RejectReason::SenderMismatch;
    if (payload.community != state.community) return RejectReason::WrongCommunity;
    if (state.period_start(payload.ts) != state.period_start(state.current_day)) return RejectReason::StalePeriod;
    if (!credentials::verify_token(payload.token, payload.pseudonym_pk, state.utility_pk, state.expected_common())) {
        return RejectReason::InvalidToken;
    }
    if (!tx.signature || !credentials::verify_request(payload.pseudonym_pk, tx.signing_bytes(), *tx.signature)) {
        return RejectReason::BadSignature;
    }
    if (state.spent_pseudonyms.contains(tx.sender)) return RejectReason::SpentPseudonym;
    return RejectReason::None;
}

void store_record(ContractState& state, const Address& id, Kilowatts power, PerMille soc, std::int32_t tcc) {
    EsuRecord rec;
    rec.power = power;
    rec.soc = soc;
    rec.tcc = tcc;
    rec.arrival_seq = state.next_arrival_seq++;
    rec.priority = scheduler::priority({id, power, soc, tcc, rec.arrival_seq}, state.params()).value;
    state.esu_records.emplace(id, rec);
    state.esu_order.push_back(id);
    state.spent_pseudonyms.insert(id);
}

}  // namespace

Receipt receive_charging_request(ContractState& state, const Transaction& tx) {
    if (tx.kind != TxKind::ChargingRequest) return Receipt::rejected(RejectReason::Malformed);
    RequestPayload payload;
    try {
        payload = RequestPayload::decode(tx.payload);
    } catch (const DecodeError&) {
        return Receipt::rejected(RejectReason::Malformed);
    }
    try {
        scheduler::EsuDemand{tx.sender, payload.power, payload.soc, payload.tcc, 0}.validate();
    } catch (const scheduler::InvalidInput&) {
        return Receipt::rejected(RejectReason::InvalidDemand);
    }
    if (const auto why = authorization_failure(state, tx, payload); why != RejectReason::None) {
        return Receipt::rejected(why);
    }
    store_record(state, tx.sender, payload.power, payload.soc, payload.tcc);
    return Receipt::ok();
}

Receipt post_utility_load(ContractState& state, const Transaction& tx) {
    if (tx.kind != TxKind::UtilityLoadPost) return Receipt::rejected(RejectReason::Malformed);
    LoadPostPayload payload;
    try {
        payload = LoadPostPayload::decode(tx.payload);
    } catch (const DecodeError&) {
        return Receipt::rejected(RejectReason::Malformed);
    }
    if (tx.sender != state.owner) return Receipt::rejected(RejectReason::NotOwner);
    if (!tx.signature || !crypto::schnorr_verify(state.owner_pk, tx.signing_bytes(), *tx.signature)) {
        return Receipt::rejected(RejectReason::BadSignature);
    }
    if (payload.regular_load < 0 || payload.regular_load > state.capacity) {
        return Receipt::rejected(RejectReason::InvalidLoad);
    }
    state.regular_load = payload.regular_load;
    state.max_capacity = state.capacity - state.regular_load;
    return Receipt::ok();
}

scheduler::SlotSchedule run_slot(ContractState& state, scheduler::Policy policy) {
    const auto params = state.params();
    std::vector<scheduler::EsuDemand> demands;
    demands.reserve(state.esu_order.size());
    for (const auto& id : state.esu_order) {
        const auto& rec = state.esu_records.at(id);
        demands.push_back({id, rec.power, rec.soc, rec.tcc, rec.arrival_seq});
    }
    auto schedule = scheduler::schedule(policy, demands, params);

    for (const auto& id : schedule.fully_scheduled) state.esu_records.erase(id);
    for (const auto& id : schedule.deferred) {
        auto& rec = state.esu_records.at(id);
        const Kilowatts delivered = schedule.granted_to(id);
        rec.power -= delivered;
        rec.soc = static_cast<PerMille>(std::min<Kilowatts>(
            scheduler::kPerMilleOne - 1, rec.soc + delivered * scheduler::kPerMilleOne / state.battery_capacity));
        rec.tcc = std::max(1, rec.tcc - 1);
        rec.xv = false;
        rec.scheduled_power = delivered;
        rec.priority = scheduler::priority({id, rec.power, rec.soc, rec.tcc, rec.arrival_seq}, params).value;
    }
    std::erase_if(state.esu_order, [&](const Address& id) { return !state.esu_records.contains(id); });

    ++state.current_slot;
    state.max_capacity = state.capacity - state.regular_load;
    return schedule;
}

void admit(ContractState& state, const scheduler::EsuDemand& demand) {
    demand.validate();
    if (state.spent_pseudonyms.contains(demand.id)) {
        throw scheduler::InvalidInput("address " + demand.id.hex() + " already submitted a request");
    }
    store_record(state, demand.id, demand.power, demand.soc, demand.tcc);
}

// --- replica ----------------------------------------------------------------------

// Recording the intermediate root makes the order of transactions inside a
// block observable even when the block's end state would not reveal it.
Receipt Replica::apply(const Transaction& tx) {
    Receipt receipt = execute(tx);
    receipt.post_state = state_root();
    return receipt;
}

Receipt Replica::execute(const Transaction& tx) {
    if (tx.kind == TxKind::Deploy) {
        if (state_) return Receipt::rejected(RejectReason::AlreadyDeployed);
        DeployPayload payload;
        try {
            payload = DeployPayload::decode(tx.payload);
        } catch (const DecodeError&) {
            return Receipt::rejected(RejectReason::Malformed);
        }
        if (tx.sender != crypto::address_of(payload.owner_pk)) return Receipt::rejected(RejectReason::SenderMismatch);
        if (!tx.signature || !crypto::schnorr_verify(payload.owner_pk, tx.signing_bytes(), *tx.signature)) {
            return Receipt::rejected(RejectReason::BadSignature);
        }
        try {
            state_ = deploy(payload);
        } catch (const scheduler::InvalidInput&) {
            return Receipt::rejected(RejectReason::InvalidDeploy);
        }
        return Receipt::ok();
    }
    if (!state_) return Receipt::rejected(RejectReason::NotDeployed);

    switch (tx.kind) {
        case TxKind::ChargingRequest: return receive_charging_request(*state_, tx);
        case TxKind::UtilityLoadPost: return post_utility_load(*state_, tx);
        case TxKind::SlotTrigger: {
            if (tx.signature || !tx.sender.is_zero()) return Receipt::rejected(RejectReason::Malformed);
            SlotTriggerPayload payload;
            try {
                payload = SlotTriggerPayload::decode(tx.payload);
            } catch (const DecodeError&) {
                return Receipt::rejected(RejectReason::Malformed);
            }
            if (payload.slot != state_->current_slot || payload.next_day < state_->current_day) {
                return Receipt::rejected(RejectReason::WrongSlot);
            }
            Receipt receipt = Receipt::ok();
            receipt.schedule = run_slot(*state_);
            state_->current_day = payload.next_day;
            return receipt;
        }
        case TxKind::Deploy: break;
    }
    return Receipt::rejected(RejectReason::Malformed);
}

Hash32 Replica::state_root() const {
    if (state_) return state_->state_root();
    ByteWriter w;
    w.str(kStateDomain);
    w.str("undeployed");
    return crypto::sha256(w.bytes());
}

// --- blocks -------------------------------------------------------------------------

namespace {

void encode_body(ByteWriter& w, const Block& b) {
    w.u64(b.height);
    w.fixed(b.prev_hash);
    w.u32(static_cast<std::uint32_t>(b.txs.size()));
    for (const auto& tx : b.txs) w.var(tx.encode());
    w.u32(static_cast<std::uint32_t>(b.receipts.size()));
    for (const auto& rc : b.receipts) w.var(rc.encode());
    w.fixed(b.state_root);
}

// Re-executes `block` on `replica` and checks it against the stored fields.
void execute_and_check(Replica& replica, const Block& block, std::uint64_t expected_height, const Hash32& prev) {
    if (block.height != expected_height) {
        throw ChainError(expected_height, "height field is " + std::to_string(block.height));
    }
    if (block.prev_hash != prev) throw ChainError(expected_height, "prev_hash does not link to the previous block");
    if (block.block_hash != block.compute_hash()) throw ChainError(expected_height, "block hash mismatch");
    if (block.receipts.size() != block.txs.size()) {
        throw ChainError(expected_height, "receipt count differs from transaction count");
    }
    for (std::size_t i = 0; i < block.txs.size(); ++i) {
        if (replica.apply(block.txs[i]) != block.receipts[i]) {
            throw ChainError(expected_height, "receipt mismatch at transaction " + std::to_string(i));
        }
    }
    if (replica.state_root() != block.state_root) throw ChainError(expected_height, "state root mismatch");
}

}  // namespace

Hash32 Block::compute_hash() const {
    ByteWriter w;
    w.str(kBlockDomain);
    encode_body(w, *this);
    return crypto::sha256(w.bytes());
}

Bytes Block::encode() const {
    ByteWriter w;
    encode_body(w, *this);
    w.fixed(block_hash);
    return std::move(w).take();
}

Block Block::decode(ByteView b) {
    return decode_all<Block>(b, [](ByteReader& r) {
        Block out;
        out.height = r.u64();
        out.prev_hash = r.fixed<Hash32::size>();
        for (std::uint32_t n = r.u32(); n > 0; --n) out.txs.push_back(Transaction::decode(r.var()));
        for (std::uint32_t n = r.u32(); n > 0; --n) {
            const Bytes raw = r.var();
            out.receipts.push_back(decode_all<Receipt>(raw, [](ByteReader& rr) { return Receipt::decode(rr); }));
        }
        out.state_root = r.fixed<Hash32::size>();
        out.block_hash = r.fixed<Hash32::size>();
        return out;
    });
}

Chain Chain::load(std::vector<Block> blocks) {
    Chain chain;
    Hash32 prev{};
    for (std::size_t h = 0; h < blocks.size(); ++h) {
        execute_and_check(chain.replica_, blocks[h], h, prev);
        prev = blocks[h].block_hash;
    }
    chain.blocks_ = std::move(blocks);
    return chain;
}

const Block& Chain::append_block(std::vector<Transaction> txs) {
    Block block;
    block.height = blocks_.size();
    block.prev_hash = blocks_.empty() ? Hash32{} : blocks_.back().block_hash;
    block.receipts.reserve(txs.size());
    for (const auto& tx : txs) block.receipts.push_back(replica_.apply(tx));
    block.txs = std::move(txs);
    block.state_root = replica_.state_root();
    block.block_hash = block.compute_hash();
    blocks_.push_back(std::move(block));
    return blocks_.back();
}

ChainCheck check_chain(std::span<const Block> blocks) {
    Replica replica;
    Hash32 prev{};
    for (std::size_t h = 0; h < blocks.size(); ++h) {
        try {
            execute_and_check(replica, blocks[h], h, prev);
        } catch (const ChainError& e) {
            return {false, e.height(), e.what()};
        }
        prev = blocks[h].block_hash;
    }
    return {};
}

bool verify_chain(std::span<const Block> blocks) { return check_chain(blocks).ok; }

std::vector<Block> replay_log(std::span<const Transaction> log) {
    Chain chain;
    std::vector<Transaction> pending;
    for (const auto& tx : log) {
        if (tx.kind == TxKind::Deploy) {
            if (!pending.empty()) chain.append_block(std::exchange(pending, {}));
            chain.append_block({tx});
            continue;
        }
        pending.push_back(tx);
        if (tx.kind == TxKind::SlotTrigger) chain.append_block(std::exchange(pending, {}));
    }
    if (!pending.empty()) chain.append_block(std::move(pending));
    return chain.blocks();
}

// --- files -----------------------------------------------------------------------------

void write_tx_log(std::ostream& out, std::span<const Transaction> txs) {
    for (const auto& tx : txs) out << to_hex(tx.encode()) << '\n';
}

std::vector<Transaction> read_tx_log(std::istream& in) {
    std::vector<Transaction> txs;
    std::string line;
    for (std::size_t n = 0; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        try {
            txs.push_back(Transaction::decode(from_hex(line)));
        } catch (const DecodeError& e) {
            throw DecodeError("transaction log line " + std::to_string(n) + ": " + e.what());
        }
    }
    return txs;
}

void write_chain(std::ostream& out, std::span<const Block> blocks) {
    for (const auto& b : blocks) out << to_hex(b.encode()) << '\n';
}

std::vector<Block> read_chain(std::istream& in) {
    std::vector<Block> blocks;
    std::string line;
    while (std::getline(in, line)) {
        try {
            blocks.push_back(Block::decode(from_hex(line)));
        } catch (const DecodeError& e) {
            throw ChainError(blocks.size(), std::string("cannot decode: ") + e.what());
        }
    }
    return blocks;
}

}  // namespace chargechain::ledger
