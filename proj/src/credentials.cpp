// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/credentials.hpp"

#include <sodium.h>

#include <stdexcept>

namespace chargechain::credentials {

namespace {

constexpr std::string_view kInfoDomain = "chargechain/pbs/info/v1";
constexpr std::string_view kChallengeDomain = "chargechain/pbs/challenge/v1";
constexpr std::string_view kIdentityDomain = "chargechain/pbs/identity-request/v1";

Point info_point(const CommonMessage& common) {
    const Bytes encoded = common.encode();
    return Point::hash(kInfoDomain, {encoded});
}

Scalar pbs_challenge(const Point& alpha, const Point& beta, const Point& z, const Point& pseudonym_pk) {
    return Scalar::hash(kChallengeDomain, {alpha.view(), beta.view(), z.view(), pseudonym_pk.view()});
}

Scalar nonzero_scalar(Rng& rng) {
    Scalar s;
    do {
        s = Scalar::random(rng);
    } while (s.is_zero());
    return s;
}

Scalar read_scalar(ByteReader& r) {
    auto s = Scalar::from_bytes(r.fixed(Scalar::kBytes));
    if (!s) throw DecodeError("non-canonical scalar");
    return *s;
}

}  // namespace

UtilityKeyPair UtilityKeyPair::generate(Rng& rng) {
    const Scalar secret = nonzero_scalar(rng);
    return {secret, Point::base_mul(secret)};
}

PseudonymKeyPair PseudonymKeyPair::generate(Rng& rng) { return from_secret(nonzero_scalar(rng)); }

PseudonymKeyPair PseudonymKeyPair::from_secret(const Scalar& secret) {
    auto keys = crypto::SigningKeyPair::from_secret(secret);
    const Address address = keys.address();
    return {keys, address};
}

Bytes CommonMessage::encode() const {
    ByteWriter w;
    w.u32(date);
    w.str(community);
    return std::move(w).take();
}

CommonMessage CommonMessage::decode(ByteReader& r) {
    CommonMessage m;
    m.date = r.u32();
    m.community = r.str();
    return m;
}

Bytes Token::encode() const {
    ByteWriter w;
    w.fixed(rho.view());
    w.fixed(omega.view());
    w.fixed(sigma.view());
    w.fixed(delta.view());
    w.fixed(common.encode());
    return std::move(w).take();
}

Token Token::decode(ByteReader& r) {
    Token t;
    t.rho = read_scalar(r);
    t.omega = read_scalar(r);
    t.sigma = read_scalar(r);
    t.delta = read_scalar(r);
    t.common = CommonMessage::decode(r);
    return t;
}

Token Token::decode(ByteView b) {
    ByteReader r(b);
    Token t = decode(r);
    r.expect_done();
    return t;
}

Bytes BlindedRequest::signing_bytes(const CommonMessage& common) const {
    ByteWriter w;
    w.str(kIdentityDomain);
    w.u64(session);
    w.fixed(challenge.view());
    w.fixed(common.encode());
    return std::move(w).take();
}

// --- BlindingState ------------------------------------------------------------

BlindingState::BlindingState(BlindingState&& other) noexcept
    : t1_(other.t1_), t2_(other.t2_), t3_(other.t3_), t4_(other.t4_), common_(std::move(other.common_)),
      consumed_(other.consumed_) {
    other.wipe();
}

BlindingState& BlindingState::operator=(BlindingState&& other) noexcept {
    if (this != &other) {
        t1_ = other.t1_;
        t2_ = other.t2_;
        t3_ = other.t3_;
        t4_ = other.t4_;
        common_ = std::move(other.common_);
        consumed_ = other.consumed_;
        other.wipe();
    }
    return *this;
}

BlindingState::~BlindingState() { wipe(); }

void BlindingState::wipe() {
    sodium_memzero(&t1_, sizeof t1_);
    sodium_memzero(&t2_, sizeof t2_);
    sodium_memzero(&t3_, sizeof t3_);
    sodium_memzero(&t4_, sizeof t4_);
    consumed_ = true;
}

std::pair<BlindedRequest, BlindingState> blind(const Point& pseudonym_pk, const CommonMessage& common,
                                               const IssuerCommitment& commitment, const Point& utility_pk,
                                               Rng& rng) {
    BlindingState state;
    state.t1_ = Scalar::random(rng);
    state.t2_ = Scalar::random(rng);
    state.t3_ = Scalar::random(rng);
    state.t4_ = Scalar::random(rng);
    state.common_ = common;
    state.consumed_ = false;

    const Point z = info_point(common);
    const Point alpha = commitment.a + Point::base_mul(state.t1_) + utility_pk * state.t2_;
    const Point beta = commitment.b + Point::base_mul(state.t3_) + z * state.t4_;
    const Scalar epsilon = pbs_challenge(alpha, beta, z, pseudonym_pk);
    BlindedRequest request{commitment.session, epsilon - state.t2_ - state.t4_};
    return {request, std::move(state)};
}

Token unblind(const BlindedSignature& response, BlindingState& state) {
    if (state.consumed_) {
        throw std::logic_error("blinding state already consumed");
    }
    Token token{response.r + state.t1_, response.c + state.t2_, response.s + state.t3_, response.d + state.t4_,
                state.common_};
    state.wipe();
    return token;
}

bool verify_token(const Token& token, const Point& pseudonym_pk, const Point& utility_pk,
                  const CommonMessage& expected_common) {
    if (token.common != expected_common) return false;
    if (pseudonym_pk.is_identity() || utility_pk.is_identity()) return false;
    const Point z = info_point(expected_common);
    const Point alpha = Point::base_mul(token.rho) + utility_pk * token.omega;
    const Point beta = Point::base_mul(token.sigma) + z * token.delta;
    return token.omega + token.delta == pbs_challenge(alpha, beta, z, pseudonym_pk);
}

crypto::SchnorrSignature sign_request(const PseudonymKeyPair& pseudonym, ByteView payload, Rng& rng) {
    return pseudonym.keys.sign(payload, rng);
}

bool verify_request(const Point& pseudonym_pk, ByteView payload, const crypto::SchnorrSignature& sig) {
    return crypto::schnorr_verify(pseudonym_pk, payload, sig);
}

// --- Issuer ---------------------------------------------------------------------

Issuer::Issuer(UtilityKeyPair keys, IssuerPolicy policy) : keys_(keys), policy_(policy) {
    if (policy_.period_days == 0) {
        throw std::invalid_argument("issuance period must be at least one day");
    }
}

void Issuer::register_identity(const Point& identity_pk) {
    std::lock_guard lock(mu_);
    identities_[crypto::address_of(identity_pk)] = identity_pk;
}

IssuerCommitment Issuer::commit(const CommonMessage& common, Rng& rng) {
    if (common.date != policy_.period_start(common.date)) {
        throw IssuanceError(IssuanceError::Reason::BadPeriod,
                            "common message date " + std::to_string(common.date) + " is not a period start");
    }
    Session session{nonzero_scalar(rng), Scalar::random(rng), Scalar::random(rng), common};
    const Point a = Point::base_mul(session.u);
    const Point b = Point::base_mul(session.s) + info_point(common) * session.d;

    std::lock_guard lock(mu_);
    const std::uint64_t id = next_session_++;
    sessions_.emplace(id, std::move(session));
    ByteWriter w;
    w.u64(id);
    w.fixed(a.view());
    w.fixed(b.view());
    transcript_.push_back(std::move(w).take());
    return {id, a, b};
}

BlindedSignature Issuer::issue(const BlindedRequest& request, const CommonMessage& common, const Point& identity_pk,
                               const crypto::SchnorrSignature& identity_sig) {
    using Reason = IssuanceError::Reason;
    std::lock_guard lock(mu_);
    {
        ByteWriter w;
        w.u64(request.session);
        w.fixed(request.challenge.view());
        w.fixed(common.encode());
        w.fixed(identity_pk.view());
        w.fixed(identity_sig.encode());
        transcript_.push_back(std::move(w).take());
    }

    auto it = sessions_.find(request.session);
    if (it == sessions_.end()) {
        throw IssuanceError(Reason::UnknownSession, "unknown or already answered issuance session");
    }
    // A commitment is answered at most once; answering twice would reveal the secret key.
    const Session session = it->second;
    sessions_.erase(it);

    if (session.common != common) {
        throw IssuanceError(Reason::CommonMismatch, "common message differs from the committed one");
    }
    const Address identity = crypto::address_of(identity_pk);
    if (!identities_.contains(identity)) {
        throw IssuanceError(Reason::UnregisteredIdentity, "identity " + identity.hex() + " is not registered");
    }
    if (!crypto::schnorr_verify(identity_pk, request.signing_bytes(common), identity_sig)) {
        throw IssuanceError(Reason::BadIdentitySignature, "identity signature does not verify");
    }
    auto& count = quota_[{identity, policy_.period_start(common.date)}];
    if (count >= policy_.quota) {
        throw IssuanceError(Reason::QuotaExhausted,
                            "token quota of " + std::to_string(policy_.quota) + " per period exhausted");
    }
    ++count;

    const Scalar c = request.challenge - session.d;
    BlindedSignature response{session.u - c * keys_.secret, c, session.s, session.d};
    ByteWriter w;
    w.fixed(response.r.view());
    w.fixed(response.c.view());
    w.fixed(response.s.view());
    w.fixed(response.d.view());
    transcript_.push_back(std::move(w).take());
    return response;
}

std::uint32_t Issuer::issued(const Address& identity, Day period) const {
    std::lock_guard lock(mu_);
    auto it = quota_.find({identity, policy_.period_start(period)});
    return it == quota_.end() ? 0 : it->second;
}

Issuer::QuotaLog Issuer::quota_log() const {
    std::lock_guard lock(mu_);
    return quota_;
}

void Issuer::restore_quota_log(QuotaLog log) {
    std::lock_guard lock(mu_);
    quota_ = std::move(log);
}

std::vector<Bytes> Issuer::transcript() const {
    std::lock_guard lock(mu_);
    return transcript_;
}

IssuedCredential acquire_token(Issuer& issuer, const crypto::SigningKeyPair& identity, const CommonMessage& common,
                               Rng& rng) {
    auto pseudonym = PseudonymKeyPair::generate(rng);
    const auto commitment = issuer.commit(common, rng);
    auto [request, state] = blind(pseudonym.public_key(), common, commitment, issuer.public_key(), rng);
    const auto identity_sig = identity.sign(request.signing_bytes(common), rng);
    const auto response = issuer.issue(request, common, identity.public_key, identity_sig);
    Token token = unblind(response, state);
    if (!verify_token(token, pseudonym.public_key(), issuer.public_key(), common)) {
        throw std::runtime_error("issued token failed verification");
    }
    return {std::move(pseudonym), std::move(token)};
}

}  // namespace chargechain::credentials
