// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Anonymous charging credentials.
//
// The utility signs pseudonym public keys it never sees, using the Abe-Okamoto
// partially blind signature: the signer and requester agree on a common
// message (issuance date and community id) that ends up inside the
// signature, while the pseudonym key stays hidden behind the requester's
// blinding factors. Issuance is three moves:
//
//   utility:   commit(common)                  -> IssuerCommitment (a, b)
//   ESU:       blind(pseudonym, common, (a,b)) -> BlindedRequest e, BlindingState
//   utility:   issue(e, identity signature)    -> BlindedSignature (r, c, s, d)
//   ESU:       unblind(response, state)        -> Token (rho, omega, sigma, delta)
//
// and a token verifies iff
//   omega + delta == H(g^rho * y^omega, g^sigma * z^delta, z, pk)
// where y is the utility key and z is the common message hashed to the group.

#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chargechain/crypto.hpp"

namespace chargechain::credentials {

using crypto::Point;
using crypto::Rng;
using crypto::Scalar;

/// Days since 1970-01-01.
using Day = std::uint32_t;

struct UtilityKeyPair {
    Scalar secret;
    Point public_key;

    static UtilityKeyPair generate(Rng& rng);
};

struct PseudonymKeyPair {
    crypto::SigningKeyPair keys;
    Address address;

    static PseudonymKeyPair generate(Rng& rng);
    static PseudonymKeyPair from_secret(const Scalar& secret);
    [[nodiscard]] const Point& public_key() const { return keys.public_key; }
};

/// m0 = TS || ID_g, shared in the clear between utility and ESU.
struct CommonMessage {
    Day date = 0;
    std::string community;

    /// u32 day followed by a u16-length-prefixed community id.
    [[nodiscard]] Bytes encode() const;
    static CommonMessage decode(ByteReader& r);

    bool operator==(const CommonMessage&) const = default;
};

struct Token {
    static constexpr std::size_t kSignatureBytes = 4 * Scalar::kBytes;

    Scalar rho;
    Scalar omega;
    Scalar sigma;
    Scalar delta;
    CommonMessage common;

    /// rho || omega || sigma || delta (32 bytes each) || CommonMessage.
    [[nodiscard]] Bytes encode() const;
    static Token decode(ByteView b);
    static Token decode(ByteReader& r);

    bool operator==(const Token&) const = default;
};

/// Signer's first move, bound to one common message.
struct IssuerCommitment {
    std::uint64_t session = 0;
    Point a;
    Point b;
};

/// The only value derived from the pseudonym that the utility sees.
struct BlindedRequest {
    std::uint64_t session = 0;
    Scalar challenge;

    /// Bytes covered by the requester's identity signature.
    [[nodiscard]] Bytes signing_bytes(const CommonMessage& common) const;
};

struct BlindedSignature {
    Scalar r;
    Scalar c;
    Scalar s;
    Scalar d;
};

/// Requester-held blinding factors. Move-only and single-use.
class BlindingState {
  public:
    BlindingState(const BlindingState&) = delete;
    BlindingState& operator=(const BlindingState&) = delete;
    BlindingState(BlindingState&&) noexcept;
    BlindingState& operator=(BlindingState&&) noexcept;
    ~BlindingState();

    [[nodiscard]] bool consumed() const { return consumed_; }
    [[nodiscard]] const CommonMessage& common() const { return common_; }

  private:
    BlindingState() = default;
    void wipe();

    Scalar t1_, t2_, t3_, t4_;
    CommonMessage common_;
    bool consumed_ = true;

    friend std::pair<BlindedRequest, BlindingState> blind(const Point&, const CommonMessage&,
                                                          const IssuerCommitment&, const Point&, Rng&);
    friend Token unblind(const BlindedSignature&, BlindingState&);
};

std::pair<BlindedRequest, BlindingState> blind(const Point& pseudonym_pk, const CommonMessage& common,
                                               const IssuerCommitment& commitment, const Point& utility_pk,
                                               Rng& rng);

/// Throws std::logic_error if `state` was already consumed.
Token unblind(const BlindedSignature& response, BlindingState& state);

bool verify_token(const Token& token, const Point& pseudonym_pk, const Point& utility_pk,
                  const CommonMessage& expected_common);

/// Conventional signature by a pseudonym over a request payload.
crypto::SchnorrSignature sign_request(const PseudonymKeyPair& pseudonym, ByteView payload, Rng& rng);
bool verify_request(const Point& pseudonym_pk, ByteView payload, const crypto::SchnorrSignature& sig);

class IssuanceError : public std::runtime_error {
  public:
    enum class Reason { UnknownSession, CommonMismatch, UnregisteredIdentity, BadIdentitySignature, QuotaExhausted, BadPeriod };

    IssuanceError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
    [[nodiscard]] Reason reason() const { return reason_; }

  private:
    Reason reason_;
};

struct IssuerPolicy {
    std::uint32_t quota = 10;       // tokens per identity per period
    std::uint32_t period_days = 7;

    [[nodiscard]] Day period_start(Day day) const { return day - day % period_days; }
};

/// The utility side of issuance. Thread-safe: quota accounting is serialized.
class Issuer {
  public:
    using QuotaLog = std::map<std::pair<Address, Day>, std::uint32_t>;

    Issuer(UtilityKeyPair keys, IssuerPolicy policy = {});

    [[nodiscard]] const Point& public_key() const { return keys_.public_key; }
    [[nodiscard]] const IssuerPolicy& policy() const { return policy_; }

    void register_identity(const Point& identity_pk);

    /// The common message's date must be the first day of an issuance period.
    IssuerCommitment commit(const CommonMessage& common, Rng& rng);

    /// Answers a blinded request. Consumes the session whether or not it succeeds.
    BlindedSignature issue(const BlindedRequest& request, const CommonMessage& common, const Point& identity_pk,
                           const crypto::SchnorrSignature& identity_sig);

    [[nodiscard]] std::uint32_t issued(const Address& identity, Day period) const;
    [[nodiscard]] QuotaLog quota_log() const;
    void restore_quota_log(QuotaLog log);

    /// Every message the utility sent or received, in order.
    [[nodiscard]] std::vector<Bytes> transcript() const;

  private:
    struct Session {
        Scalar u, s, d;
        CommonMessage common;
    };

    UtilityKeyPair keys_;
    IssuerPolicy policy_;
    mutable std::mutex mu_;
    std::map<Address, Point> identities_;
    std::map<std::uint64_t, Session> sessions_;
    std::uint64_t next_session_ = 1;
    QuotaLog quota_;
    std::vector<Bytes> transcript_;
};

/// Runs the full protocol against a local issuer for one fresh pseudonym.
struct IssuedCredential {
    PseudonymKeyPair pseudonym;
    Token token;
};
IssuedCredential acquire_token(Issuer& issuer, const crypto::SigningKeyPair& identity, const CommonMessage& common,
                               Rng& rng);

}  // namespace chargechain::credentials
