// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

// Prime-order group arithmetic over ristretto255, hashing, randomness sources
// and Schnorr signatures. Everything above this layer (partially blind
// signatures, request signing, address derivation) is expressed in terms of
// Scalar and Point.

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>

#include "chargechain/bytes.hpp"

namespace chargechain::crypto {

/// Must be called once before any other function here; idempotent.
void init();

Hash32 sha256(ByteView data);

/// Source of uniformly random bytes.
class Rng {
  public:
    virtual ~Rng() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// Operating-system CSPRNG.
class SystemRng final : public Rng {
  public:
    void fill(std::span<std::uint8_t> out) override;
};

/// ChaCha20 keystream keyed by a 64-bit seed. Deterministic; for tests and
/// reproducible fixtures only.
class SeededRng final : public Rng {
  public:
    explicit SeededRng(std::uint64_t seed);
    void fill(std::span<std::uint8_t> out) override;

  private:
    std::array<std::uint8_t, 32> key_{};
    std::uint64_t block_ = 0;
};

/// Element of Z_L, L the ristretto255 group order. Always canonical (< L).
class Scalar {
  public:
    static constexpr std::size_t kBytes = 32;

    Scalar() = default;  // zero

    static Scalar random(Rng& rng);
    static Scalar from_u64(std::uint64_t v);
    /// Rejects non-canonical encodings.
    static std::optional<Scalar> from_bytes(ByteView b);
    /// SHA-512 over a domain tag and the length-prefixed parts, reduced mod L.
    static Scalar hash(std::string_view domain, std::initializer_list<ByteView> parts);

    [[nodiscard]] ByteView view() const { return {bytes_.data(), bytes_.size()}; }
    [[nodiscard]] bool is_zero() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    friend bool operator==(const Scalar&, const Scalar&) = default;

  private:
    std::array<std::uint8_t, kBytes> bytes_{};
};

/// ristretto255 group element in its 32-byte compressed encoding.
class Point {
  public:
    static constexpr std::size_t kBytes = 32;

    Point() = default;  // identity

    static Point identity() { return {}; }
    /// Fixed generator raised to `k`.
    static Point base_mul(const Scalar& k);
    /// Rejects encodings that are not valid group elements.
    static std::optional<Point> from_bytes(ByteView b);
    /// Hash-to-group over a domain tag and the length-prefixed parts.
    static Point hash(std::string_view domain, std::initializer_list<ByteView> parts);
    static Point random(Rng& rng);

    [[nodiscard]] ByteView view() const { return {bytes_.data(), bytes_.size()}; }
    [[nodiscard]] bool is_identity() const;

    friend Point operator+(const Point& a, const Point& b);
    friend Point operator*(const Point& p, const Scalar& k);

    friend bool operator==(const Point&, const Point&) = default;

  private:
    std::array<std::uint8_t, kBytes> bytes_{};
};

/// Last 20 bytes of SHA-256 over the compressed public key.
Address address_of(const Point& public_key);

struct SchnorrSignature {
    static constexpr std::size_t kBytes = 64;

    Point commitment;
    Scalar response;

    [[nodiscard]] Bytes encode() const;
    static std::optional<SchnorrSignature> decode(ByteView b);

    friend bool operator==(const SchnorrSignature&, const SchnorrSignature&) = default;
};

/// Discrete-log key pair used for conventional signatures.
struct SigningKeyPair {
    Scalar secret;
    Point public_key;

    static SigningKeyPair generate(Rng& rng);
    static SigningKeyPair from_secret(const Scalar& secret);

    [[nodiscard]] Address address() const { return address_of(public_key); }
    [[nodiscard]] SchnorrSignature sign(ByteView message, Rng& rng) const;
};

bool schnorr_verify(const Point& public_key, ByteView message, const SchnorrSignature& sig);

}  // namespace chargechain::crypto
