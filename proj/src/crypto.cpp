// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/crypto.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace chargechain::crypto {

namespace {

// ristretto255 group order L = 2^252 + 27742317777372353535851937790883648493, little-endian.
constexpr std::array<std::uint8_t, 32> kOrder = {
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7, 0xa2, 0xde, 0xf9, 0xde, 0x14,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10};

bool is_canonical_scalar(ByteView b) {
    for (int i = 31; i >= 0; --i) {
        if (b[i] < kOrder[i]) return true;
        if (b[i] > kOrder[i]) return false;
    }
    return false;  // equal to L
}

void hash_parts(crypto_hash_sha512_state& st, std::string_view domain, std::initializer_list<ByteView> parts) {
    ByteWriter w;
    w.str(domain);
    crypto_hash_sha512_update(&st, w.bytes().data(), w.bytes().size());
    for (ByteView p : parts) {
        ByteWriter len;
        len.u32(static_cast<std::uint32_t>(p.size()));
        crypto_hash_sha512_update(&st, len.bytes().data(), len.bytes().size());
        crypto_hash_sha512_update(&st, p.data(), p.size());
    }
}

}  // namespace

void init() {
    if (sodium_init() < 0) {
        throw std::runtime_error("libsodium initialisation failed");
    }
}

Hash32 sha256(ByteView data) {
    Hash32 out;
    crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
    return out;
}

void SystemRng::fill(std::span<std::uint8_t> out) { randombytes_buf(out.data(), out.size()); }

SeededRng::SeededRng(std::uint64_t seed) {
    ByteWriter w;
    w.str("chargechain/seeded-rng");
    w.u64(seed);
    key_ = sha256(w.bytes()).bytes;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
    // One fresh nonce per call keeps successive fills independent.
    std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
    std::uint64_t n = block_++;
    for (std::size_t i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(n >> (8 * i));
    crypto_stream_chacha20(out.data(), out.size(), nonce.data(), key_.data());
}

// --- Scalar -----------------------------------------------------------------

Scalar Scalar::random(Rng& rng) {
    std::array<std::uint8_t, crypto_core_ristretto255_NONREDUCEDSCALARBYTES> wide{};
    rng.fill(wide);
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide.data());
    return s;
}

Scalar Scalar::from_u64(std::uint64_t v) {
    Scalar s;
    for (std::size_t i = 0; i < 8; ++i) s.bytes_[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return s;
}

std::optional<Scalar> Scalar::from_bytes(ByteView b) {
    if (b.size() != kBytes || !is_canonical_scalar(b)) return std::nullopt;
    Scalar s;
    std::memcpy(s.bytes_.data(), b.data(), kBytes);
    return s;
}

Scalar Scalar::hash(std::string_view domain, std::initializer_list<ByteView> parts) {
    crypto_hash_sha512_state st;
    crypto_hash_sha512_init(&st);
    hash_parts(st, domain, parts);
    std::array<std::uint8_t, crypto_hash_sha512_BYTES> digest{};
    crypto_hash_sha512_final(&st, digest.data());
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), digest.data());
    return s;
}

bool Scalar::is_zero() const { return sodium_is_zero(bytes_.data(), bytes_.size()) == 1; }

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar r;
    crypto_core_ristretto255_scalar_add(r.bytes_.data(), a.bytes_.data(), b.bytes_.data());
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    Scalar r;
    crypto_core_ristretto255_scalar_sub(r.bytes_.data(), a.bytes_.data(), b.bytes_.data());
    return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    crypto_core_ristretto255_scalar_mul(r.bytes_.data(), a.bytes_.data(), b.bytes_.data());
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    crypto_core_ristretto255_scalar_negate(r.bytes_.data(), bytes_.data());
    return r;
}

// --- Point ------------------------------------------------------------------

Point Point::base_mul(const Scalar& k) {
    Point p;
    // libsodium refuses to emit the identity; a zero result is left as the identity encoding.
    if (crypto_scalarmult_ristretto255_base(p.bytes_.data(), k.view().data()) != 0) {
        p.bytes_.fill(0);
    }
    return p;
}

std::optional<Point> Point::from_bytes(ByteView b) {
    if (b.size() != kBytes || crypto_core_ristretto255_is_valid_point(b.data()) != 1) return std::nullopt;
    Point p;
    std::memcpy(p.bytes_.data(), b.data(), kBytes);
    return p;
}

Point Point::hash(std::string_view domain, std::initializer_list<ByteView> parts) {
    crypto_hash_sha512_state st;
    crypto_hash_sha512_init(&st);
    hash_parts(st, domain, parts);
    std::array<std::uint8_t, crypto_hash_sha512_BYTES> digest{};
    crypto_hash_sha512_final(&st, digest.data());
    Point p;
    crypto_core_ristretto255_from_hash(p.bytes_.data(), digest.data());
    return p;
}

Point Point::random(Rng& rng) {
    std::array<std::uint8_t, crypto_core_ristretto255_HASHBYTES> seed{};
    rng.fill(seed);
    Point p;
    crypto_core_ristretto255_from_hash(p.bytes_.data(), seed.data());
    return p;
}

bool Point::is_identity() const { return sodium_is_zero(bytes_.data(), bytes_.size()) == 1; }

Point operator+(const Point& a, const Point& b) {
    Point r;
    if (crypto_core_ristretto255_add(r.bytes_.data(), a.bytes_.data(), b.bytes_.data()) != 0) {
        throw std::invalid_argument("point addition on invalid encoding");
    }
    return r;
}

Point operator*(const Point& p, const Scalar& k) {
    Point r;
    if (crypto_scalarmult_ristretto255(r.bytes_.data(), k.view().data(), p.bytes_.data()) != 0) {
        r.bytes_.fill(0);
    }
    return r;
}

Address address_of(const Point& public_key) {
    const Hash32 digest = sha256(public_key.view());
    return Address::from_span(digest.view().subspan(Hash32::size - Address::size));
}

// --- Schnorr ------------------------------------------------------------------

namespace {

constexpr std::string_view kSchnorrDomain = "chargechain/schnorr/v1";

Scalar schnorr_challenge(const Point& commitment, const Point& public_key, ByteView message) {
    return Scalar::hash(kSchnorrDomain, {commitment.view(), public_key.view(), message});
}

}  // namespace

Bytes SchnorrSignature::encode() const {
    ByteWriter w;
    w.fixed(commitment.view());
    w.fixed(response.view());
    return std::move(w).take();
}

std::optional<SchnorrSignature> SchnorrSignature::decode(ByteView b) {
    if (b.size() != kBytes) return std::nullopt;
    auto r = Point::from_bytes(b.subspan(0, 32));
    auto s = Scalar::from_bytes(b.subspan(32, 32));
    if (!r || !s) return std::nullopt;
    return SchnorrSignature{*r, *s};
}

SigningKeyPair SigningKeyPair::generate(Rng& rng) {
    Scalar secret;
    do {
        secret = Scalar::random(rng);
    } while (secret.is_zero());
    return from_secret(secret);
}

SigningKeyPair SigningKeyPair::from_secret(const Scalar& secret) {
    if (secret.is_zero()) {
        throw std::invalid_argument("zero secret key");
    }
    return {secret, Point::base_mul(secret)};
}

SchnorrSignature SigningKeyPair::sign(ByteView message, Rng& rng) const {
    Scalar nonce;
    do {
        nonce = Scalar::random(rng);
    } while (nonce.is_zero());
    const Point commitment = Point::base_mul(nonce);
    const Scalar c = schnorr_challenge(commitment, public_key, message);
    return {commitment, nonce + c * secret};
}

bool schnorr_verify(const Point& public_key, ByteView message, const SchnorrSignature& sig) {
    if (public_key.is_identity() || sig.commitment.is_identity()) return false;
    const Scalar c = schnorr_challenge(sig.commitment, public_key, message);
    return Point::base_mul(sig.response) == sig.commitment + public_key * c;
}

}  // namespace chargechain::crypto
