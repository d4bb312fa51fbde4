// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace chargechain;
using namespace chargechain::crypto;

namespace {

// Group order of ristretto255, little-endian.
const char* kOrderHex = "edd3f55c1a631258d69cf7a2def9de1400000000000000000000000000000010";

}  // namespace

TEST_SUITE("crypto") {

TEST_CASE("hex round trip and rejection") {
    const Bytes b{0x00, 0x01, 0xab, 0xff};
    CHECK(to_hex(b) == "0001abff");
    CHECK(from_hex("0001ABff") == b);
    CHECK_THROWS_AS(from_hex("abc"), DecodeError);
    CHECK_THROWS_AS(from_hex("zz"), DecodeError);
    CHECK(from_hex("").empty());
}

TEST_CASE("byte writer and reader agree") {
    ByteWriter w;
    w.u8(7);
    w.u16(0x1234);
    w.u32(0xdeadbeef);
    w.u64(0x0102030405060708ULL);
    w.i64(-5);
    w.str("hi");
    w.var(Bytes{1, 2, 3});
    const Bytes bytes = std::move(w).take();
    CHECK(to_hex(ByteView(bytes).first(3)) == "071234");
    ByteReader r(bytes);
    CHECK(r.u8() == 7);
    CHECK(r.u16() == 0x1234);
    CHECK(r.u32() == 0xdeadbeef);
    CHECK(r.u64() == 0x0102030405060708ULL);
    CHECK(r.i64() == -5);
    CHECK(r.str() == "hi");
    CHECK(r.var() == Bytes{1, 2, 3});
    CHECK(r.done());
    ByteReader short_read(ByteView(bytes).first(2));
    short_read.u8();
    CHECK_THROWS_AS(short_read.u16(), DecodeError);
}

TEST_CASE("sha256 known answer") {
    CHECK(sha256(as_bytes("abc")).hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("ristretto255 base point multiples") {
    CHECK(to_hex(Point::base_mul(Scalar::from_u64(1)).view()) ==
          "e2f2ae0a6abc4e71a884a961c500515f58e30b6aa582dd8db6a65945e08d2d76");
    CHECK(to_hex(Point::base_mul(Scalar::from_u64(2)).view()) ==
          "6a493210f7499cd17fecb510ae0cea23a110e8d5b901f8acadd3095c73a3b919");
    CHECK(Point::base_mul(Scalar{}).is_identity());
    const auto b = Point::base_mul(Scalar::from_u64(1));
    CHECK(b + b == Point::base_mul(Scalar::from_u64(2)));
}

TEST_CASE("scalar field arithmetic") {
    SeededRng rng(1);
    const auto order = from_hex(kOrderHex);
    CHECK_FALSE(Scalar::from_bytes(order).has_value());
    Bytes order_minus_one = order;
    order_minus_one[0] -= 1;
    const auto top = Scalar::from_bytes(order_minus_one);
    REQUIRE(top.has_value());
    CHECK((*top + Scalar::from_u64(1)).is_zero());
    CHECK(*top == -Scalar::from_u64(1));
    CHECK_FALSE(Scalar::from_bytes(Bytes(31, 0)).has_value());

    for (int i = 0; i < 50; ++i) {
        const auto a = Scalar::random(rng);
        const auto b = Scalar::random(rng);
        const auto c = Scalar::random(rng);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Scalar{});
        CHECK(Point::base_mul(a + b) == Point::base_mul(a) + Point::base_mul(b));
        CHECK(Point::base_mul(a * b) == Point::base_mul(a) * b);
        CHECK(Scalar::from_bytes(a.view()) == a);
        CHECK(Point::from_bytes(Point::base_mul(a).view()) == Point::base_mul(a));
    }
}

TEST_CASE("point decoding rejects non-canonical input") {
    Bytes bad(32, 0xff);
    CHECK_FALSE(Point::from_bytes(bad).has_value());
    CHECK_FALSE(Point::from_bytes(Bytes(31, 0)).has_value());
    CHECK(Point::from_bytes(Bytes(32, 0)).value().is_identity());
}

TEST_CASE("hashing into the group is deterministic and domain separated") {
    const Bytes m{1, 2, 3};
    CHECK(Point::hash("a", {m}) == Point::hash("a", {m}));
    CHECK(Point::hash("a", {m}) != Point::hash("b", {m}));
    CHECK(Scalar::hash("a", {m}) != Scalar::hash("a", {Bytes{1, 2}, Bytes{3}}));
}

TEST_CASE("seeded rng is reproducible") {
    SeededRng a(5), b(5), c(6);
    std::array<std::uint8_t, 40> x{}, y{}, z{};
    a.fill(x);
    b.fill(y);
    c.fill(z);
    CHECK(x == y);
    CHECK(x != z);
    a.fill(x);
    CHECK(x != y);
}

TEST_CASE("address is the hash tail of the public key") {
    SeededRng rng(2);
    const auto kp = SigningKeyPair::generate(rng);
    const auto digest = sha256(kp.public_key.view());
    CHECK(kp.address() == Address::from_span(digest.view().subspan(12)));
}

TEST_CASE("schnorr sign and verify") {
    SeededRng rng(3);
    const auto kp = SigningKeyPair::generate(rng);
    const auto other = SigningKeyPair::generate(rng);
    const Bytes msg{'h', 'e', 'l', 'l', 'o'};
    const auto sig = kp.sign(msg, rng);
    CHECK(schnorr_verify(kp.public_key, msg, sig));
    CHECK_FALSE(schnorr_verify(kp.public_key, Bytes{'h', 'e', 'l', 'l', 'O'}, sig));
    CHECK_FALSE(schnorr_verify(other.public_key, msg, sig));
    CHECK_FALSE(schnorr_verify(Point::identity(), msg, sig));
    CHECK(SchnorrSignature::decode(sig.encode()) == sig);
    CHECK_FALSE(SchnorrSignature::decode(Bytes(63, 0)).has_value());

    const auto encoded = sig.encode();
    for (std::size_t bit = 0; bit < encoded.size() * 8; bit += 7) {
        Bytes t = encoded;
        t[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        const auto decoded = SchnorrSignature::decode(t);
        CHECK((!decoded || !schnorr_verify(kp.public_key, msg, *decoded)));
    }
}

}  // TEST_SUITE
