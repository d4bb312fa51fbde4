// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include "chargechain/bytes.hpp"

#include <limits>

namespace chargechain {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw DecodeError("odd-length hex string");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_value(hex[i]);
        const int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw DecodeError("invalid hex digit at offset " + std::to_string(i));
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

void ByteWriter::u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::var(ByteView b) {
    if (b.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::length_error("byte field too long");
    }
    u32(static_cast<std::uint32_t>(b.size()));
    fixed(b);
}

void ByteWriter::str(std::string_view s) {
    if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw std::length_error("string field too long");
    }
    u16(static_cast<std::uint16_t>(s.size()));
    fixed(as_bytes(s));
}

ByteView ByteReader::fixed(std::size_t n) {
    if (remaining() < n) {
        throw DecodeError("truncated input: need " + std::to_string(n) + " bytes, have " +
                          std::to_string(remaining()));
    }
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::uint8_t ByteReader::u8() { return fixed(1)[0]; }

std::uint16_t ByteReader::u16() {
    auto b = fixed(2);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
    std::uint32_t v = 0;
    for (std::uint8_t b : fixed(4)) v = (v << 8) | b;
    return v;
}

std::uint64_t ByteReader::u64() {
    std::uint64_t v = 0;
    for (std::uint8_t b : fixed(8)) v = (v << 8) | b;
    return v;
}

Bytes ByteReader::var() {
    const std::uint32_t n = u32();
    auto b = fixed(n);
    return {b.begin(), b.end()};
}

std::string ByteReader::str() {
    const std::uint16_t n = u16();
    auto b = fixed(n);
    return {reinterpret_cast<const char*>(b.data()), b.size()};
}

void ByteReader::expect_done() const {
    if (!done()) {
        throw DecodeError(std::to_string(remaining()) + " trailing bytes");
    }
}

}  // namespace chargechain
