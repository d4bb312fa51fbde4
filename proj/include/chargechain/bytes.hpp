// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chargechain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Raised when a canonical encoding cannot be parsed.
class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

template <std::size_t N>
struct FixedBytes {
    static constexpr std::size_t size = N;
    std::array<std::uint8_t, N> bytes{};

    static FixedBytes from_span(ByteView src) {
        if (src.size() != N) {
            throw DecodeError("expected " + std::to_string(N) + " bytes, got " + std::to_string(src.size()));
        }
        FixedBytes out;
        std::copy(src.begin(), src.end(), out.bytes.begin());
        return out;
    }
    static FixedBytes from_hex_string(std::string_view hex) { return from_span(from_hex(hex)); }

    [[nodiscard]] ByteView view() const { return {bytes.data(), N}; }
    [[nodiscard]] std::string hex() const { return to_hex(view()); }
    [[nodiscard]] bool is_zero() const {
        return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
    }

    auto operator<=>(const FixedBytes&) const = default;
};

/// 20-byte account address (truncated public-key digest).
using Address = FixedBytes<20>;
using Hash32 = FixedBytes<32>;

/// Big-endian, length-prefixed canonical writer.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void fixed(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
    template <std::size_t N>
    void fixed(const FixedBytes<N>& b) {
        fixed(b.view());
    }
    /// u32 length prefix followed by the bytes.
    void var(ByteView b);
    /// u16 length prefix; throws if the string is longer than 65535 bytes.
    void str(std::string_view s);

    [[nodiscard]] const Bytes& bytes() const& { return out_; }
    [[nodiscard]] Bytes take() && { return std::move(out_); }

  private:
    Bytes out_;
};

class ByteReader {
  public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    ByteView fixed(std::size_t n);
    template <std::size_t N>
    FixedBytes<N> fixed() {
        return FixedBytes<N>::from_span(fixed(N));
    }
    Bytes var();
    std::string str();

    [[nodiscard]] bool done() const { return pos_ == in_.size(); }
    [[nodiscard]] std::size_t remaining() const { return in_.size() - pos_; }
    /// Throws unless every input byte was consumed.
    void expect_done() const;

  private:
    ByteView in_;
    std::size_t pos_ = 0;
};

}  // namespace chargechain
