// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evmx
{
/// Fixed-width unsigned integer made of 64-bit limbs (least significant limb first).
///
/// All arithmetic wraps modulo 2^(64*Limbs). Only the carry-propagating primitives live
/// here (add, sub, shifts, bitwise, compare); multiplication and division are ALU
/// algorithms, see alu.hpp.
template <std::size_t Limbs>
class basic_uint
{
    static_assert(Limbs > 0);

public:
    static constexpr std::size_t num_limbs = Limbs;
    static constexpr std::size_t num_bits = 64 * Limbs;
    static constexpr std::size_t num_bytes = 8 * Limbs;

    constexpr basic_uint() noexcept = default;

    constexpr basic_uint(std::uint64_t v) noexcept : limbs_{} { limbs_[0] = v; }  // NOLINT

    /// Widening or truncating conversion between widths.
    template <std::size_t M>
        requires(M != Limbs)
    constexpr explicit basic_uint(const basic_uint<M>& other) noexcept : limbs_{}
    {
        for (std::size_t i = 0; i < std::min(M, Limbs); ++i)
            limbs_[i] = other.limb(i);
    }

    static constexpr basic_uint max() noexcept { return ~basic_uint{}; }

    [[nodiscard]] constexpr std::uint64_t limb(std::size_t i) const noexcept { return limbs_[i]; }
    constexpr std::uint64_t& limb(std::size_t i) noexcept { return limbs_[i]; }

    [[nodiscard]] constexpr bool bit(std::size_t i) const noexcept
    {
        return i < num_bits && ((limbs_[i / 64] >> (i % 64)) & 1) != 0;
    }

    constexpr void set_bit(std::size_t i, bool v = true) noexcept
    {
        const auto mask = std::uint64_t{1} << (i % 64);
        if (v)
            limbs_[i / 64] |= mask;
        else
            limbs_[i / 64] &= ~mask;
    }

    /// Number of significant bits; 0 for zero.
    [[nodiscard]] constexpr std::size_t bit_width() const noexcept
    {
        for (std::size_t i = Limbs; i-- > 0;)
        {
            if (limbs_[i] != 0)
                return i * 64 + static_cast<std::size_t>(std::bit_width(limbs_[i]));
        }
        return 0;
    }

    [[nodiscard]] constexpr std::size_t countr_zero() const noexcept
    {
        for (std::size_t i = 0; i < Limbs; ++i)
        {
            if (limbs_[i] != 0)
                return i * 64 + static_cast<std::size_t>(std::countr_zero(limbs_[i]));
        }
        return num_bits;
    }

    [[nodiscard]] constexpr std::size_t popcount() const noexcept
    {
        std::size_t n = 0;
        for (auto l : limbs_)
            n += static_cast<std::size_t>(std::popcount(l));
        return n;
    }

    [[nodiscard]] constexpr bool is_zero() const noexcept
    {
        return std::all_of(limbs_.begin(), limbs_.end(), [](auto l) { return l == 0; });
    }

    constexpr explicit operator bool() const noexcept { return !is_zero(); }

    /// True when the value fits in 64 bits.
    [[nodiscard]] constexpr bool fits_u64() const noexcept
    {
        for (std::size_t i = 1; i < Limbs; ++i)
        {
            if (limbs_[i] != 0)
                return false;
        }
        return true;
    }

    [[nodiscard]] constexpr std::uint64_t low_u64() const noexcept { return limbs_[0]; }

    friend constexpr bool operator==(const basic_uint&, const basic_uint&) noexcept = default;

    friend constexpr std::strong_ordering operator<=>(
        const basic_uint& a, const basic_uint& b) noexcept
    {
        for (std::size_t i = Limbs; i-- > 0;)
        {
            if (a.limbs_[i] != b.limbs_[i])
                return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    friend constexpr basic_uint operator+(const basic_uint& a, const basic_uint& b) noexcept
    {
        basic_uint r;
        bool carry = false;
        for (std::size_t i = 0; i < Limbs; ++i)
        {
            const auto s = a.limbs_[i] + b.limbs_[i];
            const auto c1 = s < a.limbs_[i];
            r.limbs_[i] = s + static_cast<std::uint64_t>(carry);
            carry = c1 || (carry && r.limbs_[i] == 0);
        }
        return r;
    }

    friend constexpr basic_uint operator-(const basic_uint& a, const basic_uint& b) noexcept
    {
        basic_uint r;
        bool borrow = false;
        for (std::size_t i = 0; i < Limbs; ++i)
        {
            const auto d = a.limbs_[i] - b.limbs_[i];
            const auto b1 = a.limbs_[i] < b.limbs_[i];
            r.limbs_[i] = d - static_cast<std::uint64_t>(borrow);
            borrow = b1 || (borrow && d == 0);
        }
        return r;
    }

    friend constexpr basic_uint operator-(const basic_uint& a) noexcept { return basic_uint{} - a; }

    friend constexpr basic_uint operator~(const basic_uint& a) noexcept
    {
        basic_uint r;
        for (std::size_t i = 0; i < Limbs; ++i)
            r.limbs_[i] = ~a.limbs_[i];
        return r;
    }

    friend constexpr basic_uint operator&(const basic_uint& a, const basic_uint& b) noexcept
    {
        basic_uint r;
        for (std::size_t i = 0; i < Limbs; ++i)
            r.limbs_[i] = a.limbs_[i] & b.limbs_[i];
        return r;
    }

    friend constexpr basic_uint operator|(const basic_uint& a, const basic_uint& b) noexcept
    {
        basic_uint r;
        for (std::size_t i = 0; i < Limbs; ++i)
            r.limbs_[i] = a.limbs_[i] | b.limbs_[i];
        return r;
    }

    friend constexpr basic_uint operator^(const basic_uint& a, const basic_uint& b) noexcept
    {
        basic_uint r;
        for (std::size_t i = 0; i < Limbs; ++i)
            r.limbs_[i] = a.limbs_[i] ^ b.limbs_[i];
        return r;
    }

    friend constexpr basic_uint operator<<(const basic_uint& a, std::size_t shift) noexcept
    {
        if (shift >= num_bits)
            return {};
        basic_uint r;
        const auto limb_shift = shift / 64;
        const auto bit_shift = shift % 64;
        for (std::size_t i = Limbs; i-- > limb_shift;)
        {
            auto v = a.limbs_[i - limb_shift] << bit_shift;
            if (bit_shift != 0 && i > limb_shift)
                v |= a.limbs_[i - limb_shift - 1] >> (64 - bit_shift);
            r.limbs_[i] = v;
        }
        return r;
    }

    friend constexpr basic_uint operator>>(const basic_uint& a, std::size_t shift) noexcept
    {
        if (shift >= num_bits)
            return {};
        basic_uint r;
        const auto limb_shift = shift / 64;
        const auto bit_shift = shift % 64;
        for (std::size_t i = 0; i + limb_shift < Limbs; ++i)
        {
            auto v = a.limbs_[i + limb_shift] >> bit_shift;
            if (bit_shift != 0 && i + limb_shift + 1 < Limbs)
                v |= a.limbs_[i + limb_shift + 1] << (64 - bit_shift);
            r.limbs_[i] = v;
        }
        return r;
    }

    constexpr basic_uint& operator+=(const basic_uint& o) noexcept { return *this = *this + o; }
    constexpr basic_uint& operator-=(const basic_uint& o) noexcept { return *this = *this - o; }
    constexpr basic_uint& operator&=(const basic_uint& o) noexcept { return *this = *this & o; }
    constexpr basic_uint& operator|=(const basic_uint& o) noexcept { return *this = *this | o; }
    constexpr basic_uint& operator^=(const basic_uint& o) noexcept { return *this = *this ^ o; }
    constexpr basic_uint& operator<<=(std::size_t s) noexcept { return *this = *this << s; }
    constexpr basic_uint& operator>>=(std::size_t s) noexcept { return *this = *this >> s; }

    /// Big-endian serialization.
    [[nodiscard]] constexpr std::array<std::uint8_t, num_bytes> to_be_bytes() const noexcept
    {
        std::array<std::uint8_t, num_bytes> out{};
        for (std::size_t i = 0; i < num_bytes; ++i)
            out[num_bytes - 1 - i] = static_cast<std::uint8_t>(limbs_[i / 8] >> (8 * (i % 8)));
        return out;
    }

    /// Big-endian interpretation, left-padded with zeros. Throws if longer than the width.
    static constexpr basic_uint from_be_bytes(std::span<const std::uint8_t> bytes)
    {
        if (bytes.size() > num_bytes)
            throw std::invalid_argument("byte string longer than word width");
        basic_uint r;
        const auto n = bytes.size();
        for (std::size_t i = 0; i < n; ++i)
            r.limbs_[i / 8] |= std::uint64_t{bytes[n - 1 - i]} << (8 * (i % 8));
        return r;
    }

    /// Minimal lowercase hex with 0x prefix ("0x0" for zero).
    [[nodiscard]] std::string to_hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        bool leading = true;
        for (std::size_t i = num_bits / 4; i-- > 0;)
        {
            const auto nibble = (limbs_[i / 16] >> (4 * (i % 16))) & 0xf;
            if (leading && nibble == 0)
                continue;
            leading = false;
            s.push_back(digits[nibble]);
        }
        return "0x" + (s.empty() ? std::string{"0"} : s);
    }

    /// Parses hex with optional 0x prefix; odd lengths allowed. Throws on bad digits or
    /// overflow.
    static basic_uint from_hex(std::string_view s)
    {
        if (s.starts_with("0x") || s.starts_with("0X"))
            s.remove_prefix(2);
        if (s.empty())
            throw std::invalid_argument("empty hex quantity");
        basic_uint r;
        for (char c : s)
        {
            int v;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (c >= 'a' && c <= 'f')
                v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F')
                v = c - 'A' + 10;
            else
                throw std::invalid_argument(std::string{"invalid hex digit '"} + c + "'");
            if (r.limbs_[Limbs - 1] >> 60 != 0)
                throw std::invalid_argument("hex quantity exceeds word width");
            r = (r << 4) | basic_uint{static_cast<std::uint64_t>(v)};
        }
        return r;
    }

private:
    std::array<std::uint64_t, Limbs> limbs_{};
};

/// The 256-bit machine word: stack items, storage keys and values.
using Word256 = basic_uint<4>;

/// Double-width intermediate used by ADDMOD/MULMOD.
using Word512 = basic_uint<8>;

/// Big-endian bytes (at most 32) to a word, left-padded with zeros.
inline Word256 word_from_bytes(std::span<const std::uint8_t> bytes)
{
    return Word256::from_be_bytes(bytes);
}

inline std::array<std::uint8_t, 32> word_to_bytes(const Word256& w) noexcept
{
    return w.to_be_bytes();
}

/// Two's-complement sign bit.
template <std::size_t L>
constexpr bool is_negative(const basic_uint<L>& v) noexcept
{
    return v.bit(basic_uint<L>::num_bits - 1);
}

}  // namespace evmx
