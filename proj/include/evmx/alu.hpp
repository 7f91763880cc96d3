// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "word.hpp"

#include <cstddef>
#include <cstdint>

/// 256-bit ALU built from shifts and adds only: shift-and-add multiplication and
/// non-restoring division, with the power-of-two divisor reduced to a right shift.
/// Templates work at any limb count so the same algorithms produce the 512-bit
/// intermediates of ADDMOD and MULMOD.
namespace evmx::alu
{
template <std::size_t L>
struct DivModResult
{
    basic_uint<L> quotient;
    basic_uint<L> remainder;

    friend constexpr bool operator==(const DivModResult&, const DivModResult&) = default;
};

template <std::size_t L>
constexpr basic_uint<L> add(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    return a + b;
}

template <std::size_t L>
constexpr basic_uint<L> sub(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    return a - b;
}

/// Product modulo 2^bits. Walks the multiplier from its least significant bit, adding the
/// multiplicand (shifted left once per step) whenever the bit is set.
template <std::size_t L>
constexpr basic_uint<L> mul_shift_add(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    basic_uint<L> acc;
    basic_uint<L> multiplicand = a;
    basic_uint<L> multiplier = b;
    while (!multiplier.is_zero() && !multiplicand.is_zero())
    {
        if (multiplier.bit(0))
            acc += multiplicand;
        multiplicand <<= 1;
        multiplier >>= 1;
    }
    return acc;
}

/// Non-restoring division for a nonzero divisor, without the power-of-two shortcut.
///
/// The partial remainder is kept in two's complement one limb wider than the operands.
/// Each step shifts in the next dividend bit, then subtracts the divisor if the remainder
/// was non-negative or adds it if negative; the quotient bit is 1 when the new remainder
/// is non-negative. A negative final remainder is corrected by one addition.
template <std::size_t L>
constexpr DivModResult<L> divmod_nonrestoring_general(
    const basic_uint<L>& dividend, const basic_uint<L>& divisor) noexcept
{
    using Wide = basic_uint<L + 1>;
    const Wide d{divisor};
    Wide r;
    basic_uint<L> q;

    // Leading zero bits of the dividend only shift zeros into a zero remainder.
    const auto top = dividend.bit_width();
    for (std::size_t i = top; i-- > 0;)
    {
        const bool was_negative = is_negative(r);
        r <<= 1;
        if (dividend.bit(i))
            r.set_bit(0);
        r = was_negative ? r + d : r - d;
        if (!is_negative(r))
            q.set_bit(i);
    }
    if (is_negative(r))
        r += d;
    return {q, basic_uint<L>{r}};
}

/// Quotient and remainder. Division by zero gives (0, 0); a power-of-two divisor is a
/// shift and a mask.
template <std::size_t L>
constexpr DivModResult<L> divmod_nonrestoring(
    const basic_uint<L>& dividend, const basic_uint<L>& divisor) noexcept
{
    if (divisor.is_zero())
        return {};
    if (divisor.popcount() == 1)
    {
        const auto k = divisor.countr_zero();
        return {dividend >> k, dividend & (divisor - basic_uint<L>{1})};
    }
    return divmod_nonrestoring_general(dividend, divisor);
}

template <std::size_t L>
constexpr basic_uint<L> div(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    return divmod_nonrestoring(a, b).quotient;
}

template <std::size_t L>
constexpr basic_uint<L> mod(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    return divmod_nonrestoring(a, b).remainder;
}

template <std::size_t L>
constexpr basic_uint<L> abs_value(const basic_uint<L>& v) noexcept
{
    return is_negative(v) ? -v : v;
}

/// Two's-complement division truncating toward zero. min / -1 wraps to min.
template <std::size_t L>
constexpr basic_uint<L> signed_div(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    if (b.is_zero())
        return {};
    const auto q = divmod_nonrestoring(abs_value(a), abs_value(b)).quotient;
    return is_negative(a) != is_negative(b) ? -q : q;
}

/// Two's-complement remainder; the sign follows the dividend.
template <std::size_t L>
constexpr basic_uint<L> signed_mod(const basic_uint<L>& a, const basic_uint<L>& b) noexcept
{
    if (b.is_zero())
        return {};
    const auto r = divmod_nonrestoring(abs_value(a), abs_value(b)).remainder;
    return is_negative(a) ? -r : r;
}

/// Square-and-multiply over the exponent bits, both steps using mul_shift_add.
template <std::size_t L>
constexpr basic_uint<L> exp(const basic_uint<L>& base, const basic_uint<L>& exponent) noexcept
{
    basic_uint<L> result{1};
    basic_uint<L> power = base;
    const auto n = exponent.bit_width();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (exponent.bit(i))
            result = mul_shift_add(result, power);
        if (i + 1 < n)
            power = mul_shift_add(power, power);
    }
    return result;
}

/// (a + b) mod m with the sum taken at double width; m == 0 gives 0.
inline Word256 addmod(const Word256& a, const Word256& b, const Word256& m) noexcept
{
    if (m.is_zero())
        return {};
    const Word512 sum = Word512{a} + Word512{b};
    return Word256{divmod_nonrestoring(sum, Word512{m}).remainder};
}

/// (a * b) mod m with the full 512-bit product; m == 0 gives 0.
inline Word256 mulmod(const Word256& a, const Word256& b, const Word256& m) noexcept
{
    if (m.is_zero())
        return {};
    const Word512 product = mul_shift_add(Word512{a}, Word512{b});
    return Word256{divmod_nonrestoring(product, Word512{m}).remainder};
}

/// Sign-extends x from byte index b (0 = least significant byte).
inline Word256 signextend(const Word256& b, const Word256& x) noexcept
{
    if (!b.fits_u64() || b.low_u64() >= 31)
        return x;
    const auto sign_bit = static_cast<std::size_t>(b.low_u64()) * 8 + 7;
    const auto mask = (Word256{1} << sign_bit) - Word256{1};
    return x.bit(sign_bit) ? (x | ~mask) : (x & mask);
}

inline Word256 from_bool(bool v) noexcept
{
    return Word256{v ? 1u : 0u};
}

inline bool signed_less(const Word256& a, const Word256& b) noexcept
{
    const bool na = is_negative(a);
    const bool nb = is_negative(b);
    return na != nb ? na : a < b;
}

/// Shift amount as size_t, saturated to 256 for anything wider.
inline std::size_t shift_amount(const Word256& s) noexcept
{
    return s.fits_u64() && s.low_u64() < 256 ? static_cast<std::size_t>(s.low_u64()) : 256;
}

inline Word256 shl(const Word256& value, const Word256& shift) noexcept
{
    return value << shift_amount(shift);
}

inline Word256 shr(const Word256& value, const Word256& shift) noexcept
{
    return value >> shift_amount(shift);
}

inline Word256 sar(const Word256& value, const Word256& shift) noexcept
{
    const auto n = shift_amount(shift);
    if (!is_negative(value))
        return value >> n;
    if (n >= 256)
        return Word256::max();
    return ~(~value >> n);
}

/// BYTE: the i-th byte of x counting from the most significant end.
inline Word256 byte_at(const Word256& i, const Word256& x) noexcept
{
    if (!i.fits_u64() || i.low_u64() >= 32)
        return {};
    return Word256{x.to_be_bytes()[i.low_u64()]};
}

enum class BitOp
{
    LT, GT, SLT, SGT, EQ, ISZERO, AND, OR, XOR, NOT, BYTE, SHL, SHR, SAR
};

/// Comparison and bitwise dispatcher. Operands are in stack order: a is the first item
/// popped, b the second (so SHL/SHR/SAR take a = shift, b = value and BYTE takes a = index).
/// Unary ops ignore b.
inline Word256 compare_and_bitwise(BitOp op, const Word256& a, const Word256& b) noexcept
{
    switch (op)
    {
    case BitOp::LT:
        return from_bool(a < b);
    case BitOp::GT:
        return from_bool(a > b);
    case BitOp::SLT:
        return from_bool(signed_less(a, b));
    case BitOp::SGT:
        return from_bool(signed_less(b, a));
    case BitOp::EQ:
        return from_bool(a == b);
    case BitOp::ISZERO:
        return from_bool(a.is_zero());
    case BitOp::AND:
        return a & b;
    case BitOp::OR:
        return a | b;
    case BitOp::XOR:
        return a ^ b;
    case BitOp::NOT:
        return ~a;
    case BitOp::BYTE:
        return byte_at(a, b);
    case BitOp::SHL:
        return shl(b, a);
    case BitOp::SHR:
        return shr(b, a);
    case BitOp::SAR:
        return sar(b, a);
    }
    return {};
}

}  // namespace evmx::alu
