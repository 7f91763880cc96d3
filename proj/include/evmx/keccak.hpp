// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace evmx
{
/// 32-byte Keccak-256 output.
struct Digest256
{
    std::array<std::uint8_t, 32> bytes{};

    friend constexpr bool operator==(const Digest256&, const Digest256&) noexcept = default;
};

namespace keccak_detail
{
inline constexpr std::array<std::uint64_t, 24> round_constants{
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
};

// rho rotation and pi destination, walked along the pi cycle starting at lane 1.
inline constexpr std::array<int, 24> rotations{
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};
inline constexpr std::array<int, 24> pi_lanes{
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

/// Keccak-f[1600] on 25 lanes indexed x + 5y.
constexpr void permute(std::array<std::uint64_t, 25>& a) noexcept
{
    for (const auto rc : round_constants)
    {
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }

        auto carried = a[1];
        for (std::size_t i = 0; i < 24; ++i)
        {
            const auto j = pi_lanes[i];
            const auto next = a[j];
            a[j] = std::rotl(carried, rotations[i]);
            carried = next;
        }

        for (int y = 0; y < 25; y += 5)
        {
            std::array<std::uint64_t, 5> row{};
            for (int x = 0; x < 5; ++x)
                row[x] = a[y + x];
            for (int x = 0; x < 5; ++x)
                a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }

        a[0] ^= rc;
    }
}
}  // namespace keccak_detail

/// Keccak-256 as used by Ethereum: rate 136 bytes, original 0x01 domain padding.
inline Digest256 keccak256(std::span<const std::uint8_t> data) noexcept
{
    constexpr std::size_t rate = 136;
    std::array<std::uint64_t, 25> state{};

    const auto absorb = [&state](std::span<const std::uint8_t, rate> block) {
        for (std::size_t i = 0; i < rate / 8; ++i)
        {
            std::uint64_t lane = 0;
            for (std::size_t b = 0; b < 8; ++b)
                lane |= std::uint64_t{block[8 * i + b]} << (8 * b);
            state[i] ^= lane;
        }
        keccak_detail::permute(state);
    };

    while (data.size() >= rate)
    {
        absorb(data.first<rate>());
        data = data.subspan(rate);
    }

    std::array<std::uint8_t, rate> last{};
    std::copy(data.begin(), data.end(), last.begin());
    last[data.size()] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb(last);

    Digest256 out;
    for (std::size_t i = 0; i < 32; ++i)
        out.bytes[i] = static_cast<std::uint8_t>(state[i / 8] >> (8 * (i % 8)));
    return out;
}

}  // namespace evmx
