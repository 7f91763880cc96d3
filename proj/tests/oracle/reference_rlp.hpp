// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// General RLP encoder (byte strings and lists), written from the encoding rules rather
// than specialised to [address, nonce] like the engine's.

#include <cstdint>
#include <variant>
#include <vector>

namespace evmx::test
{
struct RlpItem
{
    std::variant<std::vector<std::uint8_t>, std::vector<RlpItem>> v;
};

inline std::vector<std::uint8_t> rlp_length_prefix(std::size_t len, std::uint8_t short_base)
{
    if (len < 56)
        return {static_cast<std::uint8_t>(short_base + len)};
    std::vector<std::uint8_t> be;
    for (auto n = len; n != 0; n >>= 8)
        be.insert(be.begin(), static_cast<std::uint8_t>(n & 0xff));
    std::vector<std::uint8_t> out{static_cast<std::uint8_t>(short_base + 55 + be.size())};
    out.insert(out.end(), be.begin(), be.end());
    return out;
}

inline std::vector<std::uint8_t> rlp_encode(const RlpItem& item)
{
    if (const auto* s = std::get_if<std::vector<std::uint8_t>>(&item.v))
    {
        if (s->size() == 1 && (*s)[0] < 0x80)
            return *s;
        auto out = rlp_length_prefix(s->size(), 0x80);
        out.insert(out.end(), s->begin(), s->end());
        return out;
    }
    std::vector<std::uint8_t> payload;
    for (const auto& child : std::get<std::vector<RlpItem>>(item.v))
    {
        const auto enc = rlp_encode(child);
        payload.insert(payload.end(), enc.begin(), enc.end());
    }
    auto out = rlp_length_prefix(payload.size(), 0xc0);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

/// Scalars are big-endian with no leading zeros; zero is the empty string.
inline RlpItem rlp_scalar(std::uint64_t n)
{
    std::vector<std::uint8_t> be;
    for (; n != 0; n >>= 8)
        be.insert(be.begin(), static_cast<std::uint8_t>(n & 0xff));
    return {be};
}

}  // namespace evmx::test
