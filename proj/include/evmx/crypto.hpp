// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "keccak.hpp"
#include "types.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace evmx
{
inline Digest256 keccak256(const Bytes& data) noexcept
{
    return keccak256(std::span<const std::uint8_t>{data});
}

/// Fields of the 85-byte CREATE2 preimage 0xff ‖ sender ‖ salt ‖ keccak(init_code).
struct Create2Preimage
{
    static constexpr std::uint8_t prefix = 0xff;
    static constexpr std::size_t size = 1 + 20 + 32 + 32;

    Address sender;
    std::array<std::uint8_t, 32> salt{};
    Digest256 code_hash;

    friend bool operator==(const Create2Preimage&, const Create2Preimage&) = default;
};

inline std::array<std::uint8_t, Create2Preimage::size> delta_concat(
    const Address& sender, const std::array<std::uint8_t, 32>& salt, const Digest256& code_hash) noexcept
{
    std::array<std::uint8_t, Create2Preimage::size> k{};
    k[0] = Create2Preimage::prefix;
    auto it = std::copy(sender.bytes.begin(), sender.bytes.end(), k.begin() + 1);
    it = std::copy(salt.begin(), salt.end(), it);
    std::copy(code_hash.bytes.begin(), code_hash.bytes.end(), it);
    return k;
}

/// Splits a preimage back into its fields. Throws if the prefix byte is not 0xff.
inline Create2Preimage parse_delta(const std::array<std::uint8_t, Create2Preimage::size>& k)
{
    if (k[0] != Create2Preimage::prefix)
        throw std::invalid_argument("CREATE2 preimage must start with 0xff");
    Create2Preimage p;
    std::copy_n(k.begin() + 1, 20, p.sender.bytes.begin());
    std::copy_n(k.begin() + 21, 32, p.salt.begin());
    std::copy_n(k.begin() + 53, 32, p.code_hash.bytes.begin());
    return p;
}

inline Address extract_address(const Digest256& d, AddressWindow window = AddressWindow::Last20) noexcept
{
    Address a;
    const auto first = window == AddressWindow::Last20 ? d.bytes.begin() + 12 : d.bytes.begin();
    std::copy_n(first, 20, a.bytes.begin());
    return a;
}

/// RLP of the two-item list [address, nonce] used for CREATE addresses. The nonce is a
/// minimal big-endian integer: 0 is the empty string 0x80, values below 0x80 are a single
/// byte, anything else is 0x80+len followed by its bytes.
inline Bytes rlp_encode_address_nonce(const Address& sender, std::uint64_t nonce)
{
    Bytes nonce_item;
    if (nonce == 0)
        nonce_item.push_back(0x80);
    else if (nonce < 0x80)
        nonce_item.push_back(static_cast<std::uint8_t>(nonce));
    else
    {
        Bytes be;
        for (auto n = nonce; n != 0; n >>= 8)
            be.insert(be.begin(), static_cast<std::uint8_t>(n));
        nonce_item.push_back(static_cast<std::uint8_t>(0x80 + be.size()));
        nonce_item.insert(nonce_item.end(), be.begin(), be.end());
    }

    // 21-byte address string + at most 9 nonce bytes: payload always < 56, short list form.
    const auto payload = 1 + sender.bytes.size() + nonce_item.size();
    Bytes out;
    out.reserve(1 + payload);
    out.push_back(static_cast<std::uint8_t>(0xc0 + payload));
    out.push_back(static_cast<std::uint8_t>(0x80 + sender.bytes.size()));
    out.insert(out.end(), sender.bytes.begin(), sender.bytes.end());
    out.insert(out.end(), nonce_item.begin(), nonce_item.end());
    return out;
}

inline Address create_address(const Address& sender, std::uint64_t nonce)
{
    return extract_address(keccak256(rlp_encode_address_nonce(sender, nonce)));
}

/// keccak(0xff ‖ sender ‖ salt ‖ keccak(init_code)), then the address window.
inline Address create2_address(const Address& sender, const std::array<std::uint8_t, 32>& salt,
    BytesView init_code, AddressWindow window = AddressWindow::Last20) noexcept
{
    const auto d = keccak256(init_code);
    const auto k = delta_concat(sender, salt, d);
    return extract_address(keccak256(k), window);
}

inline Address create2_address(const Address& sender, const Word256& salt, BytesView init_code,
    AddressWindow window = AddressWindow::Last20) noexcept
{
    return create2_address(sender, salt.to_be_bytes(), init_code, window);
}

}  // namespace evmx
