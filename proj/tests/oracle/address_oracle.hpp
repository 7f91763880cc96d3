// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Contract address derivations built only from the test-side Keccak and RLP encoders.

#include "reference_keccak.hpp"
#include "reference_rlp.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace evmx::test
{
using Bytes20 = std::array<std::uint8_t, 20>;

inline Bytes20 last20(const std::array<std::uint8_t, 32>& d)
{
    Bytes20 a;
    for (std::size_t i = 0; i < 20; ++i)
        a[i] = d[12 + i];
    return a;
}

inline Bytes20 oracle_create2(const Bytes20& sender, const std::array<std::uint8_t, 32>& salt,
    const std::vector<std::uint8_t>& init_code)
{
    std::vector<std::uint8_t> pre{0xff};
    pre.insert(pre.end(), sender.begin(), sender.end());
    pre.insert(pre.end(), salt.begin(), salt.end());
    const auto h = ReferenceKeccak::hash256(init_code);
    pre.insert(pre.end(), h.begin(), h.end());
    return last20(ReferenceKeccak::hash256(pre));
}

inline std::vector<std::uint8_t> oracle_rlp_sender_nonce(const Bytes20& sender, std::uint64_t nonce)
{
    return rlp_encode(RlpItem{std::vector<RlpItem>{
        RlpItem{std::vector<std::uint8_t>(sender.begin(), sender.end())}, rlp_scalar(nonce)}});
}

inline Bytes20 oracle_create(const Bytes20& sender, std::uint64_t nonce)
{
    return last20(ReferenceKeccak::hash256(oracle_rlp_sender_nonce(sender, nonce)));
}

}  // namespace evmx::test
