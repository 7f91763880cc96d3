// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

/// Timing calibration data for the EVMx datapath.
///
/// Fifteen opcodes have measured EVMx latencies together with CPU reference timings for
/// three software clients (PyEthApp on Linux, Go-Ethereum on Windows, Parity on Windows).
/// Those CPU numbers are reference data quoted from an external benchmark. They are not
/// measured by this project and are used only to print the comparison report.
///
/// Every other opcode gets an estimated cycle count from a single rule:
///
///     cycles = pops + pushes + component latency
///
/// where pops/pushes are stack port transactions and the component latency is the fixed
/// cost of the unit the opcode drives (ALU, memory read/write port, storage, Keccak core,
/// immediate fetch from bytecode memory, deep stack access, control). The latencies below
/// are chosen so that the rule reproduces all fifteen measured rows exactly.
namespace evmx::calibration
{
/// Nominal clock period in whole nanoseconds that the measured rows are multiples of.
inline constexpr std::uint32_t nominal_period_ns = 7;

namespace latency
{
inline constexpr std::uint32_t none = 0;
inline constexpr std::uint32_t alu = 1;
inline constexpr std::uint32_t storage = 1;
inline constexpr std::uint32_t control = 1;
/// Single-cycle input port reads (initData, external-state stubs).
inline constexpr std::uint32_t port = 1;
/// Per word moved by DUP/SWAP from below the top of stack.
inline constexpr std::uint32_t deep_stack_per_word = 2;
/// One 32-byte fetch from MEM.
inline constexpr std::uint32_t memory_read = 35;
/// One write transaction into MEM (1 or 32 bytes).
inline constexpr std::uint32_t memory_write = 33;
/// One Keccak-f[1600] permutation (one round per cycle).
inline constexpr std::uint32_t keccak_permutation = 24;
/// PUSHn collects n immediate bytes into the left-shift register one per cycle.
inline constexpr std::uint32_t immediate_per_byte = 1;
}  // namespace latency

constexpr std::uint32_t estimate_cycles(
    std::uint32_t pops, std::uint32_t pushes, std::uint32_t component_latency) noexcept
{
    return pops + pushes + component_latency;
}

/// One row of the measured opcode timing table.
struct MeasuredRow
{
    std::uint8_t opcode;
    std::string_view name;
    std::string_view category;
    std::uint32_t gas;
    std::uint32_t lpy_ns;  ///< PyEthApp, Linux
    std::uint32_t wgo_ns;  ///< Go-Ethereum, Windows
    std::uint32_t wpa_ns;  ///< Parity, Windows
    std::uint32_t evmx_ns;
    int delta_percent;  ///< as printed, rounded
};

inline constexpr std::array<MeasuredRow, 15> measured_rows{{
    {0x01, "ADD", "Arithmetic", 3, 510, 602, 610, 28, 95},
    {0x03, "SUB", "Arithmetic", 3, 440, 611, 606, 28, 94},
    {0x14, "EQ", "Logic", 3, 430, 571, 604, 28, 93},
    {0x16, "AND", "Logic", 3, 480, 643, 703, 28, 94},
    {0x17, "OR", "Logic", 3, 490, 646, 701, 28, 94},
    {0x30, "ADDRESS", "Environmental", 2, 2770, 1170, 608, 7, 99},
    {0x33, "CALLER", "Environmental", 2, 3640, 1142, 614, 7, 99},
    {0x34, "CALLVALUE", "Environmental", 2, 80, 556, 604, 7, 91},
    {0x50, "POP", "Memory/Stack", 2, 220, 570, 605, 7, 97},
    {0x51, "MLOAD", "Memory/Stack", 3, 6950, 1838, 666, 259, 61},
    {0x52, "MSTORE", "Memory/Stack", 3, 2830, 1726, 684, 245, 64},
    {0x54, "SLOAD", "Memory/Stack", 100, 1990, 694, 701, 21, 97},
    {0x60, "PUSH1", "Memory/Stack", 3, 260, 600, 640, 14, 95},
    {0x90, "SWAP1", "Memory/Stack", 3, 310, 528, 550, 28, 91},
    {0x80, "DUP1", "Memory/Stack", 3, 240, 559, 594, 21, 91},
}};

constexpr const MeasuredRow* find_measured(std::uint8_t opcode) noexcept
{
    for (const auto& row : measured_rows)
    {
        if (row.opcode == opcode)
            return &row;
    }
    return nullptr;
}

}  // namespace evmx::calibration
