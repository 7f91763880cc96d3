// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "calibration.hpp"
#include "types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace evmx
{
enum Opcode : std::uint8_t
{
    OP_STOP = 0x00,
    OP_ADD = 0x01,
    OP_MUL = 0x02,
    OP_SUB = 0x03,
    OP_DIV = 0x04,
    OP_SDIV = 0x05,
    OP_MOD = 0x06,
    OP_SMOD = 0x07,
    OP_ADDMOD = 0x08,
    OP_MULMOD = 0x09,
    OP_EXP = 0x0a,
    OP_SIGNEXTEND = 0x0b,

    OP_LT = 0x10,
    OP_GT = 0x11,
    OP_SLT = 0x12,
    OP_SGT = 0x13,
    OP_EQ = 0x14,
    OP_ISZERO = 0x15,
    OP_AND = 0x16,
    OP_OR = 0x17,
    OP_XOR = 0x18,
    OP_NOT = 0x19,
    OP_BYTE = 0x1a,
    OP_SHL = 0x1b,
    OP_SHR = 0x1c,
    OP_SAR = 0x1d,

    OP_KECCAK256 = 0x20,

    OP_ADDRESS = 0x30,
    OP_BALANCE = 0x31,
    OP_ORIGIN = 0x32,
    OP_CALLER = 0x33,
    OP_CALLVALUE = 0x34,
    OP_CALLDATALOAD = 0x35,
    OP_CALLDATASIZE = 0x36,
    OP_CALLDATACOPY = 0x37,
    OP_CODESIZE = 0x38,
    OP_CODECOPY = 0x39,
    OP_GASPRICE = 0x3a,
    OP_EXTCODESIZE = 0x3b,
    OP_EXTCODECOPY = 0x3c,
    OP_RETURNDATASIZE = 0x3d,
    OP_RETURNDATACOPY = 0x3e,
    OP_EXTCODEHASH = 0x3f,

    OP_BLOCKHASH = 0x40,
    OP_COINBASE = 0x41,
    OP_TIMESTAMP = 0x42,
    OP_NUMBER = 0x43,
    OP_PREVRANDAO = 0x44,
    OP_GASLIMIT = 0x45,
    OP_CHAINID = 0x46,
    OP_SELFBALANCE = 0x47,
    OP_BASEFEE = 0x48,
    OP_BLOBHASH = 0x49,
    OP_BLOBBASEFEE = 0x4a,

    OP_POP = 0x50,
    OP_MLOAD = 0x51,
    OP_MSTORE = 0x52,
    OP_MSTORE8 = 0x53,
    OP_SLOAD = 0x54,
    OP_SSTORE = 0x55,
    OP_JUMP = 0x56,
    OP_JUMPI = 0x57,
    OP_PC = 0x58,
    OP_MSIZE = 0x59,
    OP_GAS = 0x5a,
    OP_JUMPDEST = 0x5b,
    OP_TLOAD = 0x5c,
    OP_TSTORE = 0x5d,
    OP_MCOPY = 0x5e,
    OP_PUSH0 = 0x5f,
    OP_PUSH1 = 0x60,
    OP_PUSH32 = 0x7f,
    OP_DUP1 = 0x80,
    OP_DUP16 = 0x8f,
    OP_SWAP1 = 0x90,
    OP_SWAP16 = 0x9f,
    OP_LOG0 = 0xa0,
    OP_LOG4 = 0xa4,

    OP_CREATE = 0xf0,
    OP_CALL = 0xf1,
    OP_CALLCODE = 0xf2,
    OP_RETURN = 0xf3,
    OP_DELEGATECALL = 0xf4,
    OP_CREATE2 = 0xf5,
    OP_STATICCALL = 0xfa,
    OP_REVERT = 0xfd,
    OP_INVALID = 0xfe,
    OP_SELFDESTRUCT = 0xff,
};

/// Static metadata of one executable opcode.
struct OpcodeSpec
{
    std::uint8_t code = 0;
    std::string mnemonic;
    std::uint8_t immediate_len = 0;
    std::uint32_t gas = 0;
    std::uint32_t cycles = 0;
    /// Items removed from the top of the stack.
    std::uint8_t pops = 0;
    /// Items added on top of the stack.
    std::uint8_t pushes = 0;
    /// Minimum depth before execution (differs from pops for DUP/SWAP).
    std::uint8_t stack_required = 0;
    /// True when cycles come from the estimation rule rather than a measured row.
    bool estimated = true;
};

/// Map from opcode byte to its spec; immutable once built.
class OpcodeTable
{
public:
    [[nodiscard]] const OpcodeSpec* find(std::uint8_t code) const noexcept
    {
        return entries_[code] ? &*entries_[code] : nullptr;
    }

    [[nodiscard]] const OpcodeSpec& at(std::uint8_t code) const
    {
        if (const auto* s = find(code))
            return *s;
        throw std::out_of_range("unsupported opcode 0x" + to_hex(std::array{code}).substr(2));
    }

    [[nodiscard]] bool contains(std::uint8_t code) const noexcept { return entries_[code].has_value(); }

    /// Supported entries in ascending opcode order.
    [[nodiscard]] std::vector<const OpcodeSpec*> entries() const
    {
        std::vector<const OpcodeSpec*> out;
        for (const auto& e : entries_)
        {
            if (e)
                out.push_back(&*e);
        }
        return out;
    }

    [[nodiscard]] std::optional<std::uint8_t> find_mnemonic(std::string_view name) const noexcept
    {
        for (const auto& e : entries_)
        {
            if (e && e->mnemonic == name)
                return e->code;
        }
        return std::nullopt;
    }

private:
    friend OpcodeTable build_opcode_table();
    std::array<std::optional<OpcodeSpec>, 256> entries_{};
};

/// Builds the table. Prefer opcode_table(), which caches the result.
inline OpcodeTable build_opcode_table()
{
    namespace lat = calibration::latency;
    OpcodeTable t;

    const auto def = [&t](std::uint8_t code, std::string name, std::uint32_t gas,
                         std::uint8_t pops, std::uint8_t pushes, std::uint32_t component,
                         std::uint8_t immediate = 0, std::uint8_t required = 0xff) {
        OpcodeSpec s;
        s.code = code;
        s.mnemonic = std::move(name);
        s.immediate_len = immediate;
        s.gas = gas;
        s.pops = pops;
        s.pushes = pushes;
        s.stack_required = required == 0xff ? pops : required;
        if (const auto* row = calibration::find_measured(code))
        {
            s.cycles = row->evmx_ns / calibration::nominal_period_ns;
            s.estimated = false;
        }
        else
        {
            s.cycles = calibration::estimate_cycles(pops, pushes, component);
            s.estimated = true;
        }
        t.entries_[code] = std::move(s);
    };

    def(OP_STOP, "STOP", 0, 0, 0, lat::control);

    def(OP_ADD, "ADD", 3, 2, 1, lat::alu);
    def(OP_MUL, "MUL", 5, 2, 1, lat::alu);
    def(OP_SUB, "SUB", 3, 2, 1, lat::alu);
    def(OP_DIV, "DIV", 5, 2, 1, lat::alu);
    def(OP_SDIV, "SDIV", 5, 2, 1, lat::alu);
    def(OP_MOD, "MOD", 5, 2, 1, lat::alu);
    def(OP_SMOD, "SMOD", 5, 2, 1, lat::alu);
    def(OP_ADDMOD, "ADDMOD", 8, 3, 1, lat::alu);
    def(OP_MULMOD, "MULMOD", 8, 3, 1, lat::alu);
    def(OP_EXP, "EXP", 10, 2, 1, lat::alu);
    def(OP_SIGNEXTEND, "SIGNEXTEND", 5, 2, 1, lat::alu);

    def(OP_LT, "LT", 3, 2, 1, lat::alu);
    def(OP_GT, "GT", 3, 2, 1, lat::alu);
    def(OP_SLT, "SLT", 3, 2, 1, lat::alu);
    def(OP_SGT, "SGT", 3, 2, 1, lat::alu);
    def(OP_EQ, "EQ", 3, 2, 1, lat::alu);
    def(OP_ISZERO, "ISZERO", 3, 1, 1, lat::alu);
    def(OP_AND, "AND", 3, 2, 1, lat::alu);
    def(OP_OR, "OR", 3, 2, 1, lat::alu);
    def(OP_XOR, "XOR", 3, 2, 1, lat::alu);
    def(OP_NOT, "NOT", 3, 1, 1, lat::alu);
    def(OP_BYTE, "BYTE", 3, 2, 1, lat::alu);
    def(OP_SHL, "SHL", 3, 2, 1, lat::alu);
    def(OP_SHR, "SHR", 3, 2, 1, lat::alu);
    def(OP_SAR, "SAR", 3, 2, 1, lat::alu);

    def(OP_KECCAK256, "KECCAK256", 30, 2, 1, lat::memory_read + lat::keccak_permutation);

    def(OP_ADDRESS, "ADDRESS", 2, 0, 1, lat::none);
    def(OP_BALANCE, "BALANCE", 100, 1, 1, lat::port);
    def(OP_ORIGIN, "ORIGIN", 2, 0, 1, lat::none);
    def(OP_CALLER, "CALLER", 2, 0, 1, lat::none);
    def(OP_CALLVALUE, "CALLVALUE", 2, 0, 1, lat::none);
    def(OP_CALLDATALOAD, "CALLDATALOAD", 3, 1, 1, lat::port);
    def(OP_CALLDATASIZE, "CALLDATASIZE", 2, 0, 1, lat::none);
    def(OP_CALLDATACOPY, "CALLDATACOPY", 3, 3, 0, lat::memory_write);
    def(OP_CODESIZE, "CODESIZE", 2, 0, 1, lat::none);
    def(OP_CODECOPY, "CODECOPY", 3, 3, 0, lat::memory_write);
    def(OP_GASPRICE, "GASPRICE", 2, 0, 1, lat::none);
    def(OP_EXTCODESIZE, "EXTCODESIZE", 100, 1, 1, lat::port);
    def(OP_EXTCODECOPY, "EXTCODECOPY", 100, 4, 0, lat::port);
    def(OP_RETURNDATASIZE, "RETURNDATASIZE", 2, 0, 1, lat::none);
    def(OP_EXTCODEHASH, "EXTCODEHASH", 100, 1, 1, lat::port);

    def(OP_BLOCKHASH, "BLOCKHASH", 20, 1, 1, lat::port);
    def(OP_COINBASE, "COINBASE", 2, 0, 1, lat::none);
    def(OP_TIMESTAMP, "TIMESTAMP", 2, 0, 1, lat::none);
    def(OP_NUMBER, "NUMBER", 2, 0, 1, lat::none);
    def(OP_PREVRANDAO, "PREVRANDAO", 2, 0, 1, lat::none);
    def(OP_GASLIMIT, "GASLIMIT", 2, 0, 1, lat::none);
    def(OP_CHAINID, "CHAINID", 2, 0, 1, lat::none);
    def(OP_SELFBALANCE, "SELFBALANCE", 5, 0, 1, lat::none);
    def(OP_BASEFEE, "BASEFEE", 2, 0, 1, lat::none);

    def(OP_POP, "POP", 2, 1, 0, lat::none);
    def(OP_MLOAD, "MLOAD", 3, 1, 1, lat::memory_read);
    def(OP_MSTORE, "MSTORE", 3, 2, 0, lat::memory_write);
    def(OP_MSTORE8, "MSTORE8", 3, 2, 0, lat::memory_write);
    def(OP_SLOAD, "SLOAD", 100, 1, 1, lat::storage);
    def(OP_SSTORE, "SSTORE", 20000, 2, 0, lat::storage);
    def(OP_JUMP, "JUMP", 8, 1, 0, lat::control);
    def(OP_JUMPI, "JUMPI", 10, 2, 0, lat::control);
    def(OP_PC, "PC", 2, 0, 1, lat::none);
    def(OP_MSIZE, "MSIZE", 2, 0, 1, lat::none);
    def(OP_GAS, "GAS", 2, 0, 1, lat::none);
    def(OP_JUMPDEST, "JUMPDEST", 1, 0, 0, lat::control);

    def(OP_PUSH0, "PUSH0", 2, 0, 1, lat::none);
    for (std::uint8_t n = 1; n <= 32; ++n)
    {
        def(static_cast<std::uint8_t>(OP_PUSH1 + n - 1), "PUSH" + std::to_string(n), 3, 0, 1,
            n * lat::immediate_per_byte, n);
    }
    for (std::uint8_t n = 1; n <= 16; ++n)
    {
        def(static_cast<std::uint8_t>(OP_DUP1 + n - 1), "DUP" + std::to_string(n), 3, 0, 1,
            lat::deep_stack_per_word, 0, n);
        def(static_cast<std::uint8_t>(OP_SWAP1 + n - 1), "SWAP" + std::to_string(n), 3, 0, 0,
            2 * lat::deep_stack_per_word, 0, static_cast<std::uint8_t>(n + 1));
    }
    for (std::uint8_t n = 0; n <= 4; ++n)
    {
        def(static_cast<std::uint8_t>(OP_LOG0 + n), "LOG" + std::to_string(n), 375 + 375u * n,
            static_cast<std::uint8_t>(2 + n), 0, lat::memory_read);
    }

    def(OP_CREATE, "CREATE", 32000, 3, 1, lat::memory_read + lat::keccak_permutation);
    def(OP_CALL, "CALL", 100, 7, 1, lat::port);
    def(OP_CALLCODE, "CALLCODE", 100, 7, 1, lat::port);
    def(OP_RETURN, "RETURN", 0, 2, 0, lat::memory_read);
    def(OP_DELEGATECALL, "DELEGATECALL", 100, 6, 1, lat::port);
    def(OP_CREATE2, "CREATE2", 32000, 4, 1,
        lat::memory_read + 2 * lat::keccak_permutation);
    def(OP_STATICCALL, "STATICCALL", 100, 6, 1, lat::port);
    def(OP_REVERT, "REVERT", 0, 2, 0, lat::memory_read);

    return t;
}

/// The supported-opcode table, built once.
inline const OpcodeTable& opcode_table()
{
    static const OpcodeTable table = build_opcode_table();
    return table;
}

/// Mnemonic of any defined opcode, including those the executor does not run
/// (SELFDESTRUCT, TLOAD, ...). Empty for undefined bytes.
inline std::string_view known_mnemonic(std::uint8_t code) noexcept
{
    if (const auto* s = opcode_table().find(code))
        return s->mnemonic;
    switch (code)
    {
    case OP_RETURNDATACOPY:
        return "RETURNDATACOPY";
    case OP_BLOBHASH:
        return "BLOBHASH";
    case OP_BLOBBASEFEE:
        return "BLOBBASEFEE";
    case OP_TLOAD:
        return "TLOAD";
    case OP_TSTORE:
        return "TSTORE";
    case OP_MCOPY:
        return "MCOPY";
    case OP_INVALID:
        return "INVALID";
    case OP_SELFDESTRUCT:
        return "SELFDESTRUCT";
    default:
        return {};
    }
}

/// Immediate length of a PUSH opcode byte, 0 for everything else.
constexpr std::size_t push_immediate_len(std::uint8_t code) noexcept
{
    return code >= OP_PUSH1 && code <= OP_PUSH32 ? static_cast<std::size_t>(code - OP_PUSH1 + 1) : 0;
}

inline nlohmann::json to_json(const OpcodeSpec& s)
{
    return {{"code", s.code}, {"mnemonic", s.mnemonic}, {"immediate_len", s.immediate_len},
        {"gas", s.gas}, {"cycles", s.cycles}, {"pops", s.pops}, {"pushes", s.pushes},
        {"stack_required", s.stack_required}, {"estimated", s.estimated}};
}

/// Whole table as a JSON array in opcode order.
inline nlohmann::json opcode_table_json()
{
    auto out = nlohmann::json::array();
    for (const auto* s : opcode_table().entries())
        out.push_back(to_json(*s));
    return out;
}

}  // namespace evmx
