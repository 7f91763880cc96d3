// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "word.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evmx
{
using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

/// Lowercase hex with 0x prefix.
inline std::string to_hex(BytesView bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = "0x";
    s.reserve(2 + 2 * bytes.size());
    for (auto b : bytes)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

/// Parses an even-length hex string with optional 0x prefix. Surrounding whitespace is
/// ignored. Throws std::invalid_argument on malformed input.
inline Bytes parse_hex(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.starts_with("0x") || s.starts_with("0X"))
        s.remove_prefix(2);
    if (s.size() % 2 != 0)
        throw std::invalid_argument("hex string has odd length");

    const auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw std::invalid_argument(std::string{"invalid hex digit '"} + c + "'");
    };

    Bytes out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    return out;
}

/// 20-byte account address.
struct Address
{
    std::array<std::uint8_t, 20> bytes{};

    friend constexpr bool operator==(const Address&, const Address&) noexcept = default;

    /// Zero-extended to a stack word.
    [[nodiscard]] Word256 to_word() const { return word_from_bytes(bytes); }

    /// Low 20 bytes of a word.
    static Address from_word(const Word256& w) noexcept
    {
        const auto be = w.to_be_bytes();
        Address a;
        std::copy(be.begin() + 12, be.end(), a.bytes.begin());
        return a;
    }

    static Address from_hex(std::string_view s)
    {
        const auto b = parse_hex(s);
        if (b.size() != 20)
            throw std::invalid_argument("address must be exactly 20 bytes");
        Address a;
        std::copy(b.begin(), b.end(), a.bytes.begin());
        return a;
    }

    [[nodiscard]] std::string to_hex() const { return evmx::to_hex(bytes); }
};

enum class ErrorKind
{
    StackOverflow,
    StackUnderflow,
    OutOfGas,
    MemoryOutOfRange,
    StorageCapacityExceeded,
    InvalidJump,
    InvalidOpcode,
    BytecodeTooLarge,
};

constexpr std::string_view to_string(ErrorKind k) noexcept
{
    switch (k)
    {
    case ErrorKind::StackOverflow:
        return "StackOverflow";
    case ErrorKind::StackUnderflow:
        return "StackUnderflow";
    case ErrorKind::OutOfGas:
        return "OutOfGas";
    case ErrorKind::MemoryOutOfRange:
        return "MemoryOutOfRange";
    case ErrorKind::StorageCapacityExceeded:
        return "StorageCapacityExceeded";
    case ErrorKind::InvalidJump:
        return "InvalidJump";
    case ErrorKind::InvalidOpcode:
        return "InvalidOpcode";
    case ErrorKind::BytecodeTooLarge:
        return "BytecodeTooLarge";
    }
    return "Unknown";
}

inline ErrorKind error_kind_from_string(std::string_view s)
{
    for (auto k : {ErrorKind::StackOverflow, ErrorKind::StackUnderflow, ErrorKind::OutOfGas,
             ErrorKind::MemoryOutOfRange, ErrorKind::StorageCapacityExceeded,
             ErrorKind::InvalidJump, ErrorKind::InvalidOpcode, ErrorKind::BytecodeTooLarge})
    {
        if (to_string(k) == s)
            return k;
    }
    throw std::invalid_argument("unknown error kind: " + std::string{s});
}

struct VmError
{
    ErrorKind kind;
    std::string context;

    friend bool operator==(const VmError&, const VmError&) = default;
};

/// Thrown by machine-state components; the executor turns it into a faulted receipt.
class VmException : public std::runtime_error
{
public:
    VmException(ErrorKind kind, std::string context)
      : std::runtime_error(std::string{to_string(kind)} + ": " + context),
        error_{kind, std::move(context)}
    {}

    [[nodiscard]] const VmError& error() const noexcept { return error_; }
    [[nodiscard]] ErrorKind kind() const noexcept { return error_.kind; }

private:
    VmError error_;
};

/// Default EVMx operating frequency, 142.86 MHz.
inline constexpr double default_clock_hz = 142'860'000.0;

/// Which 20 bytes of the final CREATE2 digest become the new address.
enum class AddressWindow
{
    Last20,   ///< Ethereum-compatible: digest bytes 12..31.
    First20,  ///< Literal hardware description: digest bytes 0..19.
};

enum class StorageMode
{
    Associative,       ///< Map with a 1024-key capacity check.
    HardwareIndexed,   ///< Direct-mapped by the low 10 key bits; collisions are counted.
};

/// Inputs to one execution: gas (gval), initialization data (initData), call value (val),
/// sender address and nonce (sAddr, sNoc) plus model knobs.
struct ExecutionConfig
{
    std::uint64_t gas_limit = 0;
    Bytes init_data;
    Word256 call_value;
    Address sender_address;
    std::uint64_t sender_nonce = 0;
    double clock_hz = default_clock_hz;

    /// Pushed by ADDRESS.
    Address contract_address;
    /// Pre-execution storage contents (oStore before the run).
    std::vector<std::pair<Word256, Word256>> initial_storage;

    StorageMode storage_mode = StorageMode::Associative;
    AddressWindow create2_window = AddressWindow::Last20;
    bool record_trace = false;
    /// Value pushed by the stubbed CALL family.
    Word256 call_stub_status = 1;
    std::uint64_t step_limit = 50'000'000;

    /// Throws std::invalid_argument when gas_limit or clock_hz is not positive.
    void validate() const
    {
        if (gas_limit == 0)
            throw std::invalid_argument("gas_limit must be > 0");
        if (!(clock_hz > 0.0))
            throw std::invalid_argument("clock_hz must be > 0");
    }
};

}  // namespace evmx
