// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "opcodes.hpp"
#include "types.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace evmx
{
inline constexpr std::size_t stack_capacity = 1024;
inline constexpr std::size_t memory_capacity = 2768;
inline constexpr std::size_t storage_capacity = 1024;
inline constexpr std::size_t bytecode_capacity = 32768;
inline constexpr unsigned pc_bits = 15;

/// LIFO of 256-bit words, at most 1024 deep.
class Stack
{
public:
    Stack() { items_.reserve(stack_capacity); }

    [[nodiscard]] std::size_t depth() const noexcept { return items_.size(); }
    [[nodiscard]] bool empty() const noexcept { return items_.empty(); }

    void push(const Word256& w)
    {
        if (items_.size() >= stack_capacity)
            throw VmException(ErrorKind::StackOverflow, "push at depth 1024");
        items_.push_back(w);
    }

    Word256 pop()
    {
        if (items_.empty())
            throw VmException(ErrorKind::StackUnderflow, "pop from empty stack");
        auto w = items_.back();
        items_.pop_back();
        return w;
    }

    /// n-th item from the top, 0 being the top.
    [[nodiscard]] const Word256& peek(std::size_t n = 0) const
    {
        if (n >= items_.size())
            throw VmException(ErrorKind::StackUnderflow,
                "access to item " + std::to_string(n + 1) + " with depth " +
                    std::to_string(items_.size()));
        return items_[items_.size() - 1 - n];
    }

    /// DUPn: pushes a copy of the n-th item (1-based).
    void dup(std::size_t n)
    {
        const auto w = peek(n - 1);
        push(w);
    }

    /// SWAPn: exchanges the top with the (n+1)-th item.
    void swap(std::size_t n)
    {
        if (n + 1 > items_.size())
            throw VmException(ErrorKind::StackUnderflow,
                "SWAP" + std::to_string(n) + " with depth " + std::to_string(items_.size()));
        std::swap(items_.back(), items_[items_.size() - 1 - n]);
    }

    /// Bottom to top.
    [[nodiscard]] std::span<const Word256> items() const noexcept { return items_; }

private:
    std::vector<Word256> items_;
};

/// Byte-addressable memory of fixed capacity. Writes are 1 or 32 bytes, reads are 32 bytes;
/// wider regions are composed from those transactions.
class Memory
{
public:
    explicit Memory(std::size_t capacity = memory_capacity) : cells_(capacity, 0) {}

    [[nodiscard]] std::size_t capacity() const noexcept { return cells_.size(); }

    /// Highest touched byte rounded up to a 32-byte boundary (the MSIZE value).
    [[nodiscard]] std::size_t active_size() const noexcept { return active_; }

    /// Validates [offset, offset+size) and returns offset as an index. A zero-size region
    /// is always valid and never touches memory.
    [[nodiscard]] std::size_t check_range(const Word256& offset, const Word256& size) const
    {
        if (size.is_zero())
            return 0;
        if (!offset.fits_u64() || !size.fits_u64() || offset.low_u64() > cells_.size() ||
            size.low_u64() > cells_.size() - offset.low_u64())
        {
            throw VmException(ErrorKind::MemoryOutOfRange,
                "region [" + offset.to_hex() + ", +" + size.to_hex() + ") exceeds " +
                    std::to_string(cells_.size()) + " bytes");
        }
        return static_cast<std::size_t>(offset.low_u64());
    }

    void store32(const Word256& offset, const Word256& w)
    {
        const auto at = check_range(offset, 32);
        const auto bytes = w.to_be_bytes();
        std::copy(bytes.begin(), bytes.end(), cells_.begin() + static_cast<std::ptrdiff_t>(at));
        touch(at, 32);
    }

    void store8(const Word256& offset, std::uint8_t b)
    {
        const auto at = check_range(offset, 1);
        cells_[at] = b;
        touch(at, 1);
    }

    [[nodiscard]] Word256 load32(const Word256& offset)
    {
        const auto at = check_range(offset, 32);
        touch(at, 32);
        return word_from_bytes(std::span{cells_}.subspan(at, 32));
    }

    /// sze bytes from oft, fetched 32 bytes at a time and accumulated, the final fetch
    /// truncated.
    [[nodiscard]] Bytes read_region(const Word256& oft, const Word256& sze)
    {
        const auto at = check_range(oft, sze);
        const auto n = static_cast<std::size_t>(sze.low_u64());
        Bytes out;
        out.reserve(n);
        for (std::size_t done = 0; done < n; done += 32)
        {
            const auto chunk = std::min<std::size_t>(32, n - done);
            const auto first = cells_.begin() + static_cast<std::ptrdiff_t>(at + done);
            out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(chunk));
        }
        if (n != 0)
            touch(at, n);
        return out;
    }

    /// Writes data into [offset, offset+size), zero-filling past the end of data. Full
    /// 32-byte chunks go through the 32-byte port, the tail byte by byte.
    void write_region(const Word256& offset, const Word256& size, BytesView data)
    {
        const auto at = check_range(offset, size);
        const auto n = static_cast<std::size_t>(size.low_u64());
        const auto byte_at = [&](std::size_t i) -> std::uint8_t {
            return i < data.size() ? data[i] : 0;
        };
        std::size_t i = 0;
        for (; i + 32 <= n; i += 32)
        {
            std::array<std::uint8_t, 32> chunk{};
            for (std::size_t j = 0; j < 32; ++j)
                chunk[j] = byte_at(i + j);
            store32(at + i, word_from_bytes(chunk));
        }
        for (; i < n; ++i)
            store8(at + i, byte_at(i));
    }

    [[nodiscard]] std::span<const std::uint8_t> cells() const noexcept { return cells_; }

private:
    void touch(std::size_t at, std::size_t n) noexcept
    {
        const auto end = (at + n + 31) / 32 * 32;
        active_ = std::max(active_, end);
    }

    std::vector<std::uint8_t> cells_;
    std::size_t active_ = 0;
};

/// Key/value storage with 1024 entries.
///
/// In associative mode this is a map that refuses a 1025th distinct key. In hardware-indexed
/// mode the low 10 key bits select a slot directly; writes of a different key evict the
/// occupant and reads of a different key return the occupant's value, and each such alias
/// is counted.
class Storage
{
public:
    using Entries = std::vector<std::pair<Word256, Word256>>;

    explicit Storage(StorageMode mode = StorageMode::Associative) : mode_{mode}
    {
        if (mode_ == StorageMode::HardwareIndexed)
            slots_.resize(storage_capacity);
    }

    [[nodiscard]] StorageMode mode() const noexcept { return mode_; }

    [[nodiscard]] Word256 load(const Word256& key)
    {
        if (mode_ == StorageMode::Associative)
        {
            const auto it = map_.find(key);
            return it == map_.end() ? Word256{} : it->second;
        }
        const auto& slot = slots_[index(key)];
        if (!slot)
            return {};
        if (slot->first != key)
            ++collisions_;
        return slot->second;
    }

    void store(const Word256& key, const Word256& value)
    {
        if (mode_ == StorageMode::Associative)
        {
            const auto it = map_.find(key);
            if (it != map_.end())
            {
                it->second = value;
                return;
            }
            if (map_.size() >= storage_capacity)
                throw VmException(ErrorKind::StorageCapacityExceeded,
                    "distinct key " + std::to_string(map_.size() + 1) + " exceeds capacity " +
                        std::to_string(storage_capacity));
            map_.emplace(key, value);
            return;
        }
        auto& slot = slots_[index(key)];
        if (slot && slot->first != key)
            ++collisions_;
        slot = std::pair{key, value};
    }

    [[nodiscard]] std::size_t size() const noexcept
    {
        if (mode_ == StorageMode::Associative)
            return map_.size();
        return static_cast<std::size_t>(
            std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
    }

    [[nodiscard]] std::uint64_t collisions() const noexcept { return collisions_; }

    /// Written entries sorted by key.
    [[nodiscard]] Entries snapshot() const
    {
        Entries out;
        if (mode_ == StorageMode::Associative)
        {
            out.assign(map_.begin(), map_.end());
            return out;
        }
        for (const auto& s : slots_)
        {
            if (s)
                out.push_back(*s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Replaces all contents; the collision counter is kept.
    void restore(const Entries& entries)
    {
        map_.clear();
        if (mode_ == StorageMode::HardwareIndexed)
            slots_.assign(storage_capacity, std::nullopt);
        for (const auto& [k, v] : entries)
            store(k, v);
    }

private:
    static std::size_t index(const Word256& key) noexcept
    {
        return static_cast<std::size_t>(key.low_u64() & (storage_capacity - 1));
    }

    StorageMode mode_;
    std::map<Word256, Word256> map_;
    std::vector<std::optional<std::pair<Word256, Word256>>> slots_;
    std::uint64_t collisions_ = 0;
};

/// Bytecode memory (BCM) with its JUMPDEST analysis.
class BytecodeMemory
{
public:
    BytecodeMemory() = default;

    /// Stores code and marks every 0x5B that is not inside a PUSH immediate.
    explicit BytecodeMemory(BytesView code)
    {
        if (code.size() > bytecode_capacity)
            throw VmException(ErrorKind::BytecodeTooLarge,
                std::to_string(code.size()) + " bytes exceeds " +
                    std::to_string(bytecode_capacity));
        code_.assign(code.begin(), code.end());
        jumpdest_.assign(code_.size(), false);
        for (std::size_t i = 0; i < code_.size(); ++i)
        {
            const auto op = code_[i];
            if (op == OP_JUMPDEST)
                jumpdest_[i] = true;
            i += push_immediate_len(op);
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return code_.size(); }
    [[nodiscard]] BytesView code() const noexcept { return code_; }
    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return code_.at(i); }

    [[nodiscard]] bool is_jumpdest(std::size_t offset) const noexcept
    {
        return offset < jumpdest_.size() && jumpdest_[offset];
    }

    [[nodiscard]] std::set<std::size_t> jumpdests() const
    {
        std::set<std::size_t> out;
        for (std::size_t i = 0; i < jumpdest_.size(); ++i)
        {
            if (jumpdest_[i])
                out.insert(i);
        }
        return out;
    }

    /// Immediate bytes starting at offset, zero-padded past the end of code.
    [[nodiscard]] Bytes immediate(std::size_t offset, std::size_t len) const
    {
        Bytes out(len, 0);
        for (std::size_t i = 0; i < len && offset + i < code_.size(); ++i)
            out[i] = code_[offset + i];
        return out;
    }

private:
    Bytes code_;
    std::vector<bool> jumpdest_;
};

/// 15-bit program counter. A value equal to the code size means execution fell off the end.
class ProgramCounter
{
public:
    [[nodiscard]] std::uint32_t value() const noexcept { return value_; }

    void advance(std::uint32_t n) noexcept { value_ += n; }

    /// Loads a jump target taken from the stack.
    void set(const Word256& target, const BytecodeMemory& bcm)
    {
        if (target.bit_width() > pc_bits)
            throw VmException(
                ErrorKind::InvalidJump, "target " + target.to_hex() + " exceeds 15-bit range");
        const auto t = static_cast<std::uint32_t>(target.low_u64());
        if (!bcm.is_jumpdest(t))
            throw VmException(ErrorKind::InvalidJump, "target " + target.to_hex() + " is not a JUMPDEST");
        value_ = t;
    }

private:
    std::uint32_t value_ = 0;
};

/// JSON snapshot: stack as hex words (top last), active memory as a hex string, storage as
/// key/value pairs.
inline nlohmann::json snapshot_json(const Stack& stack, const Memory& memory, const Storage& storage)
{
    auto st = nlohmann::json::array();
    for (const auto& w : stack.items())
        st.push_back(w.to_hex());
    auto sto = nlohmann::json::array();
    for (const auto& [k, v] : storage.snapshot())
        sto.push_back({{"key", k.to_hex()}, {"value", v.to_hex()}});
    return {{"stack", st}, {"memory", to_hex(memory.cells().first(
                              std::min(memory.active_size(), memory.capacity())))},
        {"storage", sto}};
}

}  // namespace evmx
