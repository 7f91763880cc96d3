// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "executor.hpp"
#include "serialization.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace evmx
{
struct TransactionSpec
{
    /// Position in the block's input list.
    std::size_t index = 0;
    std::string code_ref;
    Bytes code;
    std::uint64_t gas_limit = 0;
    Bytes init_data;
    Word256 call_value;
    std::optional<Address> sender;
    std::optional<std::uint64_t> nonce;
};

/// A block of transactions executed one after another on a single engine.
struct BlockSpec
{
    std::string label;
    std::vector<TransactionSpec> transactions;
    /// Transactions that could not be parsed: (index in the input list, message).
    std::vector<std::pair<std::size_t, std::string>> malformed;

    [[nodiscard]] std::size_t declared_size() const noexcept
    {
        return transactions.size() + malformed.size();
    }
};

/// code_ref is inline hex (with or without 0x) or a path, relative to base_dir, to a file
/// holding hex.
inline Bytes resolve_code_ref(const std::string& ref, const std::filesystem::path& base_dir)
{
    try
    {
        return parse_hex(ref);
    }
    catch (const std::invalid_argument&)
    {
    }
    auto p = std::filesystem::path{ref};
    if (p.is_relative())
        p = base_dir / p;
    std::ifstream in(p);
    if (!in)
        throw std::invalid_argument("code_ref '" + ref + "' is neither hex nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_hex(ss.str());
}

inline BlockSpec parse_block_spec(const nlohmann::json& j, const std::filesystem::path& base_dir = ".")
{
    BlockSpec spec;
    spec.label = j.value("label", std::string{});
    const auto& txs = j.at("transactions");
    if (!txs.is_array())
        throw std::invalid_argument("transactions must be an array");
    for (std::size_t i = 0; i < txs.size(); ++i)
    {
        try
        {
            const auto& t = txs[i];
            TransactionSpec tx;
            tx.index = i;
            tx.code_ref = t.at("code_ref").get<std::string>();
            tx.code = resolve_code_ref(tx.code_ref, base_dir);
            tx.gas_limit = t.at("gas_limit").get<std::uint64_t>();
            if (tx.gas_limit == 0)
                throw std::invalid_argument("gas_limit must be > 0");
            if (t.contains("init_data"))
                tx.init_data = parse_hex(t.at("init_data").get<std::string>());
            if (t.contains("call_value"))
                tx.call_value = Word256::from_hex(t.at("call_value").get<std::string>());
            if (t.contains("sender"))
                tx.sender = Address::from_hex(t.at("sender").get<std::string>());
            if (t.contains("nonce"))
                tx.nonce = t.at("nonce").get<std::uint64_t>();
            spec.transactions.push_back(std::move(tx));
        }
        catch (const std::exception& ex)
        {
            spec.malformed.emplace_back(i, ex.what());
        }
    }
    return spec;
}

inline nlohmann::json to_json(const TransactionSpec& tx)
{
    nlohmann::json j{{"code_ref", tx.code_ref}, {"gas_limit", tx.gas_limit},
        {"init_data", to_hex(tx.init_data)}, {"call_value", tx.call_value.to_hex()}};
    if (tx.sender)
        j["sender"] = tx.sender->to_hex();
    if (tx.nonce)
        j["nonce"] = *tx.nonce;
    return j;
}

struct BlockTxResult
{
    std::size_t index = 0;
    std::optional<Receipt> receipt;
    std::string error;
};

struct BlockReport
{
    std::string label;
    std::vector<BlockTxResult> results;
    std::uint64_t total_cycles = 0;
    std::uint64_t total_gas = 0;
    /// Sum of per-transaction simulated times, accumulated in transaction order.
    double total_simulated_ns = 0;
    std::size_t failed = 0;

    [[nodiscard]] bool ok() const noexcept { return failed == 0; }
};

/// Runs every well-formed transaction in order. Malformed entries and transactions that
/// cannot be loaded are reported and counted as failures; execution continues.
inline BlockReport run_block(const BlockSpec& spec, const ExecutionConfig& base = {})
{
    BlockReport report;
    report.label = spec.label;
    for (const auto& [index, message] : spec.malformed)
    {
        report.results.push_back({index, std::nullopt, message});
        ++report.failed;
    }

    for (const auto& tx : spec.transactions)
    {
        auto cfg = base;
        cfg.gas_limit = tx.gas_limit;
        cfg.init_data = tx.init_data;
        cfg.call_value = tx.call_value;
        if (tx.sender)
            cfg.sender_address = *tx.sender;
        if (tx.nonce)
            cfg.sender_nonce = *tx.nonce;
        try
        {
            auto receipt = run(tx.code, cfg);
            report.total_cycles += receipt.cycles;
            report.total_gas += receipt.gas_used;
            report.total_simulated_ns += receipt.simulated_time_ns;
            report.results.push_back({tx.index, std::move(receipt), {}});
        }
        catch (const std::exception& ex)
        {
            report.results.push_back({tx.index, std::nullopt, ex.what()});
            ++report.failed;
        }
    }
    std::sort(report.results.begin(), report.results.end(),
        [](const auto& a, const auto& b) { return a.index < b.index; });
    return report;
}

inline nlohmann::json to_json(const BlockReport& r)
{
    auto txs = nlohmann::json::array();
    for (const auto& t : r.results)
    {
        nlohmann::json j{{"index", t.index}};
        if (t.receipt)
            j["receipt"] = to_json(*t.receipt);
        else
            j["error"] = t.error;
        txs.push_back(std::move(j));
    }
    return {{"label", r.label}, {"transactions", txs},
        {"aggregate",
            {{"transactions", r.results.size()}, {"failed", r.failed},
                {"total_cycles", r.total_cycles}, {"total_gas", r.total_gas},
                {"total_simulated_ns", r.total_simulated_ns},
                {"total_simulated_us", r.total_simulated_ns / 1000.0}}}};
}

}  // namespace evmx
