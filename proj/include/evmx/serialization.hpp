// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "executor.hpp"

#include <string>

#include <nlohmann/json.hpp>

// JSON forms of receipts and trace steps. Words are 0x-prefixed minimal hex, byte strings
// are 0x-prefixed full hex, addresses are 20-byte hex.
namespace evmx
{
inline Status status_from_string(std::string_view s)
{
    for (auto st : {Status::Success, Status::Revert, Status::OutOfGas, Status::Fault})
    {
        if (to_string(st) == s)
            return st;
    }
    throw std::invalid_argument("unknown status: " + std::string{s});
}

inline nlohmann::json to_json(const TraceStep& t)
{
    return {{"step", t.index}, {"pc", t.pc}, {"opcode", t.opcode}, {"mnemonic", t.mnemonic},
        {"gas_before", t.gas_before}, {"gas_after", t.gas_after}, {"cycles", t.cycles},
        {"stack_depth", t.stack_depth},
        {"stack_top", t.stack_top ? nlohmann::json(t.stack_top->to_hex()) : nlohmann::json(nullptr)}};
}

inline TraceStep trace_step_from_json(const nlohmann::json& j)
{
    TraceStep t;
    t.index = j.at("step").get<std::uint64_t>();
    t.pc = j.at("pc").get<std::uint32_t>();
    t.opcode = j.at("opcode").get<std::uint8_t>();
    t.mnemonic = j.at("mnemonic").get<std::string>();
    t.gas_before = j.at("gas_before").get<std::uint64_t>();
    t.gas_after = j.at("gas_after").get<std::uint64_t>();
    t.cycles = j.at("cycles").get<std::uint32_t>();
    t.stack_depth = j.at("stack_depth").get<std::size_t>();
    if (!j.at("stack_top").is_null())
        t.stack_top = Word256::from_hex(j.at("stack_top").get<std::string>());
    return t;
}

inline nlohmann::json to_json(const CreateRecord& c)
{
    nlohmann::json j{{"opcode", c.opcode == OP_CREATE2 ? "CREATE2" : "CREATE"},
        {"address", c.address.to_hex()}, {"value", c.value.to_hex()},
        {"init_code_hash", to_hex(c.init_code_hash.bytes)}};
    j["salt"] = c.salt ? nlohmann::json(c.salt->to_hex()) : nlohmann::json(nullptr);
    j["nonce"] = c.nonce ? nlohmann::json(*c.nonce) : nlohmann::json(nullptr);
    return j;
}

inline CreateRecord create_record_from_json(const nlohmann::json& j)
{
    CreateRecord c;
    c.opcode = j.at("opcode").get<std::string>() == "CREATE2" ? OP_CREATE2 : OP_CREATE;
    c.address = Address::from_hex(j.at("address").get<std::string>());
    c.value = Word256::from_hex(j.at("value").get<std::string>());
    const auto h = parse_hex(j.at("init_code_hash").get<std::string>());
    if (h.size() != 32)
        throw std::invalid_argument("init_code_hash must be 32 bytes");
    std::copy(h.begin(), h.end(), c.init_code_hash.bytes.begin());
    if (!j.at("salt").is_null())
        c.salt = Word256::from_hex(j.at("salt").get<std::string>());
    if (!j.at("nonce").is_null())
        c.nonce = j.at("nonce").get<std::uint64_t>();
    return c;
}

inline nlohmann::json to_json(const Receipt& r)
{
    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["error"] = r.error ? nlohmann::json{{"kind", to_string(r.error->kind)}, {"context", r.error->context}}
                         : nlohmann::json(nullptr);
    j["gas_limit"] = r.gas_limit;
    j["gas_used"] = r.gas_used;
    j["gas_remaining"] = r.gas_remaining;
    j["cycles"] = r.cycles;
    j["steps"] = r.steps;
    j["clock_hz"] = r.clock_hz;
    j["simulated_time_ns"] = r.simulated_time_ns;
    j["return_data"] = to_hex(r.return_data);
    auto storage = nlohmann::json::array();
    for (const auto& [k, v] : r.storage_out)
        storage.push_back({{"key", k.to_hex()}, {"value", v.to_hex()}});
    j["storage_out"] = std::move(storage);
    auto creates = nlohmann::json::array();
    for (const auto& c : r.creates)
        creates.push_back(to_json(c));
    j["creates"] = std::move(creates);
    j["storage_collisions"] = r.storage_collisions;
    if (r.trace)
    {
        auto trace = nlohmann::json::array();
        for (const auto& t : *r.trace)
            trace.push_back(to_json(t));
        j["trace"] = std::move(trace);
    }
    else
        j["trace"] = nullptr;
    return j;
}

inline Receipt receipt_from_json(const nlohmann::json& j)
{
    Receipt r;
    r.status = status_from_string(j.at("status").get<std::string>());
    if (!j.at("error").is_null())
    {
        r.error = VmError{error_kind_from_string(j.at("error").at("kind").get<std::string>()),
            j.at("error").at("context").get<std::string>()};
    }
    r.gas_limit = j.at("gas_limit").get<std::uint64_t>();
    r.gas_used = j.at("gas_used").get<std::uint64_t>();
    r.gas_remaining = j.at("gas_remaining").get<std::uint64_t>();
    r.cycles = j.at("cycles").get<std::uint64_t>();
    r.steps = j.at("steps").get<std::uint64_t>();
    r.clock_hz = j.at("clock_hz").get<double>();
    r.simulated_time_ns = j.at("simulated_time_ns").get<double>();
    r.return_data = parse_hex(j.at("return_data").get<std::string>());
    for (const auto& e : j.at("storage_out"))
    {
        r.storage_out.emplace_back(Word256::from_hex(e.at("key").get<std::string>()),
            Word256::from_hex(e.at("value").get<std::string>()));
    }
    for (const auto& c : j.at("creates"))
        r.creates.push_back(create_record_from_json(c));
    r.storage_collisions = j.at("storage_collisions").get<std::uint64_t>();
    if (!j.at("trace").is_null())
    {
        r.trace.emplace();
        for (const auto& t : j.at("trace"))
            r.trace->push_back(trace_step_from_json(t));
    }
    return r;
}

/// JSON-lines trace: one step per line.
inline std::string trace_jsonl(const std::vector<TraceStep>& trace)
{
    std::string out;
    for (const auto& t : trace)
    {
        out += to_json(t).dump();
        out += '\n';
    }
    return out;
}

}  // namespace evmx
