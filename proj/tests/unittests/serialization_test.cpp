// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracle/program_gen.hpp"

#include <evmx/serialization.hpp>

#include <gtest/gtest.h>

using namespace evmx;

TEST(serialization, receipt_round_trip)
{
    test::ProgramGenerator gen{50};
    for (int i = 0; i < 200; ++i)
    {
        ExecutionConfig c;
        c.gas_limit = 1'000'000;
        c.record_trace = i % 2 == 0;
        const auto r = run(gen.next(), c);
        const auto j = to_json(r);
        const auto back = receipt_from_json(j);
        EXPECT_EQ(back, r);
        // serialize -> parse -> serialize is stable, also through text.
        EXPECT_EQ(to_json(receipt_from_json(nlohmann::json::parse(j.dump()))), j);
    }
}

TEST(serialization, receipt_with_creates_round_trips)
{
    ExecutionConfig c;
    c.gas_limit = 1'000'000;
    const auto r = run(parse_hex("5f5f5ff0" "60aa5f5f5ff5"), c);
    ASSERT_EQ(r.creates.size(), 2u);
    EXPECT_EQ(receipt_from_json(to_json(r)), r);
}

TEST(serialization, error_receipt)
{
    ExecutionConfig c;
    c.gas_limit = 100;
    const auto r = run(parse_hex("01"), c);
    const auto j = to_json(r);
    EXPECT_EQ(j["status"], "Fault");
    EXPECT_EQ(j["error"]["kind"], "StackUnderflow");
    EXPECT_EQ(receipt_from_json(j), r);
}

TEST(serialization, status_names)
{
    for (auto s : {Status::Success, Status::Revert, Status::OutOfGas, Status::Fault})
        EXPECT_EQ(status_from_string(to_string(s)), s);
    EXPECT_THROW((void)status_from_string("Nope"), std::invalid_argument);
}

TEST(serialization, trace_jsonl)
{
    ExecutionConfig c;
    c.gas_limit = 100;
    c.record_trace = true;
    const auto r = run(parse_hex("6002600301"), c);
    const auto text = trace_jsonl(*r.trace);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
    EXPECT_EQ(first["mnemonic"], "PUSH1");
    EXPECT_EQ(first["cycles"], 2);
}
