// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracle/address_oracle.hpp"
#include "oracle/differential.hpp"
#include "oracle/program_gen.hpp"
#include "oracle/vectors.hpp"

#include <evmx/executor.hpp>

#include <gtest/gtest.h>

using namespace evmx;

namespace
{
ExecutionConfig cfg_with_gas(std::uint64_t gas)
{
    ExecutionConfig c;
    c.gas_limit = gas;
    c.record_trace = true;
    return c;
}

Receipt exec(std::string_view hex, std::uint64_t gas = 1'000'000)
{
    return run(parse_hex(hex), cfg_with_gas(gas));
}

Word256 top_of(const Receipt& r)
{
    return r.trace->back().stack_top.value();
}
}  // namespace

TEST(executor, load_program)
{
    auto ex = load_program(Bytes{0x00}, cfg_with_gas(100));
    EXPECT_EQ(ex.state().pc.value(), 0u);
    EXPECT_EQ(ex.state().gas_remaining, 100u);
    EXPECT_TRUE(ex.state().stack.empty());
    try
    {
        (void)load_program(Bytes(32769, 0), cfg_with_gas(100));
        FAIL();
    }
    catch (const VmException& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::BytecodeTooLarge);
    }
    EXPECT_THROW((void)load_program(Bytes{0x00}, cfg_with_gas(0)), std::invalid_argument);
}

TEST(executor, single_steps)
{
    Executor ex{parse_hex("6005600201"), cfg_with_gas(100)};
    EXPECT_FALSE(ex.step());
    EXPECT_EQ(ex.state().stack.peek(), Word256{5});
    EXPECT_EQ(ex.state().gas_remaining, 97u);
    EXPECT_EQ(ex.state().cycles_elapsed, 2u);
    EXPECT_EQ(ex.state().pc.value(), 2u);
    EXPECT_FALSE(ex.step());
    EXPECT_FALSE(ex.step());
    EXPECT_EQ(ex.state().stack.depth(), 1u);
    EXPECT_EQ(ex.state().stack.peek(), Word256{7});
    EXPECT_EQ(ex.state().gas_remaining, 91u);
    EXPECT_EQ(ex.state().cycles_elapsed, 8u);
    const auto r = ex.step();  // falls off the end
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, Status::Success);
}

TEST(executor, out_of_gas_reverts_storage)
{
    auto c = cfg_with_gas(20000 + 3 + 3 + 1);
    c.initial_storage = {{Word256{9}, Word256{9}}};
    // SSTORE(1, 1) then PUSH1 with 1 gas left.
    const auto r = run(parse_hex("600160015560026003" "01"), c);
    EXPECT_EQ(r.status, Status::OutOfGas);
    EXPECT_EQ(r.error->kind, ErrorKind::OutOfGas);
    EXPECT_EQ(r.storage_out, (Storage::Entries{{Word256{9}, Word256{9}}}));
    EXPECT_EQ(r.gas_remaining, 0u);
    EXPECT_EQ(r.gas_used, r.gas_limit);
}

TEST(executor, add_program)
{
    const auto r = exec("600260030100");
    EXPECT_EQ(r.status, Status::Success);
    EXPECT_EQ(r.gas_used, 9u);
    EXPECT_EQ(r.cycles, 2u + 2u + 4u + 1u);
    EXPECT_EQ(r.trace->at(2).stack_top, Word256{5});

    const auto oog = exec("600260030100", 5);
    EXPECT_EQ(oog.status, Status::OutOfGas);
    EXPECT_EQ(oog.steps, 1u);
    EXPECT_EQ(oog.trace->size(), 1u);
}

TEST(executor, implicit_stop_costs_nothing)
{
    const auto r = exec("6002600301");
    EXPECT_EQ(r.gas_used, 9u);
    EXPECT_EQ(r.cycles, 8u);
    EXPECT_EQ(r.steps, 3u);
}

TEST(executor, return_and_revert)
{
    const auto empty = exec("60006000f3");
    EXPECT_EQ(empty.status, Status::Success);
    EXPECT_TRUE(empty.return_data.empty());

    // MSTORE(0, 0xabcd); RETURN(30, 2)
    const auto ret = exec("61abcd600052" "6002601ef3");
    EXPECT_EQ(ret.status, Status::Success);
    EXPECT_EQ(ret.return_data, (Bytes{0xab, 0xcd}));

    // SSTORE(1,1); MSTORE(0, 0xabcd); REVERT(30, 2)
    const auto rev = exec("6001600155" "61abcd600052" "6002601efd");
    EXPECT_EQ(rev.status, Status::Revert);
    EXPECT_FALSE(rev.error);
    EXPECT_EQ(rev.return_data, (Bytes{0xab, 0xcd}));
    EXPECT_TRUE(rev.storage_out.empty());
    EXPECT_GT(rev.gas_remaining, 0u);
    EXPECT_EQ(rev.gas_used + rev.gas_remaining, rev.gas_limit);
}

TEST(executor, faults)
{
    const auto under = exec("01");
    EXPECT_EQ(under.status, Status::Fault);
    EXPECT_EQ(under.error->kind, ErrorKind::StackUnderflow);
    EXPECT_EQ(under.gas_remaining, 0u);

    EXPECT_EQ(exec("fe").error->kind, ErrorKind::InvalidOpcode);
    EXPECT_EQ(exec("0c").error->kind, ErrorKind::InvalidOpcode);
    EXPECT_EQ(exec("600356").error->kind, ErrorKind::InvalidJump);
    EXPECT_EQ(exec("619c4056").error->kind, ErrorKind::InvalidJump);  // 40000
    EXPECT_EQ(exec("6001610ad052").error->kind, ErrorKind::MemoryOutOfRange);  // MSTORE at 2768
}

TEST(executor, jumps)
{
    // PUSH1 5, JUMP, INVALID, INVALID, JUMPDEST, PUSH1 1
    const auto r = exec("600556fefe5b6001");
    EXPECT_EQ(r.status, Status::Success);
    EXPECT_EQ(top_of(r), Word256{1});
    // JUMPI not taken.
    const auto n = exec("6000600757" "6002" "00" "5b");
    EXPECT_EQ(n.status, Status::Success);
    EXPECT_EQ(top_of(n), Word256{2});
    // JUMPI taken.
    const auto t = exec("6001600857" "6002" "00" "5b6003");
    EXPECT_EQ(top_of(t), Word256{3});
}

TEST(executor, environment)
{
    auto c = cfg_with_gas(1000);
    c.call_value = 7;
    const auto v = run(parse_hex("34"), c);
    EXPECT_EQ(top_of(v), Word256{7});
    EXPECT_EQ(v.cycles, 1u);

    EXPECT_EQ(top_of(exec("36")), Word256{});
    c.init_data = {0xaa, 0xbb};
    const auto load = run(parse_hex("600135"), c);
    EXPECT_EQ(top_of(load), Word256{0xbb} << 248);
    const auto past = run(parse_hex("606435"), c);
    EXPECT_EQ(top_of(past), Word256{});
    EXPECT_EQ(top_of(run(parse_hex("36"), c)), Word256{2});

    c.sender_address = Address::from_hex("0x6ac7ea33f8831ea9dcc53393aaa88b25a785dbf0");
    EXPECT_EQ(top_of(run(parse_hex("33"), c)), c.sender_address.to_word());
    EXPECT_EQ(top_of(run(parse_hex("45"), c)), Word256{1000});
    EXPECT_EQ(top_of(run(parse_hex("46"), c)), Word256{1});
    EXPECT_EQ(top_of(exec("600160215359")), Word256{64});
    EXPECT_EQ(top_of(exec("5a", 500)), Word256{498});
}

TEST(executor, create2)
{
    auto c = cfg_with_gas(100000);
    c.sender_address = Address::from_hex("0x00000000000000000000000000000000deadbeef");
    // salt 0, size 0, offset 0, value 0
    const auto r = run(parse_hex("5f5f5f5ff5"), c);
    ASSERT_EQ(r.status, Status::Success);
    const auto expected = create2_address(c.sender_address, Word256{}, Bytes{});
    EXPECT_EQ(top_of(r), expected.to_word());
    EXPECT_EQ(expected.bytes, test::oracle_create2(c.sender_address.bytes, {}, {}));
    ASSERT_EQ(r.creates.size(), 1u);
    EXPECT_EQ(r.creates[0].opcode, OP_CREATE2);

    // Init code deadbeef at memory[0..4), salt cafebabe.
    const auto r2 = run(parse_hex("63cafebabe" "6004" "5f" "5f" "63deadbeef" "60e0" "1b" "5f" "52" "f5"), c);
    ASSERT_EQ(r2.status, Status::Success) << r2.error->context;
    EXPECT_EQ(Address::from_word(top_of(r2)).to_hex().substr(2), test::vectors::create2[5].address);

    const auto oor = run(parse_hex("5f" "610ad1" "5f" "5f" "f5"), c);
    EXPECT_EQ(oor.error->kind, ErrorKind::MemoryOutOfRange);

    c.create2_window = AddressWindow::First20;
    const auto first20 = run(parse_hex("5f5f5f5ff5"), c);
    EXPECT_EQ(top_of(first20), create2_address(c.sender_address, Word256{}, Bytes{}, AddressWindow::First20).to_word());
}

TEST(executor, create)
{
    auto c = cfg_with_gas(100000);
    const auto r = run(parse_hex("5f5f5ff0"), c);
    EXPECT_EQ(Address::from_word(top_of(r)).to_hex().substr(2), test::vectors::create[0].address);
    EXPECT_EQ(r.creates.at(0).nonce, 0u);

    const auto two = run(parse_hex("5f5f5ff0" "5f5f5ff0"), c);
    ASSERT_EQ(two.creates.size(), 2u);
    EXPECT_EQ(two.creates[1].address.to_hex().substr(2), test::vectors::create[1].address);
    EXPECT_NE(two.creates[0].address, two.creates[1].address);

    c.sender_nonce = 128;
    EXPECT_EQ(run(parse_hex("5f5f5ff0"), c).creates.at(0).address.to_hex().substr(2),
        test::vectors::create[3].address);

    EXPECT_EQ(run(parse_hex("5f5ff0"), c).error->kind, ErrorKind::StackUnderflow);
}

TEST(executor, call_stub)
{
    auto c = cfg_with_gas(100000);
    const auto r = run(parse_hex("5f5f5f5f5f5f5ff1"), c);
    EXPECT_EQ(top_of(r), Word256{1});
    c.call_stub_status = 0;
    EXPECT_EQ(top_of(run(parse_hex("5f5f5f5f5f5f5ff1"), c)), Word256{});
    // args region out of range
    EXPECT_EQ(run(parse_hex("5f5f6001610ad05f5f5ff1"), c).error->kind, ErrorKind::MemoryOutOfRange);
}

TEST(executor, hardware_storage_mode_counts_collisions)
{
    auto c = cfg_with_gas(1'000'000);
    c.storage_mode = StorageMode::HardwareIndexed;
    const auto r = run(parse_hex("6001600155" "600261040155" "61040154"), c);  // keys 1 and 1025 alias
    EXPECT_EQ(r.status, Status::Success);
    EXPECT_GE(r.storage_collisions, 1u);
}

TEST(executor, step_limit)
{
    auto c = cfg_with_gas(1'000'000'000);
    c.step_limit = 100;
    const auto r = run(parse_hex("5b600056"), c);  // infinite loop
    EXPECT_EQ(r.status, Status::OutOfGas);
    EXPECT_EQ(r.steps, 100u);
}

TEST(executor, determinism)
{
    test::ProgramGenerator gen{40};
    for (int i = 0; i < 100; ++i)
    {
        const auto code = gen.next();
        EXPECT_EQ(run(code, cfg_with_gas(1'000'000)), run(code, cfg_with_gas(1'000'000)));
    }
}

// Per-step gas accounting and cycle additivity over random programs.
TEST(executor, gas_and_cycle_accounting)
{
    test::ProgramGenerator gen{41};
    for (int i = 0; i < 500; ++i)
    {
        const auto code = gen.next();
        const auto gas = 1 + gen.next().size() * 1000;  // often too little
        const auto r = run(code, cfg_with_gas(gas));
        ASSERT_EQ(r.gas_used + r.gas_remaining, r.gas_limit);
        std::uint64_t expect_gas = r.gas_limit;
        std::uint64_t cycles = 0;
        for (const auto& t : *r.trace)
        {
            ASSERT_EQ(t.gas_before, expect_gas);
            ASSERT_EQ(t.gas_before - t.gas_after, opcode_table().at(t.opcode).gas);
            ASSERT_EQ(t.cycles, opcode_table().at(t.opcode).cycles);
            // What has been spent plus what is left is the limit at every step.
            ASSERT_EQ((r.gas_limit - t.gas_after) + t.gas_after, r.gas_limit);
            expect_gas = t.gas_after;
            cycles += t.cycles;
        }
        ASSERT_EQ(r.cycles, cycles);
        ASSERT_EQ(r.steps, r.trace->size());
        if (r.status == Status::Success || r.status == Status::Revert)
            ASSERT_EQ(r.gas_remaining, expect_gas);
        else
            ASSERT_EQ(r.gas_remaining, 0u);
    }
}

TEST(executor, failing_runs_restore_storage)
{
    test::ProgramGenerator gen{42, {.max_ops = 64, .reckless_percent = 10, .bad_memory_percent = 15}};
    std::size_t failing = 0;
    for (int i = 0; i < 2000 && failing < 200; ++i)
    {
        auto c = cfg_with_gas(1'000'000);
        c.initial_storage = {{Word256{1}, Word256{0x11}}, {Word256{200}, Word256{0x22}}};
        const auto code = gen.next();
        const auto r = run(code, c);
        if (r.status == Status::OutOfGas || r.status == Status::Fault)
        {
            ++failing;
            ASSERT_EQ(r.storage_out, (Storage::Entries{{Word256{1}, Word256{0x11}}, {Word256{200}, Word256{0x22}}}));
            ASSERT_TRUE(r.creates.empty());
        }
    }
    EXPECT_GE(failing, 100u);
}

TEST(executor, differential_against_reference)
{
    test::ProgramGenerator gen{43};
    for (int i = 0; i < 300; ++i)
    {
        const auto code = gen.next();
        const auto diff = test::differential_mismatch(code, Word256{static_cast<std::uint64_t>(i)}, Bytes{1, 2, 3});
        ASSERT_EQ(diff, "") << to_hex(code);
    }
}
