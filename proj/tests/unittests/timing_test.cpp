// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracle/published_timings.hpp"

#include <evmx/timing.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace evmx;

TEST(timing, cycles_for_examples)
{
    EXPECT_EQ(cycles_for(OP_ADD), 4u);
    EXPECT_EQ(cycles_for(OP_MLOAD), 37u);
    EXPECT_EQ(cycles_for(OP_SLOAD), 3u);
}

TEST(timing, simulated_time)
{
    EXPECT_NEAR(simulated_time_ns(4), 28.0, 0.001);
    EXPECT_EQ(simulated_time_ns(0), 0.0);
    EXPECT_DOUBLE_EQ(simulated_time_ns(1, ClockConfig{100e6}), 10.0);
    EXPECT_NEAR(ClockConfig{}.period_ns(), 7.0, 0.001);
}

TEST(timing, golden_cycles)
{
    for (const auto& t : test::published_timings)
    {
        EXPECT_EQ(cycles_for(t.opcode) * 7, t.evmx_ns) << t.name;
        EXPECT_EQ(std::lround(simulated_time_ns(cycles_for(t.opcode))), static_cast<long>(t.evmx_ns)) << t.name;
        EXPECT_EQ(opcode_table().at(t.opcode).gas, t.gas) << t.name;
    }
}

TEST(timing, delta_examples)
{
    EXPECT_NEAR(delta_percent(510, 602, 610, 28), 94.5, 0.05);
    EXPECT_EQ(std::lround(delta_percent(6950, 1838, 666, 259)), 61);
    EXPECT_EQ(std::lround(delta_percent(80, 556, 604, 7)), 91);
}

TEST(timing, report_reproduces_printed_delta)
{
    const auto rows = table3_report();
    ASSERT_EQ(rows.size(), test::published_timings.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const auto& t = test::published_timings[i];
        EXPECT_EQ(rows[i].reference->name, t.name);
        EXPECT_LE(std::abs(std::lround(rows[i].delta_percent) - t.delta), 1) << t.name;
        // The library's delta agrees with the independently written formula.
        EXPECT_NEAR(rows[i].delta_percent, test::improvement_percent(t, rows[i].model_ns), 1e-9);
        EXPECT_TRUE(row_matches_reference(rows[i])) << t.name;
    }
}

TEST(timing, rescaled_report)
{
    const auto rows = table3_report(ClockConfig{100e6});
    EXPECT_DOUBLE_EQ(rows[0].model_ns, 40.0);
    EXPECT_FALSE(row_matches_reference(rows[0]));
}

TEST(timing, csv_has_fifteen_rows)
{
    const auto csv = table3_csv(table3_report());
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
}

TEST(timing, calibration_sources)
{
    std::size_t measured = 0;
    for (const auto& r : calibration_rows())
    {
        if (r.source == CalibrationSource::Measured)
            ++measured;
        EXPECT_GE(r.cycles, 1u);
    }
    EXPECT_EQ(measured, 15u);
    EXPECT_EQ(calibration_json().size(), calibration_rows().size());
}
