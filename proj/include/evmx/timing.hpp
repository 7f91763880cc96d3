// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "calibration.hpp"
#include "opcodes.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace evmx
{
struct ClockConfig
{
    double frequency_hz = default_clock_hz;

    [[nodiscard]] double period_ns() const noexcept { return 1e9 / frequency_hz; }
    [[nodiscard]] bool is_default() const noexcept { return frequency_hz == default_clock_hz; }
};

inline std::uint32_t cycles_for(std::uint8_t opcode)
{
    return opcode_table().at(opcode).cycles;
}

inline double simulated_time_ns(std::uint64_t cycles, const ClockConfig& clock = {}) noexcept
{
    return static_cast<double>(cycles) * clock.period_ns();
}

enum class CalibrationSource
{
    Measured,
    Estimated,
};

struct CalibrationRow
{
    std::uint8_t opcode;
    std::string mnemonic;
    std::uint32_t gas;
    double ns;
    std::uint32_t cycles;
    CalibrationSource source;
};

inline std::vector<CalibrationRow> calibration_rows(const ClockConfig& clock = {})
{
    std::vector<CalibrationRow> rows;
    for (const auto* s : opcode_table().entries())
    {
        rows.push_back({s->code, s->mnemonic, s->gas, simulated_time_ns(s->cycles, clock), s->cycles,
            s->estimated ? CalibrationSource::Estimated : CalibrationSource::Measured});
    }
    return rows;
}

inline std::string_view to_string(CalibrationSource s) noexcept
{
    return s == CalibrationSource::Measured ? "table3" : "estimated";
}

inline std::string calibration_csv(const ClockConfig& clock = {})
{
    std::ostringstream os;
    os << "opcode,mnemonic,gas,ns,cycles,source\n";
    for (const auto& r : calibration_rows(clock))
    {
        os << "0x" << std::hex << std::setw(2) << std::setfill('0') << int{r.opcode} << std::dec
           << ',' << r.mnemonic << ',' << r.gas << ',' << r.ns << ',' << r.cycles << ','
           << to_string(r.source) << '\n';
    }
    return os.str();
}

inline nlohmann::json calibration_json(const ClockConfig& clock = {})
{
    auto out = nlohmann::json::array();
    for (const auto& r : calibration_rows(clock))
    {
        out.push_back({{"opcode", r.opcode}, {"mnemonic", r.mnemonic}, {"gas", r.gas}, {"ns", r.ns},
            {"cycles", r.cycles}, {"source", to_string(r.source)}});
    }
    return out;
}

/// One line of the CPU-vs-EVMx comparison.
struct ComparisonRow
{
    const calibration::MeasuredRow* reference;
    std::uint32_t model_cycles;
    double model_ns;
    std::uint32_t cpu_min_ns;
    /// (min CPU - model) / min CPU * 100
    double delta_percent;
};

/// delta = (min(lpy, wgo, wpa) - evmx) / min(...) * 100
inline double delta_percent(std::uint32_t lpy, std::uint32_t wgo, std::uint32_t wpa, double evmx_ns) noexcept
{
    const double m = std::min({lpy, wgo, wpa});
    return (m - evmx_ns) / m * 100.0;
}

inline std::vector<ComparisonRow> table3_report(const ClockConfig& clock = {})
{
    std::vector<ComparisonRow> rows;
    for (const auto& ref : calibration::measured_rows)
    {
        const auto cycles = cycles_for(ref.opcode);
        const auto ns = simulated_time_ns(cycles, clock);
        rows.push_back({&ref, cycles, ns, std::min({ref.lpy_ns, ref.wgo_ns, ref.wpa_ns}),
            delta_percent(ref.lpy_ns, ref.wgo_ns, ref.wpa_ns, ns)});
    }
    return rows;
}

/// Golden check of a report row against the measured values: cycles at the nominal 7 ns
/// period reproduce the EVMx column exactly, the model time rounds to it, and the
/// recomputed delta is within one point of the printed one.
inline bool row_matches_reference(const ComparisonRow& row) noexcept
{
    const auto& ref = *row.reference;
    return row.model_cycles * calibration::nominal_period_ns == ref.evmx_ns &&
           std::lround(row.model_ns) == static_cast<long>(ref.evmx_ns) &&
           std::abs(std::lround(row.delta_percent) - ref.delta_percent) <= 1;
}

inline std::string table3_csv(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream os;
    os << "category,opcode,name,gas,lpy_ns,wgo_ns,wpa_ns,evmx_ns,cycles,delta_percent,reference_delta_percent\n";
    for (const auto& r : rows)
    {
        const auto& ref = *r.reference;
        os << ref.category << ",0x" << std::hex << std::setw(2) << std::setfill('0')
           << int{ref.opcode} << std::dec << ',' << ref.name << ',' << ref.gas << ','
           << ref.lpy_ns << ',' << ref.wgo_ns << ',' << ref.wpa_ns << ',' << std::fixed
           << std::setprecision(3) << r.model_ns << ',' << r.model_cycles << ','
           << std::setprecision(2) << r.delta_percent << ',' << ref.delta_percent << '\n';
        os << std::defaultfloat;
    }
    return os.str();
}

inline std::string table3_text(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream os;
    os << std::left << std::setw(14) << "Category" << std::setw(7) << "Opcode" << std::setw(11)
       << "Name" << std::right << std::setw(5) << "Gas" << std::setw(8) << "LPy" << std::setw(8)
       << "WGo" << std::setw(8) << "WPa" << std::setw(10) << "EVMx(ns)" << std::setw(8)
       << "Cycles" << std::setw(8) << "Delta%" << '\n';
    for (const auto& r : rows)
    {
        const auto& ref = *r.reference;
        std::ostringstream code;
        code << "x" << std::hex << std::setw(2) << std::setfill('0') << int{ref.opcode};
        os << std::left << std::setw(14) << ref.category << std::setw(7) << code.str()
           << std::setw(11) << ref.name << std::right << std::setw(5) << ref.gas << std::setw(8)
           << ref.lpy_ns << std::setw(8) << ref.wgo_ns << std::setw(8) << ref.wpa_ns
           << std::setw(10) << std::fixed << std::setprecision(1) << r.model_ns << std::setw(8)
           << r.model_cycles << std::setw(8) << std::lround(r.delta_percent) << '\n';
    }
    return os.str();
}

}  // namespace evmx
