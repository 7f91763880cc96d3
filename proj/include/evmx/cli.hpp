// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "block.hpp"
#include "census.hpp"
#include "executor.hpp"
#include "serialization.hpp"
#include "timing.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

/// Command-line front end. Kept in the library so tests can drive it in-process.
namespace evmx::cli
{
namespace exit_code
{
inline constexpr int success = 0;
inline constexpr int usage = 1;
inline constexpr int out_of_gas = 2;
inline constexpr int fault = 3;
inline constexpr int revert = 4;
}  // namespace exit_code

inline int exit_code_for(Status s) noexcept
{
    switch (s)
    {
    case Status::Success:
        return exit_code::success;
    case Status::OutOfGas:
        return exit_code::out_of_gas;
    case Status::Fault:
        return exit_code::fault;
    case Status::Revert:
        return exit_code::revert;
    }
    return exit_code::fault;
}

/// Frequency from EVMX_FREQ_HZ, if set and valid.
inline std::optional<double> env_frequency()
{
    const char* v = std::getenv("EVMX_FREQ_HZ");
    if (v == nullptr || *v == '\0')
        return std::nullopt;
    try
    {
        const double f = std::stod(v);
        if (f > 0)
            return f;
    }
    catch (const std::exception&)
    {
    }
    throw std::invalid_argument(std::string{"EVMX_FREQ_HZ is not a positive number: "} + v);
}

inline double resolve_frequency(const std::optional<double>& flag)
{
    if (flag)
    {
        if (!(*flag > 0))
            throw std::invalid_argument("--freq must be positive");
        return *flag;
    }
    return env_frequency().value_or(default_clock_hz);
}

inline std::string read_text_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw std::invalid_argument("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A readable file holding hex, or the argument itself as hex.
inline Bytes load_bytecode_arg(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return parse_hex(read_text_file(arg));
    return parse_hex(arg);
}

struct RunOptions
{
    std::string bytecode;
    std::uint64_t gas = 0;
    std::string calldata;
    std::string value = "0x0";
    std::string sender;
    std::string address;
    std::uint64_t nonce = 0;
    std::optional<double> freq;
    std::string trace_path;
    bool hw_storage = false;
    bool first20_create2 = false;
};

inline void add_run_options(CLI::App& cmd, RunOptions& o)
{
    cmd.add_option("--bytecode", o.bytecode, "Bytecode as hex, or a file containing hex")->required();
    cmd.add_option("--gas", o.gas, "Gas limit")->required();
    cmd.add_option("--calldata", o.calldata, "Initialization data (hex)");
    cmd.add_option("--value", o.value, "Call value (hex quantity)");
    cmd.add_option("--sender", o.sender, "Sender address (20-byte hex)");
    cmd.add_option("--address", o.address, "Executing contract address (20-byte hex)");
    cmd.add_option("--nonce", o.nonce, "Sender nonce used by CREATE");
    cmd.add_option("--freq", o.freq, "Clock frequency in Hz");
    cmd.add_option("--trace", o.trace_path, "Write the JSON-lines trace to this file");
    cmd.add_flag("--hw-faithful-storage", o.hw_storage,
        "Direct-mapped storage indexed by the low 10 key bits");
    cmd.add_flag("--paper-faithful-create2", o.first20_create2,
        "Take the first 20 digest bytes as the CREATE2 address");
}

inline int cmd_run(const RunOptions& o, bool force_trace, std::ostream& out, std::ostream& err)
{
    ExecutionConfig cfg;
    Bytes code;
    try
    {
        code = load_bytecode_arg(o.bytecode);
        cfg.gas_limit = o.gas;
        cfg.init_data = o.calldata.empty() ? Bytes{} : parse_hex(o.calldata);
        cfg.call_value = Word256::from_hex(o.value);
        if (!o.sender.empty())
            cfg.sender_address = Address::from_hex(o.sender);
        if (!o.address.empty())
            cfg.contract_address = Address::from_hex(o.address);
        cfg.sender_nonce = o.nonce;
        cfg.clock_hz = resolve_frequency(o.freq);
        cfg.storage_mode = o.hw_storage ? StorageMode::HardwareIndexed : StorageMode::Associative;
        cfg.create2_window = o.first20_create2 ? AddressWindow::First20 : AddressWindow::Last20;
        cfg.record_trace = force_trace || !o.trace_path.empty();
        cfg.validate();
    }
    catch (const std::exception& ex)
    {
        err << "error: " << ex.what() << '\n';
        return exit_code::usage;
    }

    std::optional<Executor> exec;
    try
    {
        exec.emplace(code, cfg);
    }
    catch (const VmException& ex)
    {
        err << "error: " << ex.what() << '\n';
        return exit_code::fault;
    }
    const auto receipt = exec->run();

    if (!o.trace_path.empty() && receipt.trace)
    {
        std::ofstream tf(o.trace_path);
        if (!tf)
        {
            err << "error: cannot write trace to " << o.trace_path << '\n';
            return exit_code::usage;
        }
        tf << trace_jsonl(*receipt.trace);
    }

    auto j = to_json(receipt);
    if (!force_trace)
        j.erase("trace");
    else
    {
        const auto& s = exec->state();
        j["final_state"] = snapshot_json(s.stack, s.memory, s.storage);
        j["final_state"]["pc"] = s.pc.value();
    }
    out << j.dump(2) << '\n';
    return exit_code_for(receipt.status);
}

inline int cmd_bench_table3(const std::optional<double>& freq_flag, const std::string& csv_path,
    std::ostream& out, std::ostream& err)
{
    ClockConfig clock;
    try
    {
        clock.frequency_hz = resolve_frequency(freq_flag);
    }
    catch (const std::exception& ex)
    {
        err << "error: " << ex.what() << '\n';
        return exit_code::usage;
    }

    const auto rows = table3_report(clock);
    out << table3_text(rows);
    const auto csv = table3_csv(rows);
    if (csv_path.empty())
        out << '\n' << csv;
    else
    {
        std::ofstream f(csv_path);
        if (!f)
        {
            err << "error: cannot write " << csv_path << '\n';
            return exit_code::usage;
        }
        f << csv;
    }

    if (!clock.is_default())
    {
        err << "note: non-default frequency, reference comparison skipped\n";
        return exit_code::success;
    }
    int mismatches = 0;
    for (const auto& r : rows)
    {
        if (!row_matches_reference(r))
        {
            err << "mismatch: " << r.reference->name << " model " << r.model_ns << " ns vs reference "
                << r.reference->evmx_ns << " ns\n";
            ++mismatches;
        }
    }
    return mismatches == 0 ? exit_code::success : exit_code::fault;
}

inline int cmd_histogram(const std::string& corpus_path, std::size_t top_n, const std::string& csv_path,
    const std::string& plot_path, std::ostream& out, std::ostream& err)
{
    if (top_n == 0)
    {
        err << "error: --top must be >= 1\n";
        return exit_code::usage;
    }
    if (!std::filesystem::exists(corpus_path))
    {
        err << "error: corpus " << corpus_path << " does not exist\n";
        return exit_code::usage;
    }
    const auto loaded = census::load_corpus(corpus_path);
    for (const auto& e : loaded.errors)
        err << "warning: skipped " << e << '\n';
    if (loaded.entries.empty())
    {
        err << "error: corpus is empty\n";
        return exit_code::usage;
    }

    const auto result = census::aggregate(loaded.entries, top_n);
    const auto csv = census::to_csv(result.ranked);
    if (csv_path.empty())
        out << csv;
    else
    {
        std::ofstream f(csv_path);
        if (!f)
        {
            err << "error: cannot write " << csv_path << '\n';
            return exit_code::usage;
        }
        f << csv;
    }
    if (!plot_path.empty())
    {
        std::ofstream f(plot_path);
        if (!f)
        {
            err << "error: cannot write " << plot_path << '\n';
            return exit_code::usage;
        }
        f << census::to_plot_json(result.ranked).dump(2) << '\n';
    }
    return exit_code::success;
}

inline int cmd_block(const std::string& spec_path, const std::optional<double>& freq_flag,
    std::ostream& out, std::ostream& err)
{
    BlockSpec spec;
    ExecutionConfig base;
    try
    {
        base.clock_hz = resolve_frequency(freq_flag);
        const auto j = nlohmann::json::parse(read_text_file(spec_path));
        spec = parse_block_spec(j, std::filesystem::path{spec_path}.parent_path());
    }
    catch (const std::exception& ex)
    {
        err << "error: " << ex.what() << '\n';
        return exit_code::usage;
    }
    if (spec.declared_size() == 0)
    {
        err << "error: block has no transactions\n";
        return exit_code::usage;
    }

    const auto report = run_block(spec, base);
    for (const auto& r : report.results)
    {
        if (!r.receipt)
            err << "warning: transaction " << r.index << ": " << r.error << '\n';
    }
    out << to_json(report).dump(2) << '\n';
    return report.ok() ? exit_code::success : exit_code::fault;
}

inline int cmd_opcodes(const std::string& format, std::ostream& out, std::ostream& err)
{
    if (format == "json")
        out << opcode_table_json().dump(2) << '\n';
    else if (format == "csv")
        out << calibration_csv();
    else
    {
        err << "error: unknown format " << format << '\n';
        return exit_code::usage;
    }
    return exit_code::success;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"evmx: cycle-modeled EVM execution engine", "evmx"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Execute bytecode and print the receipt as JSON");
    add_run_options(*run_cmd, run_opts);

    RunOptions trace_opts;
    auto* trace_cmd = app.add_subcommand("trace", "Execute with the per-step trace included");
    add_run_options(*trace_cmd, trace_opts);

    std::optional<double> bench_freq;
    std::string bench_csv;
    auto* bench_cmd = app.add_subcommand("bench-table3", "Opcode timing comparison against CPU clients");
    bench_cmd->add_option("--freq", bench_freq, "Clock frequency in Hz");
    bench_cmd->add_option("--csv", bench_csv, "Write the CSV report to this file");

    std::string corpus;
    std::size_t top_n = 45;
    std::string hist_csv;
    std::string hist_plot;
    auto* hist_cmd = app.add_subcommand("histogram", "Opcode frequency over a bytecode corpus");
    hist_cmd->add_option("corpus", corpus, "Directory of .hex files or a JSON-lines file")->required();
    hist_cmd->add_option("--top", top_n, "Number of opcodes to keep");
    hist_cmd->add_option("--csv", hist_csv, "Write CSV here instead of standard output");
    hist_cmd->add_option("--plot", hist_plot, "Write a Vega-Lite bar chart spec here");

    std::string block_path;
    std::optional<double> block_freq;
    auto* block_cmd = app.add_subcommand("block", "Execute a block of transactions sequentially");
    block_cmd->add_option("spec", block_path, "Block spec JSON file")->required();
    block_cmd->add_option("--freq", block_freq, "Clock frequency in Hz");

    std::string opcodes_format = "json";
    auto* opcodes_cmd = app.add_subcommand("opcodes", "Dump the opcode gas/cycle table");
    opcodes_cmd->add_option("--format", opcodes_format, "json or csv");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_code::success;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }

    if (*run_cmd)
        return cmd_run(run_opts, false, out, err);
    if (*trace_cmd)
        return cmd_run(trace_opts, true, out, err);
    if (*bench_cmd)
        return cmd_bench_table3(bench_freq, bench_csv, out, err);
    if (*hist_cmd)
        return cmd_histogram(corpus, top_n, hist_csv, hist_plot, out, err);
    if (*block_cmd)
        return cmd_block(block_path, block_freq, out, err);
    if (*opcodes_cmd)
        return cmd_opcodes(opcodes_format, out, err);
    return exit_code::usage;
}

}  // namespace evmx::cli
