// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "opcodes.hpp"
#include "types.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

/// Static opcode-frequency census over a bytecode corpus.
namespace evmx::census
{
struct CorpusEntry
{
    std::string id;
    Bytes code;
};

/// Bucket for a raw byte: its own value when defined, otherwise the INVALID bucket (0xfe).
inline std::uint8_t canonical_bucket(std::uint8_t code) noexcept
{
    return known_mnemonic(code).empty() ? std::uint8_t{OP_INVALID} : code;
}

/// Occurrence counts per opcode bucket.
class FrequencyTable
{
public:
    void add(std::uint8_t code, std::uint64_t n = 1) noexcept
    {
        counts_[canonical_bucket(code)] += n;
        total_ += n;
    }

    void merge(const FrequencyTable& other) noexcept
    {
        for (std::size_t i = 0; i < 256; ++i)
            counts_[i] += other.counts_[i];
        total_ += other.total_;
    }

    [[nodiscard]] std::uint64_t count(std::uint8_t code) const noexcept { return counts_[canonical_bucket(code)]; }

    /// Count by mnemonic; 0 when absent.
    [[nodiscard]] std::uint64_t count(std::string_view mnemonic) const noexcept
    {
        for (std::size_t i = 0; i < 256; ++i)
        {
            if (known_mnemonic(static_cast<std::uint8_t>(i)) == mnemonic)
                return counts_[i];
        }
        return 0;
    }

    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
    [[nodiscard]] const std::array<std::uint64_t, 256>& counts() const noexcept { return counts_; }

    friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

private:
    std::array<std::uint64_t, 256> counts_{};
    std::uint64_t total_ = 0;
};

/// Linear scan; PUSHn advances the cursor past its n immediate bytes so they are never
/// counted. A truncated trailing PUSH still counts once.
inline FrequencyTable disassemble_count(BytesView code)
{
    FrequencyTable t;
    for (std::size_t i = 0; i < code.size(); ++i)
    {
        t.add(code[i]);
        i += push_immediate_len(code[i]);
    }
    return t;
}

struct RankedEntry
{
    std::uint8_t code;
    std::string mnemonic;
    std::uint64_t count;

    friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Nonzero buckets sorted by count descending, ties by opcode byte ascending, truncated.
inline std::vector<RankedEntry> rank(const FrequencyTable& t, std::size_t top_n)
{
    if (top_n == 0)
        throw std::invalid_argument("top_n must be >= 1");
    std::vector<RankedEntry> out;
    for (std::size_t i = 0; i < 256; ++i)
    {
        if (t.counts()[i] != 0)
        {
            const auto code = static_cast<std::uint8_t>(i);
            out.push_back({code, std::string{known_mnemonic(code)}, t.counts()[i]});
        }
    }
    std::stable_sort(out.begin(), out.end(),
        [](const RankedEntry& a, const RankedEntry& b) { return a.count > b.count; });
    if (out.size() > top_n)
        out.resize(top_n);
    return out;
}

struct AggregateResult
{
    FrequencyTable totals;
    std::vector<RankedEntry> ranked;
};

inline AggregateResult aggregate(const std::vector<CorpusEntry>& corpus, std::size_t top_n)
{
    AggregateResult r;
    for (const auto& e : corpus)
        r.totals.merge(disassemble_count(e.code));
    r.ranked = rank(r.totals, top_n);
    return r;
}

struct LoadResult
{
    std::vector<CorpusEntry> entries;
    /// One message per unreadable entry; those entries are skipped.
    std::vector<std::string> errors;
};

/// Reads a directory of `.hex` files (sorted by file name) or a JSON-lines file of
/// {"id", "code"} objects.
inline LoadResult load_corpus(const std::filesystem::path& path)
{
    namespace fs = std::filesystem;
    LoadResult r;
    if (fs::is_directory(path))
    {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(path))
        {
            if (e.path().extension() == ".hex")
                files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
        {
            std::ifstream in(f);
            if (!in)
            {
                r.errors.push_back(f.string() + ": cannot open");
                continue;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            try
            {
                r.entries.push_back({f.filename().string(), parse_hex(ss.str())});
            }
            catch (const std::exception& ex)
            {
                r.errors.push_back(f.string() + ": " + ex.what());
            }
        }
        return r;
    }

    std::ifstream in(path);
    if (!in)
    {
        r.errors.push_back(path.string() + ": cannot open");
        return r;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try
        {
            const auto j = nlohmann::json::parse(line);
            r.entries.push_back({j.at("id").get<std::string>(), parse_hex(j.at("code").get<std::string>())});
        }
        catch (const std::exception& ex)
        {
            r.errors.push_back(path.string() + ":" + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return r;
}

inline std::string to_csv(const std::vector<RankedEntry>& ranked)
{
    std::string out = "mnemonic,count\n";
    for (const auto& e : ranked)
        out += e.mnemonic + "," + std::to_string(e.count) + "\n";
    return out;
}

/// Vega-Lite bar chart spec with the ranked counts inlined.
inline nlohmann::json to_plot_json(const std::vector<RankedEntry>& ranked)
{
    auto values = nlohmann::json::array();
    for (const auto& e : ranked)
        values.push_back({{"opcode", e.mnemonic}, {"count", e.count}});
    return {{"$schema", "https://vega.github.io/schema/vega-lite/v5.json"},
        {"description", "Opcode frequency"}, {"data", {{"values", values}}}, {"mark", "bar"},
        {"encoding",
            {{"x", {{"field", "opcode"}, {"type", "nominal"}, {"sort", nullptr}}},
                {"y", {{"field", "count"}, {"type", "quantitative"}}}}}};
}

}  // namespace evmx::census
