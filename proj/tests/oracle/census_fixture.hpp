// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reads the hand-written listings next to the census fixture. Each line is one
// instruction: "MNEMONIC [immediate]", "DATA xx" for a raw undefined byte (counted as
// INVALID) or "TRUNC PUSHn xx" for a push cut off by the end of code.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace evmx::test
{
using MnemonicCounts = std::map<std::string, std::uint64_t>;

inline MnemonicCounts listing_counts(const std::filesystem::path& asm_file)
{
    MnemonicCounts counts;
    std::ifstream in(asm_file);
    std::string line;
    while (std::getline(in, line))
    {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (first == "DATA")
            first = "INVALID";
        else if (first == "TRUNC")
            ls >> first;
        ++counts[first];
    }
    return counts;
}

/// "mnemonic,count" CSV with a header line.
inline MnemonicCounts read_counts_csv(const std::filesystem::path& csv)
{
    MnemonicCounts counts;
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
    {
        const auto comma = line.find(',');
        if (comma != std::string::npos)
            counts[line.substr(0, comma)] = std::stoull(line.substr(comma + 1));
    }
    return counts;
}

}  // namespace evmx::test
