// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0

#include <evmx/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return evmx::cli::run_cli(argc, argv, std::cout, std::cerr);
}
