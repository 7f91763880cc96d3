// evmx: cycle-modeled EVM execution engine
// Copyright 2026 The evmx Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alu.hpp"
#include "block.hpp"
#include "calibration.hpp"
#include "census.hpp"
#include "crypto.hpp"
#include "executor.hpp"
#include "keccak.hpp"
#include "machine_state.hpp"
#include "opcodes.hpp"
#include "serialization.hpp"
#include "timing.hpp"
#include "types.hpp"
#include "word.hpp"
