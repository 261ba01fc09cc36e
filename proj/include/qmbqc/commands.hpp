// Copyright 2026 The qmbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMBQC_COMMANDS_HPP
#define QMBQC_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmbqc/io.hpp"

namespace qmbqc {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode {
    kExitOk = 0,
    kExitFailure = 1,
    kExitParse = 2,
    kExitUnsupported = 3,
    kExitTable = 4,
    kExitDiverged = 5,
    kExitFrame = 6,
};

int exit_code_for(ErrorCode code);

/// Inputs are already-parsed JSON documents; null means absent.
struct CommandRequest {
    std::string command;
    Json gate;
    Json target;
    Json graph;
    Json pattern;
    std::string formalism = "ring";
    std::uint64_t seed = 1;
    int trials = 1;
    bool dump_state = false;
    int corrupt_row = -1;  // table self-test: perturbs one expected value
    double threshold = 1e-6;  // compile residual threshold
};

struct CommandResult {
    int exit_code = 0;
    Json report;
};

/// Never throws; failures are reported with their exit code.
CommandResult run_command(const CommandRequest &req);

struct TableRow {
    int d = 0;
    std::string formalism;
    std::string family;
    std::string closed_form;
    int expected_order = 0;
    int expected_cost = 0;
    // computed
    int order = 0;
    int cost = 0;
    double distance = 0;  // to the closed form, up to phase
    bool match = false;
};

/// Resource table rows (d = 2, 3 ring; d = 4 field; CX at d = 5) recomputed.
std::vector<TableRow> table_rows(int corrupt_row = -1);

}  // namespace qmbqc

#endif
