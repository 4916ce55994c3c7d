// Copyright 2026 The qcrit Authors
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

#ifndef _QCRIT_EXPERIMENTS_H
#define _QCRIT_EXPERIMENTS_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcrit/qmath.h"

namespace qcrit {

std::string_view version();

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view verdict_name(Verdict v);
Verdict verdict_from_name(std::string_view name);

struct VerdictEntry {
    /// Stable identifier of the relation being checked.
    std::string relation;
    Verdict status;
    std::string detail;

    bool operator==(const VerdictEntry &) const = default;
};

struct ExperimentReport {
    std::string experiment;
    std::string version;
    /// Effective parameters, defaults filled in.
    nlohmann::json params;
    uint64_t seed = 0;
    /// Object of named results (numbers, or nested objects/arrays).
    nlohmann::json results;
    std::vector<VerdictEntry> verdicts;
    /// Wall time; never part of the canonical form.
    double elapsed_ms = 0;

    bool operator==(const ExperimentReport &) const = default;
};

/// True iff every verdict is PASS or NOT-APPLICABLE.
bool verdicts_ok(const ExperimentReport &r);

nlohmann::json to_json(const ExperimentReport &r, bool include_timing = false);
/// Throws ParseError on malformed input.
ExperimentReport report_from_json(const nlohmann::json &j);
/// Sorted-key, two-space-indented JSON without timing, newline terminated.
std::string canonical_json(const ExperimentReport &r);
std::string report_to_csv(const ExperimentReport &r);
std::string report_to_markdown(const ExperimentReport &r);

/// Experiments runnable through run_experiment (sweep is separate).
std::vector<std::string> experiment_names();

/// Throws UnknownExperiment for unregistered names, ParseError for bad
/// parameter documents, and module errors otherwise.
ExperimentReport run_experiment(const std::string &name, const nlohmann::json &params, uint64_t seed);

/// Scalar result columns an experiment contributes to a sweep row.
std::vector<std::string> sweep_columns(const std::string &name);

/// Runs `target` on the Cartesian product of `grid` (object of name -> array,
/// keys in sorted order, last key varying fastest) merged over `fixed`. Row i
/// uses seed + i. Rows are computed on up to `threads` workers and emitted in
/// grid order. Columns: index, grid keys, sweep_columns(target), verdict.
std::string run_sweep_csv(const std::string &target, const nlohmann::json &grid, const nlohmann::json &fixed,
                          uint64_t seed, unsigned threads = 0);

/// Qubit state from a JSON description: "0", "1", "+", "-", "+i", "-i", "mixed",
/// {"bloch": [x, y, z]}, {"diag": [a, b]} or {"matrix": [[...], [...]]}.
DensityOperator parse_qubit_state(const nlohmann::json &desc);

}  // namespace qcrit

#endif
