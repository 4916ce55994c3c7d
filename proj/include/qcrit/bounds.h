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

#ifndef _QCRIT_BOUNDS_H
#define _QCRIT_BOUNDS_H

#include <span>
#include <string>
#include <vector>

#include "qcrit/qmath.h"

namespace qcrit {

/// Markov's inequality: Pr[X >= threshold] <= min(1, mean / threshold).
double markov_bound(double mean, double threshold);

struct IndividualGuarantee {
    /// eps * delta: the mean X must not exceed for Pr[X >= delta] <= eps.
    double required_average;
    double log2_required_average;
    /// How much tighter than the naive mean <= eps budget (= delta).
    double degradation_factor;
};

IndividualGuarantee average_for_individual_guarantee(double eps, double delta);

/// eps * delta^count, the budget after `count` chained individual guarantees.
IndividualGuarantee chained_individual_guarantee(double eps, double delta, int count);

/// Success cap 1/2 + d/2 implied by reading d as "ideal with probability 1 - d".
/// Throws BadRange unless d is in [0, 1/2].
double hypothesis_ii_cap(double d);

/// 1/2 + (d/4) ||sigma0 - sigma1||_1, the success under the mixture reading
/// with a concrete block-diagonal sigma_KE.
double hypothesis_ii_exact(const DensityOperator &sigma0, const DensityOperator &sigma1, double d);

struct GuaranteeScenario {
    int n;
    int l;
    int m;
    double epsilon;
    double delta_target;
};

/// n = 1000 (n0 = 1e4 at rate 0.1), eps = 1e-5, l = 16, m = 100, delta_target = 2^-16.
GuaranteeScenario bb84_reference_scenario();

struct ComparisonRow {
    int m;
    double uniform_prob;
    double log2_uniform_prob;
    /// 2^-m + eps: the m-subsequence probability a d-certified key may reach.
    double d_guarantee_bound;
    double log2_d_guarantee_bound;
    /// 2^-l: the whole-key guessing probability of the spiked distribution.
    double spiked_worst;
    double log2_spiked_worst;
    /// d_guarantee_bound / uniform_prob.
    double ratio;
    double log2_ratio;
};

/// One row per entry of `ms` (each must satisfy 0 < m <= n). Values are
/// computed in the log2 domain; linear fields may underflow to 0.
std::vector<ComparisonRow> uniform_comparison_table(const GuaranteeScenario &s, std::span<const int> ms);
std::vector<ComparisonRow> uniform_comparison_table(const GuaranteeScenario &s);

std::vector<std::string> comparison_header();
std::vector<std::vector<std::string>> comparison_cells(const std::vector<ComparisonRow> &rows);
std::string comparison_to_csv(const std::vector<ComparisonRow> &rows);
std::string comparison_to_markdown(const std::vector<ComparisonRow> &rows);

/// log2(2^a + 2^b), exact for -inf arguments.
double log2_add(double a, double b);

}  // namespace qcrit

#endif
