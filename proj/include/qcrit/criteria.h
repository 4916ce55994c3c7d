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

#ifndef _QCRIT_CRITERIA_H
#define _QCRIT_CRITERIA_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcrit/discrimination.h"
#include "qcrit/ensembles.h"

namespace qcrit {

/// delta(P, Q) = 1/2 sum_x |P(x) - Q(x)|, over the union of both label sets.
double variational_distance(const ProbDist &p, const ProbDist &q);

/// d = 1/2 sum_k p_k ||rho_E^k - rho_E||_1.
double criterion_d_averaged(const CqEnsemble &e);

inline constexpr Eigen::Index kMaxJointDim = 256;

/// d = 1/2 ||rho_KE - rho_K ⊗ rho_E||_1 on the materialized joint operator,
/// where rho_K is the key marginal (the uniform state under a uniform prior).
/// Throws TooLarge when 2^n * probe_dim exceeds 256.
double criterion_d_entangled(const CqEnsemble &e);

/// ||rho_E^k - rho_E||_1 per key (no factor 1/2).
std::map<std::string, double> d_k_per_key(const CqEnsemble &e);

struct CriterionReport {
    double d_entangled;
    double d_averaged;
    std::map<std::string, double> d_k_unhalved;
    /// max_k 1/2 ||rho_E^k - rho_E||_1, comparable with d_averaged.
    double d_max;
    double epsilon;
};

/// Computes every d form. d_entangled is NaN when the joint operator would
/// exceed kMaxJointDim.
CriterionReport criterion_report(const CqEnsemble &e, double epsilon);
nlohmann::json to_json(const CriterionReport &r);

struct PairwiseBound {
    /// Every pairwise ||rho_E^k1 - rho_E^k2||_1 is at most 2 eps (1e-9 slack).
    bool holds;
    /// Every per-key d_k is at most eps (1e-9 slack).
    bool premise_holds;
    std::pair<std::string, std::string> worst_pair;
    double worst_value;
};

PairwiseBound pairwise_distance_bound(const CqEnsemble &e, double eps);

/// delta(P_kk', U_k Q_k') with Q the outcome marginal. Throws
/// NonUniformPrior unless the key marginal is uniform within 1e-9.
double classical_dbar(const JointDistribution &joint);

struct EventDeviation {
    double max_dev;
    std::vector<int> positions;
    std::string pattern;
};

/// Largest |Pr[bits at positions == pattern] - 2^-m| over every m-subset of
/// positions and every pattern. Labels of `p` must be n-bit strings.
/// Throws TooLarge past 2^24 events.
EventDeviation event_deviation_bound(const ProbDist &p, int m);
/// Closed form for the spiked distribution; every m-subset behaves alike.
EventDeviation event_deviation_bound(const SpikedDistribution &p, int m);

struct DeltaEVariants {
    /// Outcome distribution vs uniform over the measurement's outcome set.
    double outcome_vs_uniform;
    /// delta(P_kk', U_k U_k').
    double joint_vs_product_uniform;
    /// max over outcomes of delta(posterior over keys, uniform keys).
    double max_posterior_dev;
    /// Outcome-weighted average of the posterior deviation.
    double avg_posterior_dev;
};

DeltaEVariants delta_E_variants(const CqEnsemble &e, const Povm &povm);

/// True iff p = (1 - eps) q + eps p' for some distribution p', i.e.
/// p(x) >= (1 - eps) q(x) everywhere. Requires delta(p, q) <= eps <= 1.
bool decomposition_fallacy_check(const ProbDist &p, const ProbDist &q, double eps);

}  // namespace qcrit

#endif
