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

#include "qcrit/criteria.h"

#include "gtest/gtest.h"

#include "oracles.test.h"
#include "test_util.test.h"

using namespace qcrit;

TEST(criteria, variational_distance_outer_join) {
    ProbDist p({"a", "b"}, {0.5, 0.5});
    ProbDist q({"b", "c"}, {0.5, 0.5});
    ASSERT_DOUBLE_EQ(variational_distance(p, q), 0.5);
    ASSERT_EQ(variational_distance(p, p), 0.0);
}

TEST(criteria, variational_distance_equals_max_event_gap) {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 2 + rng() % 9;
        auto a = oracle::random_simplex(rng, n);
        auto b = oracle::random_simplex(rng, n);
        std::vector<std::string> labels;
        for (size_t i = 0; i < n; i++) {
            labels.push_back(std::to_string(i));
        }
        double d = variational_distance(ProbDist(labels, a), ProbDist(labels, b));
        ASSERT_NEAR(d, oracle::max_event_gap_bruteforce(a, b), 1e-12);
        ASSERT_NEAR(d, oracle::variational_distance_dense(a, b), 1e-12);
    }
}

TEST(criteria, d_forms_agree_and_match_direct_sum) {
    oracle::Rng rng(32);
    for (int trial = 0; trial < 60; trial++) {
        int n = 1 + static_cast<int>(rng() % 3);
        Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 4);
        auto e = oracle::random_ensemble(rng, n, dim, trial % 2 == 0);
        double avg = criterion_d_averaged(e);
        ASSERT_NEAR(criterion_d_entangled(e), avg, 1e-9);
        ASSERT_NEAR(avg, oracle::criterion_d_direct(e), 1e-10);
        ASSERT_GE(avg, 0.0);
        ASSERT_LE(avg, 1.0);
    }
}

TEST(criteria, single_bit_pure_d) {
    for (int i = 0; i <= 20; i++) {
        double c = i / 20.0;
        auto e = single_bit_pure_example(c);
        ASSERT_NEAR(criterion_d_averaged(e), 0.5 * std::sqrt(1 - c * c), 1e-12) << c;
    }
}

TEST(criteria, identical_probes_give_zero) {
    oracle::Rng rng(33);
    auto rho = oracle::random_density(rng, 3);
    CqEnsemble e(2, ProbDist::uniform(all_keys(2)), {rho, rho, rho, rho});
    ASSERT_NEAR(criterion_d_averaged(e), 0.0, 1e-15);
    ASSERT_NEAR(criterion_d_entangled(e), 0.0, 1e-12);
}

TEST(criteria, entangled_too_large) {
    std::vector<DensityOperator> probes(64, maximally_mixed(8));
    CqEnsemble e(6, ProbDist::uniform(all_keys(6)), probes);
    ASSERT_EQ(code_of([&] { criterion_d_entangled(e); }), ErrorCode::TooLarge);
    auto r = criterion_report(e, 0.1);
    ASSERT_TRUE(std::isnan(r.d_entangled));
    ASSERT_EQ(r.d_averaged, 0.0);
}

TEST(criteria, report_fields) {
    auto e = single_bit_pure_example(0.0);
    auto r = criterion_report(e, 0.5);
    ASSERT_NEAR(r.d_averaged, 0.5, 1e-12);
    ASSERT_NEAR(r.d_max, 0.5, 1e-12);
    ASSERT_NEAR(r.d_k_unhalved.at("0"), 1.0, 1e-12);
    auto j = to_json(r);
    ASSERT_TRUE(j.contains("d_entangled"));
    ASSERT_TRUE(j.contains("d_k_unhalved"));
}

TEST(criteria, pairwise_bound_triangle) {
    oracle::Rng rng(34);
    for (int trial = 0; trial < 30; trial++) {
        auto e = oracle::random_ensemble(rng, 2, 2, true);
        double eps = 0;
        for (const auto &[k, v] : d_k_per_key(e)) {
            eps = std::max(eps, v);
        }
        auto b = pairwise_distance_bound(e, eps);
        ASSERT_TRUE(b.premise_holds);
        ASSERT_TRUE(b.holds);
        ASSERT_LE(b.worst_value, 2 * eps + 1e-9);
    }
}

TEST(criteria, classical_dbar_identity) {
    oracle::Rng rng(35);
    for (int trial = 0; trial < 50; trial++) {
        size_t keys = 2 + rng() % 4;
        size_t outcomes = 2 + rng() % 5;
        Eigen::MatrixXd m(keys, outcomes);
        for (size_t k = 0; k < keys; k++) {
            auto row = oracle::random_simplex(rng, outcomes);
            for (size_t o = 0; o < outcomes; o++) {
                m(k, o) = row[o] / static_cast<double>(keys);
            }
        }
        std::vector<std::string> rows, cols;
        for (size_t k = 0; k < keys; k++) {
            rows.push_back("k" + std::to_string(k));
        }
        for (size_t o = 0; o < outcomes; o++) {
            cols.push_back("o" + std::to_string(o));
        }
        JointDistribution j(rows, cols, m);
        ASSERT_NEAR(classical_dbar(j), oracle::expected_row_deviation(m), 1e-12);
    }
    Eigen::MatrixXd skew(2, 1);
    skew << 0.7, 0.3;
    ASSERT_EQ(code_of([&] { classical_dbar(JointDistribution({"a", "b"}, {"x"}, skew)); }),
              ErrorCode::NonUniformPrior);
}

TEST(criteria, classical_dbar_below_quantum_d) {
    oracle::Rng rng(36);
    for (int trial = 0; trial < 40; trial++) {
        Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 2);
        auto e = oracle::random_ensemble(rng, 2, dim, true);
        auto povm = oracle::random_povm(rng, dim, 2 + rng() % 4);
        ASSERT_LE(classical_dbar(measure_ensemble(e, povm)), criterion_d_averaged(e) + 1e-9);
    }
}

TEST(criteria, event_deviation_matches_direct) {
    oracle::Rng rng(37);
    for (int trial = 0; trial < 10; trial++) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto probs = oracle::random_simplex(rng, size_t{1} << n);
        ProbDist p(all_keys(n), probs);
        std::vector<double> u(probs.size(), std::ldexp(1.0, -n));
        double delta = oracle::variational_distance_dense(probs, u);
        for (int m = 1; m <= n; m++) {
            auto dev = event_deviation_bound(p, m);
            ASSERT_NEAR(dev.max_dev, oracle::event_deviation_direct(probs, n, m), 1e-12);
            ASSERT_LE(dev.max_dev, delta + 1e-15);
            ASSERT_EQ(dev.positions.size(), static_cast<size_t>(m));
            ASSERT_EQ(dev.pattern.size(), static_cast<size_t>(m));
        }
    }
    ASSERT_EQ(code_of([] { event_deviation_bound(ProbDist(all_keys(2), {0.25, 0.25, 0.25, 0.25}), 0); }),
              ErrorCode::BadParams);
}

TEST(criteria, spiked_event_deviation_closed_form) {
    for (auto [n, l] : std::vector<std::pair<int, int>>{{4, 1}, {6, 2}, {8, 3}, {8, 8}, {5, 0}}) {
        SpikedDistribution s(n, l);
        auto dense = s.to_dense();
        for (int m = 1; m <= n; m++) {
            ASSERT_NEAR(event_deviation_bound(s, m).max_dev, oracle::event_deviation_direct(dense.probs(), n, m),
                        1e-12)
                << n << "," << l << "," << m;
        }
    }
    ASSERT_EQ(event_deviation_bound(SpikedDistribution(8, 3), 8).max_dev, 0.12109375);
}

TEST(criteria, delta_E_presets) {
    Povm ab = Povm::from_basis(ComplexMatrix::Identity(2, 2), {"a", "b"});
    auto sigma = bloch_state(0, 0, 1);

    auto orth = two_bit_pkl_example(sigma, bloch_state(0, 0, 1), bloch_state(0, 0, -1));
    Povm m1 = tensor(ab, Povm::eigenbasis(bloch_state(0, 0, 1).matrix() - bloch_state(0, 0, -1).matrix(),
                                          {"e+", "e-"}));
    auto v = delta_E_variants(orth, m1);
    ASSERT_NEAR(criterion_d_averaged(orth), 0.5, 1e-12);
    ASSERT_NEAR(v.joint_vs_product_uniform, 0.75, 1e-12);
    ASSERT_NEAR(v.max_posterior_dev, 0.5, 1e-12);

    auto r1 = diagonal_state(std::vector<double>{0.6, 0.4});
    auto r2 = diagonal_state(std::vector<double>{0.1, 0.9});
    auto mixed = two_bit_pkl_example(sigma, r1, r2);
    Povm m2 = tensor(ab, Povm::eigenbasis(r1.matrix() - r2.matrix(), {"e+", "e-"}));
    auto w = delta_E_variants(mixed, m2);
    ASSERT_NEAR(criterion_d_averaged(mixed), 0.25, 1e-12);
    ASSERT_NEAR(w.max_posterior_dev, 5.0 / 14.0, 1e-12);
    ASSERT_NEAR(w.joint_vs_product_uniform, 0.575, 1e-12);
    ASSERT_NEAR(w.avg_posterior_dev, classical_dbar(measure_ensemble(mixed, m2)), 1e-12);
}

TEST(criteria, decomposition_fallacy) {
    // p = (1 - eps) q + eps p' exists when p dominates (1 - eps) q pointwise.
    ProbDist q({"a", "b"}, {0.5, 0.5});
    ProbDist p({"a", "b"}, {0.6, 0.4});
    ASSERT_TRUE(decomposition_fallacy_check(p, q, 0.2));
    ProbDist r({"a", "b", "c"}, {0.5, 0.5, 0.0});
    ProbDist s({"a", "b", "c"}, {0.45, 0.45, 0.1});
    // delta(r, s) = 0.1, yet r puts no mass where s has 0.1.
    ASSERT_FALSE(decomposition_fallacy_check(r, s, 0.1 + 1e-9));
    ASSERT_TRUE(decomposition_fallacy_check(r, s, 1.0));
    ASSERT_EQ(code_of([&] { decomposition_fallacy_check(p, q, 0.05); }), ErrorCode::BadParams);
}
