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

// Acceptance suite. Each check prints one line "PASS|FAIL <id> <name>: <detail>"
// and the process exits nonzero if any check fails.

#include <boost/rational.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles.test.h"
#include "qcrit/bounds.h"
#include "qcrit/coupling.h"
#include "qcrit/criteria.h"
#include "qcrit/discrimination.h"
#include "qcrit/ensembles.h"
#include "qcrit/experiments.h"
#include "qcrit/sidechannel.h"

using namespace qcrit;
using oracle::Rng;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

Outcome d_forms_agree() {
    Rng rng(1001);
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + static_cast<int>(rng() % 3);
        Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 4);
        auto e = oracle::random_ensemble(rng, n, dim, trial % 4 != 0);
        worst = std::max(worst, std::abs(criterion_d_entangled(e) - criterion_d_averaged(e)));
    }
    return {worst <= 1e-9, "max |d_entangled - d_averaged| = " + num(worst) + " over 100 ensembles"};
}

Outcome two_bit_quarter_norm() {
    Rng rng(1002);
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        auto sigma = oracle::random_density(rng, 2);
        auto r1 = oracle::random_density(rng, 2);
        auto r2 = oracle::random_density(rng, 2);
        double d = criterion_d_averaged(two_bit_pkl_example(sigma, r1, r2));
        // ||rho1 - rho2||_1 is the Euclidean Bloch distance.
        double expected = 0.25 * (oracle::bloch_vector(r1) - oracle::bloch_vector(r2)).norm();
        worst = std::max(worst, std::abs(d - expected));
    }
    return {worst <= 1e-9, "max |d - ||rho1 - rho2||_1 / 4| = " + num(worst) + " over 100 instances"};
}

Outcome single_bit_violation() {
    double worst = 0;
    bool positive = true;
    for (int i = 0; i <= 20; i++) {
        double c = i / 20.0;
        auto e = single_bit_pure_example(c);
        double d = criterion_d_averaged(e);
        double success = helstrom_binary(e.probe(0), e.probe(1), 0.5).p_success;
        double margin = success - hypothesis_ii_cap(d);
        worst = std::max(worst, std::abs(success - (0.5 + d)));
        worst = std::max(worst, std::abs(margin - d / 2));
        if (c < 1 && !(margin > 0)) {
            positive = false;
        }
    }
    return {worst <= 1e-9 && positive,
            "max deviation from success = 1/2 + d and margin = d/2: " + num(worst) +
                (positive ? ", margin > 0 for all c < 1" : ", margin not positive somewhere")};
}

Outcome two_bit_post_leak() {
    Rng rng(1004);
    double worst = 0;
    int violations = 0, eligible = 0;
    for (int trial = 0; trial < 100; trial++) {
        auto sigma = oracle::random_density(rng, 2, 1 + static_cast<Eigen::Index>(rng() % 2));
        auto r1 = oracle::random_density(rng, 2, 1 + static_cast<Eigen::Index>(rng() % 2));
        auto r2 = trial % 10 == 0 ? r1 : oracle::random_density(rng, 2);
        auto e = two_bit_pkl_example(sigma, r1, r2);
        auto res = post_leak_discrimination(e, LeakSpec{{0}, {static_cast<int>(rng() & 1)}});
        worst = std::max(worst, std::abs(res.p_success - (0.5 + res.d_full)));
        if (oracle::trace_norm_svd(r1.matrix() - r2.matrix()) > 1e-6) {
            eligible++;
            violations += res.p_success > res.mixture_cap ? 1 : 0;
        }
    }
    return {worst <= 1e-9 && violations == eligible, "max |success - (1/2 + d)| = " + num(worst) + ", cap exceeded in " +
                                                         std::to_string(violations) + "/" + std::to_string(eligible)};
}

Outcome coupling_counterexample() {
    bool exact = true;
    for (int64_t n : {2, 4, 256, 65536}) {
        ProbDist u = ProbDist::uniform_indexed(static_cast<size_t>(n));
        double got = mismatch_probability(independent_coupling(u, u));
        boost::rational<int64_t> expected = 1 - boost::rational<int64_t>(1, n);
        exact = exact && got == boost::rational_cast<double>(expected) && variational_distance(u, u) == 0.0;
    }
    Rng rng(1005);
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 2 + rng() % 12;
        std::vector<std::string> labels;
        for (size_t i = 0; i < n; i++) {
            labels.push_back(std::to_string(i));
        }
        ProbDist p(labels, oracle::random_simplex(rng, n));
        ProbDist q(labels, oracle::random_simplex(rng, n));
        worst = std::max(worst, std::abs(mismatch_probability(maximal_coupling(p, q)) - variational_distance(p, q)));
    }
    return {exact && worst <= 1e-12, std::string(exact ? "independent mismatch = 1 - 1/N exactly" : "inexact mismatch") +
                                         ", max |maximal mismatch - delta| = " + num(worst)};
}

Outcome delta_e_presets() {
    auto orth = run_experiment("cex_iii", {{"preset", "orthogonal"}}, 0).results;
    auto mixed = run_experiment("cex_iii", {{"preset", "mixed"}}, 0).results;
    double oj = orth["joint_vs_product_uniform"], od = orth["d"];
    double mp = mixed["max_posterior_dev"], md = mixed["d"];
    bool ok = std::abs(oj - 0.75) <= 1e-12 && std::abs(od - 0.5) <= 1e-12 && oj > od &&
              std::abs(mp - 5.0 / 14.0) <= 1e-12 && std::abs(md - 0.25) <= 1e-12 && mp > md;
    return {ok, "orthogonal joint " + num(oj) + " vs d " + num(od) + "; mixed max posterior " + num(mp) + " vs d " +
                    num(md)};
}

Outcome classical_identity() {
    Rng rng(1007);
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        size_t keys = 2 + rng() % 7;
        size_t outcomes = 2 + rng() % 7;
        Eigen::MatrixXd m(keys, outcomes);
        std::vector<std::string> rows, cols;
        for (size_t k = 0; k < keys; k++) {
            auto row = oracle::random_simplex(rng, outcomes);
            for (size_t o = 0; o < outcomes; o++) {
                m(k, o) = row[o] / static_cast<double>(keys);
            }
            rows.push_back("k" + std::to_string(k));
        }
        for (size_t o = 0; o < outcomes; o++) {
            cols.push_back("e" + std::to_string(o));
        }
        worst = std::max(worst,
                         std::abs(classical_dbar(JointDistribution(rows, cols, m)) - oracle::expected_row_deviation(m)));
    }
    int below = 0;
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + static_cast<int>(rng() % 2);
        Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 3);
        auto e = oracle::random_ensemble(rng, n, dim, true);
        auto povm = oracle::random_povm(rng, dim, 2 + rng() % 5);
        below += classical_dbar(measure_ensemble(e, povm)) <= criterion_d_averaged(e) + 1e-9 ? 1 : 0;
    }
    return {worst <= 1e-12 && below == 100, "max |dbar - E_k delta| = " + num(worst) + ", dbar <= d in " +
                                                std::to_string(below) + "/100"};
}

Outcome event_deviation() {
    Rng rng(1008);
    int n = 10;
    int held = 0;
    for (int trial = 0; trial < 50; trial++) {
        auto probs = oracle::random_simplex(rng, size_t{1} << n);
        ProbDist p(all_keys(n), probs);
        double delta = variational_distance(p, ProbDist::uniform(all_keys(n)));
        bool ok = true;
        for (int m = 1; m <= n; m++) {
            ok = ok && event_deviation_bound(p, m).max_dev <= delta;
        }
        held += ok ? 1 : 0;
    }
    double spiked = event_deviation_bound(SpikedDistribution(8, 3), 8).max_dev;
    return {held == 50 && spiked == 0.12109375,
            "deviation <= delta for " + std::to_string(held) + "/50 distributions, spiked(8,3) = " + num(spiked)};
}

Outcome spiked_summation() {
    std::string detail;
    bool ok = true;
    for (auto [n, l] : std::vector<std::pair<int, int>>{{8, 3}, {16, 8}, {30, 20}}) {
        SpikedDistribution p(n, l);
        double u = std::ldexp(1.0, -n);
        double sum = 0, comp = 0;
        for (uint64_t i = 0; i < p.key_count(); i++) {
            double x = std::abs(p.mass(i) - u);
            double t = sum + x;
            comp += std::abs(sum) >= x ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
        double summed = 0.5 * (sum + comp);
        double analytic = p.variational_distance_to_uniform();
        double diff = std::abs(summed - analytic);
        bool p1 = p.max_mass() == std::ldexp(1.0, -l);
        ok = ok && diff <= 1e-12 && p1 && analytic == std::ldexp(1.0, -l) - u;
        detail += "(" + std::to_string(n) + "," + std::to_string(l) + "): |diff| " + num(diff) + (p1 ? "" : " p1 off") +
                  "; ";
    }
    return {ok, detail};
}

Outcome toeplitz() {
    auto f = singular_fraction(2, 2, SingularMode::exhaustive());
    Rng rng(1010);
    int mismatches = 0, checked = 0;
    for (size_t n = 1; n <= 12; n++) {
        for (size_t m = 1; m <= n; m++) {
            for (int s = 0; s < 200; s++) {
                std::vector<uint8_t> seed(m + n - 1);
                for (auto &b : seed) {
                    b = static_cast<uint8_t>(rng() & 1);
                }
                Gf2Matrix t = toeplitz_from_seed(seed, m, n);
                auto dense = oracle::toeplitz_dense(seed, m, n);
                // Shannon entropy of the output histogram over all 2^n inputs.
                std::map<uint64_t, uint64_t> hist;
                for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
                    uint64_t y = 0;
                    for (size_t i = 0; i < m; i++) {
                        int bit = 0;
                        for (size_t j = 0; j < n; j++) {
                            bit ^= dense[i][j] & static_cast<int>((x >> (n - 1 - j)) & 1);
                        }
                        y = (y << 1) | static_cast<uint64_t>(bit);
                    }
                    hist[y]++;
                }
                double h = 0;
                double total = std::ldexp(1.0, static_cast<int>(n));
                for (const auto &[y, c] : hist) {
                    double q = static_cast<double>(c) / total;
                    h -= q * std::log2(q);
                }
                double deficit = static_cast<double>(m) - h;
                mismatches += std::abs(deficit - static_cast<double>(pac_leakage(t))) > 1e-9 ? 1 : 0;
                checked++;
            }
        }
    }
    return {f.fraction == 0.5 && mismatches == 0,
            "2x2 singular fraction " + num(f.fraction) + ", leakage mismatches " + std::to_string(mismatches) + "/" +
                std::to_string(checked)};
}

Outcome ecc() {
    RegionCensus h = decision_region_census(hamming74(), DecodeRule::Syndrome);
    bool equal = h.region_sizes.size() == 16;
    for (const auto &[msg, size] : h.region_sizes) {
        equal = equal && size == 8;
    }
    double b52 = decision_region_census(code52(), DecodeRule::MinDistanceFirstTiebreak).bias_delta;
    return {equal && h.bias_delta == 0.0 && b52 > 0,
            "Hamming(7,4) 16 regions of 8: " + std::string(equal ? "yes" : "no") + ", bias " + num(h.bias_delta) +
                "; (5,2) bias " + num(b52)};
}

Outcome markov_and_table() {
    bool markov = markov_bound(0.25, 0.5) == 0.5 && markov_bound(3, 2) == 1.0 && markov_bound(0.001, 0.01) == 0.1;
    double eps = 1e-5, delta = std::ldexp(1.0, -16);
    auto chained = chained_individual_guarantee(eps, delta, 2);
    bool chain = chained.required_average == eps * delta * delta;
    GuaranteeScenario s{1000, 20, 100, std::ldexp(1.0, -20), delta};
    double log2_ratio = uniform_comparison_table(s).front().log2_ratio;
    return {markov && chain && std::abs(log2_ratio - 80.0) <= 1e-9,
            "markov exact: " + std::string(markov ? "yes" : "no") + ", eps*delta^2 = " + num(chained.required_average) +
                ", log2 ratio " + num(log2_ratio)};
}

#ifdef QCRIT_CLI_PATH
std::string cli_output(const std::string &args) {
    std::string cmd = std::string(QCRIT_CLI_PATH) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, n);
    }
    pclose(pipe);
    return out;
}
#endif

Outcome determinism() {
    int identical = 0, total = 0;
    for (const auto &name : experiment_names()) {
        for (uint64_t seed : {0ull, 7ull, 0xfedcba9876543210ull}) {
            total++;
            std::string a = canonical_json(run_experiment(name, nlohmann::json::object(), seed));
            std::string b = canonical_json(run_experiment(name, nlohmann::json::object(), seed));
            bool same = a == b;
#ifdef QCRIT_CLI_PATH
            std::string args = "--experiment " + name + " --seed " + std::to_string(seed);
            std::string c = cli_output(args);
            same = same && c == a && cli_output(args) == c;
#endif
            identical += same ? 1 : 0;
        }
    }
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                    " (experiment, seed) reruns byte-identical"};
}

}  // namespace

int main() {
    struct Check {
        const char *name;
        std::function<Outcome()> fn;
    };
    std::vector<Check> checks = {
        {"d forms agree", d_forms_agree},
        {"two-bit d equals quarter trace norm", two_bit_quarter_norm},
        {"single-bit success exceeds mixture cap by d/2", single_bit_violation},
        {"two-bit post-leak success is 1/2 + d", two_bit_post_leak},
        {"coupling mismatch vs variational distance", coupling_counterexample},
        {"delta_E variants exceed d on presets", delta_e_presets},
        {"classical dbar identity and data processing", classical_identity},
        {"event deviation bounded by variational distance", event_deviation},
        {"spiked deviation closed form matches summation", spiked_summation},
        {"Toeplitz singular fraction and leakage", toeplitz},
        {"decision-region census", ecc},
        {"Markov arithmetic and comparison table", markov_and_table},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < checks.size(); i++) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = checks[i].fn();
        } catch (const std::exception &ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.ok ? "PASS" : "FAIL", i + 1, checks[i].name, o.detail.c_str(), secs);
        failed += o.ok ? 0 : 1;
    }
    std::printf("%zu/%zu acceptance checks passed\n", checks.size() - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
