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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "qcrit/error.h"

namespace qcrit {

namespace {

constexpr uint64_t kMaxEvents = uint64_t{1} << 24;

uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    uint64_t r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
    }
    return r;
}

// Advances `idx` to the next m-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<int> &idx, int n) {
    int m = static_cast<int>(idx.size());
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) {
        i--;
    }
    if (i < 0) {
        return false;
    }
    idx[i]++;
    for (int j = i + 1; j < m; j++) {
        idx[j] = idx[j - 1] + 1;
    }
    return true;
}

std::vector<double> unhalved_deviations(const CqEnsemble &e, const DensityOperator &avg) {
    std::vector<double> out;
    out.reserve(e.size());
    for (const auto &probe : e.probes()) {
        out.push_back(trace_norm(probe.matrix() - avg.matrix()));
    }
    return out;
}

double uniform_deviation(const ProbDist &p) {
    double u = 1.0 / static_cast<double>(p.size());
    double acc = 0;
    for (double x : p.probs()) {
        acc += std::abs(x - u);
    }
    return 0.5 * acc;
}

}  // namespace

double variational_distance(const ProbDist &p, const ProbDist &q) {
    std::map<std::string_view, std::pair<double, double>> merged;
    for (size_t i = 0; i < p.size(); i++) {
        merged[p.labels()[i]].first += p.probs()[i];
    }
    for (size_t i = 0; i < q.size(); i++) {
        merged[q.labels()[i]].second += q.probs()[i];
    }
    double acc = 0;
    for (const auto &[label, pq] : merged) {
        acc += std::abs(pq.first - pq.second);
    }
    return 0.5 * acc;
}

double criterion_d_averaged(const CqEnsemble &e) {
    DensityOperator avg = average_probe(e);
    std::vector<double> dk = unhalved_deviations(e, avg);
    double acc = 0;
    for (size_t k = 0; k < e.size(); k++) {
        acc += e.prior().probs()[k] * dk[k];
    }
    return 0.5 * acc;
}

double criterion_d_entangled(const CqEnsemble &e) {
    Eigen::Index keys = static_cast<Eigen::Index>(e.size());
    Eigen::Index d = e.probe_dim();
    if (keys * d > kMaxJointDim) {
        std::ostringstream ss;
        ss << "joint operator dimension " << keys * d << " exceeds " << kMaxJointDim;
        throw Error(ErrorCode::TooLarge, ss.str());
    }
    ComplexMatrix joint = ComplexMatrix::Zero(keys * d, keys * d);
    ComplexMatrix key_marginal = ComplexMatrix::Zero(keys, keys);
    for (Eigen::Index k = 0; k < keys; k++) {
        double pk = e.prior().probs()[k];
        ComplexMatrix ket_bra = ComplexMatrix::Zero(keys, keys);
        ket_bra(k, k) = 1;
        joint += tensor(ket_bra, pk * e.probe(k).matrix());
        key_marginal(k, k) = pk;
    }
    ComplexMatrix ideal = tensor(key_marginal, average_probe(e).matrix());
    return 0.5 * trace_norm(joint - ideal);
}

std::map<std::string, double> d_k_per_key(const CqEnsemble &e) {
    std::vector<double> dk = unhalved_deviations(e, average_probe(e));
    std::map<std::string, double> out;
    for (size_t k = 0; k < e.size(); k++) {
        out[e.keys()[k]] = dk[k];
    }
    return out;
}

CriterionReport criterion_report(const CqEnsemble &e, double epsilon) {
    CriterionReport r{};
    r.d_averaged = criterion_d_averaged(e);
    r.d_entangled = static_cast<Eigen::Index>(e.size()) * e.probe_dim() <= kMaxJointDim
                        ? criterion_d_entangled(e)
                        : std::numeric_limits<double>::quiet_NaN();
    r.d_k_unhalved = d_k_per_key(e);
    r.d_max = 0;
    for (const auto &[key, v] : r.d_k_unhalved) {
        r.d_max = std::max(r.d_max, 0.5 * v);
    }
    r.epsilon = epsilon;
    return r;
}

nlohmann::json to_json(const CriterionReport &r) {
    nlohmann::json j;
    if (std::isnan(r.d_entangled)) {
        j["d_entangled"] = nullptr;
    } else {
        j["d_entangled"] = r.d_entangled;
    }
    j["d_averaged"] = r.d_averaged;
    j["d_k_unhalved"] = r.d_k_unhalved;
    j["d_max"] = r.d_max;
    j["epsilon"] = r.epsilon;
    return j;
}

PairwiseBound pairwise_distance_bound(const CqEnsemble &e, double eps) {
    PairwiseBound out{true, true, {e.keys()[0], e.keys()[0]}, 0.0};
    for (size_t a = 0; a < e.size(); a++) {
        for (size_t b = a + 1; b < e.size(); b++) {
            double v = trace_norm(e.probe(a).matrix() - e.probe(b).matrix());
            if (v > out.worst_value) {
                out.worst_value = v;
                out.worst_pair = {e.keys()[a], e.keys()[b]};
            }
        }
    }
    for (const auto &[key, dk] : d_k_per_key(e)) {
        if (dk > eps + 1e-9) {
            out.premise_holds = false;
        }
    }
    out.holds = out.worst_value <= 2 * eps + 1e-9;
    return out;
}

double classical_dbar(const JointDistribution &joint) {
    const Eigen::MatrixXd &m = joint.mass();
    Eigen::VectorXd rows = m.rowwise().sum();
    double u = 1.0 / static_cast<double>(m.rows());
    for (Eigen::Index k = 0; k < m.rows(); k++) {
        if (std::abs(rows(k) - u) > 1e-9) {
            throw Error(ErrorCode::NonUniformPrior, "key marginal of the joint distribution is not uniform");
        }
    }
    Eigen::RowVectorXd q = m.colwise().sum();
    double acc = 0;
    for (Eigen::Index k = 0; k < m.rows(); k++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            acc += std::abs(m(k, c) - u * q(c));
        }
    }
    return 0.5 * acc;
}

EventDeviation event_deviation_bound(const ProbDist &p, int m) {
    int n = static_cast<int>(p.labels().front().size());
    if (m < 1 || m > n) {
        throw Error(ErrorCode::BadParams, "subsequence length must satisfy 1 <= m <= n");
    }
    if (n > 62 || binomial(n, m) > kMaxEvents || (binomial(n, m) << m) > kMaxEvents) {
        throw Error(ErrorCode::TooLarge, "dense event enumeration exceeds 2^24 events");
    }
    std::vector<uint64_t> index(p.size());
    for (size_t i = 0; i < p.size(); i++) {
        if (static_cast<int>(p.labels()[i].size()) != n) {
            throw Error(ErrorCode::BadParams, "labels must all be n-bit strings");
        }
        index[i] = key_index(p.labels()[i]);
    }

    EventDeviation best{-1.0, {}, {}};
    double target = std::ldexp(1.0, -m);
    std::vector<int> pos(m);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<double> hist(size_t{1} << m);
    do {
        std::fill(hist.begin(), hist.end(), 0.0);
        for (size_t i = 0; i < p.size(); i++) {
            uint64_t pattern = 0;
            for (int t = 0; t < m; t++) {
                pattern = (pattern << 1) | ((index[i] >> (n - 1 - pos[t])) & 1);
            }
            hist[pattern] += p.probs()[i];
        }
        for (size_t v = 0; v < hist.size(); v++) {
            double dev = std::abs(hist[v] - target);
            if (dev > best.max_dev) {
                best = {dev, pos, key_label(v, m)};
            }
        }
    } while (next_combination(pos, n));
    return best;
}

EventDeviation event_deviation_bound(const SpikedDistribution &p, int m) {
    int n = p.n_bits();
    if (m < 1 || m > n) {
        throw Error(ErrorCode::BadParams, "subsequence length must satisfy 1 <= m <= n");
    }
    double a = p.spike_mass();
    double b = p.atom_mass();
    double big_n = static_cast<double>(p.key_count());
    // Mass of a non-spike pattern minus 2^-m equals -shift, where
    // shift = 2^(n-m) (2^(n-l) - 1) / (N (N - 1)) >= 0.
    double shift = std::ldexp(1.0, n - m) * (std::ldexp(1.0, n - p.l()) - 1.0) / (big_n * (big_n - 1.0));
    double spike_dev = std::abs((a - b) - shift);
    std::vector<int> pos(m);
    std::iota(pos.begin(), pos.end(), 0);
    uint64_t spike_pattern = p.spike_index() >> (n - m);
    if (spike_dev >= shift) {
        return {spike_dev, pos, key_label(spike_pattern, m)};
    }
    return {shift, pos, key_label(spike_pattern ^ 1, m)};
}

DeltaEVariants delta_E_variants(const CqEnsemble &e, const Povm &povm) {
    if (povm.dim() != e.probe_dim()) {
        throw Error(ErrorCode::DimMismatch, "measurement and probe dimensions differ");
    }
    JointDistribution joint = measure_ensemble(e, povm);
    const Eigen::MatrixXd &m = joint.mass();
    DeltaEVariants out{};

    ProbDist outcomes = joint.col_marginal();
    out.outcome_vs_uniform = uniform_deviation(outcomes);

    double cell = 1.0 / static_cast<double>(m.rows() * m.cols());
    double acc = 0;
    for (Eigen::Index k = 0; k < m.rows(); k++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            acc += std::abs(m(k, c) - cell);
        }
    }
    out.joint_vs_product_uniform = 0.5 * acc;

    for (size_t c = 0; c < outcomes.size(); c++) {
        double q = outcomes.probs()[c];
        if (q <= 1e-15) {
            continue;
        }
        double dev = uniform_deviation(posterior(joint, outcomes.labels()[c]));
        out.max_posterior_dev = std::max(out.max_posterior_dev, dev);
        out.avg_posterior_dev += q * dev;
    }
    return out;
}

bool decomposition_fallacy_check(const ProbDist &p, const ProbDist &q, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::BadParams, "eps must lie in [0, 1]");
    }
    if (variational_distance(p, q) > eps + 1e-12) {
        throw Error(ErrorCode::BadParams, "requires delta(p, q) <= eps");
    }
    for (size_t i = 0; i < q.size(); i++) {
        if (p.prob(q.labels()[i]) < (1.0 - eps) * q.probs()[i] - 1e-12) {
            return false;
        }
    }
    return true;
}

}  // namespace qcrit
