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

#include "qcrit/ensembles.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qcrit/error.h"

namespace qcrit {

ProbDist::ProbDist(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    if (labels_.size() != probs_.size() || probs_.empty()) {
        throw Error(ErrorCode::InvalidDistribution, "need one nonempty label per probability");
    }
    double total = 0;
    for (double p : probs_) {
        if (!(p >= 0) || !std::isfinite(p)) {
            throw Error(ErrorCode::InvalidDistribution, "negative or non-finite probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream ss;
        ss << "probabilities sum to " << total;
        throw Error(ErrorCode::InvalidDistribution, ss.str());
    }
    std::set<std::string_view> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
        throw Error(ErrorCode::InvalidDistribution, "duplicate labels");
    }
}

ProbDist ProbDist::uniform(std::vector<std::string> labels) {
    std::vector<double> probs(labels.size(), labels.empty() ? 0.0 : 1.0 / static_cast<double>(labels.size()));
    return ProbDist(std::move(labels), std::move(probs));
}

ProbDist ProbDist::uniform_indexed(size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (size_t i = 0; i < n; i++) {
        labels.push_back(std::to_string(i));
    }
    return uniform(std::move(labels));
}

std::optional<size_t> ProbDist::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<size_t>(it - labels_.begin());
}

double ProbDist::prob(std::string_view label) const {
    auto i = index_of(label);
    return i ? probs_[*i] : 0.0;
}

std::string key_label(uint64_t index, int n_bits) {
    std::string s(n_bits, '0');
    for (int j = 0; j < n_bits; j++) {
        if ((index >> (n_bits - 1 - j)) & 1) {
            s[j] = '1';
        }
    }
    return s;
}

uint64_t key_index(std::string_view label) {
    uint64_t v = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::ParseError, "key label must be a bit string");
        }
        v = (v << 1) | static_cast<uint64_t>(c == '1');
    }
    return v;
}

std::vector<std::string> all_keys(int n_bits) {
    if (n_bits < 0 || n_bits > 20) {
        throw Error(ErrorCode::TooLarge, "key enumeration supports at most 20 bits");
    }
    std::vector<std::string> out;
    out.reserve(size_t{1} << n_bits);
    for (uint64_t i = 0; i < (uint64_t{1} << n_bits); i++) {
        out.push_back(key_label(i, n_bits));
    }
    return out;
}

CqEnsemble::CqEnsemble(int n_bits, ProbDist prior, std::vector<DensityOperator> probes)
    : n_bits_(n_bits), prior_(std::move(prior)), probes_(std::move(probes)) {
    if (n_bits_ < 0 || n_bits_ > 16) {
        throw Error(ErrorCode::TooLarge, "ensembles support at most 16 key bits");
    }
    if (prior_.labels() != all_keys(n_bits_)) {
        throw Error(ErrorCode::BadParams, "prior labels must be the lexicographic n-bit keys");
    }
    if (probes_.size() != prior_.size()) {
        throw Error(ErrorCode::DimMismatch, "need one probe per key value");
    }
    for (const auto &p : probes_) {
        if (p.dim() != probes_.front().dim()) {
            throw Error(ErrorCode::DimMismatch, "probe dimensions differ");
        }
    }
}

DensityOperator uniform_key_state(int n_bits) {
    if (n_bits < 0 || n_bits > kMaxUniformKeyBits) {
        throw Error(ErrorCode::TooLarge, "uniform key state limited to 6 bits (dim 64)");
    }
    return maximally_mixed(Eigen::Index{1} << n_bits);
}

DensityOperator average_probe(const CqEnsemble &e) {
    return mixture(e.prior().probs(), e.probes());
}

CqEnsemble single_bit_pure_example(double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw Error(ErrorCode::BadOverlap, "overlap must lie in [0, 1]");
    }
    ComplexVector k0(2), k1(2);
    k0 << 1.0, 0.0;
    k1 << overlap, std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    std::vector<DensityOperator> probes{PureState(k0).projector(), PureState(k1).projector()};
    return CqEnsemble(1, ProbDist::uniform(all_keys(1)), std::move(probes));
}

CqEnsemble two_bit_pkl_example(const DensityOperator &sigma, const DensityOperator &rho1,
                               const DensityOperator &rho2) {
    if (sigma.dim() != 2 || rho1.dim() != 2 || rho2.dim() != 2) {
        throw Error(ErrorCode::DimMismatch, "two-bit family needs qubit states");
    }
    DensityOperator a = tensor(sigma, rho1);
    DensityOperator b = tensor(sigma, rho2);
    return CqEnsemble(2, ProbDist::uniform(all_keys(2)), {a, b, b, a});
}

CqEnsemble condition_on_leak(const CqEnsemble &e, const LeakSpec &leak) {
    int n = e.n_bits();
    if (leak.positions.size() != leak.values.size()) {
        throw Error(ErrorCode::BadParams, "leak needs one value per position");
    }
    for (size_t i = 0; i < leak.positions.size(); i++) {
        int pos = leak.positions[i];
        if (pos < 0 || pos >= n || (i > 0 && pos <= leak.positions[i - 1])) {
            throw Error(ErrorCode::BadParams, "leak positions must be strictly increasing within [0, n)");
        }
        if (leak.values[i] != 0 && leak.values[i] != 1) {
            throw Error(ErrorCode::BadParams, "leaked values must be bits");
        }
    }
    std::vector<bool> leaked(n, false);
    for (int pos : leak.positions) {
        leaked[pos] = true;
    }

    double mass = 0;
    std::vector<double> weights;
    std::vector<DensityOperator> probes;
    for (size_t k = 0; k < e.size(); k++) {
        const std::string &key = e.keys()[k];
        bool match = true;
        for (size_t i = 0; i < leak.positions.size(); i++) {
            if (key[leak.positions[i]] - '0' != leak.values[i]) {
                match = false;
                break;
            }
        }
        if (!match) {
            continue;
        }
        double p = e.prior().probs()[k];
        mass += p;
        weights.push_back(p);
        probes.push_back(e.probe(k));
    }
    if (mass <= 0) {
        throw Error(ErrorCode::ZeroMass, "leaked pattern has zero prior probability");
    }
    for (double &w : weights) {
        w /= mass;
    }
    int rest = n - static_cast<int>(leak.positions.size());
    return CqEnsemble(rest, ProbDist(all_keys(rest), std::move(weights)), std::move(probes));
}

SpikedDistribution::SpikedDistribution(int n_bits, int l, uint64_t spike_index)
    : n_(n_bits), l_(l), spike_(spike_index) {
    if (n_bits < 1 || n_bits > 30 || l < 0 || l > n_bits) {
        throw Error(ErrorCode::BadParams, "spiked distribution needs 0 <= l <= n <= 30 and n >= 1");
    }
    if (spike_index >= key_count()) {
        throw Error(ErrorCode::BadParams, "spike index out of range");
    }
    spike_mass_ = std::ldexp(1.0, -l);
    // (1 - 2^-l) / (2^n - 1), formed so that l == n gives exactly 2^-n.
    double rest = 1.0 - spike_mass_;
    atom_mass_ = rest / static_cast<double>(key_count() - 1);
}

double SpikedDistribution::max_mass() const noexcept {
    return std::max(spike_mass_, atom_mass_);
}

SpikedDistribution::Rational SpikedDistribution::spike_mass_exact() const {
    return Rational(1, std::int64_t{1} << l_);
}

SpikedDistribution::Rational SpikedDistribution::atom_mass_exact() const {
    std::int64_t two_l = std::int64_t{1} << l_;
    return Rational(two_l - 1, two_l) / Rational(static_cast<std::int64_t>(key_count() - 1));
}

double SpikedDistribution::variational_distance_to_uniform() const {
    // Spike mass 2^-l >= 2^-n, so the positive part is the spike alone.
    return std::ldexp(1.0, -l_) - std::ldexp(1.0, -n_);
}

double SpikedDistribution::entropy_bits() const {
    double h = 0;
    if (spike_mass_ > 0) {
        h -= spike_mass_ * std::log2(spike_mass_);
    }
    if (atom_mass_ > 0) {
        h -= static_cast<double>(key_count() - 1) * atom_mass_ * std::log2(atom_mass_);
    }
    return h;
}

ProbDist SpikedDistribution::to_dense() const {
    if (n_ > 20) {
        throw Error(ErrorCode::TooLarge, "dense spiked distribution limited to 20 bits");
    }
    std::vector<double> probs(key_count());
    for (uint64_t i = 0; i < key_count(); i++) {
        probs[i] = mass(i);
    }
    return ProbDist(all_keys(n_), std::move(probs));
}

SpikedDistribution spiked_distribution(int n_bits, int l) {
    return SpikedDistribution(n_bits, l);
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw Error(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
    }
    Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        const auto &row = j[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorCode::ParseError, "ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            const auto &entry = row[c];
            if (entry.is_number()) {
                m(r, c) = Complex(entry.get<double>(), 0.0);
            } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
                m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
            } else {
                throw Error(ErrorCode::ParseError, "matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

nlohmann::json ensemble_to_json(const CqEnsemble &e) {
    nlohmann::json probes = nlohmann::json::array();
    for (const auto &p : e.probes()) {
        probes.push_back(matrix_to_json(p.matrix()));
    }
    return {
        {"n_bits", e.n_bits()},
        {"keys", e.keys()},
        {"prior", e.prior().probs()},
        {"probes", std::move(probes)},
    };
}

CqEnsemble ensemble_from_json(const nlohmann::json &j) {
    try {
        int n = j.at("n_bits").get<int>();
        auto keys = j.at("keys").get<std::vector<std::string>>();
        auto prior = j.at("prior").get<std::vector<double>>();
        std::vector<DensityOperator> probes;
        for (const auto &pj : j.at("probes")) {
            probes.push_back(validate_density(matrix_from_json(pj)));
        }
        return CqEnsemble(n, ProbDist(std::move(keys), std::move(prior)), std::move(probes));
    } catch (const nlohmann::json::exception &ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

}  // namespace qcrit
