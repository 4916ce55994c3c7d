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

#include "qcrit/coupling.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "qcrit/csv.h"
#include "qcrit/error.h"

namespace qcrit {

namespace {

constexpr double kMarginalTol = 1e-12;
constexpr Eigen::Index kMaxCells = Eigen::Index{1} << 22;

// Re-expresses p and q over the union of their labels (p's order first).
std::pair<ProbDist, ProbDist> align(const ProbDist &p, const ProbDist &q) {
    if (p.labels() == q.labels()) {
        return {p, q};
    }
    std::vector<std::string> labels = p.labels();
    for (const auto &l : q.labels()) {
        if (!p.index_of(l)) {
            labels.push_back(l);
        }
    }
    std::vector<double> pp, qq;
    for (const auto &l : labels) {
        pp.push_back(p.prob(l));
        qq.push_back(q.prob(l));
    }
    return {ProbDist(labels, std::move(pp)), ProbDist(labels, std::move(qq))};
}

}  // namespace

Coupling::Coupling(ProbDist p, ProbDist q, Eigen::MatrixXd mass, bool product)
    : p_(std::move(p)), q_(std::move(q)), mass_(std::move(mass)), product_(product) {
}

Coupling Coupling::dense(ProbDist p, ProbDist q, Eigen::MatrixXd mass) {
    if (mass.rows() != static_cast<Eigen::Index>(p.size()) || mass.cols() != static_cast<Eigen::Index>(q.size())) {
        throw Error(ErrorCode::DimMismatch, "coupling mass shape does not match marginals");
    }
    if (!mass.allFinite() || mass.minCoeff() < 0) {
        throw Error(ErrorCode::InvalidDistribution, "coupling mass must be finite and nonnegative");
    }
    Eigen::VectorXd rows = mass.rowwise().sum();
    Eigen::VectorXd cols = mass.colwise().sum().transpose();
    for (Eigen::Index i = 0; i < rows.size(); i++) {
        if (std::abs(rows(i) - p.probs()[i]) > kMarginalTol) {
            std::ostringstream ss;
            ss << "row marginal " << i << " off by " << std::abs(rows(i) - p.probs()[i]);
            throw Error(ErrorCode::InvalidDistribution, ss.str());
        }
    }
    for (Eigen::Index j = 0; j < cols.size(); j++) {
        if (std::abs(cols(j) - q.probs()[j]) > kMarginalTol) {
            std::ostringstream ss;
            ss << "column marginal " << j << " off by " << std::abs(cols(j) - q.probs()[j]);
            throw Error(ErrorCode::InvalidDistribution, ss.str());
        }
    }
    return Coupling(std::move(p), std::move(q), std::move(mass), false);
}

Coupling Coupling::product(ProbDist p, ProbDist q) {
    return Coupling(std::move(p), std::move(q), Eigen::MatrixXd(), true);
}

double Coupling::mass(size_t i, size_t j) const {
    if (product_) {
        return p_.probs().at(i) * q_.probs().at(j);
    }
    return mass_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

Eigen::MatrixXd Coupling::mass_matrix() const {
    if (!product_) {
        return mass_;
    }
    if (static_cast<Eigen::Index>(p_.size() * q_.size()) > kMaxCells) {
        throw Error(ErrorCode::TooLarge, "product coupling too large to materialize");
    }
    Eigen::Map<const Eigen::VectorXd> pv(p_.probs().data(), p_.size());
    Eigen::Map<const Eigen::VectorXd> qv(q_.probs().data(), q_.size());
    return pv * qv.transpose();
}

Coupling maximal_coupling(const ProbDist &p, const ProbDist &q) {
    auto [pa, qa] = align(p, q);
    size_t n = pa.size();
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rp(n), rq(n);
    double overlap = 0;
    for (size_t i = 0; i < n; i++) {
        double mn = std::min(pa.probs()[i], qa.probs()[i]);
        mass(i, i) = mn;
        overlap += mn;
        rp(i) = pa.probs()[i] - mn;
        rq(i) = qa.probs()[i] - mn;
    }
    double residual = 1.0 - overlap;
    // rp and rq have disjoint supports, so the completion adds nothing to the diagonal.
    if (residual > 0) {
        mass += rp * rq.transpose() / residual;
    }
    return Coupling::dense(std::move(pa), std::move(qa), std::move(mass));
}

Coupling independent_coupling(const ProbDist &p, const ProbDist &q) {
    return Coupling::product(p, q);
}

double mismatch_probability(const Coupling &c) {
    double agree = 0;
    if (c.p().labels() == c.q().labels()) {
        for (size_t i = 0; i < c.p().size(); i++) {
            agree += c.mass(i, i);
        }
        return 1.0 - agree;
    }
    std::unordered_map<std::string_view, size_t> q_index;
    for (size_t j = 0; j < c.q().size(); j++) {
        q_index.emplace(c.q().labels()[j], j);
    }
    for (size_t i = 0; i < c.p().size(); i++) {
        auto it = q_index.find(c.p().labels()[i]);
        if (it != q_index.end()) {
            agree += c.mass(i, it->second);
        }
    }
    return 1.0 - agree;
}

std::string to_csv(const Coupling &c) {
    CsvWriter w;
    std::vector<std::string> header{"x"};
    header.insert(header.end(), c.q().labels().begin(), c.q().labels().end());
    w.row(header);
    for (size_t i = 0; i < c.p().size(); i++) {
        std::vector<std::string> cells{c.p().labels()[i]};
        for (size_t j = 0; j < c.q().size(); j++) {
            cells.push_back(format_double(c.mass(i, j)));
        }
        w.row(cells);
    }
    return w.str();
}

}  // namespace qcrit
