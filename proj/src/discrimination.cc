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

#include "qcrit/discrimination.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qcrit/criteria.h"
#include "qcrit/csv.h"
#include "qcrit/error.h"

namespace qcrit {

namespace {

constexpr double kPgmCutoff = 1e-12;
// Eigenvalues of the Helstrom operator at or below this count as zero.
constexpr double kHelstromZero = 1e-13;

double expectation(const ComplexMatrix &rho, const ComplexMatrix &op) {
    // tr(rho op) without forming the product.
    return (rho.transpose().cwiseProduct(op)).sum().real();
}

}  // namespace

Povm::Povm(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw Error(ErrorCode::InvalidPovm, "measurement needs at least one element");
    }
    Eigen::Index d = elements_.front().op.rows();
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    std::set<std::string> seen;
    for (const auto &el : elements_) {
        if (el.op.rows() != d || el.op.cols() != d) {
            throw Error(ErrorCode::InvalidPovm, "element '" + el.label + "' has the wrong shape");
        }
        if (!seen.insert(el.label).second) {
            throw Error(ErrorCode::InvalidPovm, "duplicate outcome label '" + el.label + "'");
        }
        if (!is_hermitian(el.op)) {
            throw Error(ErrorCode::InvalidPovm, "element '" + el.label + "' is not Hermitian");
        }
        double min_eig = hermitian_eigen(el.op).values.minCoeff();
        if (min_eig < -tol::kPsd) {
            std::ostringstream ss;
            ss << "element '" << el.label << "' has eigenvalue " << min_eig;
            throw Error(ErrorCode::InvalidPovm, ss.str());
        }
        total += el.op;
    }
    double err = (total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
        std::ostringstream ss;
        ss << "elements sum to identity only within " << err;
        throw Error(ErrorCode::InvalidPovm, ss.str());
    }
}

Povm Povm::from_basis(const ComplexMatrix &basis, std::vector<std::string> labels) {
    if (basis.rows() != basis.cols() || static_cast<Eigen::Index>(labels.size()) != basis.cols()) {
        throw Error(ErrorCode::InvalidPovm, "basis must be square with one label per column");
    }
    std::vector<PovmElement> els;
    for (Eigen::Index c = 0; c < basis.cols(); c++) {
        els.push_back({labels[c], basis.col(c) * basis.col(c).adjoint()});
    }
    return Povm(std::move(els));
}

Povm Povm::eigenbasis(const ComplexMatrix &h, std::vector<std::string> labels) {
    HermitianEigen eig = hermitian_eigen(h);
    if (labels.empty()) {
        for (Eigen::Index i = 0; i < h.rows(); i++) {
            labels.push_back("e" + std::to_string(i));
        }
    }
    return from_basis(eig.vectors, std::move(labels));
}

Povm Povm::trivial(Eigen::Index dim, std::string label) {
    return Povm({{std::move(label), ComplexMatrix::Identity(dim, dim)}});
}

std::vector<std::string> Povm::labels() const {
    std::vector<std::string> out;
    for (const auto &el : elements_) {
        out.push_back(el.label);
    }
    return out;
}

Povm tensor(const Povm &a, const Povm &b) {
    std::vector<PovmElement> els;
    for (const auto &x : a.elements()) {
        for (const auto &y : b.elements()) {
            els.push_back({x.label + "," + y.label, tensor(x.op, y.op)});
        }
    }
    return Povm(std::move(els));
}

JointDistribution::JointDistribution(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                                     Eigen::MatrixXd mass)
    : rows_(std::move(row_labels)), cols_(std::move(col_labels)), mass_(std::move(mass)) {
    if (static_cast<Eigen::Index>(rows_.size()) != mass_.rows() ||
        static_cast<Eigen::Index>(cols_.size()) != mass_.cols()) {
        throw Error(ErrorCode::InvalidDistribution, "joint labels do not match mass shape");
    }
    if (mass_.size() == 0 || !mass_.allFinite() || mass_.minCoeff() < 0) {
        throw Error(ErrorCode::InvalidDistribution, "joint mass must be finite and nonnegative");
    }
    if (std::abs(mass_.sum() - 1.0) > 1e-9) {
        std::ostringstream ss;
        ss << "joint mass sums to " << mass_.sum();
        throw Error(ErrorCode::InvalidDistribution, ss.str());
    }
}

ProbDist JointDistribution::row_marginal() const {
    Eigen::VectorXd r = mass_.rowwise().sum();
    return ProbDist(rows_, std::vector<double>(r.data(), r.data() + r.size()));
}

ProbDist JointDistribution::col_marginal() const {
    Eigen::VectorXd c = mass_.colwise().sum().transpose();
    return ProbDist(cols_, std::vector<double>(c.data(), c.data() + c.size()));
}

std::string to_csv(const JointDistribution &j) {
    CsvWriter w;
    std::vector<std::string> header{"key"};
    header.insert(header.end(), j.col_labels().begin(), j.col_labels().end());
    w.row(header);
    for (size_t r = 0; r < j.row_labels().size(); r++) {
        std::vector<std::string> cells{j.row_labels()[r]};
        for (Eigen::Index c = 0; c < j.mass().cols(); c++) {
            cells.push_back(format_double(j.mass()(r, c)));
        }
        w.row(cells);
    }
    return w.str();
}

HelstromResult helstrom_binary(const DensityOperator &rho0, const DensityOperator &rho1, double p0) {
    if (rho0.dim() != rho1.dim()) {
        throw Error(ErrorCode::DimMismatch, "helstrom_binary needs equal dimensions");
    }
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw Error(ErrorCode::BadParams, "prior p0 must lie in [0, 1]");
    }
    ComplexMatrix gamma = (1.0 - p0) * rho1.matrix() - p0 * rho0.matrix();
    gamma = 0.5 * (gamma + gamma.adjoint());
    ComplexMatrix proj = positive_part_projector(gamma, kHelstromZero);
    double p = p0 + expectation(gamma, proj);
    return {p, proj};
}

JointDistribution measure_ensemble(const CqEnsemble &e, const Povm &m) {
    if (m.dim() != e.probe_dim()) {
        throw Error(ErrorCode::DimMismatch, "measurement and probe dimensions differ");
    }
    Eigen::MatrixXd mass(e.size(), m.size());
    for (size_t k = 0; k < e.size(); k++) {
        double pk = e.prior().probs()[k];
        for (size_t o = 0; o < m.size(); o++) {
            double v = pk * expectation(e.probe(k).matrix(), m.elements()[o].op);
            // Round-off can push exact zeros slightly negative.
            mass(k, o) = v < 0 && v > -1e-12 ? 0.0 : v;
        }
    }
    return JointDistribution(e.keys(), m.labels(), std::move(mass));
}

ProbDist posterior(const JointDistribution &j, const std::string &outcome) {
    const auto &cols = j.col_labels();
    auto it = std::find(cols.begin(), cols.end(), outcome);
    if (it == cols.end()) {
        throw Error(ErrorCode::ZeroMassOutcome, "unknown outcome '" + outcome + "'");
    }
    Eigen::VectorXd col = j.mass().col(it - cols.begin());
    double total = col.sum();
    if (total <= 1e-15) {
        throw Error(ErrorCode::ZeroMassOutcome, "outcome '" + outcome + "' has zero probability");
    }
    col /= total;
    return ProbDist(j.row_labels(), std::vector<double>(col.data(), col.data() + col.size()));
}

Povm pgm(const CqEnsemble &e) {
    DensityOperator avg = average_probe(e);
    HermitianEigen eig = hermitian_eigen(avg.matrix());
    Eigen::Index d = avg.dim();
    ComplexMatrix inv_sqrt = ComplexMatrix::Zero(d, d);
    ComplexMatrix kernel = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        auto v = eig.vectors.col(i);
        if (eig.values(i) > kPgmCutoff) {
            inv_sqrt += (1.0 / std::sqrt(eig.values(i))) * (v * v.adjoint());
        } else {
            kernel += v * v.adjoint();
        }
    }
    std::vector<PovmElement> els;
    for (size_t k = 0; k < e.size(); k++) {
        ComplexMatrix op = inv_sqrt * (e.prior().probs()[k] * e.probe(k).matrix()) * inv_sqrt;
        els.push_back({e.keys()[k], 0.5 * (op + op.adjoint())});
    }
    if (kernel.cwiseAbs().maxCoeff() > 0) {
        els.push_back({kPgmNullLabel, kernel});
    }
    return Povm(std::move(els));
}

double success_probability(const CqEnsemble &e, const Povm &m, const std::map<std::string, std::string> &guess) {
    if (m.dim() != e.probe_dim()) {
        throw Error(ErrorCode::DimMismatch, "measurement and probe dimensions differ");
    }
    double total = 0;
    for (const auto &el : m.elements()) {
        auto g = guess.find(el.label);
        if (g == guess.end()) {
            continue;
        }
        auto k = e.prior().index_of(g->second);
        if (!k) {
            throw Error(ErrorCode::BadParams, "guess '" + g->second + "' is not a key of the ensemble");
        }
        total += e.prior().probs()[*k] * expectation(e.probe(*k).matrix(), el.op);
    }
    return total;
}

std::map<std::string, std::string> identity_guess(const Povm &m, const CqEnsemble &e, const std::string &fallback) {
    std::map<std::string, std::string> out;
    for (const auto &el : m.elements()) {
        out[el.label] = e.prior().index_of(el.label) ? el.label : fallback;
    }
    return out;
}

PostLeakResult post_leak_discrimination(const CqEnsemble &e, const LeakSpec &leak) {
    if (e.n_bits() - static_cast<int>(leak.positions.size()) != 1) {
        throw Error(ErrorCode::NotBinaryResidual, "leak must leave exactly one unknown bit");
    }
    CqEnsemble rest = condition_on_leak(e, leak);
    HelstromResult h = helstrom_binary(rest.probe(0), rest.probe(1), rest.prior().probs()[0]);
    double d = criterion_d_averaged(e);
    return {h.p_success, d, 0.5 + 0.5 * d};
}

}  // namespace qcrit
