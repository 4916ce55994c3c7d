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

#include "qcrit/qmath.h"

#include <cmath>
#include <sstream>

#include "qcrit/error.h"

namespace qcrit {

namespace {

std::string describe_shape(const ComplexMatrix &m) {
    std::ostringstream ss;
    ss << m.rows() << "x" << m.cols();
    return ss.str();
}

void require_finite(const ComplexMatrix &m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::BadParams, "matrix has non-finite entries");
    }
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    double n2 = amps_.squaredNorm();
    if (amps_.size() == 0 || std::abs(n2 - 1.0) > tol::kNorm) {
        std::ostringstream ss;
        ss << "squared norm " << n2 << " differs from 1";
        throw Error(ErrorCode::BadNorm, ss.str());
    }
}

DensityOperator PureState::projector() const {
    return validate_density(amps_ * amps_.adjoint());
}

bool is_hermitian(const ComplexMatrix &m, double tolerance) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return validate_density(tensor(a.matrix(), b.matrix()));
}

HermitianEigen hermitian_eigen(const ComplexMatrix &h) {
    require_finite(h);
    if (h.rows() != h.cols()) {
        throw Error(ErrorCode::NotHermitian, "matrix is not square (" + describe_shape(h) + ")");
    }
    if (!is_hermitian(h)) {
        std::ostringstream ss;
        ss << "max |h - h^dagger| = " << (h - h.adjoint()).cwiseAbs().maxCoeff();
        throw Error(ErrorCode::NotHermitian, ss.str());
    }
    Eigen::Index n = h.rows();
    HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
    if (n == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
    }
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; k++) {
        Eigen::Index src = n - 1 - k;
        out.values(k) = solver.eigenvalues()(src);
        ComplexVector v = solver.eigenvectors().col(src);
        for (Eigen::Index i = 0; i < n; i++) {
            double mag = std::abs(v(i));
            if (mag > 1e-12) {
                v *= std::conj(v(i)) / mag;
                v(i) = Complex(std::abs(v(i)), 0.0);
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

double trace_norm(const ComplexMatrix &a) {
    return hermitian_eigen(a).values.cwiseAbs().sum();
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::DimMismatch, "trace_distance of " + describe_shape(rho.matrix()) + " and " +
                                                describe_shape(sigma.matrix()));
    }
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

DensityOperator partial_trace(const DensityOperator &rho, std::pair<Eigen::Index, Eigen::Index> dims, Factor keep) {
    auto [da, db] = dims;
    if (da <= 0 || db <= 0 || da * db != rho.dim()) {
        std::ostringstream ss;
        ss << "dims " << da << "x" << db << " do not factor operator of dim " << rho.dim();
        throw Error(ErrorCode::DimMismatch, ss.str());
    }
    const ComplexMatrix &m = rho.matrix();
    if (keep == Factor::First) {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; i++) {
            for (Eigen::Index j = 0; j < da; j++) {
                Complex acc = 0;
                for (Eigen::Index t = 0; t < db; t++) {
                    acc += m(i * db + t, j * db + t);
                }
                out(i, j) = acc;
            }
        }
        return validate_density(out);
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Eigen::Index t = 0; t < da; t++) {
        out += m.block(t * db, t * db, db, db);
    }
    return validate_density(out);
}

DensityOperator validate_density(const ComplexMatrix &m) {
    require_finite(m);
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::NotHermitian, "density operator must be square and nonempty, got " + describe_shape(m));
    }
    HermitianEigen eig = hermitian_eigen(m);
    double min_eig = eig.values.minCoeff();
    if (min_eig < -tol::kPsd) {
        std::ostringstream ss;
        ss << "smallest eigenvalue " << min_eig << " is below -" << tol::kPsd;
        throw Error(ErrorCode::NotPsd, ss.str());
    }
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol::kTrace) {
        std::ostringstream ss;
        ss << "trace " << tr << " differs from 1 by " << std::abs(tr - 1.0);
        throw Error(ErrorCode::BadTrace, ss.str());
    }
    if (min_eig < 0) {
        RealVector clamped = eig.values.cwiseMax(0.0);
        ComplexMatrix rebuilt = eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
        return DensityOperator(0.5 * (rebuilt + rebuilt.adjoint()));
    }
    return DensityOperator(m);
}

DensityOperator maximally_mixed(Eigen::Index dim) {
    if (dim <= 0) {
        throw Error(ErrorCode::BadParams, "dimension must be positive");
    }
    return validate_density(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator diagonal_state(std::span<const double> diag) {
    ComplexMatrix m = ComplexMatrix::Zero(diag.size(), diag.size());
    for (size_t i = 0; i < diag.size(); i++) {
        m(i, i) = diag[i];
    }
    return validate_density(m);
}

DensityOperator bloch_state(double x, double y, double z) {
    ComplexMatrix m(2, 2);
    m << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
    return validate_density(0.5 * m);
}

PureState basis_state(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw Error(ErrorCode::BadParams, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1;
    return PureState(v);
}

DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw Error(ErrorCode::DimMismatch, "mixture needs one weight per state");
    }
    Eigen::Index dim = states[0].dim();
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (size_t i = 0; i < states.size(); i++) {
        if (states[i].dim() != dim) {
            throw Error(ErrorCode::DimMismatch, "mixture of operators with different dims");
        }
        if (weights[i] < 0) {
            throw Error(ErrorCode::BadParams, "negative mixture weight");
        }
        acc += weights[i] * states[i].matrix();
    }
    return validate_density(acc);
}

ComplexMatrix positive_part_projector(const ComplexMatrix &h, double threshold) {
    HermitianEigen eig = hermitian_eigen(h);
    Eigen::Index n = h.rows();
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; k++) {
        if (eig.values(k) > threshold) {
            proj += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
        }
    }
    return proj;
}

}  // namespace qcrit
