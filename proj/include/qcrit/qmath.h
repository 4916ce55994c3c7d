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

#ifndef _QCRIT_QMATH_H
#define _QCRIT_QMATH_H

#include <Eigen/Dense>
#include <complex>
#include <span>

namespace qcrit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by every validity check in the library.
namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kNorm = 1e-9;
/// Eigenvalues in [-kPsd, 0) are clamped to zero; anything lower is rejected.
inline constexpr double kPsd = 1e-9;
}  // namespace tol

/// Largest operator dimension the dense routines are meant for.
inline constexpr Eigen::Index kMaxDim = 256;

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
///
/// Each eigenvector is phase-normalized so that its first component with
/// magnitude above 1e-12 is real and positive. Together with the descending
/// order this makes eigenbasis-derived measurements reproducible.
struct HermitianEigen {
    RealVector values;
    ComplexMatrix vectors;
};

/// A positive semidefinite, unit-trace, Hermitian operator.
///
/// Only obtainable through validate_density (or helpers that call it), so a
/// DensityOperator in hand always satisfies the invariants.
class DensityOperator {
   public:
    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    Eigen::Index dim() const noexcept {
        return m_.rows();
    }

   private:
    explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    }
    friend DensityOperator validate_density(const ComplexMatrix &m);

    ComplexMatrix m_;
};

/// A unit-norm state vector.
class PureState {
   public:
    /// Throws BadNorm unless the squared norm is 1 within tol::kNorm.
    explicit PureState(ComplexVector amplitudes);

    const ComplexVector &amplitudes() const noexcept {
        return amps_;
    }
    Eigen::Index dim() const noexcept {
        return amps_.size();
    }
    DensityOperator projector() const;

   private:
    ComplexVector amps_;
};

bool is_hermitian(const ComplexMatrix &m, double tolerance = tol::kHermitian);

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);

/// Throws NotHermitian if `h` is not square or not Hermitian within tol::kHermitian.
HermitianEigen hermitian_eigen(const ComplexMatrix &h);

/// Sum of absolute eigenvalues. Only Hermitian arguments are supported.
double trace_norm(const ComplexMatrix &a);

/// Half the trace norm of the difference; throws DimMismatch on unequal dims.
double trace_distance(const DensityOperator &rho, const DensityOperator &sigma);

enum class Factor { First, Second };

/// Traces out one factor of a bipartite operator on C^dims.first ⊗ C^dims.second.
DensityOperator partial_trace(const DensityOperator &rho, std::pair<Eigen::Index, Eigen::Index> dims, Factor keep);

/// Checks Hermiticity, positivity and unit trace. Slightly negative
/// eigenvalues (within tol::kPsd) are clamped to zero.
DensityOperator validate_density(const ComplexMatrix &m);

// Constructors for common states.
DensityOperator maximally_mixed(Eigen::Index dim);
DensityOperator diagonal_state(std::span<const double> diag);
/// (I + xX + yY + zZ) / 2; throws NotPsd if the Bloch vector is longer than 1.
DensityOperator bloch_state(double x, double y, double z);
PureState basis_state(Eigen::Index dim, Eigen::Index index);

/// Convex combination sum_i w_i rho_i. Weights must be nonnegative and sum to 1.
DensityOperator mixture(std::span<const double> weights, std::span<const DensityOperator> states);

/// Projector onto the span of eigenvectors of `h` whose eigenvalue exceeds `threshold`.
ComplexMatrix positive_part_projector(const ComplexMatrix &h, double threshold = 0.0);

}  // namespace qcrit

#endif
