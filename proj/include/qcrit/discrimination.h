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

#ifndef _QCRIT_DISCRIMINATION_H
#define _QCRIT_DISCRIMINATION_H

#include <map>
#include <string>
#include <vector>

#include "qcrit/ensembles.h"
#include "qcrit/qmath.h"

namespace qcrit {

struct PovmElement {
    std::string label;
    ComplexMatrix op;
};

/// A measurement: positive operators summing to the identity.
class Povm {
   public:
    /// Throws InvalidPovm if an element is not PSD (within tol::kPsd), the
    /// elements do not sum to identity within 1e-9, or labels repeat.
    explicit Povm(std::vector<PovmElement> elements);

    /// Projective measurement onto orthonormal columns of `basis`.
    static Povm from_basis(const ComplexMatrix &basis, std::vector<std::string> labels);
    /// Projective measurement onto the eigenbasis of Hermitian `h`, in
    /// descending eigenvalue order. Labels default to e0, e1, ...
    static Povm eigenbasis(const ComplexMatrix &h, std::vector<std::string> labels = {});
    /// The single-outcome measurement {I}.
    static Povm trivial(Eigen::Index dim, std::string label = "1");

    const std::vector<PovmElement> &elements() const noexcept {
        return elements_;
    }
    Eigen::Index dim() const noexcept {
        return elements_.front().op.rows();
    }
    size_t size() const noexcept {
        return elements_.size();
    }
    std::vector<std::string> labels() const;

   private:
    std::vector<PovmElement> elements_;
};

/// Product measurement; outcome labels are "<a>,<b>".
Povm tensor(const Povm &a, const Povm &b);

/// Joint mass of (key k, outcome k'). Rows are keys, columns outcomes.
class JointDistribution {
   public:
    /// Throws InvalidDistribution on negative mass or total mass off by more than 1e-9.
    JointDistribution(std::vector<std::string> row_labels, std::vector<std::string> col_labels, Eigen::MatrixXd mass);

    const std::vector<std::string> &row_labels() const noexcept {
        return rows_;
    }
    const std::vector<std::string> &col_labels() const noexcept {
        return cols_;
    }
    const Eigen::MatrixXd &mass() const noexcept {
        return mass_;
    }
    ProbDist row_marginal() const;
    ProbDist col_marginal() const;

   private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    Eigen::MatrixXd mass_;
};

/// Rows are keys, columns outcomes; first header cell is "key".
std::string to_csv(const JointDistribution &j);

struct HelstromResult {
    double p_success;
    /// Measuring this projector means "guess hypothesis 1"; its complement
    /// (including the zero-eigenvalue subspace) means "guess hypothesis 0".
    ComplexMatrix projector;
};

/// Optimal binary discrimination of rho0 (prior p0) against rho1 (prior 1 - p0).
HelstromResult helstrom_binary(const DensityOperator &rho0, const DensityOperator &rho1, double p0);

/// mass(k, k') = p_k tr(rho_E^k E_k').
JointDistribution measure_ensemble(const CqEnsemble &e, const Povm &m);

/// Bayes posterior over keys given `outcome`. Throws ZeroMassOutcome.
ProbDist posterior(const JointDistribution &j, const std::string &outcome);

inline const std::string kPgmNullLabel = "null";

/// Pretty-good (square-root) measurement. One element per key, labeled with
/// the key; if the average probe is rank deficient a kernel projector is
/// appended under kPgmNullLabel. Eigenvalues below 1e-12 count as kernel.
Povm pgm(const CqEnsemble &e);

/// sum_k p_k tr(rho_E^k E_o) over outcomes o with guess[o] == k. Outcomes
/// missing from `guess` contribute nothing.
double success_probability(const CqEnsemble &e, const Povm &m, const std::map<std::string, std::string> &guess);

/// Guess map sending each key-labeled outcome to that key and every other
/// outcome to `fallback`.
std::map<std::string, std::string> identity_guess(const Povm &m, const CqEnsemble &e, const std::string &fallback);

struct PostLeakResult {
    double p_success;
    /// d of the ensemble before the leak.
    double d_full;
    /// 1/2 + d_full/2: the most a mixture-with-ideal reading of d would allow.
    double mixture_cap;
};

/// Conditions on `leak` (which must leave exactly one unknown bit) and
/// discriminates the two remaining hypotheses optimally.
PostLeakResult post_leak_discrimination(const CqEnsemble &e, const LeakSpec &leak);

}  // namespace qcrit

#endif
