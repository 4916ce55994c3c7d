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

#ifndef _QCRIT_COUPLING_H
#define _QCRIT_COUPLING_H

#include <string>

#include "qcrit/ensembles.h"

namespace qcrit {

/// A joint distribution over X × X' with marginals P and Q.
///
/// Product couplings are kept in factored form so that huge independent
/// couplings (N = 2^16 and beyond) never materialize N^2 cells.
class Coupling {
   public:
    /// Throws InvalidDistribution if mass is negative or a marginal is off by more than 1e-12.
    static Coupling dense(ProbDist p, ProbDist q, Eigen::MatrixXd mass);
    static Coupling product(ProbDist p, ProbDist q);

    const ProbDist &p() const noexcept {
        return p_;
    }
    const ProbDist &q() const noexcept {
        return q_;
    }
    bool is_product() const noexcept {
        return product_;
    }
    double mass(size_t i, size_t j) const;
    /// Materialized mass matrix; throws TooLarge above 2^22 cells.
    Eigen::MatrixXd mass_matrix() const;

   private:
    Coupling(ProbDist p, ProbDist q, Eigen::MatrixXd mass, bool product);

    ProbDist p_;
    ProbDist q_;
    Eigen::MatrixXd mass_;
    bool product_;
};

/// Diagonal min(P, Q) plus the outer product of the normalized residuals.
/// Both marginals are re-expressed over the union of their labels.
Coupling maximal_coupling(const ProbDist &p, const ProbDist &q);

Coupling independent_coupling(const ProbDist &p, const ProbDist &q);

/// Pr[X != X'], matching outcomes by label.
double mismatch_probability(const Coupling &c);

/// Header row "x" followed by Q's labels; one row per label of P.
std::string to_csv(const Coupling &c);

}  // namespace qcrit

#endif
