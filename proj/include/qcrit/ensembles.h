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

#ifndef _QCRIT_ENSEMBLES_H
#define _QCRIT_ENSEMBLES_H

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcrit/qmath.h"

namespace qcrit {

/// A finite probability distribution over uniquely labeled outcomes.
class ProbDist {
   public:
    /// Throws InvalidDistribution unless probs are nonnegative, sum to 1
    /// within 1e-9, and labels are unique and match probs in length.
    ProbDist(std::vector<std::string> labels, std::vector<double> probs);

    static ProbDist uniform(std::vector<std::string> labels);
    /// Uniform over labels "0", "1", ..., "N-1".
    static ProbDist uniform_indexed(size_t n);

    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }
    const std::vector<double> &probs() const noexcept {
        return probs_;
    }
    size_t size() const noexcept {
        return probs_.size();
    }
    std::optional<size_t> index_of(std::string_view label) const;
    /// Mass of `label`, or 0 when the label is absent.
    double prob(std::string_view label) const;

   private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

// Keys are n-bit strings, bit 0 leftmost. Index i corresponds to the string
// whose bit j is (i >> (n - 1 - j)) & 1, so index order is lexicographic.
std::string key_label(uint64_t index, int n_bits);
uint64_t key_index(std::string_view label);
std::vector<std::string> all_keys(int n_bits);

/// A classical-quantum ensemble {p_k, rho_E^k} over n-bit keys.
///
/// Probes are stored per key (the block-diagonal form of the joint
/// key/probe state); the joint operator is only built on demand.
class CqEnsemble {
   public:
    /// The prior's labels must be all_keys(n_bits) in order.
    CqEnsemble(int n_bits, ProbDist prior, std::vector<DensityOperator> probes);

    int n_bits() const noexcept {
        return n_bits_;
    }
    const std::vector<std::string> &keys() const noexcept {
        return prior_.labels();
    }
    const ProbDist &prior() const noexcept {
        return prior_;
    }
    const std::vector<DensityOperator> &probes() const noexcept {
        return probes_;
    }
    const DensityOperator &probe(size_t k) const {
        return probes_.at(k);
    }
    size_t size() const noexcept {
        return probes_.size();
    }
    Eigen::Index probe_dim() const noexcept {
        return probes_.front().dim();
    }

   private:
    int n_bits_;
    ProbDist prior_;
    std::vector<DensityOperator> probes_;
};

/// Known bits of a key: `values[i]` is the bit at `positions[i]`.
struct LeakSpec {
    std::vector<int> positions;
    std::vector<int> values;
};

inline constexpr int kMaxUniformKeyBits = 6;

/// The completely mixed state on 2^n key values. Throws TooLarge for n > 6.
DensityOperator uniform_key_state(int n_bits);

/// sum_k p_k rho_E^k.
DensityOperator average_probe(const CqEnsemble &e);

/// One-bit key with pure probes |k0>, |k1> of real overlap c.
CqEnsemble single_bit_pure_example(double overlap);

/// Two-bit key whose probes are sigma⊗rho1, sigma⊗rho2, sigma⊗rho2, sigma⊗rho1
/// for keys 00, 01, 10, 11.
CqEnsemble two_bit_pkl_example(const DensityOperator &sigma, const DensityOperator &rho1,
                               const DensityOperator &rho2);

/// The ensemble over the unleaked bits, with the prior renormalized.
/// Throws ZeroMass if the leaked pattern has zero prior probability.
CqEnsemble condition_on_leak(const CqEnsemble &e, const LeakSpec &leak);

/// Distribution over 2^n keys with one key at mass 2^-l and the rest of the
/// mass spread evenly over the other 2^n - 1 keys. Stored as a triple, not
/// as 2^n atoms.
class SpikedDistribution {
   public:
    using Rational = boost::rational<std::int64_t>;

    /// Requires 0 <= l <= n <= 30.
    SpikedDistribution(int n_bits, int l, uint64_t spike_index = 0);

    int n_bits() const noexcept {
        return n_;
    }
    int l() const noexcept {
        return l_;
    }
    uint64_t spike_index() const noexcept {
        return spike_;
    }
    uint64_t key_count() const noexcept {
        return uint64_t{1} << n_;
    }
    double spike_mass() const noexcept {
        return spike_mass_;
    }
    double atom_mass() const noexcept {
        return atom_mass_;
    }
    double mass(uint64_t index) const noexcept {
        return index == spike_ ? spike_mass_ : atom_mass_;
    }
    double max_mass() const noexcept;

    Rational spike_mass_exact() const;
    Rational atom_mass_exact() const;

    /// Closed form delta(P, U) = 2^-l - 2^-n.
    double variational_distance_to_uniform() const;
    double entropy_bits() const;

    /// Dense form; throws TooLarge for n > 20.
    ProbDist to_dense() const;

   private:
    int n_;
    int l_;
    uint64_t spike_;
    double spike_mass_;
    double atom_mass_;
};

SpikedDistribution spiked_distribution(int n_bits, int l);

nlohmann::json ensemble_to_json(const CqEnsemble &e);
/// Throws ParseError on malformed documents.
CqEnsemble ensemble_from_json(const nlohmann::json &j);

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

}  // namespace qcrit

#endif
