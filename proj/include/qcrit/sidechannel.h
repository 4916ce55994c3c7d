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

#ifndef _QCRIT_SIDECHANNEL_H
#define _QCRIT_SIDECHANNEL_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcrit/ensembles.h"

namespace qcrit {

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
   public:
    /// Zero matrix. Throws BadShape unless both dimensions are positive.
    Gf2Matrix(size_t rows, size_t cols);
    /// Parses rows of '0'/'1' characters (spaces between digits allowed).
    static Gf2Matrix from_rows(const std::vector<std::string> &rows);
    static Gf2Matrix identity(size_t n);

    size_t rows() const noexcept {
        return rows_;
    }
    size_t cols() const noexcept {
        return cols_;
    }
    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool v);

    /// Row r as an integer with column j at bit (cols - 1 - j); requires cols <= 64.
    uint64_t row_word(size_t r) const;
    /// T x where x has column j at bit (cols - 1 - j); the result has row i at
    /// bit (rows - 1 - i). Requires rows, cols <= 64.
    uint64_t apply(uint64_t x) const;

    std::vector<std::string> to_rows() const;

    bool operator==(const Gf2Matrix &other) const = default;

   private:
    size_t rows_;
    size_t cols_;
    size_t stride_;
    std::vector<uint64_t> words_;
};

/// Toeplitz matrix with entry(i, j) = seed[i - j + n - 1]. Throws BadSeedLength
/// unless seed has m + n - 1 bits.
Gf2Matrix toeplitz_from_seed(const std::vector<uint8_t> &seed, size_t m, size_t n);
/// Same, with seed bit t taken from bit t of `seed_value` (m + n - 1 <= 64).
Gf2Matrix toeplitz_from_seed_value(uint64_t seed_value, size_t m, size_t n);

/// Rank by Gaussian elimination over GF(2).
size_t gf2_rank(const Gf2Matrix &mat);

/// Bits of Shannon information leaked by hashing a uniform input through an
/// m x n matrix: m - rank. Throws BadShape when m > n.
size_t pac_leakage(const Gf2Matrix &mat);

/// Entropy in bits of T x for uniform x, by enumerating all 2^n inputs.
/// Throws TooLarge for n > 24.
double output_entropy_bits(const Gf2Matrix &mat);

struct SingularMode {
    enum class Kind { Exhaustive, Sample };
    Kind kind = Kind::Exhaustive;
    uint64_t samples = 0;
    uint64_t seed = 0;

    static SingularMode exhaustive() {
        return {Kind::Exhaustive, 0, 0};
    }
    static SingularMode sample(uint64_t count, uint64_t seed) {
        return {Kind::Sample, count, seed};
    }
};

struct SingularFraction {
    double fraction;
    uint64_t evaluated;
    uint64_t singular;
    /// Binomial standard error of the estimate; 0 for exhaustive runs.
    double standard_error;
    /// Largest m - rank seen among evaluated members.
    size_t max_rank_deficit;
};

/// Fraction of Toeplitz seeds whose m x n matrix has rank < min(m, n).
/// Exhaustive mode requires m + n - 1 <= 24; sampling draws seeds from a
/// mt19937_64 stream initialized with the given seed.
SingularFraction singular_fraction(size_t m, size_t n, SingularMode mode);

/// A binary linear [n, k] code given by a full-rank k x n generator.
class LinearCode {
   public:
    /// Throws InvalidCode if the generator is not full row rank or n > 64.
    explicit LinearCode(Gf2Matrix generator);

    size_t n() const noexcept {
        return generator_.cols();
    }
    size_t k() const noexcept {
        return generator_.rows();
    }
    const Gf2Matrix &generator() const noexcept {
        return generator_;
    }
    /// Codeword for `message` (message bit i at bit k-1-i), as a word with
    /// position j at bit n-1-j.
    uint64_t encode(uint64_t message) const;
    size_t min_distance() const;

   private:
    Gf2Matrix generator_;
};

/// Plain-text generator matrix: one row of 0/1 per line; blank lines and
/// lines starting with '#' are ignored. Throws ParseError / InvalidCode.
LinearCode parse_code(std::string_view text);
LinearCode hamming74();
/// The (5,2) code with generator rows 10110 and 01011.
LinearCode code52();
LinearCode repetition_code(size_t n);
LinearCode identity_code(size_t n);

enum class DecodeRule {
    /// Coset-leader decoding; each coset's leader is its lowest-weight word,
    /// ties going to the lexicographically smallest.
    Syndrome,
    /// Nearest codeword, ties going to the lowest message index.
    MinDistanceFirstTiebreak,
};

struct RegionCensus {
    /// Decision-region size per message label.
    std::map<std::string, uint64_t> region_sizes;
    /// Induced message distribution under uniformly random received words.
    ProbDist message_bias;
    /// delta(message_bias, uniform over 2^k messages).
    double bias_delta;
};

/// Decodes every one of the 2^n received words. Throws TooLarge for n > 20.
RegionCensus decision_region_census(const LinearCode &code, DecodeRule rule);

/// Sphere-packing equality sum_{i<=t} C(n, i) == 2^(n-k).
bool is_perfect_code(const LinearCode &code, size_t t);

/// Header "message,region_size".
std::string census_to_csv(const RegionCensus &census);

}  // namespace qcrit

#endif
