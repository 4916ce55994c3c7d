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

#include "qcrit/sidechannel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "qcrit/criteria.h"
#include "qcrit/csv.h"
#include "qcrit/error.h"

namespace qcrit {

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * ((cols + 63) / 64), 0) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorCode::BadShape, "GF(2) matrix dimensions must be positive");
    }
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::string> &rows) {
    std::vector<std::string> digits;
    for (const auto &r : rows) {
        std::string d;
        for (char c : r) {
            if (c == '0' || c == '1') {
                d += c;
            } else if (c != ' ' && c != '\t' && c != '\r') {
                throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "' in matrix row");
            }
        }
        digits.push_back(std::move(d));
    }
    if (digits.empty() || digits.front().empty()) {
        throw Error(ErrorCode::ParseError, "matrix has no entries");
    }
    Gf2Matrix out(digits.size(), digits.front().size());
    for (size_t i = 0; i < digits.size(); i++) {
        if (digits[i].size() != out.cols()) {
            throw Error(ErrorCode::ParseError, "matrix rows have different lengths");
        }
        for (size_t j = 0; j < out.cols(); j++) {
            out.set(i, j, digits[i][j] == '1');
        }
    }
    return out;
}

Gf2Matrix Gf2Matrix::identity(size_t n) {
    Gf2Matrix out(n, n);
    for (size_t i = 0; i < n; i++) {
        out.set(i, i, true);
    }
    return out;
}

bool Gf2Matrix::get(size_t r, size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1;
}

void Gf2Matrix::set(size_t r, size_t c, bool v) {
    uint64_t &w = words_[r * stride_ + c / 64];
    uint64_t bit = uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
}

uint64_t Gf2Matrix::row_word(size_t r) const {
    if (cols_ > 64) {
        throw Error(ErrorCode::TooLarge, "row_word needs at most 64 columns");
    }
    uint64_t out = 0;
    for (size_t j = 0; j < cols_; j++) {
        out = (out << 1) | static_cast<uint64_t>(get(r, j));
    }
    return out;
}

uint64_t Gf2Matrix::apply(uint64_t x) const {
    if (cols_ > 64 || rows_ > 64) {
        throw Error(ErrorCode::TooLarge, "apply needs at most 64 rows and columns");
    }
    uint64_t out = 0;
    for (size_t i = 0; i < rows_; i++) {
        out = (out << 1) | static_cast<uint64_t>(std::popcount(row_word(i) & x) & 1);
    }
    return out;
}

std::vector<std::string> Gf2Matrix::to_rows() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < rows_; i++) {
        std::string s;
        for (size_t j = 0; j < cols_; j++) {
            s += get(i, j) ? '1' : '0';
        }
        out.push_back(std::move(s));
    }
    return out;
}

Gf2Matrix toeplitz_from_seed(const std::vector<uint8_t> &seed, size_t m, size_t n) {
    if (m == 0 || n == 0 || seed.size() != m + n - 1) {
        std::ostringstream ss;
        ss << "seed has " << seed.size() << " bits, expected m + n - 1 = " << (m + n - 1);
        throw Error(ErrorCode::BadSeedLength, ss.str());
    }
    Gf2Matrix out(m, n);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < n; j++) {
            out.set(i, j, seed[i + n - 1 - j] != 0);
        }
    }
    return out;
}

Gf2Matrix toeplitz_from_seed_value(uint64_t seed_value, size_t m, size_t n) {
    if (m == 0 || n == 0 || m + n - 1 > 64) {
        throw Error(ErrorCode::BadSeedLength, "seed value holds at most 64 bits");
    }
    std::vector<uint8_t> seed(m + n - 1);
    for (size_t t = 0; t < seed.size(); t++) {
        seed[t] = static_cast<uint8_t>((seed_value >> t) & 1);
    }
    return toeplitz_from_seed(seed, m, n);
}

size_t gf2_rank(const Gf2Matrix &mat) {
    size_t stride = (mat.cols() + 63) / 64;
    std::vector<std::vector<uint64_t>> rows(mat.rows(), std::vector<uint64_t>(stride, 0));
    for (size_t i = 0; i < mat.rows(); i++) {
        for (size_t j = 0; j < mat.cols(); j++) {
            if (mat.get(i, j)) {
                rows[i][j / 64] |= uint64_t{1} << (j % 64);
            }
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < mat.cols() && rank < rows.size(); c++) {
        size_t w = c / 64;
        uint64_t bit = uint64_t{1} << (c % 64);
        size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && (rows[r][w] & bit)) {
                for (size_t t = 0; t < stride; t++) {
                    rows[r][t] ^= rows[rank][t];
                }
            }
        }
        rank++;
    }
    return rank;
}

size_t pac_leakage(const Gf2Matrix &mat) {
    if (mat.rows() > mat.cols()) {
        throw Error(ErrorCode::BadShape, "privacy amplification matrix must have m <= n");
    }
    return mat.rows() - gf2_rank(mat);
}

double output_entropy_bits(const Gf2Matrix &mat) {
    if (mat.cols() > 24 || mat.rows() > 64) {
        throw Error(ErrorCode::TooLarge, "output enumeration limited to n <= 24");
    }
    std::map<uint64_t, uint64_t> hist;
    uint64_t total = uint64_t{1} << mat.cols();
    for (uint64_t x = 0; x < total; x++) {
        hist[mat.apply(x)]++;
    }
    double h = 0;
    for (const auto &[y, count] : hist) {
        double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

SingularFraction singular_fraction(size_t m, size_t n, SingularMode mode) {
    if (m == 0 || n == 0) {
        throw Error(ErrorCode::BadShape, "dimensions must be positive");
    }
    size_t seed_bits = m + n - 1;
    size_t full = std::min(m, n);
    SingularFraction out{0.0, 0, 0, 0.0, 0};
    auto tally = [&](const Gf2Matrix &t) {
        size_t r = gf2_rank(t);
        out.evaluated++;
        if (r < full) {
            out.singular++;
        }
        out.max_rank_deficit = std::max(out.max_rank_deficit, m - std::min(m, r));
    };
    if (mode.kind == SingularMode::Kind::Exhaustive) {
        if (seed_bits > 24) {
            throw Error(ErrorCode::TooLarge, "exhaustive enumeration limited to 2^24 seeds");
        }
        for (uint64_t s = 0; s < (uint64_t{1} << seed_bits); s++) {
            tally(toeplitz_from_seed_value(s, m, n));
        }
    } else {
        if (mode.samples == 0) {
            throw Error(ErrorCode::BadParams, "sampling needs a positive sample count");
        }
        std::mt19937_64 rng(mode.seed);
        std::vector<uint8_t> seed(seed_bits);
        for (uint64_t s = 0; s < mode.samples; s++) {
            uint64_t word = 0;
            for (size_t t = 0; t < seed_bits; t++) {
                if (t % 64 == 0) {
                    word = rng();
                }
                seed[t] = static_cast<uint8_t>((word >> (t % 64)) & 1);
            }
            tally(toeplitz_from_seed(seed, m, n));
        }
    }
    out.fraction = static_cast<double>(out.singular) / static_cast<double>(out.evaluated);
    if (mode.kind == SingularMode::Kind::Sample) {
        out.standard_error = std::sqrt(out.fraction * (1 - out.fraction) / static_cast<double>(out.evaluated));
    }
    return out;
}

LinearCode::LinearCode(Gf2Matrix generator) : generator_(std::move(generator)) {
    if (generator_.cols() > 64) {
        throw Error(ErrorCode::InvalidCode, "block length limited to 64");
    }
    if (generator_.rows() > generator_.cols() || gf2_rank(generator_) != generator_.rows()) {
        throw Error(ErrorCode::InvalidCode, "generator must have full row rank");
    }
}

uint64_t LinearCode::encode(uint64_t message) const {
    uint64_t word = 0;
    for (size_t i = 0; i < k(); i++) {
        if ((message >> (k() - 1 - i)) & 1) {
            word ^= generator_.row_word(i);
        }
    }
    return word;
}

size_t LinearCode::min_distance() const {
    if (k() > 24) {
        throw Error(ErrorCode::TooLarge, "minimum distance enumeration limited to k <= 24");
    }
    size_t best = n();
    for (uint64_t msg = 1; msg < (uint64_t{1} << k()); msg++) {
        best = std::min(best, static_cast<size_t>(std::popcount(encode(msg))));
    }
    return best;
}

LinearCode parse_code(std::string_view text) {
    std::vector<std::string> rows;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string line(text.substr(start, end - start));
        size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] != '#') {
            rows.push_back(line);
        }
        start = end + 1;
    }
    if (rows.empty()) {
        throw Error(ErrorCode::ParseError, "code file has no generator rows");
    }
    return LinearCode(Gf2Matrix::from_rows(rows));
}

LinearCode hamming74() {
    return LinearCode(Gf2Matrix::from_rows({"1000110", "0100101", "0010011", "0001111"}));
}

LinearCode code52() {
    return LinearCode(Gf2Matrix::from_rows({"10110", "01011"}));
}

LinearCode repetition_code(size_t n) {
    return LinearCode(Gf2Matrix::from_rows({std::string(n, '1')}));
}

LinearCode identity_code(size_t n) {
    return LinearCode(Gf2Matrix::identity(n));
}

namespace {

// Basis of the dual code, each vector a word with position j at bit n-1-j.
std::vector<uint64_t> parity_checks(const LinearCode &code) {
    size_t n = code.n();
    std::vector<uint64_t> rows;
    for (size_t i = 0; i < code.k(); i++) {
        rows.push_back(code.generator().row_word(i));
    }
    auto bit_of = [n](size_t col) { return uint64_t{1} << (n - 1 - col); };
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < rows.size(); c++) {
        size_t p = rank;
        while (p < rows.size() && !(rows[p] & bit_of(c))) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[p]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && (rows[r] & bit_of(c))) {
                rows[r] ^= rows[rank];
            }
        }
        pivots.push_back(c);
        rank++;
    }
    std::vector<uint64_t> checks;
    for (size_t f = 0; f < n; f++) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) {
            continue;
        }
        uint64_t h = bit_of(f);
        for (size_t i = 0; i < pivots.size(); i++) {
            if (rows[i] & bit_of(f)) {
                h |= bit_of(pivots[i]);
            }
        }
        checks.push_back(h);
    }
    return checks;
}

uint64_t syndrome(uint64_t word, const std::vector<uint64_t> &checks) {
    uint64_t s = 0;
    for (uint64_t h : checks) {
        s = (s << 1) | static_cast<uint64_t>(std::popcount(word & h) & 1);
    }
    return s;
}

}  // namespace

RegionCensus decision_region_census(const LinearCode &code, DecodeRule rule) {
    size_t n = code.n();
    size_t k = code.k();
    if (n > 20) {
        throw Error(ErrorCode::TooLarge, "census enumerates 2^n words; n must be <= 20");
    }
    uint64_t words = uint64_t{1} << n;
    uint64_t messages = uint64_t{1} << k;
    std::vector<uint64_t> codewords(messages);
    std::vector<int64_t> message_of(words, -1);
    for (uint64_t msg = 0; msg < messages; msg++) {
        codewords[msg] = code.encode(msg);
        message_of[codewords[msg]] = static_cast<int64_t>(msg);
    }

    std::vector<uint64_t> sizes(messages, 0);
    if (rule == DecodeRule::Syndrome) {
        std::vector<uint64_t> checks = parity_checks(code);
        std::vector<uint64_t> order(words);
        for (uint64_t w = 0; w < words; w++) {
            order[w] = w;
        }
        std::stable_sort(order.begin(), order.end(),
                         [](uint64_t a, uint64_t b) { return std::popcount(a) < std::popcount(b); });
        std::vector<int64_t> leader(uint64_t{1} << checks.size(), -1);
        for (uint64_t w : order) {
            int64_t &slot = leader[syndrome(w, checks)];
            if (slot < 0) {
                slot = static_cast<int64_t>(w);
            }
        }
        for (uint64_t y = 0; y < words; y++) {
            uint64_t c = y ^ static_cast<uint64_t>(leader[syndrome(y, checks)]);
            sizes[static_cast<uint64_t>(message_of[c])]++;
        }
    } else {
        for (uint64_t y = 0; y < words; y++) {
            uint64_t best = 0;
            int best_dist = std::popcount(y ^ codewords[0]);
            for (uint64_t msg = 1; msg < messages; msg++) {
                int dist = std::popcount(y ^ codewords[msg]);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = msg;
                }
            }
            sizes[best]++;
        }
    }

    std::map<std::string, uint64_t> region_sizes;
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (uint64_t msg = 0; msg < messages; msg++) {
        std::string label = key_label(msg, static_cast<int>(k));
        region_sizes[label] = sizes[msg];
        labels.push_back(label);
        probs.push_back(static_cast<double>(sizes[msg]) / static_cast<double>(words));
    }
    ProbDist bias(labels, std::move(probs));
    double delta = variational_distance(bias, ProbDist::uniform(labels));
    return {std::move(region_sizes), std::move(bias), delta};
}

bool is_perfect_code(const LinearCode &code, size_t t) {
    size_t n = code.n();
    if (t > n) {
        return false;
    }
    unsigned __int128 ball = 0;
    unsigned __int128 binom = 1;
    for (size_t i = 0; i <= t; i++) {
        if (i > 0) {
            binom = binom * (n - i + 1) / i;
        }
        ball += binom;
    }
    return ball == (static_cast<unsigned __int128>(1) << (n - code.k()));
}

std::string census_to_csv(const RegionCensus &census) {
    CsvWriter w;
    w.row({"message", "region_size"});
    for (const auto &[msg, size] : census.region_sizes) {
        w.row({msg, std::to_string(size)});
    }
    return w.str();
}

}  // namespace qcrit
