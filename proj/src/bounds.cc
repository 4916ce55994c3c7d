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

#include "qcrit/bounds.h"

#include <cmath>
#include <limits>

#include "qcrit/csv.h"
#include "qcrit/error.h"

namespace qcrit {

double log2_add(double a, double b) {
    if (std::isinf(a) && a < 0) {
        return b;
    }
    if (std::isinf(b) && b < 0) {
        return a;
    }
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

double markov_bound(double mean, double threshold) {
    if (!(mean >= 0) || !(threshold > 0)) {
        throw Error(ErrorCode::BadParams, "markov_bound needs mean >= 0 and threshold > 0");
    }
    return std::min(1.0, mean / threshold);
}

IndividualGuarantee average_for_individual_guarantee(double eps, double delta) {
    return chained_individual_guarantee(eps, delta, 1);
}

IndividualGuarantee chained_individual_guarantee(double eps, double delta, int count) {
    if (!(eps > 0 && eps <= 1) || !(delta > 0 && delta <= 1) || count < 0) {
        throw Error(ErrorCode::BadParams, "eps and delta must lie in (0, 1]; count must be nonnegative");
    }
    double log2_req = std::log2(eps) + count * std::log2(delta);
    double factor = std::pow(delta, count);
    return {eps * factor, log2_req, factor};
}

double hypothesis_ii_cap(double d) {
    if (!(d >= 0.0 && d <= 0.5)) {
        throw Error(ErrorCode::BadRange, "d must lie in [0, 1/2]");
    }
    return 0.5 + 0.5 * d;
}

double hypothesis_ii_exact(const DensityOperator &sigma0, const DensityOperator &sigma1, double d) {
    if (sigma0.dim() != sigma1.dim()) {
        throw Error(ErrorCode::DimMismatch, "sigma0 and sigma1 differ in dimension");
    }
    if (!(d >= 0.0 && d <= 0.5)) {
        throw Error(ErrorCode::BadRange, "d must lie in [0, 1/2]");
    }
    return 0.5 + 0.25 * d * trace_norm(sigma0.matrix() - sigma1.matrix());
}

GuaranteeScenario bb84_reference_scenario() {
    return {1000, 16, 100, 1e-5, std::ldexp(1.0, -16)};
}

std::vector<ComparisonRow> uniform_comparison_table(const GuaranteeScenario &s, std::span<const int> ms) {
    if (s.n <= 0 || s.l < 0 || !(s.epsilon >= 0 && s.epsilon < 1)) {
        throw Error(ErrorCode::BadParams, "scenario needs n > 0, l >= 0 and epsilon in [0, 1)");
    }
    double log2_eps = s.epsilon > 0 ? std::log2(s.epsilon) : -std::numeric_limits<double>::infinity();
    std::vector<ComparisonRow> rows;
    for (int m : ms) {
        if (m <= 0 || m > s.n) {
            throw Error(ErrorCode::BadParams, "subsequence length must satisfy 0 < m <= n");
        }
        ComparisonRow r{};
        r.m = m;
        r.log2_uniform_prob = -static_cast<double>(m);
        r.log2_d_guarantee_bound = log2_add(r.log2_uniform_prob, log2_eps);
        r.log2_spiked_worst = -static_cast<double>(s.l);
        r.log2_ratio = r.log2_d_guarantee_bound - r.log2_uniform_prob;
        r.uniform_prob = std::exp2(r.log2_uniform_prob);
        r.d_guarantee_bound = std::exp2(r.log2_d_guarantee_bound);
        r.spiked_worst = std::exp2(r.log2_spiked_worst);
        r.ratio = std::exp2(r.log2_ratio);
        rows.push_back(r);
    }
    return rows;
}

std::vector<ComparisonRow> uniform_comparison_table(const GuaranteeScenario &s) {
    int m = s.m;
    return uniform_comparison_table(s, std::span<const int>(&m, 1));
}

std::vector<std::string> comparison_header() {
    return {"m",
            "uniform_prob",
            "log2_uniform_prob",
            "d_guarantee_bound",
            "log2_d_guarantee_bound",
            "spiked_worst",
            "log2_spiked_worst",
            "ratio",
            "log2_ratio"};
}

std::vector<std::vector<std::string>> comparison_cells(const std::vector<ComparisonRow> &rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto &r : rows) {
        out.push_back({std::to_string(r.m), format_double(r.uniform_prob), format_double(r.log2_uniform_prob),
                       format_double(r.d_guarantee_bound), format_double(r.log2_d_guarantee_bound),
                       format_double(r.spiked_worst), format_double(r.log2_spiked_worst), format_double(r.ratio),
                       format_double(r.log2_ratio)});
    }
    return out;
}

std::string comparison_to_csv(const std::vector<ComparisonRow> &rows) {
    CsvWriter w;
    w.row(comparison_header());
    for (const auto &cells : comparison_cells(rows)) {
        w.row(cells);
    }
    return w.str();
}

std::string comparison_to_markdown(const std::vector<ComparisonRow> &rows) {
    return markdown_table(comparison_header(), comparison_cells(rows));
}

}  // namespace qcrit
