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

#include "gtest/gtest.h"

#include "oracles.test.h"
#include "qcrit/error.h"
#include "test_util.test.h"

using namespace qcrit;

TEST(qmath, trace_norm_matches_svd) {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 50; trial++) {
        Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 6);
        ComplexMatrix a = oracle::ginibre(rng, dim, dim);
        ComplexMatrix h = a + a.adjoint();
        ASSERT_NEAR(trace_norm(h), oracle::trace_norm_svd(h), 1e-10);
    }
}

TEST(qmath, trace_distance_qubit_bloch) {
    oracle::Rng rng(12);
    for (int trial = 0; trial < 100; trial++) {
        auto a = oracle::random_density(rng, 2);
        auto b = oracle::random_density(rng, 2);
        ASSERT_NEAR(trace_distance(a, b), oracle::qubit_trace_distance(a, b), 1e-12);
    }
}

TEST(qmath, trace_distance_pure_states) {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 50; trial++) {
        Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 4);
        ComplexVector u = oracle::ginibre(rng, dim, 1).col(0).normalized();
        ComplexVector v = oracle::ginibre(rng, dim, 1).col(0).normalized();
        PureState a(u), b(v);
        ASSERT_NEAR(trace_distance(a.projector(), b.projector()), oracle::pure_trace_distance(u, v), 1e-10);
    }
}

TEST(qmath, trace_distance_metric_properties) {
    oracle::Rng rng(14);
    for (int trial = 0; trial < 100; trial++) {
        Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 4);
        auto a = oracle::random_density(rng, dim);
        auto b = oracle::random_density(rng, dim);
        auto c = oracle::random_density(rng, dim);
        double ab = trace_distance(a, b);
        ASSERT_GE(ab, 0.0);
        ASSERT_LE(ab, 1.0 + 1e-12);
        ASSERT_NEAR(ab, trace_distance(b, a), 1e-12);
        ASSERT_NEAR(trace_distance(a, a), 0.0, 1e-12);
        ASSERT_LE(ab, trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    }
}

TEST(qmath, trace_distance_unitary_invariance) {
    oracle::Rng rng(15);
    for (int trial = 0; trial < 30; trial++) {
        Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 3);
        auto a = oracle::random_density(rng, dim);
        auto b = oracle::random_density(rng, dim);
        ComplexMatrix u = oracle::random_unitary(rng, dim);
        auto ua = validate_density(u * a.matrix() * u.adjoint());
        auto ub = validate_density(u * b.matrix() * u.adjoint());
        ASSERT_NEAR(trace_distance(a, b), trace_distance(ua, ub), 1e-10);
    }
}

TEST(qmath, partial_trace_contracts_trace_distance) {
    oracle::Rng rng(16);
    for (int trial = 0; trial < 50; trial++) {
        auto a = oracle::random_density(rng, 4);
        auto b = oracle::random_density(rng, 4);
        double full = trace_distance(a, b);
        for (Factor keep : {Factor::First, Factor::Second}) {
            auto pa = partial_trace(a, {2, 2}, keep);
            auto pb = partial_trace(b, {2, 2}, keep);
            ASSERT_LE(trace_distance(pa, pb), full + 1e-12);
        }
    }
}

TEST(qmath, partial_trace_of_product) {
    oracle::Rng rng(17);
    auto a = oracle::random_density(rng, 2);
    auto b = oracle::random_density(rng, 3);
    auto ab = tensor(a, b);
    ASSERT_EQ(ab.dim(), 6);
    ASSERT_TRUE(partial_trace(ab, {2, 3}, Factor::First).matrix().isApprox(a.matrix(), 1e-12));
    ASSERT_TRUE(partial_trace(ab, {2, 3}, Factor::Second).matrix().isApprox(b.matrix(), 1e-12));
    ASSERT_EQ(code_of([&] { partial_trace(ab, {2, 2}, Factor::First); }), ErrorCode::DimMismatch);
}

TEST(qmath, tensor_kron_layout) {
    ComplexMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    ComplexMatrix ab = tensor(a, b);
    ASSERT_EQ(ab(0, 1), Complex(1));
    ASSERT_EQ(ab(1, 2), Complex(2));
    ASSERT_EQ(ab(3, 2), Complex(4));
    ASSERT_EQ(ab(0, 0), Complex(0));
}

TEST(qmath, hermitian_eigen_reconstructs) {
    oracle::Rng rng(18);
    for (int trial = 0; trial < 30; trial++) {
        Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng() % 6);
        ComplexMatrix g = oracle::ginibre(rng, dim, dim);
        ComplexMatrix h = g + g.adjoint();
        HermitianEigen e = hermitian_eigen(h);
        for (Eigen::Index i = 1; i < dim; i++) {
            ASSERT_GE(e.values(i - 1), e.values(i));
        }
        ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        ASSERT_TRUE(back.isApprox(h, 1e-10));
        ASSERT_TRUE((e.vectors.adjoint() * e.vectors).isIdentity(1e-10));
        // First significant component of each eigenvector is real positive.
        for (Eigen::Index j = 0; j < dim; j++) {
            for (Eigen::Index i = 0; i < dim; i++) {
                if (std::abs(e.vectors(i, j)) > 1e-12) {
                    ASSERT_GT(e.vectors(i, j).real(), 0);
                    ASSERT_NEAR(e.vectors(i, j).imag(), 0, 1e-12);
                    break;
                }
            }
        }
    }
}

TEST(qmath, hermitian_eigen_rejects_non_hermitian) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    ASSERT_EQ(code_of([&] { hermitian_eigen(m); }), ErrorCode::NotHermitian);
}

TEST(qmath, validate_density_errors) {
    ComplexMatrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    ASSERT_EQ(code_of([&] { validate_density(neg); }), ErrorCode::NotPsd);
    ComplexMatrix big(2, 2);
    big << 1, 0, 0, 1;
    ASSERT_EQ(code_of([&] { validate_density(big); }), ErrorCode::BadTrace);
    ComplexMatrix skew(2, 2);
    skew << 0.5, 0.1, 0.3, 0.5;
    ASSERT_EQ(code_of([&] { validate_density(skew); }), ErrorCode::NotHermitian);
    ComplexMatrix rect(2, 3);
    rect.setZero();
    ASSERT_THROW(validate_density(rect), Error);
}

TEST(qmath, pure_state_norm) {
    ComplexVector v(2);
    v << 1, 1;
    ASSERT_EQ(code_of([&] { PureState p(v); }), ErrorCode::BadNorm);
    v /= std::sqrt(2.0);
    PureState p(v);
    ASSERT_NEAR(p.projector().matrix()(0, 1).real(), 0.5, 1e-15);
}

TEST(qmath, constructors) {
    ASSERT_TRUE(maximally_mixed(3).matrix().isApprox(ComplexMatrix::Identity(3, 3) / 3.0));
    double diag[] = {0.25, 0.75};
    ASSERT_EQ(diagonal_state(diag).matrix()(1, 1), Complex(0.75));
    auto plus = bloch_state(1, 0, 0);
    ASSERT_NEAR(plus.matrix()(0, 1).real(), 0.5, 1e-15);
    ASSERT_THROW(bloch_state(1, 1, 0), Error);
    ASSERT_EQ(basis_state(4, 2).amplitudes()(2), Complex(1));
    double w[] = {0.5, 0.5};
    DensityOperator states[] = {bloch_state(0, 0, 1), bloch_state(0, 0, -1)};
    ASSERT_TRUE(mixture(w, states).matrix().isApprox(maximally_mixed(2).matrix()));
}

TEST(qmath, positive_part_projector) {
    ComplexMatrix h(2, 2);
    h << 0.3, 0, 0, -0.2;
    ComplexMatrix p = positive_part_projector(h);
    ASSERT_NEAR(p(0, 0).real(), 1, 1e-15);
    ASSERT_NEAR(p(1, 1).real(), 0, 1e-15);
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    ASSERT_TRUE(positive_part_projector(zero).isZero());
}
