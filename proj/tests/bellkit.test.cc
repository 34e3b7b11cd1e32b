// Copyright 2026 The nqt Authors
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

#include "nqt/bellkit.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "nqt/errors.h"
#include "test_util.h"

using namespace nqt;
using namespace nqt::testing;

namespace {

const double kH = 1 / std::sqrt(2.0);

// Beam a|0> + b|1> composed with (|01> + |10>)/sqrt2 on particles 2,3,
// written out index by index (s1*4 + s2*2 + s3).
Amplitudes teleportation_input(cplx a, cplx b) {
    return {0, a * kH, a * kH, 0, 0, b * kH, b * kH, 0};
}

// <B|_12 (x) I_3 applied by explicit sums over the particle-1,2 amplitudes.
std::array<cplx, 2> brute_force_branch(const Amplitudes &psi, const std::array<cplx, 4> &bell) {
    std::array<cplx, 2> v{0, 0};
    for (int s1 = 0; s1 < 2; s1++) {
        for (int s2 = 0; s2 < 2; s2++) {
            for (int s3 = 0; s3 < 2; s3++) {
                v[s3] += std::conj(bell[s1 * 2 + s2]) * psi[s1 * 4 + s2 * 2 + s3];
            }
        }
    }
    return v;
}

const std::array<cplx, 4> kPsiMinusAmps = {0, kH, -kH, 0};

// The conditional neutron states of the four-term expansion of the teleportation input.
Ket expected_conditional(BellLabel label, cplx a, cplx b) {
    switch (label) {
        case BellLabel::phi_plus:
            return Ket{b, a};
        case BellLabel::phi_minus:
            return Ket{-b, a};
        case BellLabel::psi_plus:
            return Ket{a, b};
        case BellLabel::psi_minus:
            return Ket{a, -b};
    }
    throw std::logic_error("label");
}

}  // namespace

TEST(bellkit, bell_states) {
    auto states = bell_states();
    EXPECT_NEAR(std::abs(inner(bell_state(BellLabel::psi_minus), bell_state(BellLabel::psi_minus)) - 1.0), 0,
                kAlgebraTol);
    EXPECT_EQ(inner(bell_state(BellLabel::phi_plus), bell_state(BellLabel::psi_plus)), cplx(0));
    auto psi_plus = bell_state(BellLabel::psi_plus);
    EXPECT_EQ(psi_plus[0], cplx(0));
    EXPECT_NEAR(psi_plus[1].real(), kH, kAlgebraTol);
    EXPECT_NEAR(psi_plus[2].real(), kH, kAlgebraTol);
    EXPECT_EQ(psi_plus[3], cplx(0));

    // Gram matrix.
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_EQ(states[i].dim(), 4u);
        for (std::size_t j = 0; j < 4; j++) {
            EXPECT_NEAR(std::abs(inner(states[i], states[j]) - cplx(i == j ? 1.0 : 0.0)), 0, kAlgebraTol);
        }
    }
}

TEST(bellkit, bell_names) {
    EXPECT_EQ(bell_name(BellLabel::psi_minus), "psi_minus");
    EXPECT_EQ(bell_name(BellLabel::phi_plus), "phi_plus");
}

TEST(bellkit, decompose_teleportation_input) {
    cplx a(0.6, 0.0), b(0.0, 0.8);
    auto d = decompose_12(to_ket(teleportation_input(a, b)));
    for (BellLabel label : kBellLabels) {
        EXPECT_NEAR(d.probability(label), 0.25, kAlgebraTol) << bell_name(label);
        EXPECT_TRUE(d[label].defined);
        EXPECT_NEAR(ket_distance_up_to_phase(d[label].conditional, expected_conditional(label, a, b)), 0,
                    kAlgebraTol)
            << bell_name(label);
    }
    // First nonzero amplitude of each conditional is real and positive.
    for (BellLabel label : kBellLabels) {
        EXPECT_NEAR(d[label].conditional[0].imag(), 0, kAlgebraTol);
        EXPECT_GT(d[label].conditional[0].real(), 0);
    }
    EXPECT_NEAR(ket_distance(d.reconstruct(), to_ket(teleportation_input(a, b))), 0, kAlgebraTol);
}

TEST(bellkit, decompose_flags_zero_branches) {
    auto d = decompose_12(tensor(bell_state(BellLabel::psi_plus), Ket{1, 0}));
    EXPECT_TRUE(d[BellLabel::psi_plus].defined);
    EXPECT_FALSE(d[BellLabel::psi_minus].defined);
    EXPECT_EQ(d[BellLabel::phi_minus].coefficient, cplx(0));
    EXPECT_NEAR(ket_distance(d.reconstruct(), tensor(bell_state(BellLabel::psi_plus), Ket{1, 0})), 0, kAlgebraTol);
}

TEST(bellkit, decompose_errors) {
    EXPECT_THROW(decompose_12(Ket::basis(4, 0)), DimensionError);
    EXPECT_THROW(decompose_12(Ket(Eigen::VectorXcd::Ones(8))), NotNormalizedError);
}

TEST(bellkit, outcome_probability) {
    Ket input = to_ket(teleportation_input(0.8, 0.6));
    EXPECT_NEAR(outcome_probability(input, BellLabel::psi_minus), 0.25, kAlgebraTol);
    auto branch = brute_force_branch(teleportation_input(0.8, 0.6), kPsiMinusAmps);
    EXPECT_NEAR(std::norm(branch[0]) + std::norm(branch[1]), 0.25, kAlgebraTol);

    Ket bell_product = tensor(bell_state(BellLabel::psi_plus), Ket{1, 0});
    EXPECT_NEAR(outcome_probability(bell_product, BellLabel::psi_plus), 1.0, kAlgebraTol);
    EXPECT_NEAR(outcome_probability(bell_product, BellLabel::phi_minus), 0.0, kAlgebraTol);
}

TEST(bellkit, project_bell) {
    auto r = project_bell(to_ket(teleportation_input(1, 0)), BellLabel::psi_minus);
    EXPECT_NEAR(r.probability, 0.25, kAlgebraTol);
    EXPECT_NEAR(ket_distance_up_to_phase(r.conditional, Ket{1, 0}), 0, kAlgebraTol);

    auto rx = project_bell(to_ket(teleportation_input(kH, kH)), BellLabel::psi_minus);
    EXPECT_NEAR(rx.probability, 0.25, kAlgebraTol);
    EXPECT_NEAR(ket_distance_up_to_phase(rx.conditional, Ket{kH, -kH}), 0, kAlgebraTol);

    EXPECT_THROW(project_bell(tensor(bell_state(BellLabel::psi_plus), Ket{1, 0}), BellLabel::phi_minus),
                 ZeroProbabilityError);
}

TEST(bellkit, singlet_projector) {
    Operator p = singlet_projector();
    EXPECT_EQ(p.dim(), 8u);
    EXPECT_NEAR(matrix_distance((p * p).matrix(), p.matrix()), 0, kAlgebraTol);
    EXPECT_TRUE(p.is_hermitian());
    EXPECT_NEAR(std::abs(p.trace() - cplx(2)), 0, kAlgebraTol);
    Ket input = to_ket(teleportation_input(0.6, cplx(0, 0.8)));
    EXPECT_NEAR(std::abs(inner(input, apply(p, input)) - cplx(0.25)), 0, kAlgebraTol);
}

TEST(bellkit, property_random_states_reconstruct) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 1000; k++) {
        Amplitudes psi = random_amplitudes(rng, 8);
        Ket ket = to_ket(psi);
        auto d = decompose_12(ket);
        EXPECT_NEAR(ket_distance(d.reconstruct(), ket), 0, kAlgebraTol);
        double total = 0;
        for (BellLabel label : kBellLabels) {
            total += d.probability(label);
        }
        EXPECT_NEAR(total, 1, kAlgebraTol);

        auto oracle = brute_force_branch(psi, kPsiMinusAmps);
        EXPECT_NEAR(d.probability(BellLabel::psi_minus), std::norm(oracle[0]) + std::norm(oracle[1]), kAlgebraTol);
    }
}

TEST(bellkit, property_random_beams_equal_branches) {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 200; k++) {
        Amplitudes beam = random_amplitudes(rng, 2);
        auto d = decompose_12(to_ket(teleportation_input(beam[0], beam[1])));
        for (BellLabel label : kBellLabels) {
            EXPECT_NEAR(d.probability(label), 0.25, kAlgebraTol);
            EXPECT_NEAR(
                ket_distance_up_to_phase(d[label].conditional, expected_conditional(label, beam[0], beam[1])), 0,
                kAlgebraTol);
        }
    }
}

TEST(bellkit, property_projection_matches_projector_path) {
    std::mt19937_64 rng(23);
    Operator p = singlet_projector();
    for (int k = 0; k < 100; k++) {
        Ket psi = random_ket(rng, 8);
        auto direct = project_bell(psi, BellLabel::psi_minus);

        Ket projected = apply(p, psi);
        double probability = projected.norm() * projected.norm();
        auto neutron = partial_trace(density_from(normalize(projected)), {3});

        EXPECT_NEAR(direct.probability, probability, kComposedTol);
        EXPECT_NEAR(matrix_distance(density_from(direct.conditional).matrix(), neutron.matrix()), 0, kComposedTol);
    }
}
