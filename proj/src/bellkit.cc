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

#include "nqt/errors.h"

namespace nqt {

std::string_view bell_name(BellLabel b) {
    switch (b) {
        case BellLabel::psi_plus:
            return "psi_plus";
        case BellLabel::psi_minus:
            return "psi_minus";
        case BellLabel::phi_plus:
            return "phi_plus";
        case BellLabel::phi_minus:
            return "phi_minus";
    }
    return "?";
}

Ket bell_state(BellLabel b) {
    const double h = 1 / std::sqrt(2.0);
    switch (b) {
        case BellLabel::psi_plus:
            return Ket{0, h, h, 0};
        case BellLabel::psi_minus:
            return Ket{0, h, -h, 0};
        case BellLabel::phi_plus:
            return Ket{h, 0, 0, h};
        case BellLabel::phi_minus:
            return Ket{h, 0, 0, -h};
    }
    throw InvalidArgumentError("unknown Bell label");
}

std::array<Ket, 4> bell_states() {
    return {bell_state(kBellLabels[0]), bell_state(kBellLabels[1]), bell_state(kBellLabels[2]),
            bell_state(kBellLabels[3])};
}

Ket BellDecomposition::reconstruct() const {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(8);
    for (BellLabel b : kBellLabels) {
        const BellBranch &branch = (*this)[b];
        acc += branch.coefficient * tensor(bell_state(b), branch.conditional).vector();
    }
    return Ket(std::move(acc));
}

namespace {

// (<B|_12 (x) I_3) psi, unnormalized.
Eigen::Vector2cd contract_12(const Ket &psi, const Ket &bell) {
    Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
    for (std::size_t pair = 0; pair < 4; pair++) {
        for (std::size_t s3 = 0; s3 < 2; s3++) {
            v[static_cast<Eigen::Index>(s3)] += std::conj(bell[pair]) * psi[pair * 2 + s3];
        }
    }
    return v;
}

BellBranch make_branch(const Eigen::Vector2cd &v) {
    double magnitude = v.norm();
    if (!(magnitude > kZeroNorm)) {
        return {cplx(0), Ket::basis(2, 0), false};
    }
    // Phase reference: the larger amplitude when one is negligible, else the first.
    Eigen::Index ref = std::abs(v[0]) > kZeroNorm * magnitude ? 0 : 1;
    cplx phase = v[ref] / std::abs(v[ref]);
    Eigen::VectorXcd conditional = v / (magnitude * phase);
    conditional[ref] = std::abs(conditional[ref]);
    return {magnitude * phase, Ket(std::move(conditional)), true};
}

void require_three_particle_state(const Ket &psi) {
    if (psi.dim() != 8) {
        throw DimensionError("Bell decomposition requires a three-particle ket");
    }
    if (!psi.is_normalized()) {
        throw NotNormalizedError("Bell decomposition requires a normalized ket");
    }
}

}  // namespace

BellDecomposition decompose_12(const Ket &psi) {
    require_three_particle_state(psi);
    std::array<BellBranch, 4> branches{
        make_branch(contract_12(psi, bell_state(kBellLabels[0]))),
        make_branch(contract_12(psi, bell_state(kBellLabels[1]))),
        make_branch(contract_12(psi, bell_state(kBellLabels[2]))),
        make_branch(contract_12(psi, bell_state(kBellLabels[3]))),
    };
    return BellDecomposition(std::move(branches));
}

double outcome_probability(const Ket &psi, BellLabel b) {
    return decompose_12(psi).probability(b);
}

ProjectionResult project_bell(const Ket &psi, BellLabel b) {
    auto decomposition = decompose_12(psi);
    double p = decomposition.probability(b);
    if (!decomposition[b].defined || p < kZeroNorm) {
        throw ZeroProbabilityError("Bell outcome " + std::string(bell_name(b)) + " has zero probability");
    }
    return {p, decomposition[b].conditional};
}

Operator singlet_projector() {
    Ket s = bell_state(BellLabel::psi_minus);
    Operator p(s.vector() * s.vector().adjoint());
    return tensor(p, Operator::identity(2));
}

}  // namespace nqt
