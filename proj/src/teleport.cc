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

#include "nqt/teleport.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nqt/errors.h"

namespace nqt {

BeamState BeamState::from_amplitudes(cplx a, cplx b) {
    double n2 = std::norm(a) + std::norm(b);
    if (!(std::abs(n2 - 1) <= kAlgebraTol)) {
        throw NotNormalizedError("beam amplitudes must satisfy |a|^2 + |b|^2 = 1");
    }
    return BeamState(a, b);
}

BeamState BeamState::from_direction(const Vec3 &direction) {
    Ket k = ket_from_direction(direction);
    return BeamState(k[0], k[1]);
}

CorrectionPolicy CorrectionPolicy::custom(Operator u) {
    if (u.dim() != 2 || !u.is_unitary()) {
        throw InvalidArgumentError("custom correction must be a 2x2 unitary");
    }
    CorrectionPolicy p(Kind::custom);
    p.custom_ = std::move(u);
    return p;
}

CorrectionPolicy CorrectionPolicy::parse(std::string_view name) {
    if (name == "none") {
        return none();
    }
    if (name == "sigma_z") {
        return sigma_z();
    }
    if (name == "ry_pi") {
        return ry_pi();
    }
    throw InvalidArgumentError("unknown correction policy '" + std::string(name) + "'");
}

std::string_view CorrectionPolicy::name() const {
    switch (kind_) {
        case Kind::none:
            return "none";
        case Kind::sigma_z:
            return "sigma_z";
        case Kind::ry_pi:
            return "ry_pi";
        case Kind::custom:
            return "custom";
    }
    return "?";
}

Operator CorrectionPolicy::op() const {
    switch (kind_) {
        case Kind::none:
            return Operator::identity(2);
        case Kind::sigma_z:
            return pauli(PauliAxis::z);
        case Kind::ry_pi:
            return rotation({0, 1, 0}, std::numbers::pi);
        case Kind::custom:
            return *custom_;
    }
    throw InvalidArgumentError("unknown correction policy");
}

Ket prepare_deuteron() {
    return bell_state(BellLabel::psi_plus);
}

Ket prepare_beam(const BeamState &s) {
    return Ket{s.a(), s.b()};
}

Ket compose(const Ket &beam, const Ket &deuteron) {
    if (beam.dim() != 2 || deuteron.dim() != 4) {
        throw DimensionError("compose expects a one-particle beam and a two-particle deuteron");
    }
    if (!beam.is_normalized() || !deuteron.is_normalized()) {
        throw NotNormalizedError("compose expects normalized inputs");
    }
    return tensor(beam, deuteron);
}

double fidelity(const Ket &x, const Ket &y) {
    if (x.dim() != 2 || y.dim() != 2) {
        throw DimensionError("fidelity compares single-particle kets");
    }
    return std::min(1.0, std::norm(inner(x, y)));
}

Operator correction(const CorrectionPolicy &policy) {
    return policy.op();
}

namespace {

TeleportResult make_result(const Ket &beam, BellLabel outcome, double probability, const Ket &neutron,
                           const CorrectionPolicy &policy) {
    TeleportResult r{outcome, probability, neutron, std::nullopt, fidelity(beam, neutron), std::nullopt};
    if (outcome == BellLabel::psi_minus) {
        Ket post = apply(correction(policy), neutron);
        r.fidelity_post = fidelity(beam, post);
        r.neutron_post = std::move(post);
    }
    return r;
}

}  // namespace

TeleportResult run_postselected(const BeamState &s, const CorrectionPolicy &policy) {
    Ket beam = prepare_beam(s);
    auto projected = project_bell(compose(beam, prepare_deuteron()), BellLabel::psi_minus);
    return make_result(beam, BellLabel::psi_minus, projected.probability, projected.conditional, policy);
}

TeleportResult run_sampled(const BeamState &s, const CorrectionPolicy &policy, UniformStream &rng) {
    Ket beam = prepare_beam(s);
    auto decomposition = decompose_12(compose(beam, prepare_deuteron()));
    double u = rng.next_uniform();

    // Inverse-CDF over the defined branches; the last defined branch absorbs rounding.
    std::optional<BellLabel> chosen;
    double cumulative = 0;
    for (BellLabel b : kBellLabels) {
        if (!decomposition[b].defined) {
            continue;
        }
        chosen = b;
        cumulative += decomposition.probability(b);
        if (u < cumulative) {
            break;
        }
    }
    if (!chosen) {
        throw InvariantViolation("Bell decomposition has no defined branch");
    }
    return make_result(beam, *chosen, decomposition.probability(*chosen), decomposition[*chosen].conditional,
                       policy);
}

TeleportResult run_sampled(const BeamState &s, const CorrectionPolicy &policy, uint64_t seed) {
    UniformStream rng(seed);
    return run_sampled(s, policy, rng);
}

DensityTeleportResult postselected_neutron_density(const DensityMatrix &beam) {
    if (beam.dim() != 2) {
        throw DimensionError("beam density matrix must be single-particle");
    }
    DensityMatrix full = tensor(beam, density_from(prepare_deuteron()));
    Operator p = singlet_projector();
    Eigen::MatrixXcd projected = p.matrix() * full.matrix() * p.matrix();
    double probability = projected.trace().real();
    if (probability < kZeroNorm) {
        throw ZeroProbabilityError("singlet outcome has zero probability");
    }
    projected /= probability;
    projected = (projected + projected.adjoint()) * 0.5;
    return {probability, partial_trace(DensityMatrix::from_matrix(std::move(projected)), {3})};
}

}  // namespace nqt
