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

// Spin teleportation from a beam proton (particle 1) onto the neutron
// (particle 3) of an m_s = 0 deuteron (particles 2,3), with only the psi-
// outcome of the two outgoing protons discriminated.

#ifndef NQT_TELEPORT_H
#define NQT_TELEPORT_H

#include <optional>
#include <string_view>

#include "nqt/bellkit.h"
#include "nqt/rng.h"
#include "nqt/spinalg.h"

namespace nqt {

/// Pure beam spin state a|0> + b|1>.
class BeamState {
   public:
    /// Throws NotNormalizedError unless |a|^2 + |b|^2 = 1 within kAlgebraTol.
    static BeamState from_amplitudes(cplx a, cplx b);
    /// Fully polarized along the unit vector `direction`.
    static BeamState from_direction(const Vec3 &direction);

    cplx a() const {
        return a_;
    }
    cplx b() const {
        return b_;
    }

   private:
    BeamState(cplx a, cplx b) : a_(a), b_(b) {
    }
    cplx a_;
    cplx b_;
};

/// Unitary applied to the neutron after a psi- outcome.
class CorrectionPolicy {
   public:
    enum class Kind { none, sigma_z, ry_pi, custom };

    static CorrectionPolicy none() {
        return CorrectionPolicy(Kind::none);
    }
    static CorrectionPolicy sigma_z() {
        return CorrectionPolicy(Kind::sigma_z);
    }
    static CorrectionPolicy ry_pi() {
        return CorrectionPolicy(Kind::ry_pi);
    }
    /// Throws InvalidArgumentError unless `u` is a 2x2 unitary.
    static CorrectionPolicy custom(Operator u);
    /// Parses "none", "sigma_z" or "ry_pi".
    static CorrectionPolicy parse(std::string_view name);

    Kind kind() const {
        return kind_;
    }
    std::string_view name() const;
    /// The operator this policy applies.
    Operator op() const;

   private:
    explicit CorrectionPolicy(Kind k) : kind_(k) {
    }
    Kind kind_;
    std::optional<Operator> custom_;
};

struct TeleportResult {
    BellLabel outcome;
    double probability;
    Ket neutron_pre;
    /// Present only for the psi- outcome; other outcomes are never corrected.
    std::optional<Ket> neutron_post;
    double fidelity_pre;
    std::optional<double> fidelity_post;
};

/// The m_s = 0 deuteron spin state (|01> + |10>)/sqrt2 on particles (2,3).
Ket prepare_deuteron();
Ket prepare_beam(const BeamState &s);
/// beam (x) deuteron in particle order (1,2,3).
Ket compose(const Ket &beam, const Ket &deuteron);

/// |<x|y>|^2 for single-particle kets.
double fidelity(const Ket &x, const Ket &y);

Operator correction(const CorrectionPolicy &policy);

/// Conditions on psi- and applies `policy` to the neutron.
TeleportResult run_postselected(const BeamState &s, const CorrectionPolicy &policy);

/// Draws the Bell outcome from its Born distribution, consuming exactly one
/// variate of `rng`. Only a psi- outcome is corrected.
TeleportResult run_sampled(const BeamState &s, const CorrectionPolicy &policy, UniformStream &rng);
TeleportResult run_sampled(const BeamState &s, const CorrectionPolicy &policy, uint64_t seed);

struct DensityTeleportResult {
    double probability;
    DensityMatrix neutron;
};

/// Mixed-beam generalization of run_postselected (no correction applied):
/// projects rho_beam (x) |deuteron><deuteron| with the singlet projector and
/// traces out both protons.
DensityTeleportResult postselected_neutron_density(const DensityMatrix &beam);

}  // namespace nqt

#endif
