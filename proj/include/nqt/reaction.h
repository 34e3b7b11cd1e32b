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

// Experiment-level model of polarized-proton knockout on an m = 0 polarized
// deuteron target with the two outgoing protons selected in their singlet.
//
// Two neutron-polarization models are compared:
//   conventional  only the y -> y' transfer K survives: (0, K P_y, 0).
//   teleported    the psi- branch carries (-P_x, -P_y, P_z); a fraction
//                 1 - f (1 - epsilon) of the selected events is replaced by
//                 the conventional background, where f is the m = 0 population.
// Polarizations are reported before any correction, as the neutron is
// measured directly.

#ifndef NQT_REACTION_H
#define NQT_REACTION_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nqt/spinalg.h"

namespace nqt {

/// Deuteron magnetic-substate populations for m = +1, 0, -1.
class TargetSpec {
   public:
    /// Throws InvalidArgumentError unless each population is in [0,1] and they sum to one.
    static TargetSpec make(double p_plus, double p_zero, double p_minus);
    /// Pure m = 0 target.
    static TargetSpec ideal() {
        return TargetSpec(0, 1, 0);
    }

    double p_plus() const {
        return p_plus_;
    }
    double p_zero() const {
        return p_zero_;
    }
    double p_minus() const {
        return p_minus_;
    }
    bool operator==(const TargetSpec &) const = default;

   private:
    TargetSpec(double p, double z, double m) : p_plus_(p), p_zero_(z), p_minus_(m) {
    }
    double p_plus_;
    double p_zero_;
    double p_minus_;
};

struct TargetMoments {
    double p_z;
    double p_zz;
};

struct ExperimentConfig {
    Vec3 beam_direction{0, 0, 1};
    double beam_magnitude = 1.0;
    /// Fraction of selected events that do not come from the singlet teleportation channel.
    double epsilon = 0.04;
    /// Conventional polarization-transfer coefficient K_y^y'.
    double k_transfer = -0.1;
    TargetSpec target = TargetSpec::ideal();
    std::int64_t events = 100000;
    std::uint64_t seed = 0;
    /// Metadata only; does not enter the model.
    double beam_energy_mev = 170.0;
    std::vector<Vec3> analyzer_axes{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    /// Beam polarization vector, beam_magnitude * beam_direction.
    Vec3 beam_polarization() const {
        return beam_direction * beam_magnitude;
    }
    /// Throws InvalidArgumentError on out-of-range fields.
    void validate() const;
};

struct ModelPrediction {
    BlochVector qt_bloch;
    BlochVector conventional_bloch;
    /// |qt| / max(|conventional|, kEnhancementFloor).
    double enhancement;
};

inline constexpr double kEnhancementFloor = 1e-6;

TargetMoments target_moments(const TargetSpec &t);

/// Fraction of the target in the m = 0 teleportation channel.
double channel_purity(const TargetSpec &t);

/// Weight of the teleported branch among selected events, f (1 - epsilon).
double teleported_weight(const ExperimentConfig &config);

/// Throws InvariantViolation if a predicted polarization is unphysical.
ModelPrediction predict(const ExperimentConfig &config);

struct CorrelationRow {
    std::string beam_axis;
    BlochVector beam;
    BlochVector qt_bloch;
    BlochVector conventional_bloch;
    /// Teleported-model polarization along the beam axis.
    double dominant;
    /// Dominant component opposite to the beam polarization.
    bool flip;
    /// Set on the y row: the Born rule flips y, contrary to the no-flip
    /// expectation quoted for y-polarized beams.
    bool y_discrepancy;
    std::string note;
};

/// One row per beam axis x, y, z, each using `config` with the beam direction replaced.
std::vector<CorrelationRow> correlation_table(const ExperimentConfig &config);

struct EventRecord {
    std::int64_t event_id;
    bool accepted;
    bool teleported;
    int axis_index;
    /// +1 or -1; 0 for rejected events, which are not measured.
    int spin_outcome;
};

struct AxisEstimate {
    Vec3 axis;
    /// (N+ - N-) / (N+ + N-); nullopt when no accepted event was measured on this axis.
    std::optional<double> p_hat;
    /// sqrt((1 - p_hat^2) / n_events).
    std::optional<double> sigma;
    std::int64_t n_events;
};

using PolarimetryEstimate = std::vector<AxisEstimate>;

struct SimulationResult {
    std::vector<EventRecord> records;
    PolarimetryEstimate estimates;
};

struct SimulateOptions {
    /// Worker threads; results do not depend on this.
    int workers = 1;
};

/// Generates `config.events` events. Event i draws only from the random
/// stream (config.seed, i), so the output is bit-identical for any worker
/// count.
SimulationResult simulate(const ExperimentConfig &config, const SimulateOptions &options = {});

/// Builds per-axis estimates from event records.
PolarimetryEstimate estimate(const std::vector<EventRecord> &records, const std::vector<Vec3> &axes);

/// accepted / total; throws InvalidArgumentError on an empty list.
double acceptance_fraction(const std::vector<EventRecord> &records);

}  // namespace nqt

#endif
