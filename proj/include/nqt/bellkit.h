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

#ifndef NQT_BELLKIT_H
#define NQT_BELLKIT_H

#include <array>
#include <string_view>

#include "nqt/spinalg.h"

namespace nqt {

enum class BellLabel { psi_plus, psi_minus, phi_plus, phi_minus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::psi_plus, BellLabel::psi_minus, BellLabel::phi_plus, BellLabel::phi_minus};

std::string_view bell_name(BellLabel b);

/// psi+- = (|01> +- |10>)/sqrt2, phi+- = (|00> +- |11>)/sqrt2.
Ket bell_state(BellLabel b);

/// All four Bell states, indexed in kBellLabels order.
std::array<Ket, 4> bell_states();

/// One branch of a three-particle state expanded in the Bell basis of particles (1,2).
struct BellBranch {
    /// Magnitude and phase of the branch.
    cplx coefficient;
    /// Normalized particle-3 state; first nonzero amplitude real and positive.
    Ket conditional;
    /// False when the branch has zero amplitude; `conditional` is then |0> and meaningless.
    bool defined;
};

/// |Psi> = sum_B coefficient_B |B>_12 (x) conditional_B.
class BellDecomposition {
   public:
    explicit BellDecomposition(std::array<BellBranch, 4> branches) : branches_(std::move(branches)) {
    }

    const BellBranch &operator[](BellLabel b) const {
        return branches_[static_cast<std::size_t>(b)];
    }
    double probability(BellLabel b) const {
        return std::norm((*this)[b].coefficient);
    }
    /// Sum over branches of coefficient * bell(B) (x) conditional.
    Ket reconstruct() const;

   private:
    std::array<BellBranch, 4> branches_;
};

/// Expands a normalized 8-dim ket in the Bell basis of particles 1 and 2.
BellDecomposition decompose_12(const Ket &psi);

/// Born probability of finding particles 1,2 in Bell state `b`.
double outcome_probability(const Ket &psi, BellLabel b);

struct ProjectionResult {
    double probability;
    Ket conditional;
};

/// Projects particles 1,2 onto `b`; throws ZeroProbabilityError if the outcome is impossible.
ProjectionResult project_bell(const Ket &psi, BellLabel b);

/// |psi-><psi-|_12 (x) I_3.
Operator singlet_projector();

}  // namespace nqt

#endif
