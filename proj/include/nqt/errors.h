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

#ifndef NQT_ERRORS_H
#define NQT_ERRORS_H

#include <stdexcept>
#include <string>

namespace nqt {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree, or a composite would exceed three particles.
struct DimensionError : Error {
    using Error::Error;
};

/// A state that should have unit norm does not.
struct NotNormalizedError : Error {
    using Error::Error;
};

/// Normalizing a (numerically) zero vector.
struct ZeroStateError : Error {
    using Error::Error;
};

/// Conditioning on a measurement outcome that cannot occur.
struct ZeroProbabilityError : Error {
    using Error::Error;
};

/// An argument is outside its documented domain (non-unit axis, bad subsystem set, ...).
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// A computed quantity broke a physical invariant (e.g. a Bloch vector longer than one).
struct InvariantViolation : Error {
    using Error::Error;
};

}  // namespace nqt

#endif
