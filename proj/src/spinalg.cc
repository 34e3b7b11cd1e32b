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

#include "nqt/spinalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nqt/errors.h"

namespace nqt {

namespace {

std::size_t particles_for_dim(std::size_t dim) {
    switch (dim) {
        case 2:
            return 1;
        case 4:
            return 2;
        case 8:
            return 3;
        default:
            throw DimensionError("dimension " + std::to_string(dim) + " is not 2, 4 or 8");
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char *op) {
    if (a != b) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
    }
}

void require_composite_dim(std::size_t a, std::size_t b) {
    if (a * b > kMaxDim) {
        throw DimensionError("tensor: composite of dimension " + std::to_string(a * b) +
                             " exceeds three particles");
    }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

double Vec3::norm() const {
    return std::sqrt(dot(*this));
}

void require_unit(const Vec3 &v, const char *what) {
    if (!std::isfinite(v.norm()) || std::abs(v.norm() - 1) > kComposedTol) {
        throw InvalidArgumentError(std::string(what) + " must be a unit vector");
    }
}

double BlochVector::norm() const {
    return vec().norm();
}

bool BlochVector::is_physical() const {
    return std::isfinite(norm()) && norm() <= 1 + kComposedTol;
}

Ket::Ket(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    particles_for_dim(dim());
}

Ket::Ket(std::initializer_list<cplx> amplitudes) : amps_(static_cast<Eigen::Index>(amplitudes.size())) {
    std::copy(amplitudes.begin(), amplitudes.end(), amps_.begin());
    particles_for_dim(dim());
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index out of range");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1;
    return Ket(std::move(v));
}

std::size_t Ket::num_particles() const {
    return particles_for_dim(dim());
}

bool Ket::is_normalized(double tol) const {
    return std::abs(amps_.squaredNorm() - 1) <= tol;
}

Operator::Operator(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
        throw DimensionError("operator matrix must be square");
    }
    particles_for_dim(dim());
}

Operator Operator::identity(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return Operator(Eigen::MatrixXcd::Identity(d, d));
}

bool Operator::is_unitary(double tol) const {
    auto d = m_.rows();
    return (m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::operator*(const Operator &rhs) const {
    require_same_dim(dim(), rhs.dim(), "operator product");
    return Operator(m_ * rhs.m_);
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd entries) {
    if (entries.rows() != entries.cols()) {
        throw DimensionError("density matrix must be square");
    }
    particles_for_dim(static_cast<std::size_t>(entries.rows()));
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
        throw InvalidArgumentError("density matrix is not Hermitian");
    }
    if (std::abs(entries.trace() - cplx(1)) > kAlgebraTol) {
        throw InvalidArgumentError("density matrix does not have unit trace");
    }
    DensityMatrix rho(std::move(entries));
    if (rho.min_eigenvalue() < -kComposedTol) {
        throw InvalidArgumentError("density matrix has a negative eigenvalue");
    }
    return rho;
}

std::size_t DensityMatrix::num_particles() const {
    return particles_for_dim(dim());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Ket tensor(const Ket &a, const Ket &b) {
    require_composite_dim(a.dim(), b.dim());
    return Ket(kron(a.vector(), b.vector()));
}

Operator tensor(const Operator &a, const Operator &b) {
    require_composite_dim(a.dim(), b.dim());
    return Operator(kron(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    require_composite_dim(a.dim(), b.dim());
    return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
}

cplx inner(const Ket &a, const Ket &b) {
    require_same_dim(a.dim(), b.dim(), "inner");
    return a.vector().dot(b.vector());
}

Ket apply(const Operator &u, const Ket &k) {
    require_same_dim(u.dim(), k.dim(), "apply");
    return Ket(u.matrix() * k.vector());
}

Ket normalize(const Ket &k) {
    double n = k.norm();
    if (!(n > kZeroNorm)) {
        throw ZeroStateError("cannot normalize a zero state");
    }
    return Ket(k.vector() / n);
}

DensityMatrix density_from(const Ket &k) {
    if (!k.is_normalized()) {
        throw NotNormalizedError("density_from requires a normalized ket");
    }
    Eigen::MatrixXcd m = k.vector() * k.vector().adjoint();
    // Exact Hermiticity; the outer product is Hermitian up to rounding only.
    m = (m + m.adjoint()) * 0.5;
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix density_from_bloch(const BlochVector &p) {
    if (!p.is_physical()) {
        throw InvalidArgumentError("Bloch vector longer than one");
    }
    Eigen::MatrixXcd m =
        0.5 * (pauli(PauliAxis::identity).matrix() + p.px * pauli(PauliAxis::x).matrix() +
               p.py * pauli(PauliAxis::y).matrix() + p.pz * pauli(PauliAxis::z).matrix());
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix conjugate(const Operator &u, const DensityMatrix &rho) {
    require_same_dim(u.dim(), rho.dim(), "conjugate");
    Eigen::MatrixXcd m = u.matrix() * rho.matrix() * u.matrix().adjoint();
    m = (m + m.adjoint()) * 0.5;
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep) {
    const int n = static_cast<int>(rho.num_particles());
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (kept.empty() || static_cast<int>(kept.size()) >= n ||
        std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 1 || kept.back() > n) {
        throw InvalidArgumentError("partial_trace: keep must be a nonempty proper subset of particles 1.." +
                                   std::to_string(n));
    }
    std::vector<int> traced;
    for (int p = 1; p <= n; p++) {
        if (!std::binary_search(kept.begin(), kept.end(), p)) {
            traced.push_back(p);
        }
    }

    // Scatter the bits of a sub-index onto the positions of the listed particles.
    auto scatter = [n](std::size_t sub, const std::vector<int> &particles) {
        std::size_t full = 0;
        for (std::size_t j = 0; j < particles.size(); j++) {
            std::size_t bit = (sub >> (particles.size() - 1 - j)) & 1;
            full |= bit << (n - particles[j]);
        }
        return full;
    };

    const std::size_t kept_dim = std::size_t{1} << kept.size();
    const std::size_t traced_dim = std::size_t{1} << traced.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_dim),
                                                  static_cast<Eigen::Index>(kept_dim));
    for (std::size_t r = 0; r < kept_dim; r++) {
        for (std::size_t c = 0; c < kept_dim; c++) {
            cplx acc = 0;
            for (std::size_t t = 0; t < traced_dim; t++) {
                std::size_t tb = scatter(t, traced);
                acc += rho(scatter(r, kept) | tb, scatter(c, kept) | tb);
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return DensityMatrix::from_matrix(std::move(out));
}

Operator pauli(PauliAxis axis) {
    Eigen::Matrix2cd m;
    const cplx i(0, 1);
    switch (axis) {
        case PauliAxis::identity:
            m << 1, 0, 0, 1;
            break;
        case PauliAxis::x:
            m << 0, 1, 1, 0;
            break;
        case PauliAxis::y:
            m << 0, -i, i, 0;
            break;
        case PauliAxis::z:
            m << 1, 0, 0, -1;
            break;
    }
    return Operator(m);
}

Operator rotation(const Vec3 &axis, double angle) {
    require_unit(axis, "rotation axis");
    const cplx i(0, 1);
    Eigen::MatrixXcd generator = axis.x * pauli(PauliAxis::x).matrix() + axis.y * pauli(PauliAxis::y).matrix() +
                                 axis.z * pauli(PauliAxis::z).matrix();
    Eigen::MatrixXcd m =
        std::cos(angle / 2) * Eigen::MatrixXcd::Identity(2, 2) - i * std::sin(angle / 2) * generator;
    return Operator(std::move(m));
}

BlochVector bloch_from(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionError("bloch_from requires a single-particle density matrix");
    }
    auto component = [&](PauliAxis a) {
        return (rho.matrix() * pauli(a).matrix()).trace().real();
    };
    return {component(PauliAxis::x), component(PauliAxis::y), component(PauliAxis::z)};
}

Ket ket_from_direction(const Vec3 &n) {
    require_unit(n, "direction");
    double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
    double phi = std::atan2(n.y, n.x);
    return Ket{cplx(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi)};
}

}  // namespace nqt
