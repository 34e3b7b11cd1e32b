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

// Dense linear algebra for systems of one to three spin-1/2 particles.
//
// Basis ordering: particle 1 is the most significant tensor factor, so the
// basis state |s1 s2 s3> sits at index s1*4 + s2*2 + s3. |0> is the +z
// eigenstate. Particles are numbered from 1 in every public signature.

#ifndef NQT_SPINALG_H
#define NQT_SPINALG_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace nqt {

using cplx = std::complex<double>;

/// Tolerance for single algebraic identities.
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for checks that compose several operations.
inline constexpr double kComposedTol = 1e-10;
/// Norm (or probability) below which a state is treated as zero.
inline constexpr double kZeroNorm = 1e-14;

inline constexpr std::size_t kMaxDim = 8;

struct Vec3 {
    double x = 0;
    double y = 0;
    double z = 0;

    double dot(const Vec3 &other) const {
        return x * other.x + y * other.y + z * other.z;
    }
    double norm() const;
    Vec3 operator*(double s) const {
        return {x * s, y * s, z * s};
    }
    Vec3 operator+(const Vec3 &o) const {
        return {x + o.x, y + o.y, z + o.z};
    }
    Vec3 operator-(const Vec3 &o) const {
        return {x - o.x, y - o.y, z - o.z};
    }
    Vec3 operator-() const {
        return {-x, -y, -z};
    }
    bool operator==(const Vec3 &) const = default;
};

/// Throws InvalidArgumentError unless |v| is within kComposedTol of one.
void require_unit(const Vec3 &v, const char *what);

/// Polarization vector (<sigma_x>, <sigma_y>, <sigma_z>) of one spin-1/2 particle.
struct BlochVector {
    double px = 0;
    double py = 0;
    double pz = 0;

    double norm() const;
    Vec3 vec() const {
        return {px, py, pz};
    }
    /// |P| <= 1 + kComposedTol.
    bool is_physical() const;
    bool operator==(const BlochVector &) const = default;
};

/// State vector over 2, 4 or 8 amplitudes.
class Ket {
   public:
    explicit Ket(Eigen::VectorXcd amplitudes);
    Ket(std::initializer_list<cplx> amplitudes);

    /// |index> in a space of dimension `dim`.
    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    std::size_t num_particles() const;
    cplx operator[](std::size_t i) const {
        return amps_[static_cast<Eigen::Index>(i)];
    }
    const Eigen::VectorXcd &vector() const {
        return amps_;
    }
    double norm() const {
        return amps_.norm();
    }
    bool is_normalized(double tol = kAlgebraTol) const;

   private:
    Eigen::VectorXcd amps_;
};

/// Square matrix acting on a Ket of the same dimension.
class Operator {
   public:
    explicit Operator(Eigen::MatrixXcd entries);

    static Operator identity(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    cplx trace() const {
        return m_.trace();
    }
    Operator adjoint() const {
        return Operator(m_.adjoint());
    }
    bool is_unitary(double tol = kAlgebraTol) const;
    bool is_hermitian(double tol = kAlgebraTol) const;

    /// Matrix product; throws DimensionError on mismatch.
    Operator operator*(const Operator &rhs) const;

   private:
    Eigen::MatrixXcd m_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. Validated on construction.
class DensityMatrix {
   public:
    /// Throws InvalidArgumentError if `entries` is not a valid density matrix.
    static DensityMatrix from_matrix(Eigen::MatrixXcd entries);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    std::size_t num_particles() const;
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    double trace() const {
        return m_.trace().real();
    }
    /// Smallest eigenvalue of the (Hermitian) matrix.
    double min_eigenvalue() const;

   private:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    }
    Eigen::MatrixXcd m_;
};

enum class PauliAxis { identity, x, y, z };

Ket tensor(const Ket &a, const Ket &b);
Operator tensor(const Operator &a, const Operator &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// <a|b>, conjugating the left argument.
cplx inner(const Ket &a, const Ket &b);
Ket apply(const Operator &u, const Ket &k);
/// Throws ZeroStateError when |k| < kZeroNorm.
Ket normalize(const Ket &k);

/// |k><k|; throws NotNormalizedError unless k has unit norm.
DensityMatrix density_from(const Ket &k);
/// (I + P.sigma)/2 for a single particle.
DensityMatrix density_from_bloch(const BlochVector &p);
/// u rho u^dagger.
DensityMatrix conjugate(const Operator &u, const DensityMatrix &rho);

/// Reduced state on the particles listed in `keep` (1-based, any order,
/// result ordered by particle number). `keep` must be a nonempty proper
/// subset of the particles of `rho`.
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<int> &keep);

Operator pauli(PauliAxis axis);

/// exp(-i angle (axis . sigma) / 2); `axis` must be a unit vector.
Operator rotation(const Vec3 &axis, double angle);

/// trace(rho sigma_i) for a single-particle rho.
BlochVector bloch_from(const DensityMatrix &rho);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> for the spherical angles of `n`.
Ket ket_from_direction(const Vec3 &n);

}  // namespace nqt

#endif
