// Copyright 2026 the memsforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "memsforge/matrix.hpp"

namespace memsforge {

// Basis order |00>,|01>,|10>,|11> with 0 = H, 1 = V; composite row-major
// index (ab) = 2a+b throughout.

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigTol = 1e-10;

template <typename Mat>
void validate_density(const Mat& m, const char* what) {
    if (!m.allFinite())
        throw StateError(std::string(what) + ": non-finite entries");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw StateError(std::string(what) + ": not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > kTraceTol ||
        std::abs(m.trace().imag()) > kTraceTol)
        throw StateError(std::string(what) + ": trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigTol)
        throw StateError(std::string(what) + ": negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
}

}  // namespace detail

/// 4x4 density matrix of two polarization qubits. Validated on construction:
/// Hermitian, unit trace, positive semidefinite (up to roundoff tolerances).
class TwoQubitState {
public:
    explicit TwoQubitState(const Matrix4& m) : m_(m) {
        detail::validate_density(m_, "TwoQubitState");
    }
    const Matrix4& matrix() const { return m_; }

private:
    Matrix4 m_;
};

class OneQubitState {
public:
    explicit OneQubitState(const Matrix2& m) : m_(m) {
        detail::validate_density(m_, "OneQubitState");
    }
    const Matrix2& matrix() const { return m_; }

private:
    Matrix2 m_;
};

// Index reshuffling: X^R_{(ik),(jl)} = X_{(ij),(kl)}. Involutive.
inline Matrix4 reshuffle(const Matrix4& x) {
    Matrix4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = x(2 * i + j, 2 * k + l);
    return r;
}

/// Singlet |psi_s> = (|01> - |10>)/sqrt(2).
inline TwoQubitState singlet() {
    Matrix4 m = Matrix4::Zero();
    m(1, 1) = m(2, 2) = 0.5;
    m(1, 2) = m(2, 1) = -0.5;
    return TwoQubitState(m);
}

/// Werner state p*singlet + (1-p)/4 * I.
inline TwoQubitState werner(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("werner: p outside [0,1]");
    Matrix4 m = p * singlet().matrix() +
                (1.0 - p) / 4.0 * Matrix4::Identity();
    return TwoQubitState(m);
}

/// MEMS I family: p |phi+><phi+| + (1-p)|01><01|. MEMS regime is
/// p in [2/3, 1]; smaller p still yields a valid (non-MEMS) mixed state.
inline TwoQubitState mems1(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("mems1: p outside [0,1]");
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(3, 3) = m(0, 3) = m(3, 0) = p / 2.0;
    m(1, 1) = 1.0 - p;
    return TwoQubitState(m);
}

/// MEMS II family, constant-1/3 diagonal with coherence c/2. Out-of-paper
/// parametrization adopted from the standard MEMS literature.
inline TwoQubitState mems2(double c) {
    if (!(c > 0.0 && c <= 2.0 / 3.0))
        throw std::domain_error("mems2: c outside (0, 2/3]");
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(1, 1) = m(3, 3) = 1.0 / 3.0;
    m(0, 3) = m(3, 0) = c / 2.0;
    return TwoQubitState(m);
}

/// Linear entropy S_L = (4/3)(1 - Tr rho^2), in [0,1].
inline double linear_entropy(const TwoQubitState& rho) {
    double purity = (rho.matrix() * rho.matrix()).trace().real();
    return 4.0 / 3.0 * (1.0 - purity);
}

/// Tangle (concurrence squared): eigenvalues of
/// rho (sy x sy) rho* (sy x sy), sorted descending, in
/// [max(0, sqrt(l0)-sqrt(l1)-sqrt(l2)-sqrt(l3))]^2.
/// Complex conjugation taken in the computational basis.
inline double tangle(const TwoQubitState& rho) {
    const Matrix4 yy = kron(pauli(2), pauli(2));
    Matrix4 spin_flipped = rho.matrix() * yy * rho.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4> es(spin_flipped, false);
    Eigen::Vector4d lam;
    for (int i = 0; i < 4; ++i) {
        Complex e = es.eigenvalues()(i);
        // residual imaginary parts below 1e-12 are roundoff
        lam(i) = std::max(0.0, e.real());
    }
    std::sort(lam.data(), lam.data() + 4, std::greater<double>());
    double c = std::sqrt(lam(0)) - std::sqrt(lam(1)) - std::sqrt(lam(2)) -
               std::sqrt(lam(3));
    c = std::max(0.0, c);
    return c * c;
}

namespace detail {

// Hermitian square root with negative eigenvalues clamped to zero.
inline Matrix4 psd_sqrt(const Matrix4& m) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m);
    Eigen::Vector4d d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace detail

/// Uhlmann fidelity F = |Tr sqrt(sqrt(rho) sigma sqrt(rho))|^2.
inline double fidelity(const TwoQubitState& rho, const TwoQubitState& sigma) {
    Matrix4 sr = detail::psd_sqrt(rho.matrix());
    Matrix4 inner = detail::psd_sqrt(sr * sigma.matrix() * sr);
    double t = inner.trace().real();
    return std::min(1.0, t * t);
}

enum class Subsystem { A, B };

inline OneQubitState partial_trace(const TwoQubitState& rho, Subsystem over) {
    Matrix2 out = Matrix2::Zero();
    const Matrix4& m = rho.matrix();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s) {
                if (over == Subsystem::A)
                    out(a, b) += m(2 * s + a, 2 * s + b);
                else
                    out(a, b) += m(2 * a + s, 2 * b + s);
            }
    return OneQubitState(out);
}

/// Trace distance (1/2)||rho - sigma||_1 between two 4x4 Hermitian matrices.
inline double trace_distance(const Matrix4& a, const Matrix4& b) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const TwoQubitState& a, const TwoQubitState& b) {
    return trace_distance(a.matrix(), b.matrix());
}

}  // namespace memsforge
