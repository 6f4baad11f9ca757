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
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "memsforge/matrix.hpp"
#include "memsforge/qstate.hpp"

namespace memsforge {

/// Complex Mueller matrix: (J_out)_{ij} = M_{(ij),(kl)} (J_in)_{kl}.
/// Any finite 4x4 complex matrix is representable; physicality is a
/// property to be tested, not an invariant.
class ComplexMueller {
public:
    ComplexMueller() : m_(Matrix4::Identity()) {}
    explicit ComplexMueller(const Matrix4& m) : m_(m) {
        if (!m_.allFinite())
            throw std::invalid_argument("ComplexMueller: non-finite entries");
    }
    const Matrix4& matrix() const { return m_; }

private:
    Matrix4 m_;
};

/// Real (Stokes) Mueller matrix with the block layout
///   [ m00  d^T ]
///   [ p    W   ]
/// where d is the diattenuation vector and p the polarizance vector.
struct MuellerReal {
    Matrix4r matrix = Matrix4r::Identity();

    double m00() const { return matrix(0, 0); }
    Vector3r d() const { return matrix.block<1, 3>(0, 1).transpose(); }
    Vector3r p() const { return matrix.block<3, 1>(1, 0); }
    Matrix3r W() const { return matrix.block<3, 3>(1, 1); }
};

struct KrausTerm {
    double lambda = 0.0;       // nonnegative weight
    Matrix2 jones;             // unit operator norm by convention
};

/// Kraus form M = sum_a lambda_a T_a (x) T_a*, at most four terms,
/// sorted by descending lambda.
struct KrausDecomposition {
    std::vector<KrausTerm> terms;
};

struct PhysicalityReport {
    std::array<double, 4> h_eigenvalues{};  // descending
    bool physical = false;
    double trace_preserving_deviation = 0.0;
};

struct PhysicalityError : std::runtime_error {
    PhysicalityReport report;
    explicit PhysicalityError(PhysicalityReport r)
        : std::runtime_error(
              "map cannot be implemented via local operations "
              "(Choi matrix has negative eigenvalues)"),
          report(r) {}
};

struct SynthesisError : std::runtime_error {
    double condition_estimate;
    explicit SynthesisError(double cond)
        : std::runtime_error("synthesis ill-posed: initial state reshuffle "
                             "has condition estimate " +
                             std::to_string(cond)),
          condition_estimate(cond) {}
};

struct PostselectionError : std::runtime_error {
    PostselectionError()
        : std::runtime_error("postselection annihilates the state "
                             "(all photons absorbed)") {}
};

struct ConversionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unitary change of basis between the complex and real Mueller pictures,
/// M_real = Lambda^dagger M Lambda. Column alpha is vec(sigma_alpha)/sqrt(2)
/// in Stokes order (I, sigma_z, sigma_x, sigma_y): optics texts index the
/// Stokes vector as (intensity, H-V, diag, circular), which puts sigma_z
/// first among the Paulis.
inline const Matrix4& stokes_basis() {
    static const Matrix4 lambda = [] {
        const int order[4] = {0, 3, 1, 2};
        Matrix4 l;
        for (int a = 0; a < 4; ++a)
            l.col(a) = vec(pauli(order[a])) / std::sqrt(2.0);
        return l;
    }();
    return lambda;
}

/// Exact inversion of rho_T^R = M rho_in^R for the local map M.
/// Default initial state is the singlet, for which rho_s^R is proportional
/// to its own inverse.
inline ComplexMueller synthesize_local_map(const TwoQubitState& target,
                                           const TwoQubitState& initial =
                                               singlet()) {
    Matrix4 in_r = reshuffle(initial.matrix());
    Eigen::JacobiSVD<Matrix4> svd(in_r,
                                  Eigen::ComputeFullU | Eigen::ComputeFullV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(3);
    double cond = (smin > 0.0) ? smax / smin
                               : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12)) throw SynthesisError(cond);
    Matrix4 inv = svd.matrixV() *
                  svd.singularValues().cwiseInverse().asDiagonal() *
                  svd.matrixU().adjoint();
    return ComplexMueller(reshuffle(target.matrix()) * inv);
}

/// Choi/H matrix of the map; equals the reshuffled Mueller matrix, so
/// H = sum_a lambda_a vec(T_a) vec(T_a)^dagger.
inline Matrix4 choi(const ComplexMueller& m) {
    return reshuffle(m.matrix());
}

namespace detail {

inline PhysicalityReport report_from_choi(const Matrix4& h) {
    Matrix4 hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4> es(hs, Eigen::EigenvaluesOnly);
    PhysicalityReport rep;
    for (int i = 0; i < 4; ++i) rep.h_eigenvalues[i] = es.eigenvalues()(3 - i);
    double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
    rep.physical = es.eigenvalues().minCoeff() >= -1e-9 * scale;
    // sum_a lambda_a T_a^dagger T_a is a partial trace of H over the
    // first tensor slot; computable without any decomposition.
    Matrix2 tp = Matrix2::Zero();
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < 2; ++i) tp(j, l) += hs(2 * i + j, 2 * i + l);
    rep.trace_preserving_deviation =
        operator_norm(tp - Matrix2::Identity());
    return rep;
}

inline Matrix2 fix_global_phase(const Matrix2& t) {
    double scale = t.cwiseAbs().maxCoeff();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex e = t(i, j);
            if (std::abs(e) > 1e-12 * scale)
                return t * (std::conj(e) / std::abs(e));
        }
    return t;
}

}  // namespace detail

/// Eigendecompose the H matrix into at most four weighted Jones matrices.
/// Each T is rescaled to unit operator norm with the residual folded into
/// lambda; global phase fixed so the first nonzero entry (row-major) is
/// real positive. Throws PhysicalityError if H has a genuinely negative
/// eigenvalue (relative tolerance tol).
inline KrausDecomposition kraus_decompose(const ComplexMueller& m,
                                          double tol = 1e-9) {
    Matrix4 h = choi(m);
    if (hermiticity_deviation(h) > tol)
        throw ConversionError("kraus_decompose: H matrix not Hermitian");
    Matrix4 hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4> es(hs);
    double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -tol * scale)
        throw PhysicalityError(detail::report_from_choi(h));

    KrausDecomposition k;
    for (int i = 0; i < 4; ++i) {
        double lam = es.eigenvalues()(i);
        if (std::abs(lam) < tol * scale) continue;
        Matrix2 t = unvec(es.eigenvectors().col(i));
        double s = operator_norm(t);
        KrausTerm term;
        term.jones = detail::fix_global_phase(t / s);
        term.lambda = lam * s * s;
        k.terms.push_back(term);
    }
    std::sort(k.terms.begin(), k.terms.end(),
              [](const KrausTerm& a, const KrausTerm& b) {
                  return a.lambda > b.lambda;
              });
    return k;
}

inline ComplexMueller mueller_from_kraus(const KrausDecomposition& k) {
    Matrix4 m = Matrix4::Zero();
    for (const KrausTerm& t : k.terms)
        m += t.lambda * kron(t.jones, t.jones.conjugate());
    return ComplexMueller(m);
}

/// Apply the local map on photon A: rho_out = (M rho^R)^R, renormalized.
inline TwoQubitState apply_local_map(const ComplexMueller& m,
                                     const TwoQubitState& rho) {
    Matrix4 out = reshuffle(m.matrix() * reshuffle(rho.matrix()));
    double tr = out.trace().real();
    if (!(tr > 1e-12)) throw PostselectionError();
    out /= tr;
    return TwoQubitState(0.5 * (out + out.adjoint().eval()));
}

/// Kraus route: rho_out ~ sum_a lambda_a (T_a x I) rho (T_a^dagger x I).
/// Must agree with apply_local_map on mueller_from_kraus of the same terms.
inline TwoQubitState apply_kraus(const KrausDecomposition& k,
                                 const TwoQubitState& rho) {
    Matrix4 out = Matrix4::Zero();
    for (const KrausTerm& t : k.terms) {
        Matrix4 op = kron(t.jones, Matrix2::Identity());
        out += t.lambda * op * rho.matrix() * op.adjoint();
    }
    double tr = out.trace().real();
    if (!(tr > 1e-12)) throw PostselectionError();
    out /= tr;
    return TwoQubitState(0.5 * (out + out.adjoint().eval()));
}

/// Convert to the real Stokes picture. Imaginary residues below 1e-10 are
/// discarded; larger residues mean the map is not Hermiticity-preserving.
inline MuellerReal to_real_mueller(const ComplexMueller& m) {
    Matrix4 real_c = stokes_basis().adjoint() * m.matrix() * stokes_basis();
    double residue = real_c.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-8)
        throw ConversionError("to_real_mueller: imaginary residue " +
                              std::to_string(residue) +
                              " (map not Hermiticity-preserving)");
    MuellerReal out;
    out.matrix = real_c.real();
    return out;
}

inline ComplexMueller from_real_mueller(const MuellerReal& m) {
    return ComplexMueller(stokes_basis() * m.matrix.cast<Complex>() *
                          stokes_basis().adjoint());
}

/// Trace-preservation check: deviation = ||sum lambda T^dagger T - I||.
/// Zero deviation is equivalent to vanishing diattenuation d.
inline PhysicalityReport trace_preservation(const KrausDecomposition& k) {
    return detail::report_from_choi(choi(mueller_from_kraus(k)));
}

}  // namespace memsforge
