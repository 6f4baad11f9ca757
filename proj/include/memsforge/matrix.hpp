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

#include <Eigen/Dense>
#include <complex>

namespace memsforge {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Matrix4r = Eigen::Matrix4d;
using Vector3r = Eigen::Vector3d;
using Matrix3r = Eigen::Matrix3d;

// Pauli matrices, index order (I, sigma_x, sigma_y, sigma_z).
inline const Matrix2& pauli(int alpha) {
    static const Matrix2 s[4] = {
        (Matrix2() << 1, 0, 0, 1).finished(),
        (Matrix2() << 0, 1, 1, 0).finished(),
        (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
        (Matrix2() << 1, 0, 0, -1).finished(),
    };
    return s[alpha];
}

// Largest singular value.
inline double operator_norm(const Matrix2& m) {
    return m.jacobiSvd().singularValues()(0);
}

inline double operator_norm4(const Matrix4& m) {
    return m.jacobiSvd().singularValues()(0);
}

inline double hermiticity_deviation(const Matrix4& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Row-major vectorization: vec(T)_{2i+j} = T_{ij}.
inline Eigen::Vector4cd vec(const Matrix2& t) {
    Eigen::Vector4cd v;
    v << t(0, 0), t(0, 1), t(1, 0), t(1, 1);
    return v;
}

inline Matrix2 unvec(const Eigen::Vector4cd& v) {
    Matrix2 t;
    t << v(0), v(1), v(2), v(3);
    return t;
}

// kron(A,B)_{(2i+j),(2k+l)} = A_{ik} B_{jl}
inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace memsforge
