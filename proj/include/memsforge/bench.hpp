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

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "memsforge/channel.hpp"
#include "memsforge/matrix.hpp"
#include "memsforge/qstate.hpp"

namespace memsforge {

// Optical element catalog. Angles in radians; attenuator ratio is the
// intensity transmission P_out/P_in.
struct Polarizer { double theta = 0.0; };
struct HalfWavePlate { double theta = 0.0; };
struct QuarterWavePlate { double theta = 0.0; };
struct Rotator { double theta = 0.0; };
struct Attenuator { double ratio = 1.0; };

using OpticalElement = std::variant<Polarizer, HalfWavePlate,
                                    QuarterWavePlate, Rotator, Attenuator>;

struct PathSpec {
    double splitter_intensity = 1.0;       // beam-splitter fraction into path
    std::vector<OpticalElement> elements;  // first encountered first
};

struct DeviceSpec {
    std::vector<PathSpec> paths;  // 1-4 paths
};

struct DegenerateDeviceError : std::runtime_error {
    DegenerateDeviceError()
        : std::runtime_error("device has no surviving path "
                             "(all weights or transmissions zero)") {}
};

namespace detail {

inline Matrix2 rotation(double theta) {
    Matrix2 r;
    r << std::cos(theta), -std::sin(theta),
         std::sin(theta),  std::cos(theta);
    return r;
}

}  // namespace detail

/// Jones matrix of a catalog element. Wave-plate convention:
/// HWP(theta) = R(theta) diag(1,-1) R(-theta),
/// QWP(theta) = R(theta) diag(1, i) R(-theta), global phases dropped.
/// Attenuators scale the amplitude by sqrt(ratio).
inline Matrix2 jones_of(const OpticalElement& e) {
    return std::visit(
        [](const auto& el) -> Matrix2 {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Polarizer>) {
                Matrix2 p;
                p << 1, 0, 0, 0;
                return detail::rotation(el.theta) * p *
                       detail::rotation(-el.theta);
            } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
                Matrix2 d;
                d << 1, 0, 0, -1;
                return detail::rotation(el.theta) * d *
                       detail::rotation(-el.theta);
            } else if constexpr (std::is_same_v<T, QuarterWavePlate>) {
                Matrix2 d;
                d << 1, 0, 0, Complex(0, 1);
                return detail::rotation(el.theta) * d *
                       detail::rotation(-el.theta);
            } else if constexpr (std::is_same_v<T, Rotator>) {
                return detail::rotation(el.theta);
            } else {
                if (!(el.ratio >= 0.0 && el.ratio <= 1.0))
                    throw std::domain_error(
                        "attenuator ratio outside [0,1]");
                return std::sqrt(el.ratio) * Matrix2::Identity();
            }
        },
        e);
}

/// One path contributes one incoherent Kraus term under mode-insensitive
/// detection: T = ordered product of element Jones matrices, weight = the
/// splitter intensity.
inline std::pair<double, Matrix2> path_kraus(const PathSpec& p) {
    if (!(p.splitter_intensity >= 0.0 && p.splitter_intensity <= 1.0))
        throw std::domain_error("splitter intensity outside [0,1]");
    Matrix2 t = Matrix2::Identity();
    for (const OpticalElement& e : p.elements) t = jones_of(e) * t;
    return {p.splitter_intensity, t};
}

/// Incoherent sum over paths; each surviving term normalized to unit
/// operator norm with the scale folded into lambda, sorted descending.
inline KrausDecomposition device_map(const DeviceSpec& d) {
    if (d.paths.empty()) throw DegenerateDeviceError();
    double total = 0.0;
    for (const PathSpec& p : d.paths) total += p.splitter_intensity;
    if (total > 1.0 + 1e-12)
        throw std::domain_error("splitter intensities sum to more than 1");
    KrausDecomposition k;
    for (const PathSpec& p : d.paths) {
        auto [w, t] = path_kraus(p);
        double s = operator_norm(t);
        if (w * s * s < 1e-300) continue;  // fully absorbed path
        KrausTerm term;
        term.jones = t / s;
        term.lambda = w * s * s;
        k.terms.push_back(term);
    }
    if (k.terms.empty()) throw DegenerateDeviceError();
    std::sort(k.terms.begin(), k.terms.end(),
              [](const KrausTerm& a, const KrausTerm& b) {
                  return a.lambda > b.lambda;
              });
    return k;
}

/// The two-path device: 50/50 splitter, path 1 = attenuator a1 + horizontal
/// polarizer, path 2 = attenuator a2 + two half wave-plates relatively
/// oriented at 45 degrees (a 90-degree polarization rotator).
inline DeviceSpec mems_device(double a1, double a2) {
    if (!(a1 >= 0.0 && a1 <= 1.0 && a2 >= 0.0 && a2 <= 1.0))
        throw std::domain_error("attenuation ratios outside [0,1]");
    if (a1 == 0.0 && a2 == 0.0) throw DegenerateDeviceError();
    DeviceSpec d;
    d.paths.push_back({0.5, {Attenuator{a1}, Polarizer{0.0}}});
    d.paths.push_back({0.5, {Attenuator{a2}, HalfWavePlate{0.0},
                             HalfWavePlate{M_PI / 4.0}}});
    return d;
}

/// MEMS parameter realized by attenuator pair (a1, a2), from matching the
/// device weights {a1/2, a2/2} to the two-term weights {2(1-p), p}.
/// Validated end-to-end against device_map, never trusted on its own.
inline double effective_p(double a1, double a2) {
    if (a1 == 0.0 && a2 == 0.0)
        throw std::domain_error("effective_p: both attenuators zero");
    return 2.0 * a2 / (2.0 * a2 + a1);
}

struct SweepRow {
    double a1 = 0.0, a2 = 0.0;  // device rows only
    double p = 0.0;
    double linear_entropy = 0.0;
    double tangle = 0.0;
    std::string curve;  // device | mems1 | mems2 | werner
    bool ok = true;
    std::string error;
};

/// Evaluate the device over a grid and emit the reference curves of the
/// linear entropy-tangle plane (MEMS I for p in [2/3,1], MEMS II for
/// c in (0,2/3], Werner for p in [0,1]).
inline std::vector<SweepRow> sweep(
    const std::vector<std::pair<double, double>>& grid,
    const TwoQubitState& initial = singlet(), int curve_points = 101) {
    std::vector<SweepRow> rows;
    for (auto [a1, a2] : grid) {
        SweepRow r;
        r.a1 = a1;
        r.a2 = a2;
        r.curve = "device";
        try {
            TwoQubitState out = apply_kraus(device_map(mems_device(a1, a2)),
                                            initial);
            r.p = effective_p(a1, a2);
            r.linear_entropy = linear_entropy(out);
            r.tangle = tangle(out);
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
        rows.push_back(r);
    }
    for (int i = 0; i < curve_points; ++i) {
        double u = static_cast<double>(i) / (curve_points - 1);
        SweepRow m1;
        m1.curve = "mems1";
        m1.p = 2.0 / 3.0 + u / 3.0;
        m1.linear_entropy = linear_entropy(mems1(m1.p));
        m1.tangle = tangle(mems1(m1.p));
        rows.push_back(m1);

        SweepRow m2;
        m2.curve = "mems2";
        m2.p = (2.0 / 3.0) * (i + 1) / curve_points;  // open at c = 0
        m2.linear_entropy = linear_entropy(mems2(m2.p));
        m2.tangle = tangle(mems2(m2.p));
        rows.push_back(m2);

        SweepRow w;
        w.curve = "werner";
        w.p = u;
        w.linear_entropy = linear_entropy(werner(u));
        w.tangle = tangle(werner(u));
        rows.push_back(w);
    }
    return rows;
}

}  // namespace memsforge
