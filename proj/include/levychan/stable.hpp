// levychan - Levy-driven wireless channel simulation and fractional HJB control
// Copyright (C) 2026 the levychan developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LEVYCHAN_STABLE_HPP
#define LEVYCHAN_STABLE_HPP

#include <complex>

#include "levychan/rng.hpp"

namespace levychan::stable {

/// Parameters of an alpha-stable law.
///
/// `dispersion` is the characteristic-function dispersion gamma, i.e.
/// E exp(jkX) = exp(j mu k - gamma |k|^alpha ...). The sigma-convention
/// scale is sigma = gamma^(1/alpha); both conventions show up in the
/// literature, this library stores gamma and converts where a scale is
/// wanted (see scale_of_linear_combination).
struct StableParams {
    double alpha = 1.8;      ///< stability index, (0, 2]
    double skew = 0.0;       ///< skewness, [-1, 1]; 0 = symmetric
    double dispersion = 1.0; ///< gamma > 0
    double location = 0.0;   ///< mu

    void validate() const; // throws std::invalid_argument
};

/// Truncated Levy-measure configuration: nu(dz) = C_alpha |z|^(-d-alpha) dz
/// restricted to |z| <= epsilon.
struct LevyMeasureConfig {
    double alpha = 1.8;   ///< (1, 2)
    int dim = 1;          ///< spatial dimension d >= 1
    double epsilon = 1.0; ///< small-jump truncation threshold > 0

    void validate() const;
};

/// Characteristic function E exp(jkX). Rejects alpha == 1 with nonzero skew
/// (the tan(pi alpha / 2) factor is singular there).
std::complex<double> characteristic_fn(const StableParams& params, double k);

/// One draw from the standard symmetric alpha-stable law (unit dispersion),
/// alpha in (1, 2], via the Chambers-Mallows-Stuck transform. At alpha == 2
/// the draw is N(0, 2) exactly (cf exp(-k^2)).
double sample_standard_sas(double alpha, Rng& rng);

/// Draw from a symmetric alpha-stable law: mu + gamma^(1/alpha) * S.
/// Rejects skew != 0.
double sample_sas(const StableParams& params, Rng& rng);

/// Scale (sigma-convention) of c1*X + c2*Y for independent unit-scale
/// symmetric alpha-stable X, Y: (|c1|^alpha + |c2|^alpha)^(1/alpha).
double scale_of_linear_combination(double c1, double c2, double alpha);

/// Normalization constant of the alpha-stable Levy measure,
/// C_alpha = alpha 2^(alpha-1) Gamma((alpha+d)/2) / (pi^(d/2) Gamma(1-alpha/2)).
/// Rejects alpha == 2 (Gamma pole; the Gaussian case has no jump measure).
double alpha_normalization_constant(double alpha, int dim);

/// Truncated second moment C_eps = int_{|z|<=eps} z^2 nu(dz)
/// = 2 C_alpha eps^(2-alpha) / (2-alpha) in one dimension.
double truncated_second_moment(const LevyMeasureConfig& cfg);

/// Inverse of truncated_second_moment in eps (1D): the truncation threshold
/// that produces a given C_eps at the given alpha.
double truncation_for_second_moment(double alpha, double c_eps);

} // namespace levychan::stable

#endif // LEVYCHAN_STABLE_HPP
