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

#include "levychan/stable.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levychan::stable {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& what) {
    if (!ok)
        throw std::invalid_argument(what);
}
} // namespace

void StableParams::validate() const {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
            "StableParams.alpha must be in (0, 2]");
    require(std::isfinite(skew) && skew >= -1.0 && skew <= 1.0,
            "StableParams.skew must be in [-1, 1]");
    require(std::isfinite(dispersion) && dispersion > 0.0,
            "StableParams.dispersion must be > 0");
    require(std::isfinite(location), "StableParams.location must be finite");
}

void LevyMeasureConfig::validate() const {
    require(std::isfinite(alpha) && alpha > 1.0 && alpha < 2.0,
            "LevyMeasureConfig.alpha must be in (1, 2)");
    require(dim >= 1, "LevyMeasureConfig.dim must be >= 1");
    require(std::isfinite(epsilon) && epsilon > 0.0,
            "LevyMeasureConfig.epsilon must be > 0");
}

std::complex<double> characteristic_fn(const StableParams& params, double k) {
    params.validate();
    const double gk = params.dispersion * std::pow(std::abs(k), params.alpha);
    if (params.skew == 0.0) {
        // symmetric law: exp(j mu k - gamma |k|^alpha), real-valued up to the
        // location phase
        return std::exp(std::complex<double>(-gk, params.location * k));
    }
    if (params.alpha == 1.0)
        throw std::invalid_argument(
            "characteristic_fn: alpha == 1 with nonzero skew is singular");
    const double sgn_k = (k > 0.0) - (k < 0.0);
    const double skew_term =
        params.skew * sgn_k * std::tan(kPi * params.alpha / 2.0);
    const std::complex<double> expo(-gk, params.location * k + gk * skew_term);
    return std::exp(expo);
}

double sample_standard_sas(double alpha, Rng& rng) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("sample_standard_sas: alpha must be in (1, 2]");
    const double u = kPi * (rng.uniform_open01() - 0.5); // (-pi/2, pi/2)
    const double e = rng.exponential();
    if (alpha == 2.0)
        return 2.0 * std::sin(u) * std::sqrt(e); // N(0, 2)
    // Chambers-Mallows-Stuck, symmetric case
    const double au = alpha * u;
    return std::sin(au) / std::pow(std::cos(u), 1.0 / alpha) *
           std::pow(std::cos(u - au) / e, (1.0 - alpha) / alpha);
}

double sample_sas(const StableParams& params, Rng& rng) {
    params.validate();
    if (params.skew != 0.0)
        throw std::invalid_argument("sample_sas: only symmetric (skew = 0) laws");
    const double s = sample_standard_sas(params.alpha, rng);
    return params.location + std::pow(params.dispersion, 1.0 / params.alpha) * s;
}

double scale_of_linear_combination(double c1, double c2, double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument(
            "scale_of_linear_combination: alpha must be in (1, 2]");
    return std::pow(std::pow(std::abs(c1), alpha) + std::pow(std::abs(c2), alpha),
                    1.0 / alpha);
}

double alpha_normalization_constant(double alpha, int dim) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument(
            "alpha_normalization_constant: alpha must be in (1, 2)");
    if (dim < 1)
        throw std::invalid_argument("alpha_normalization_constant: dim must be >= 1");
    const double d = static_cast<double>(dim);
    return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma((alpha + d) / 2.0) /
           (std::pow(kPi, d / 2.0) * std::tgamma(1.0 - alpha / 2.0));
}

double truncated_second_moment(const LevyMeasureConfig& cfg) {
    cfg.validate();
    if (cfg.dim != 1)
        throw std::invalid_argument(
            "truncated_second_moment: only dim = 1 is supported");
    const double c = alpha_normalization_constant(cfg.alpha, 1);
    return 2.0 * c * std::pow(cfg.epsilon, 2.0 - cfg.alpha) / (2.0 - cfg.alpha);
}

double truncation_for_second_moment(double alpha, double c_eps) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument(
            "truncation_for_second_moment: alpha must be in (1, 2)");
    if (!(c_eps > 0.0))
        throw std::invalid_argument("truncation_for_second_moment: c_eps must be > 0");
    const double c = alpha_normalization_constant(alpha, 1);
    return std::pow(c_eps * (2.0 - alpha) / (2.0 * c), 1.0 / (2.0 - alpha));
}

} // namespace levychan::stable
