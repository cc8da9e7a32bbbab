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

#include "levychan/sde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "levychan/stable.hpp"

namespace levychan::sde {

namespace {

constexpr double kStateGuard = 1e12;

void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(what);
}

bool state_ok(double v) { return std::isfinite(v) && std::abs(v) <= kStateGuard; }

double trimmed_mean(std::vector<double> v, double trim) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const size_t lo = static_cast<size_t>(trim * v.size());
    const size_t hi = v.size() - lo;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i)
        acc += v[i];
    return acc / static_cast<double>(hi - lo);
}

double quantile_sorted(const std::vector<double>& v, double q) {
    if (v.empty())
        return 0.0;
    const double pos = q * (v.size() - 1);
    const size_t i = static_cast<size_t>(pos);
    if (i + 1 >= v.size())
        return v.back();
    const double w = pos - i;
    return v[i] * (1.0 - w) + v[i + 1] * w;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib])
            ++ia;
        else
            ++ib;
        const double fa = static_cast<double>(ia) / a.size();
        const double fb = static_cast<double>(ib) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

} // namespace

void LongTermParams::validate() const {
    require(std::isfinite(a) && a > 0.0, "LongTermParams.a must be > 0");
    require(std::isfinite(b) && b > 0.0, "LongTermParams.b must be > 0");
    require(std::isfinite(sigma_beta) && sigma_beta > 0.0,
            "LongTermParams.sigma_beta must be > 0");
    require(alpha > 1.0 && alpha <= 2.0, "LongTermParams.alpha must be in (1, 2]");
    require(std::isfinite(beta0), "LongTermParams.beta0 must be finite");
}

void ShortTermParams::validate() const {
    require(std::isfinite(sigma_chi) && sigma_chi > 0.0,
            "ShortTermParams.sigma_chi must be > 0");
    require(std::isfinite(kappa) && kappa > 0.0, "ShortTermParams.kappa must be > 0");
    require(std::isfinite(c_eps) && c_eps > 0.0, "ShortTermParams.c_eps must be > 0");
    require(std::isfinite(tau) && tau > 0.0 && tau <= 1.0,
            "ShortTermParams.tau must be in (0, 1]");
    require(std::isfinite(rho) && rho > 0.0 && rho < 1.0,
            "ShortTermParams.rho must be in (0, 1)");
    require(alpha > 1.0 && alpha <= 2.0, "ShortTermParams.alpha must be in (1, 2]");
    require(std::isfinite(chi0) && chi0 >= 0.0, "ShortTermParams.chi0 must be >= 0");
    require(std::isfinite(noise_scale) && noise_scale >= 0.0,
            "ShortTermParams.noise_scale must be >= 0");
}

void IQParams::validate() const {
    require(std::isfinite(kappa) && kappa > 0.0, "IQParams.kappa must be > 0");
    require(std::isfinite(sigma) && sigma > 0.0, "IQParams.sigma must be > 0");
    require(alpha > 1.0 && alpha <= 2.0, "IQParams.alpha must be in (1, 2]");
    require(std::isfinite(i0) && std::isfinite(q0),
            "IQParams initial values must be finite");
}

void PathConfig::validate() const {
    require(std::isfinite(dt) && dt > 0.0, "PathConfig.dt must be > 0");
    require(n_steps >= 1, "PathConfig.n_steps must be >= 1");
    require(n_paths >= 1, "PathConfig.n_paths must be >= 1");
}

double levy_increment(double alpha, double dt, Rng& rng) {
    if (!(dt > 0.0))
        throw std::invalid_argument("levy_increment: dt must be > 0");
    return std::pow(dt, 1.0 / alpha) * stable::sample_standard_sas(alpha, rng);
}

Step step_long_term(double beta, const LongTermParams& p, double dt, Rng& rng) {
    const double noise =
        p.sigma_beta == 0.0 ? 0.0 : p.sigma_beta * levy_increment(p.alpha, dt, rng);
    Step s;
    s.noise = noise;
    s.value = beta - p.a * (beta + p.b) * dt + noise;
    return s;
}

Step step_short_term(double chi, double beta, double p_in,
                     const ShortTermParams& p, double dt, Rng& rng) {
    const double target = std::exp(beta) * p_in + p.rho;
    const double drift =
        (1.0 / p.tau) * (p.sigma_chi * p.sigma_chi / 2.0) * p.c_eps *
        (1.0 - chi / target);
    const double diffusion =
        p.noise_scale * (p.sigma_chi / std::sqrt(p.tau)) * std::sqrt(std::max(chi, 0.0));
    const double noise =
        diffusion == 0.0 ? 0.0 : diffusion * levy_increment(p.alpha, dt, rng);
    Step s;
    s.noise = noise;
    const double raw = chi + drift * dt + noise;
    s.clipped = raw < 0.0;
    s.value = std::max(0.0, raw);
    return s;
}

IQStep step_iq(double i, double q, const IQParams& p, double dt, Rng& rng) {
    IQStep s;
    s.noise_i = p.sigma == 0.0 ? 0.0 : 0.5 * p.sigma * levy_increment(p.alpha, dt, rng);
    s.noise_q = p.sigma == 0.0 ? 0.0 : 0.5 * p.sigma * levy_increment(p.alpha, dt, rng);
    s.i = i - 0.5 * p.kappa * i * dt + s.noise_i;
    s.q = q - 0.5 * p.kappa * q * dt + s.noise_q;
    return s;
}

Trajectory simulate(const SimSpec& spec, const PathConfig& cfg) {
    cfg.validate();
    switch (spec.model) {
    case Model::long_term: spec.lt.validate(); break;
    case Model::short_term: spec.st.validate(); break;
    case Model::iq: spec.iq.validate(); break;
    case Model::slow_fast_composite:
        spec.lt.validate();
        spec.st.validate();
        if (!spec.p_in)
            throw std::invalid_argument(
                "simulate: slow_fast_composite needs a p_in schedule");
        break;
    }

    const int nc =
        (spec.model == Model::iq || spec.model == Model::slow_fast_composite) ? 2 : 1;
    Trajectory tr;
    tr.n_paths = cfg.n_paths;
    tr.n_steps = cfg.n_steps;
    tr.n_components = nc;
    tr.times.resize(cfg.n_steps + 1);
    for (int s = 0; s <= cfg.n_steps; ++s)
        tr.times[s] = s * cfg.dt;
    tr.values.assign(static_cast<size_t>(cfg.n_paths) * (cfg.n_steps + 1) * nc, 0.0);
    tr.noise.assign(static_cast<size_t>(cfg.n_paths) * cfg.n_steps * nc, 0.0);
    tr.clipped.assign(static_cast<size_t>(cfg.n_paths) * cfg.n_steps, 0);
    tr.failed_at.assign(cfg.n_paths, -1);

    auto val = [&](int p, int s, int c) -> double& {
        return tr.values[(static_cast<size_t>(p) * (cfg.n_steps + 1) + s) * nc + c];
    };
    auto noi = [&](int p, int s, int c) -> double& {
        return tr.noise[(static_cast<size_t>(p) * cfg.n_steps + (s - 1)) * nc + c];
    };

    for (int path = 0; path < cfg.n_paths; ++path) {
        Rng rng = Rng::stream(cfg.seed, {static_cast<std::uint64_t>(path)});
        double x0 = 0.0, x1 = 0.0;
        switch (spec.model) {
        case Model::long_term: x0 = spec.lt.beta0; break;
        case Model::short_term: x0 = spec.st.chi0; break;
        case Model::iq: x0 = spec.iq.i0; x1 = spec.iq.q0; break;
        case Model::slow_fast_composite:
            x0 = spec.lt.beta0;
            x1 = spec.st.chi0;
            break;
        }
        val(path, 0, 0) = x0;
        if (nc == 2)
            val(path, 0, 1) = x1;

        for (int s = 1; s <= cfg.n_steps; ++s) {
            const double t_prev = tr.times[s - 1];
            bool ok = true;
            switch (spec.model) {
            case Model::long_term: {
                const Step st = step_long_term(x0, spec.lt, cfg.dt, rng);
                x0 = st.value;
                noi(path, s, 0) = st.noise;
                ok = state_ok(x0);
                break;
            }
            case Model::short_term: {
                const double pin = spec.p_in ? spec.p_in(t_prev) : 1.0;
                const Step st =
                    step_short_term(x0, spec.beta_fixed, pin, spec.st, cfg.dt, rng);
                x0 = st.value;
                noi(path, s, 0) = st.noise;
                tr.clipped[static_cast<size_t>(path) * cfg.n_steps + (s - 1)] =
                    st.clipped;
                ok = state_ok(x0);
                break;
            }
            case Model::iq: {
                const IQStep st = step_iq(x0, x1, spec.iq, cfg.dt, rng);
                x0 = st.i;
                x1 = st.q;
                noi(path, s, 0) = st.noise_i;
                noi(path, s, 1) = st.noise_q;
                ok = state_ok(x0) && state_ok(x1);
                break;
            }
            case Model::slow_fast_composite: {
                const Step lt = step_long_term(x0, spec.lt, cfg.dt, rng);
                const double pin = spec.p_in(t_prev);
                const Step st =
                    step_short_term(x1, x0, pin, spec.st, cfg.dt, rng);
                x0 = lt.value;
                x1 = st.value;
                noi(path, s, 0) = lt.noise;
                noi(path, s, 1) = st.noise;
                tr.clipped[static_cast<size_t>(path) * cfg.n_steps + (s - 1)] =
                    st.clipped;
                ok = state_ok(x0) && state_ok(x1);
                break;
            }
            }
            if (!ok) {
                tr.failed_at[path] = s;
                // freeze the path at its last finite state
                const double f0 = val(path, s - 1, 0);
                const double f1 = nc == 2 ? val(path, s - 1, 1) : 0.0;
                for (int r = s; r <= cfg.n_steps; ++r) {
                    val(path, r, 0) = f0;
                    if (nc == 2)
                        val(path, r, 1) = f1;
                }
                break;
            }
            val(path, s, 0) = x0;
            if (nc == 2)
                val(path, s, 1) = x1;
        }
    }
    return tr;
}

void write_trajectory_csv(const Trajectory& tr, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    os << "path,t";
    for (int c = 0; c < tr.n_components; ++c)
        os << ",state" << c;
    for (int c = 0; c < tr.n_components; ++c)
        os << ",noise" << c;
    os << '\n';
    char buf[64];
    for (int p = 0; p < tr.n_paths; ++p) {
        for (int s = 0; s <= tr.n_steps; ++s) {
            os << p << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", tr.times[s]);
            os << buf;
            for (int c = 0; c < tr.n_components; ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", tr.value(p, s, c));
                os << ',' << buf;
            }
            for (int c = 0; c < tr.n_components; ++c) {
                const double nv = s == 0 ? 0.0 : tr.noise_term(p, s, c);
                std::snprintf(buf, sizeof(buf), "%.17g", nv);
                os << ',' << buf;
            }
            os << '\n';
        }
    }
}

IqConsistencyReport iq_power_consistency(const IQParams& iq,
                                         const ShortTermParams& st,
                                         const PathConfig& cfg) {
    iq.validate();
    st.validate();
    cfg.validate();

    IqConsistencyReport rep;
    rep.trim_fraction = 0.01;
    const double alpha = iq.alpha;
    const double eps =
        alpha < 2.0 ? stable::truncation_for_second_moment(alpha, st.c_eps) : 0.0;
    rep.epsilon_used = eps;

    const int burn = cfg.n_steps / 2;
    const int stride = std::max(1, (cfg.n_steps - burn) / 64);

    std::vector<double> chi_iq, chi_cir;
    chi_iq.reserve(static_cast<size_t>(cfg.n_paths) * 64);
    chi_cir.reserve(chi_iq.capacity());

    for (int path = 0; path < cfg.n_paths; ++path) {
        Rng rng_iq = Rng::stream(cfg.seed, {0xA11CEull, static_cast<std::uint64_t>(path)});
        Rng rng_cir = Rng::stream(cfg.seed, {0xB0Bull, static_cast<std::uint64_t>(path)});
        double i = iq.i0, q = iq.q0;
        double chi = st.chi0;
        for (int s = 1; s <= cfg.n_steps; ++s) {
            double dli = levy_increment(alpha, cfg.dt, rng_iq);
            double dlq = levy_increment(alpha, cfg.dt, rng_iq);
            if (alpha < 2.0) {
                // the derivation folds only |z| <= eps jumps into C_eps
                if (std::abs(dli) > eps)
                    dli = 0.0;
                if (std::abs(dlq) > eps)
                    dlq = 0.0;
            }
            i = i - 0.5 * iq.kappa * i * cfg.dt + 0.5 * iq.sigma * dli;
            q = q - 0.5 * iq.kappa * q * cfg.dt + 0.5 * iq.sigma * dlq;

            const double drift =
                0.5 * iq.sigma * iq.sigma * st.c_eps - iq.kappa * chi;
            const double noise = iq.sigma * std::sqrt(std::max(chi, 0.0)) *
                                 levy_increment(alpha, cfg.dt, rng_cir);
            chi = std::max(0.0, chi + drift * cfg.dt + noise);

            if (!state_ok(i) || !state_ok(q) || !state_ok(chi)) {
                rep.diverged = true;
                break;
            }
            if (s > burn && (s - burn) % stride == 0) {
                chi_iq.push_back(i * i + q * q);
                chi_cir.push_back(chi);
            }
        }
        if (rep.diverged)
            break;
    }

    if (rep.diverged || chi_iq.empty())
        return rep;

    rep.trimmed_mean_iq = trimmed_mean(chi_iq, rep.trim_fraction);
    rep.trimmed_mean_cir = trimmed_mean(chi_cir, rep.trim_fraction);
    std::vector<double> a = chi_iq, b = chi_cir;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double qs[5] = {0.10, 0.25, 0.50, 0.75, 0.90};
    for (int k = 0; k < 5; ++k) {
        rep.quantiles_iq[k] = quantile_sorted(a, qs[k]);
        rep.quantiles_cir[k] = quantile_sorted(b, qs[k]);
    }
    rep.ks_distance = ks_two_sample(chi_iq, chi_cir);
    return rep;
}

} // namespace levychan::sde
