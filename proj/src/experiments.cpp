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

#include "levychan/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "json.hpp"
#include "levychan/hjb.hpp"
#include "levychan/netsim.hpp"
#include "levychan/riesz.hpp"
#include "levychan/sde.hpp"
#include "levychan/stable.hpp"

namespace levychan::experiments {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

void print_num(std::ofstream& os, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

void write_manifest(const config::RunConfig& cfg, const std::string& experiment,
                    const std::string& out_dir) {
    nlohmann::json j;
    for (const auto& [k, v] : cfg.items())
        j["config"][k] = v;
    j["experiment"] = experiment;
    j["version"] = kVersion;
    j["seed"] = cfg.get("seed");
    std::ofstream os(out_dir + "/manifest");
    if (!os)
        throw std::runtime_error("cannot write manifest in " + out_dir);
    os << j.dump(2) << '\n';
}

void write_config_echo(const config::RunConfig& cfg, const std::string& out_dir) {
    std::ofstream os(out_dir + "/config_resolved.cfg");
    if (!os)
        throw std::runtime_error("cannot write config echo in " + out_dir);
    os << config::emit(cfg);
}

std::map<std::string, std::string> manifest_map(const config::RunConfig& cfg,
                                                const std::string& experiment) {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : cfg.items())
        m["config." + k] = v;
    m["experiment"] = experiment;
    m["version"] = kVersion;
    m["seed"] = cfg.get("seed");
    return m;
}

sde::LongTermParams make_long_term(const config::RunConfig& cfg) {
    sde::LongTermParams lt;
    lt.a = cfg.get_double("channel.a");
    lt.b = -std::log(cfg.get_double("net.gain_serving"));
    lt.sigma_beta = cfg.get_double("channel.sigma_beta");
    lt.alpha = cfg.get_double("channel.alpha");
    lt.beta0 = cfg.get_double("channel.beta0");
    return lt;
}

sde::ShortTermParams make_short_term(const config::RunConfig& cfg) {
    sde::ShortTermParams st;
    st.sigma_chi = cfg.get_double("channel.sigma_chi");
    st.kappa = cfg.get_double("channel.kappa");
    st.c_eps = cfg.get_double("channel.c_eps");
    st.tau = cfg.get_double("channel.tau");
    st.rho = cfg.get_double("channel.rho");
    st.alpha = cfg.get_double("channel.alpha");
    st.chi0 = cfg.get_double("channel.chi0");
    st.noise_scale = cfg.get_double("channel.noise_multiplier");
    return st;
}

sde::PathConfig make_path_config(const config::RunConfig& cfg) {
    sde::PathConfig pc;
    pc.dt = cfg.get_double("sim.dt");
    pc.n_steps = cfg.get_int("sim.n_steps");
    pc.n_paths = cfg.get_int("sim.n_paths");
    pc.seed = cfg.get_u64("seed");
    return pc;
}

netsim::NetworkConfig make_network(const config::RunConfig& cfg) {
    netsim::NetworkConfig net;
    net.n_bs = cfg.get_int("net.n_bs");
    net.m_ue = cfg.get_int("net.m_ue");
    net.median_gain.assign(static_cast<size_t>(net.n_bs) * net.m_ue,
                           cfg.get_double("net.gain_interfering"));
    for (int i = 0; i < std::min(net.n_bs, net.m_ue); ++i)
        net.median_gain[i * net.m_ue + i] = cfg.get_double("net.gain_serving");
    net.eta = cfg.get_double("net.eta");
    net.p_min = cfg.get_double("net.p_min");
    net.p_max = cfg.get_double("net.p_max");
    net.p0 = cfg.get_double("net.p0");
    net.u_step = cfg.get_double("net.u_step");
    net.lt = make_long_term(cfg);
    net.st = make_short_term(cfg);
    return net;
}

netsim::CostWeights make_weights(const config::RunConfig& cfg) {
    netsim::CostWeights w;
    w.r_th = cfg.get_double("cost.r_th");
    w.varsigma = cfg.get_double("cost.varsigma");
    w.lambda = cfg.get_double("cost.lambda");
    w.variant = cfg.get("cost.variant") == "comparative"
                    ? netsim::CostVariant::comparative
                    : netsim::CostVariant::paper_eq52;
    w.fairness_weight = cfg.get_double("cost.fairness_weight");
    w.sum_rate_terminal_weight = cfg.get_double("cost.sum_rate_terminal_weight");
    w.power_increase_weight = cfg.get_double("cost.power_increase_weight");
    return w;
}

netsim::DpConfig make_dp(const config::RunConfig& cfg) {
    netsim::DpConfig dp;
    dp.rounds = cfg.get_int("dp.rounds");
    dp.n_steps = cfg.get_int("sim.n_steps");
    dp.dt = cfg.get_double("sim.dt");
    dp.beta_nodes = cfg.get_int("dp.beta_nodes");
    dp.p_nodes = cfg.get_int("dp.p_nodes");
    dp.mc_samples = cfg.get_int("dp.mc_samples");
    dp.p_state_max = cfg.get_double("dp.p_state_max");
    dp.beta_halfwidth = cfg.get_double("dp.beta_halfwidth");
    dp.seed = cfg.get_u64("seed");
    return dp;
}

/// The 1-state diagnostic control problem: dx = u dt + sigma dL^alpha,
/// u in {-1, 0, +1}, running cost x^2, terminal cost 0.
hjb::ControlProblem make_hjb_test_problem(const config::RunConfig& cfg) {
    hjb::ControlProblem pb;
    pb.dim = 1;
    pb.n_actions = 3;
    pb.alpha = cfg.get_double("channel.alpha");
    pb.t0 = 0.0;
    pb.T = cfg.get_double("hjb.horizon");
    const double box = cfg.get_double("hjb.box");
    pb.box_lo = {-box, 0.0, 0.0};
    pb.box_hi = {box, 0.0, 0.0};
    const double sigma = cfg.get_double("hjb.sigma");
    pb.drift = [](const hjb::Vec&, int u, hjb::Vec& b) {
        b[0] = static_cast<double>(u - 1);
        b[1] = b[2] = 0.0;
    };
    pb.noise = [sigma](const hjb::Vec&, hjb::Vec& s) {
        s[0] = sigma;
        s[1] = s[2] = 0.0;
    };
    pb.running_cost = [](double, const hjb::Vec& x, int) { return x[0] * x[0]; };
    pb.terminal_cost = [](const hjb::Vec&) { return 0.0; };
    return pb;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

void run_stable_diag(const config::RunConfig& cfg, const std::string& out) {
    const double alpha = cfg.get_double("stable.alpha");
    const long draws = cfg.get_int("stable.diag_draws");
    const std::uint64_t seed = cfg.get_u64("seed");

    const double ks[] = {0.5, 1.0, 2.0};
    std::vector<double> xs(draws);
    Rng rng = Rng::stream(seed, {0xD1A6ull});
    for (long i = 0; i < draws; ++i)
        xs[i] = stable::sample_standard_sas(alpha, rng);

    std::ofstream os(out + "/ecf.csv");
    os << "alpha,k,ecf_re,ecf_im,theory_re,theory_im\n";
    for (double k : ks) {
        double re = 0.0, im = 0.0;
        for (double x : xs) {
            re += std::cos(k * x);
            im += std::sin(k * x);
        }
        re /= draws;
        im /= draws;
        const auto th = stable::characteristic_fn({alpha, 0.0, 1.0, 0.0}, k);
        print_num(os, alpha);
        os << ',';
        print_num(os, k);
        os << ',';
        print_num(os, re);
        os << ',';
        print_num(os, im);
        os << ',';
        print_num(os, th.real());
        os << ',';
        print_num(os, th.imag());
        os << '\n';
    }
}

void run_channel(const config::RunConfig& cfg, const std::string& out) {
    sde::SimSpec spec;
    const std::string model = cfg.get("channel.model");
    if (model == "long_term")
        spec.model = sde::Model::long_term;
    else if (model == "short_term")
        spec.model = sde::Model::short_term;
    else if (model == "iq")
        spec.model = sde::Model::iq;
    else
        spec.model = sde::Model::slow_fast_composite;
    spec.lt = make_long_term(cfg);
    spec.st = make_short_term(cfg);
    spec.iq.kappa = cfg.get_double("channel.kappa");
    spec.iq.sigma = cfg.get_double("channel.sigma_chi");
    spec.iq.alpha = cfg.get_double("channel.alpha");
    spec.beta_fixed = cfg.get_double("channel.beta0");
    const double p_in = cfg.get_double("channel.p_in");
    spec.p_in = [p_in](double) { return p_in; };

    const sde::Trajectory tr = sde::simulate(spec, make_path_config(cfg));
    sde::write_trajectory_csv(tr, out + "/trajectory.csv");
}

void run_riesz_diag(const config::RunConfig& cfg, const std::string& out) {
    const int n = cfg.get_int("riesz.nodes");
    const int k = cfg.get_int("riesz.wavenumber");
    const double alpha = cfg.get_double("riesz.alpha");
    const double sigma = cfg.get_double("riesz.sigma");

    riesz::GridFn f = riesz::GridFn::periodic_1d(0.0, 2.0 * kPi, n);
    for (int i = 0; i < n; ++i)
        f.values[i] = std::cos(k * f.coord(0, i));
    const riesz::SigmaField sf = riesz::SigmaField::constant(sigma);

    riesz::write_gridfn_csv(f, out + "/input.csv");
    riesz::write_gridfn_csv(riesz::apply_kernel_form(f, sf, alpha),
                            out + "/kernel.csv");
    riesz::write_gridfn_csv(riesz::apply_generator_form(f, sf, alpha),
                            out + "/generator.csv");
    riesz::write_gridfn_csv(
        riesz::spectral_reference(f, sigma, alpha, riesz::SpectralSign::generator),
        out + "/spectral_generator.csv");
    riesz::write_gridfn_csv(
        riesz::spectral_reference(f, sigma, alpha, riesz::SpectralSign::riesz),
        out + "/spectral_riesz.csv");
}

void run_hjb_test(const config::RunConfig& cfg, const std::string& out) {
    const hjb::ControlProblem pb = make_hjb_test_problem(cfg);
    hjb::SweepConfig sc;
    sc.n_nodes = {cfg.get_int("hjb.nodes"), 1, 1};
    sc.n_steps = cfg.get_int("hjb.n_steps");
    sc.mc_samples = cfg.get_int("hjb.mc_samples");
    sc.seed = cfg.get_u64("seed");
    const hjb::Scheme scheme = cfg.get("hjb.scheme") == "semi_lagrangian"
                                   ? hjb::Scheme::semi_lagrangian
                                   : hjb::Scheme::mc_lookahead;
    const hjb::SweepResult res = hjb::backward_sweep(pb, scheme, sc);
    hjb::write_value_csv(res.value, out + "/value.csv");
    hjb::write_policy_csv(res.policy, out + "/policy.csv");
    if (!res.warnings.empty()) {
        std::ofstream os(out + "/warnings.txt");
        for (const auto& w : res.warnings)
            os << w << '\n';
    }
}

void run_downlink_exp(const config::RunConfig& cfg, const std::string& out) {
    const netsim::RunArtifacts art =
        netsim::run_downlink(make_network(cfg), make_weights(cfg), make_dp(cfg));
    netsim::write_artifacts(art, out, manifest_map(cfg, "downlink"));
}

void run_noise_study(const config::RunConfig& cfg, const std::string& out) {
    const double mults[2] = {cfg.get_double("noise.low"),
                             cfg.get_double("noise.high")};
    const char* names[2] = {"mult_low", "mult_high"};
    netsim::ExceedanceCounts counts[2];
    netsim::NetworkConfig net = make_network(cfg);
    for (int v = 0; v < 2; ++v) {
        net.st.noise_scale = mults[v];
        const netsim::RunArtifacts art =
            netsim::run_downlink(net, make_weights(cfg), make_dp(cfg));
        const std::string sub = out + "/" + names[v];
        netsim::write_artifacts(art, sub, manifest_map(cfg, "noise_study"));
        counts[v] = netsim::noise_power_exceedance(art);
    }
    std::ofstream os(out + "/exceedance.csv");
    os << "multiplier,bs,ue,count,steps_counted\n";
    for (int v = 0; v < 2; ++v) {
        for (int i = 0; i < net.n_bs; ++i)
            for (int l = 0; l < net.m_ue; ++l) {
                print_num(os, mults[v]);
                os << ',' << i << ',' << l << ','
                   << counts[v].per_link[i * net.m_ue + l] << ','
                   << counts[v].steps_counted / (net.n_bs * net.m_ue) << '\n';
            }
        print_num(os, mults[v]);
        os << ",-1,-1," << counts[v].total << ',' << counts[v].steps_counted
           << '\n';
    }
}

void run_gaussian_levy(const config::RunConfig& cfg, const std::string& out) {
    netsim::CostWeights w = make_weights(cfg);
    w.variant = netsim::CostVariant::comparative;
    const netsim::GaussianLevyResult res = netsim::gaussian_levy_comparison(
        make_network(cfg), w, make_dp(cfg),
        cfg.get_double("gl.gauss_sum_rate_weight"),
        cfg.get_double("gl.levy_sum_rate_weight"),
        cfg.get_double("gl.levy_alpha"));
    netsim::write_artifacts(res.gaussian, out + "/gaussian",
                            manifest_map(cfg, "gaussian_levy"));
    netsim::write_artifacts(res.levy, out + "/levy",
                            manifest_map(cfg, "gaussian_levy"));
    std::ofstream os(out + "/comparison.csv");
    os << "metric,gaussian,levy\n";
    os << "action_changes," << res.summary.action_changes_gaussian << ','
       << res.summary.action_changes_levy << '\n';
    os << "sinr_iqr,";
    print_num(os, res.summary.sinr_iqr_gaussian);
    os << ',';
    print_num(os, res.summary.sinr_iqr_levy);
    os << '\n';
}

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "stable_diag", "channel",     "riesz_diag",   "hjb_test",
        "downlink",    "noise_study", "gaussian_levy"};
    return names;
}

void run(const config::RunConfig& cfg, const std::string& experiment,
         const std::string& out_dir) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end())
        throw std::invalid_argument("unknown experiment: " + experiment);
    fs::create_directories(out_dir);
    write_config_echo(cfg, out_dir);

    if (experiment == "stable_diag")
        run_stable_diag(cfg, out_dir);
    else if (experiment == "channel")
        run_channel(cfg, out_dir);
    else if (experiment == "riesz_diag")
        run_riesz_diag(cfg, out_dir);
    else if (experiment == "hjb_test")
        run_hjb_test(cfg, out_dir);
    else if (experiment == "downlink")
        run_downlink_exp(cfg, out_dir);
    else if (experiment == "noise_study")
        run_noise_study(cfg, out_dir);
    else if (experiment == "gaussian_levy")
        run_gaussian_levy(cfg, out_dir);

    if (experiment != "downlink") // downlink writes its own richer manifest
        write_manifest(cfg, experiment, out_dir);
}

// ---------------------------------------------------------------------------
// validation suites
// ---------------------------------------------------------------------------

namespace {

using Check = std::function<std::pair<bool, std::string>()>;

struct NamedCheck {
    const char* module;
    const char* name;
    Check fn;
};

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// adaptive Simpson quadrature for the C_eps cross-check
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fb, double fm, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
           simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(b), f(m), eps, 48);
}

double ks_statistic_vs_normal(std::vector<double> xs, double sd) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-xs[i] / (sd * std::sqrt(2.0)));
        d = std::max(d, std::abs((i + 1) / n - cdf));
        d = std::max(d, std::abs(cdf - i / n));
    }
    return d;
}

double iqr(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        const double pos = p * (v.size() - 1);
        const size_t i = static_cast<size_t>(pos);
        if (i + 1 >= v.size())
            return v.back();
        return v[i] + (pos - i) * (v[i + 1] - v[i]);
    };
    return q(0.75) - q(0.25);
}

std::vector<NamedCheck> build_checks(std::uint64_t seed) {
    std::vector<NamedCheck> checks;

    // ---- stable ----
    checks.push_back({"stable", "ecf_matches_characteristic_fn", [seed] {
        const double alphas[] = {1.2, 1.5, 1.8, 2.0};
        const double ks[] = {0.5, 1.0, 2.0};
        const long n = 200000;
        double worst = 0.0;
        for (double a : alphas) {
            Rng rng = Rng::stream(seed, {1, static_cast<std::uint64_t>(a * 100)});
            std::vector<double> xs(n);
            for (long i = 0; i < n; ++i)
                xs[i] = stable::sample_standard_sas(a, rng);
            for (double k : ks) {
                double re = 0.0, im = 0.0;
                for (double x : xs) {
                    re += std::cos(k * x);
                    im += std::sin(k * x);
                }
                re /= n;
                im /= n;
                const auto th = stable::characteristic_fn({a, 0, 1, 0}, k);
                worst = std::max({worst, std::abs(re - th.real()),
                                  std::abs(im - th.imag())});
            }
        }
        return std::make_pair(worst < 0.02,
                              fmt("worst |ecf - theory| = %.4g (tol %.4g)",
                                  worst, 0.02));
    }});

    checks.push_back({"stable", "alpha2_ks_vs_normal", [seed] {
        const long n = 100000;
        Rng rng = Rng::stream(seed, {2});
        std::vector<double> xs(n);
        for (long i = 0; i < n; ++i)
            xs[i] = stable::sample_standard_sas(2.0, rng);
        const double d = ks_statistic_vs_normal(std::move(xs), std::sqrt(2.0));
        const double stat = d * std::sqrt(static_cast<double>(n));
        return std::make_pair(stat < 1.628,
                              fmt("sqrt(n) D = %.3f (crit %.3f at 0.01)", stat,
                                  1.628));
    }});

    checks.push_back({"stable", "lemma_closure_scale", [seed] {
        const double alphas[] = {1.2, 1.5, 1.8};
        const long n = 300000;
        double worst = 0.0;
        for (double a : alphas) {
            Rng r1 = Rng::stream(seed, {3, static_cast<std::uint64_t>(a * 100)});
            Rng r2 = Rng::stream(seed, {4, static_cast<std::uint64_t>(a * 100)});
            std::vector<double> sum(n), ref(n);
            for (long i = 0; i < n; ++i) {
                sum[i] = stable::sample_standard_sas(a, r1) +
                         stable::sample_standard_sas(a, r1);
                ref[i] = stable::sample_standard_sas(a, r2);
            }
            const double est = iqr(sum) / iqr(ref);
            const double expect = stable::scale_of_linear_combination(1, 1, a);
            worst = std::max(worst, std::abs(est / expect - 1.0));
        }
        return std::make_pair(worst < 0.03,
                              fmt("worst relative scale error %.4f (tol %.2f)",
                                  worst, 0.03));
    }});

    checks.push_back({"stable", "c_eps_closed_form_vs_quadrature", [] {
        double worst = 0.0;
        for (double a : {1.1, 1.3, 1.5, 1.7, 1.9})
            for (double eps : {0.1, 0.5, 1.0, 2.0}) {
                const double c = stable::alpha_normalization_constant(a, 1);
                const double closed =
                    stable::truncated_second_moment({a, 1, eps});
                const double quad =
                    2.0 * integrate([a, c](double z) {
                        return z * z * c * std::pow(z, -1.0 - a);
                    }, 1e-12, eps, 1e-14);
                worst = std::max(worst, std::abs(quad / closed - 1.0));
            }
        return std::make_pair(worst < 1e-6,
                              fmt("worst relative error %.3g (tol %.1g)", worst,
                                  1e-6));
    }});

    checks.push_back({"stable", "sampler_determinism", [seed] {
        Rng a = Rng::stream(seed, {5});
        Rng b = Rng::stream(seed, {5});
        bool same = true;
        for (int i = 0; i < 1000; ++i)
            same = same && stable::sample_standard_sas(1.8, a) ==
                               stable::sample_standard_sas(1.8, b);
        return std::make_pair(same, std::string("1000 draws bit-identical"));
    }});

    // ---- sde ----
    checks.push_back({"sde", "long_term_mean", [seed] {
        sde::SimSpec spec;
        spec.model = sde::Model::long_term;
        spec.lt = {0.1, 1.0, 0.1, 1.8, 0.0};
        sde::PathConfig pc{0.1, 100, 20000, seed};
        const sde::Trajectory tr = sde::simulate(spec, pc);
        double worst_z = 0.0;
        for (int t_idx : {10, 50, 100}) {
            double mean = 0.0, m2 = 0.0;
            for (int p = 0; p < pc.n_paths; ++p)
                mean += tr.value(p, t_idx);
            mean /= pc.n_paths;
            for (int p = 0; p < pc.n_paths; ++p) {
                const double d = tr.value(p, t_idx) - mean;
                m2 += d * d;
            }
            const double se = std::sqrt(m2 / pc.n_paths / (pc.n_paths - 1.0));
            const double t = t_idx * pc.dt;
            const double expect = -1.0 + std::exp(-0.1 * t);
            worst_z = std::max(worst_z, std::abs(mean - expect) / se);
        }
        return std::make_pair(worst_z < 3.0,
                              fmt("worst |z| = %.2f (tol %.1f)", worst_z, 3.0));
    }});

    checks.push_back({"sde", "short_term_steady_state", [seed] {
        // fixed target, no rescale: tau = 1, target = sigma^2 C_eps / (2 kappa)
        sde::SimSpec spec;
        spec.model = sde::Model::short_term;
        const double kappa = 0.5, sigma = 0.3, c_eps = 1.0;
        const double steady = sigma * sigma * c_eps / (2.0 * kappa);
        spec.st = {sigma, kappa, c_eps, 1.0, 1e-9, 1.8, steady, 1.0};
        spec.beta_fixed = 0.0;
        spec.p_in = [steady](double) { return steady - 1e-9; };
        sde::PathConfig pc{0.02, 4000, 200, seed};
        const sde::Trajectory tr = sde::simulate(spec, pc);
        std::vector<double> tail;
        for (int p = 0; p < pc.n_paths; ++p)
            for (int s = pc.n_steps / 2; s <= pc.n_steps; s += 20)
                tail.push_back(tr.value(p, s));
        std::sort(tail.begin(), tail.end());
        const size_t cut = static_cast<size_t>(0.001 * tail.size());
        double acc = 0.0;
        for (size_t i = cut; i < tail.size() - cut; ++i)
            acc += tail[i];
        const double tm = acc / (tail.size() - 2 * cut);
        const double rel = std::abs(tm / steady - 1.0);
        return std::make_pair(rel < 0.15,
                              fmt("trimmed mean off steady state by %.3f (tol "
                                  "%.2f)", rel, 0.15));
    }});

    checks.push_back({"sde", "positivity_and_bookkeeping", [seed] {
        sde::SimSpec spec;
        spec.model = sde::Model::slow_fast_composite;
        spec.lt = {0.1, 0.6931471805599453, 0.1, 1.8, 0.0};
        spec.st = {0.3, 0.5, 1.0, 0.01, 1e-3, 1.8, 1.0, 1.0};
        spec.p_in = [](double) { return 5.0; };
        sde::PathConfig pc{0.1, 100, 50, seed};
        const sde::Trajectory tr = sde::simulate(spec, pc);
        bool pos = true, recon = true;
        for (int p = 0; p < pc.n_paths; ++p)
            for (int s = 1; s <= pc.n_steps; ++s) {
                const double chi = tr.value(p, s, 1);
                pos = pos && chi >= 0.0;
                // reconstruct the beta increment: drift + stored noise
                const double b_prev = tr.value(p, s - 1, 0);
                const double expect = b_prev -
                                      0.1 * (b_prev + 0.6931471805599453) * 0.1 +
                                      tr.noise_term(p, s, 0);
                recon = recon && std::abs(expect - tr.value(p, s, 0)) <=
                                     1e-12 * (1.0 + std::abs(expect));
            }
        return std::make_pair(pos && recon,
                              std::string(pos ? "chi >= 0; " : "chi < 0 seen; ") +
                                  (recon ? "noise bookkeeping reconstructs"
                                         : "bookkeeping mismatch"));
    }});

    checks.push_back({"sde", "gaussian_reduction_ks", [seed] {
        // alpha = 2 terminal marginal vs a Brownian-driven reference
        const double a = 0.3, b = 1.0, sig = 0.2, dt = 0.05;
        const int steps = 40, paths = 4000;
        std::vector<double> x1(paths), x2(paths);
        for (int p = 0; p < paths; ++p) {
            Rng r1 = Rng::stream(seed, {11, static_cast<std::uint64_t>(p)});
            Rng r2 = Rng::stream(seed, {12, static_cast<std::uint64_t>(p)});
            double u = 0.0, v = 0.0;
            for (int s = 0; s < steps; ++s) {
                u += -a * (u + b) * dt + sig * sde::levy_increment(2.0, dt, r1);
                // Box-Muller normal with variance 2 dt
                const double n01 =
                    std::sqrt(-2.0 * std::log(r2.uniform_open01())) *
                    std::cos(2.0 * kPi * r2.uniform_open01());
                v += -a * (v + b) * dt + sig * std::sqrt(2.0 * dt) * n01;
            }
            x1[p] = u;
            x2[p] = v;
        }
        std::sort(x1.begin(), x1.end());
        std::sort(x2.begin(), x2.end());
        size_t i = 0, j = 0;
        double d = 0.0;
        while (i < x1.size() && j < x2.size()) {
            if (x1[i] <= x2[j]) ++i; else ++j;
            d = std::max(d, std::abs(static_cast<double>(i) / x1.size() -
                                     static_cast<double>(j) / x2.size()));
        }
        const double stat = d * std::sqrt(paths / 2.0);
        return std::make_pair(stat < 1.628,
                              fmt("two-sample sqrt(n) D = %.3f (crit %.3f)",
                                  stat, 1.628));
    }});

    checks.push_back({"sde", "determinism", [seed] {
        sde::SimSpec spec;
        spec.model = sde::Model::slow_fast_composite;
        spec.lt = {0.1, 0.6931471805599453, 0.1, 1.8, 0.0};
        spec.st = {0.3, 0.5, 1.0, 0.01, 1e-3, 1.8, 1.0, 1.0};
        spec.p_in = [](double) { return 5.0; };
        sde::PathConfig pc{0.1, 50, 8, seed};
        const sde::Trajectory t1 = sde::simulate(spec, pc);
        const sde::Trajectory t2 = sde::simulate(spec, pc);
        return std::make_pair(t1.values == t2.values && t1.noise == t2.noise,
                              std::string("repeat run bit-identical"));
    }});

    // ---- riesz ----
    checks.push_back({"riesz", "constants_annihilated", [] {
        riesz::GridFn f = riesz::GridFn::periodic_1d(0.0, 2.0 * kPi, 256);
        std::fill(f.values.begin(), f.values.end(), 3.7);
        const auto sf = riesz::SigmaField::constant(1.0);
        const auto k = riesz::apply_kernel_form(f, sf, 1.5);
        const auto g = riesz::apply_generator_form(f, sf, 1.5);
        double worst = 0.0;
        for (int i = 0; i < 256; ++i)
            worst = std::max({worst, std::abs(k.values[i]), std::abs(g.values[i])});
        return std::make_pair(worst < 1e-10,
                              fmt("sup |output| = %.3g (tol %.1g)", worst, 1e-10));
    }});

    checks.push_back({"riesz", "symbol_accuracy", [] {
        const int n = 2048;
        double worst = 0.0;
        const auto sf = riesz::SigmaField::constant(1.0);
        for (int k : {1, 3}) {
            riesz::GridFn f = riesz::GridFn::periodic_1d(0.0, 2.0 * kPi, n);
            for (int i = 0; i < n; ++i)
                f.values[i] = std::cos(k * f.coord(0, i));
            const double alpha = 1.5;
            const auto gen = riesz::apply_generator_form(f, sf, alpha);
            const auto ker = riesz::apply_kernel_form(f, sf, alpha);
            const auto ref_g =
                riesz::spectral_reference(f, 1.0, alpha, riesz::SpectralSign::generator);
            const auto ref_k =
                riesz::spectral_reference(f, 1.0, alpha, riesz::SpectralSign::riesz);
            double e1 = 0, e2 = 0, nrm = 0;
            for (int i = 0; i < n; ++i) {
                e1 += (gen.values[i] - ref_g.values[i]) *
                      (gen.values[i] - ref_g.values[i]);
                e2 += (ker.values[i] - ref_k.values[i]) *
                      (ker.values[i] - ref_k.values[i]);
                nrm += ref_g.values[i] * ref_g.values[i];
            }
            worst = std::max({worst, std::sqrt(e1 / nrm), std::sqrt(e2 / nrm)});
        }
        return std::make_pair(worst < 0.01,
                              fmt("worst rel L2 error %.4f (tol %.2f)", worst,
                                  0.01));
    }});

    checks.push_back({"riesz", "sign_relation", [] {
        const int n = 512;
        riesz::GridFn f = riesz::GridFn::periodic_1d(0.0, 2.0 * kPi, n);
        for (int i = 0; i < n; ++i)
            f.values[i] = std::cos(2.0 * f.coord(0, i)) +
                          0.5 * std::sin(f.coord(0, i));
        const auto sf = riesz::SigmaField::constant(1.0);
        const auto k = riesz::apply_kernel_form(f, sf, 1.5);
        const auto g = riesz::apply_generator_form(f, sf, 1.5);
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(k.values[i] + g.values[i]));
            scale = std::max(scale, std::abs(k.values[i]));
        }
        return std::make_pair(worst <= 0.02 * scale,
                              fmt("sup |kernel + generator| = %.3g (scale %.3g)",
                                  worst, scale));
    }});

    checks.push_back({"riesz", "linearity", [] {
        const int n = 256;
        riesz::GridFn f = riesz::GridFn::periodic_1d(0.0, 2.0 * kPi, n);
        riesz::GridFn g = f, h = f;
        for (int i = 0; i < n; ++i) {
            const double x = f.coord(0, i);
            f.values[i] = std::cos(x);
            g.values[i] = std::sin(2.0 * x);
            h.values[i] = 2.0 * f.values[i] - 3.0 * g.values[i];
        }
        const auto sf = riesz::SigmaField::constant(1.0);
        const auto af = riesz::apply_generator_form(f, sf, 1.7);
        const auto ag = riesz::apply_generator_form(g, sf, 1.7);
        const auto ah = riesz::apply_generator_form(h, sf, 1.7);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(ah.values[i] - 2.0 * af.values[i] +
                                             3.0 * ag.values[i]));
        return std::make_pair(worst < 1e-9,
                              fmt("sup linearity defect %.3g (tol %.1g)", worst,
                                  1e-9));
    }});

    // ---- hjb ----
    checks.push_back({"hjb", "terminal_shift_comparison", [seed] {
        config::RunConfig cfg;
        hjb::ControlProblem pb = make_hjb_test_problem(cfg);
        hjb::SweepConfig sc;
        sc.n_nodes = {33, 1, 1};
        sc.n_steps = 10;
        sc.mc_samples = 400;
        sc.seed = seed;
        const auto r1 = hjb::backward_sweep(pb, hjb::Scheme::mc_lookahead, sc);
        hjb::ControlProblem pb2 = pb;
        pb2.terminal_cost = [](const hjb::Vec&) { return 2.5; };
        const auto r2 = hjb::backward_sweep(pb2, hjb::Scheme::mc_lookahead, sc);
        double worst = 0.0;
        for (size_t i = 0; i < r1.value.values.size(); ++i)
            worst = std::max(worst, std::abs(r2.value.values[i] -
                                             r1.value.values[i] - 2.5));
        bool term_exact = true;
        const int total = r1.value.grid.total();
        for (int node = 0; node < total; ++node)
            term_exact = term_exact && r1.value.at(sc.n_steps, node) == 0.0;
        const auto cmp = hjb::comparison_monotonicity_check(
            pb, [](const hjb::Vec&) { return 0.0; },
            [](const hjb::Vec& x) { return std::max(0.0, x[0]); },
            hjb::Scheme::mc_lookahead, sc);
        const bool ok = worst < 1e-9 && term_exact && cmp.pass;
        return std::make_pair(ok, fmt("shift defect %.3g; comparison gap %.3g",
                                      worst, cmp.worst_gap));
    }});

    checks.push_back({"hjb", "envelope", [seed] {
        config::RunConfig cfg;
        const hjb::ControlProblem pb = make_hjb_test_problem(cfg);
        hjb::SweepConfig sc;
        sc.n_nodes = {33, 1, 1};
        sc.n_steps = 10;
        sc.mc_samples = 400;
        sc.seed = seed;
        const auto res = hjb::backward_sweep(pb, hjb::Scheme::mc_lookahead, sc);
        const double c_h = hjb::estimate_hamiltonian_growth(pb, res.value.grid);
        const auto rep = hjb::envelope_check(res.value, 0.0, c_h);
        return std::make_pair(rep.pass,
                              fmt("worst violation %.3g (tol %.3g)",
                                  rep.worst_violation, rep.tolerance));
    }});

    checks.push_back({"hjb", "determinism", [seed] {
        config::RunConfig cfg;
        const hjb::ControlProblem pb = make_hjb_test_problem(cfg);
        hjb::SweepConfig sc;
        sc.n_nodes = {17, 1, 1};
        sc.n_steps = 6;
        sc.mc_samples = 200;
        sc.seed = seed;
        const auto r1 = hjb::backward_sweep(pb, hjb::Scheme::mc_lookahead, sc);
        const auto r2 = hjb::backward_sweep(pb, hjb::Scheme::mc_lookahead, sc);
        return std::make_pair(r1.value.values == r2.value.values &&
                                  r1.policy.actions == r2.policy.actions,
                              std::string("repeat sweep bit-identical"));
    }});

    // ---- netsim ----
    checks.push_back({"netsim", "desk_run_invariants", [seed] {
        netsim::NetworkConfig net = netsim::NetworkConfig::table_defaults();
        netsim::CostWeights w;
        netsim::DpConfig dp;
        dp.rounds = 2;
        dp.n_steps = 30;
        dp.mc_samples = 6;
        dp.seed = seed;
        const auto art = netsim::run_downlink(net, w, dp);
        bool feasible = true, audit = true, vterm = true;
        for (int r = 0; r <= art.n_rounds; ++r) {
            vterm = vterm && art.value[art.idx_rt(r, art.n_steps)] == 0.0;
            for (int t = 0; t <= art.n_steps; ++t) {
                netsim::NetworkState s;
                s.n_bs = art.n_bs;
                s.m_ue = art.m_ue;
                s.beta.assign(static_cast<size_t>(art.n_bs) * art.m_ue, 0.0);
                s.power.resize(s.beta.size());
                s.tx.resize(art.n_bs);
                for (int i = 0; i < art.n_bs; ++i) {
                    s.tx[i] = art.tx_at(r, t, i);
                    feasible = feasible && s.tx[i] >= net.p_min &&
                               s.tx[i] <= net.p_max;
                    for (int l = 0; l < art.m_ue; ++l) {
                        s.power_at(i, l) = art.power_at(r, t, i, l);
                        feasible = feasible && s.power_at(i, l) >= 0.0;
                    }
                }
                for (int l = 0; l < art.m_ue; ++l)
                    audit = audit && netsim::sinr(s, l, l, net.eta) ==
                                         art.sinr_at(r, t, l);
                audit = audit && netsim::stage_cost(s, w, net.eta) ==
                                     art.cost[art.idx_rt(r, t)];
            }
        }
        const auto art2 = netsim::run_downlink(net, w, dp);
        const bool det = art.tx == art2.tx && art.sinr == art2.sinr &&
                         art.link_noise == art2.link_noise;
        return std::make_pair(feasible && audit && vterm && det,
                              std::string(feasible ? "bounds ok; " : "bounds bad; ") +
                                  (audit ? "audits bit-exact; " : "audit mismatch; ") +
                                  (vterm ? "V(T)=0; " : "V(T)!=0; ") +
                                  (det ? "deterministic" : "nondeterministic"));
    }});

    // ---- cli ----
    checks.push_back({"cli", "config_roundtrip_and_rejection", [] {
        config::RunConfig c;
        c.set("stable.alpha", "1.9");
        const config::RunConfig c2 =
            config::parse_config_text(config::emit(c), "<emit>");
        bool ok = c == c2;
        bool rejected = false;
        try {
            config::RunConfig bad;
            bad.set("stable.alpha", "2.5");
        } catch (const std::invalid_argument&) {
            rejected = true;
        }
        bool dup = false;
        try {
            config::parse_config_text("sim.dt = 0.1\nsim.dt = 0.2\n", "<dup>");
        } catch (const std::invalid_argument& e) {
            dup = std::string(e.what()).find("line 1") != std::string::npos;
        }
        bool unknown = false;
        try {
            config::RunConfig bad;
            bad.set("nonsense.key", "1");
        } catch (const std::invalid_argument&) {
            unknown = true;
        }
        return std::make_pair(ok && rejected && dup && unknown,
                              std::string("round-trip, range, duplicate and "
                                          "unknown-key checks"));
    }});

    return checks;
}

} // namespace

const std::vector<std::string>& validate_modules() {
    static const std::vector<std::string> mods = {"stable", "sde", "riesz",
                                                  "hjb", "netsim", "cli"};
    return mods;
}

std::vector<CheckResult> validate(const std::string& module, std::uint64_t seed) {
    if (!module.empty()) {
        const auto& mods = validate_modules();
        if (std::find(mods.begin(), mods.end(), module) == mods.end())
            throw std::invalid_argument("unknown module: " + module);
    }
    std::vector<CheckResult> out;
    for (const NamedCheck& c : build_checks(seed)) {
        if (!module.empty() && module != c.module)
            continue;
        CheckResult r;
        r.module = c.module;
        r.name = c.name;
        try {
            const auto [pass, detail] = c.fn();
            r.pass = pass;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace levychan::experiments
