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

#include "levychan/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "levychan/hjb.hpp"

namespace levychan::netsim {

namespace {

void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(what);
}

double pos_part(double v) { return v > 0.0 ? v : 0.0; }

void print_num(std::ofstream& os, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

// Frozen trajectory set one round of DP sweeps responds to.
struct Replay {
    int n_steps = 0, n_bs = 0, m_ue = 0;
    std::vector<double> beta;  // [(t * n_bs + i) * m_ue + l]
    std::vector<double> power; // same layout
    std::vector<double> tx;    // [t * n_bs + i]

    void resize(int steps, int n, int m) {
        n_steps = steps;
        n_bs = n;
        m_ue = m;
        beta.assign(static_cast<size_t>(steps + 1) * n * m, 0.0);
        power.assign(beta.size(), 0.0);
        tx.assign(static_cast<size_t>(steps + 1) * n, 0.0);
    }
    size_t il(int t, int i, int l) const {
        return (static_cast<size_t>(t) * n_bs + i) * m_ue + l;
    }
    size_t ib(int t, int i) const { return static_cast<size_t>(t) * n_bs + i; }
};

// Stage cost: rate and outage terms summed over all (bs, ue) pairs, plus the
// transmit-power cost lambda * p_in counted once per base station.
double eq52_from_matrix(int n_bs, int m_ue, const double* p, const double* tx,
                        const CostWeights& w, double eta) {
    double acc = 0.0;
    for (int l = 0; l < m_ue; ++l) {
        double col = eta;
        for (int k = 0; k < n_bs; ++k)
            col += p[k * m_ue + l];
        for (int i = 0; i < n_bs; ++i) {
            const double g = p[i * m_ue + l] / (col - p[i * m_ue + l]);
            acc += -std::log2(1.0 + g) + w.varsigma * pos_part(w.r_th - g);
        }
    }
    for (int i = 0; i < n_bs; ++i)
        acc += w.lambda * tx[i];
    return acc;
}

// Serving SINRs gamma_ll from an explicit power matrix.
void serving_sinrs(int n_bs, int m_ue, const double* p, double eta, double* out) {
    const int m = std::min(n_bs, m_ue);
    for (int l = 0; l < m; ++l) {
        double den = eta;
        for (int k = 0; k < n_bs; ++k)
            if (k != l)
                den += p[k * m_ue + l];
        out[l] = p[l * m_ue + l] / den;
    }
}

double comparative_running_terms(int m, const double* g, const CostWeights& w) {
    double acc = 0.0;
    double mean = 0.0;
    for (int l = 0; l < m; ++l) {
        acc += w.varsigma * pos_part(w.r_th - g[l]);
        mean += g[l];
    }
    mean /= m;
    double var = 0.0;
    for (int l = 0; l < m; ++l)
        var += (g[l] - mean) * (g[l] - mean);
    var /= m;
    return acc + w.fairness_weight * var;
}

} // namespace

NetworkConfig NetworkConfig::table_defaults() {
    NetworkConfig cfg;
    cfg.median_gain.assign(static_cast<size_t>(cfg.n_bs) * cfg.m_ue, 0.1);
    for (int i = 0; i < std::min(cfg.n_bs, cfg.m_ue); ++i)
        cfg.median_gain[i * cfg.m_ue + i] = 0.5;
    cfg.lt.a = 0.1;
    cfg.lt.sigma_beta = 0.1;
    cfg.lt.alpha = 1.8;
    cfg.st.sigma_chi = 0.3;
    cfg.st.c_eps = 1.0;
    cfg.st.tau = 0.01;
    cfg.st.rho = 1e-3;
    cfg.st.alpha = 1.8;
    cfg.st.noise_scale = 0.1;
    return cfg;
}

double NetworkConfig::b_offset(int bs, int ue) const {
    return -std::log(gain(bs, ue));
}

void NetworkConfig::validate() const {
    require(n_bs >= 1 && m_ue >= 1, "NetworkConfig: N, M must be >= 1");
    require(n_bs * m_ue <= 64, "NetworkConfig: at most 64 links supported");
    require(median_gain.size() == static_cast<size_t>(n_bs) * m_ue,
            "NetworkConfig: median_gain size mismatch");
    for (double g : median_gain)
        require(std::isfinite(g) && g > 0.0 && g < 1.0,
                "NetworkConfig: median gains must lie in (0, 1)");
    require(std::isfinite(eta) && eta > 0.0, "NetworkConfig: eta must be > 0");
    require(p_min >= 0.0 && p_max > p_min, "NetworkConfig: need 0 <= p_min < p_max");
    require(p0 >= p_min && p0 <= p_max, "NetworkConfig: p0 out of range");
    require(u_step > 0.0, "NetworkConfig: u_step must be > 0");
    // per-link b comes from the gain matrix; validate the rest via a stand-in
    sde::LongTermParams lt_chk = lt;
    lt_chk.b = 1.0;
    lt_chk.validate();
    st.validate();
    require(lt.alpha == st.alpha,
            "NetworkConfig: long- and short-term stability indices must match");
}

void CostWeights::validate() const {
    require(r_th > 0.0, "CostWeights: r_th must be > 0");
    require(varsigma >= 0.0 && lambda >= 0.0 && fairness_weight >= 0.0 &&
                sum_rate_terminal_weight >= 0.0 && power_increase_weight >= 0.0,
            "CostWeights: weights must be >= 0");
}

void DpConfig::validate() const {
    require(rounds >= 0, "DpConfig: rounds must be >= 0");
    require(n_steps >= 1, "DpConfig: n_steps must be >= 1");
    require(dt > 0.0, "DpConfig: dt must be > 0");
    require(beta_nodes >= 2 && p_nodes >= 2, "DpConfig: node counts must be >= 2");
    require(mc_samples >= 1, "DpConfig: mc_samples must be >= 1");
    require(p_state_max > 0.0, "DpConfig: p_state_max must be > 0");
    require(beta_halfwidth > 0.0, "DpConfig: beta_halfwidth must be > 0");
}

NetworkState initial_state(const NetworkConfig& cfg) {
    NetworkState s;
    s.n_bs = cfg.n_bs;
    s.m_ue = cfg.m_ue;
    s.beta.resize(static_cast<size_t>(cfg.n_bs) * cfg.m_ue);
    s.power.resize(s.beta.size());
    s.tx.assign(cfg.n_bs, cfg.p0);
    for (int i = 0; i < cfg.n_bs; ++i)
        for (int l = 0; l < cfg.m_ue; ++l) {
            s.beta_at(i, l) = -cfg.b_offset(i, l); // OU equilibrium
            s.power_at(i, l) = cfg.gain(i, l) * cfg.p0;
        }
    return s;
}

double sinr(const NetworkState& s, int ue, int bs, double eta) {
    if (!(eta > 0.0))
        throw std::invalid_argument("sinr: eta must be > 0");
    double interference = 0.0;
    for (int k = 0; k < s.n_bs; ++k)
        if (k != bs)
            interference += s.power_at(k, ue);
    return s.power_at(bs, ue) / (interference + eta);
}

double stage_cost(const NetworkState& s, const CostWeights& w, double eta) {
    if (w.variant != CostVariant::paper_eq52)
        throw std::invalid_argument("stage_cost: paper_eq52 weights expected");
    return eq52_from_matrix(s.n_bs, s.m_ue, s.power.data(), s.tx.data(), w, eta);
}

ComparativeCost comparative_cost(const NetworkState& s,
                                 const std::vector<double>& prev_tx,
                                 const CostWeights& w, double eta) {
    if (w.variant != CostVariant::comparative)
        throw std::invalid_argument("comparative_cost: comparative weights expected");
    require(prev_tx.size() == s.tx.size(), "comparative_cost: prev_tx size mismatch");
    const int m = std::min(s.n_bs, s.m_ue);
    std::vector<double> g(m);
    serving_sinrs(s.n_bs, s.m_ue, s.power.data(), eta, g.data());

    double pow_pen = 0.0;
    for (size_t i = 0; i < s.tx.size(); ++i) {
        const double d = pos_part(s.tx[i] - prev_tx[i]);
        pow_pen += w.power_increase_weight * d * d;
    }
    const double shared = comparative_running_terms(m, g.data(), w);

    ComparativeCost out;
    out.running = pow_pen + shared;
    double sum_rate = 0.0;
    for (int l = 0; l < m; ++l)
        sum_rate += std::log2(1.0 + g[l]);
    out.terminal = pow_pen + shared - w.sum_rate_terminal_weight * sum_rate;
    return out;
}

void apply_action(NetworkState& s, const std::vector<int>& deltas,
                  const NetworkConfig& cfg) {
    require(deltas.size() == s.tx.size(), "apply_action: deltas size mismatch");
    for (size_t i = 0; i < s.tx.size(); ++i) {
        require(deltas[i] >= -1 && deltas[i] <= 1,
                "apply_action: deltas must be in {-1, 0, +1}");
        s.tx[i] =
            std::clamp(s.tx[i] + deltas[i] * cfg.u_step, cfg.p_min, cfg.p_max);
    }
}

StepRecord network_step(NetworkState& s, const NetworkConfig& cfg, double dt,
                        Rng& rng) {
    StepRecord rec;
    const size_t links = s.beta.size();
    rec.noise.assign(links, 0.0);
    rec.clipped.assign(links, 0);
    rec.failed.assign(links, 0);

    for (int i = 0; i < s.n_bs; ++i)
        for (int l = 0; l < s.m_ue; ++l) {
            const size_t idx = static_cast<size_t>(i) * s.m_ue + l;
            sde::LongTermParams lt = cfg.lt;
            lt.b = cfg.b_offset(i, l);
            const double beta_old = s.beta_at(i, l);

            const sde::Step bs_step = sde::step_long_term(beta_old, lt, dt, rng);
            const sde::Step ps_step = sde::step_short_term(
                s.power_at(i, l), beta_old, s.tx[i], cfg.st, dt, rng);

            if (!std::isfinite(bs_step.value) || !std::isfinite(ps_step.value) ||
                std::abs(bs_step.value) > 1e12 || std::abs(ps_step.value) > 1e12) {
                rec.failed[idx] = 1;
                continue; // keep the previous link state
            }
            s.beta_at(i, l) = bs_step.value;
            s.power_at(i, l) = ps_step.value;
            rec.noise[idx] = ps_step.noise;
            rec.clipped[idx] = ps_step.clipped;
        }
    s.t += dt;
    return rec;
}

// ---------------------------------------------------------------------------
// Round-based downlink DP
// ---------------------------------------------------------------------------

namespace {

// Per-BS control problem against a frozen replay. State: (beta_serving,
// p_serving, tx). The BS's own interference links enter through the
// mean-field map e^{beta_hat_il(t)} tx + rho; everything else is frozen.
hjb::ControlProblem build_bs_problem(const NetworkConfig& cfg,
                                     const CostWeights& w, const DpConfig& dp,
                                     const Replay& replay, int i) {
    hjb::ControlProblem pb;
    pb.dim = 3;
    pb.n_actions = 3;
    pb.alpha = cfg.st.alpha;
    pb.t0 = 0.0;
    pb.T = dp.n_steps * dp.dt;
    const double b_serv = cfg.b_offset(i, i);
    pb.box_lo = {-b_serv - dp.beta_halfwidth, 0.0, cfg.p_min};
    pb.box_hi = {-b_serv + dp.beta_halfwidth, dp.p_state_max, cfg.p_max};

    const double a = cfg.lt.a;
    const double drift_scale =
        (1.0 / cfg.st.tau) * (cfg.st.sigma_chi * cfg.st.sigma_chi / 2.0) *
        cfg.st.c_eps;
    const double rho = cfg.st.rho;
    const double u_step = cfg.u_step;
    const double p_lo = cfg.p_min, p_hi = cfg.p_max;
    const double dt = dp.dt;
    const double sig_beta = cfg.lt.sigma_beta;
    const double diff_scale =
        cfg.st.noise_scale * cfg.st.sigma_chi / std::sqrt(cfg.st.tau);

    pb.drift = [=](const hjb::Vec& x, int u, hjb::Vec& b) {
        const double tx_new = std::clamp(x[2] + (u - 1) * u_step, p_lo, p_hi);
        b[0] = -a * (x[0] + b_serv);
        b[1] = drift_scale * (1.0 - x[1] / (std::exp(x[0]) * tx_new + rho));
        b[2] = (tx_new - x[2]) / dt;
    };
    pb.noise = [=](const hjb::Vec& x, hjb::Vec& s) {
        s[0] = sig_beta;
        s[1] = diff_scale * std::sqrt(std::max(x[1], 0.0));
        s[2] = 0.0;
    };

    const int n_bs = cfg.n_bs, m_ue = cfg.m_ue;
    const double eta = cfg.eta;
    const int n_steps = dp.n_steps;
    // closures own a copy of the replay; the caller mutates its own
    const Replay rep = replay;

    auto effective_matrix = [n_bs, m_ue, rho, &w](const Replay& r, int t, int bs,
                                                  double p_own, double tx_eff,
                                                  double* p_out,
                                                  double* tx_out) {
        (void)w;
        for (int k = 0; k < n_bs; ++k) {
            tx_out[k] = r.tx[r.ib(t, k)];
            for (int l = 0; l < m_ue; ++l)
                p_out[k * m_ue + l] = r.power[r.il(t, k, l)];
        }
        tx_out[bs] = tx_eff;
        for (int l = 0; l < m_ue; ++l)
            p_out[bs * m_ue + l] =
                l == bs ? p_own
                        : std::exp(r.beta[r.il(t, bs, l)]) * tx_eff + rho;
    };

    if (w.variant == CostVariant::paper_eq52) {
        pb.running_cost = [=](double t, const hjb::Vec& x, int u) {
            int n = static_cast<int>(std::lround(t / dt));
            n = std::clamp(n, 0, n_steps);
            const double tx_eff = std::clamp(x[2] + (u - 1) * u_step, p_lo, p_hi);
            double p_mat[64], tx_vec[8];
            effective_matrix(rep, n, i, x[1], tx_eff, p_mat, tx_vec);
            return eq52_from_matrix(n_bs, m_ue, p_mat, tx_vec, w, eta);
        };
        pb.terminal_cost = [](const hjb::Vec&) { return 0.0; };
    } else {
        pb.running_cost = [=](double t, const hjb::Vec& x, int u) {
            int n = static_cast<int>(std::lround(t / dt));
            n = std::clamp(n, 0, n_steps);
            const double tx_eff = std::clamp(x[2] + (u - 1) * u_step, p_lo, p_hi);
            double p_mat[64], tx_vec[8], g[8];
            effective_matrix(rep, n, i, x[1], tx_eff, p_mat, tx_vec);
            serving_sinrs(n_bs, m_ue, p_mat, eta, g);
            const int m = std::min(n_bs, m_ue);
            const double d = pos_part(tx_eff - x[2]);
            return w.power_increase_weight * d * d +
                   comparative_running_terms(m, g, w);
        };
        pb.terminal_cost = [=](const hjb::Vec& x) {
            double p_mat[64], tx_vec[8], g[8];
            effective_matrix(rep, n_steps, i, x[1], x[2], p_mat, tx_vec);
            serving_sinrs(n_bs, m_ue, p_mat, eta, g);
            const int m = std::min(n_bs, m_ue);
            double sum_rate = 0.0;
            for (int l = 0; l < m; ++l)
                sum_rate += std::log2(1.0 + g[l]);
            return comparative_running_terms(m, g, w) -
                   w.sum_rate_terminal_weight * sum_rate;
        };
    }
    return pb;
}

constexpr std::uint64_t kTagRandomPolicy = 0x52414e44ull; // initial actions
constexpr std::uint64_t kTagJointForward = 0x464f5257ull; // per-round records
constexpr std::uint64_t kTagPartial = 0x50415254ull;      // Gauss-Seidel refresh
constexpr std::uint64_t kTagSweep = 0x53574550ull;        // DP sample streams
constexpr std::uint64_t kTagExec = 0x45584543ull;         // greedy execution

constexpr int kExecSamples = 64; // lookahead samples at execution time

// Forward-simulates the joint network for one round, filling the artifact row
// and the replay. Problems empty => uniform random actions; otherwise each BS
// acts greedily w.r.t. its value table at its exact state.
void forward_round(const NetworkConfig& cfg, const CostWeights& w,
                   const DpConfig& dp, int round,
                   const std::vector<hjb::ControlProblem>& pbs,
                   const std::vector<hjb::ValueTable>& vts, RunArtifacts& art,
                   Replay& replay) {
    NetworkState s = initial_state(cfg);
    std::vector<double> prev_tx = s.tx;
    Rng rng = Rng::stream(dp.seed, {kTagJointForward, static_cast<std::uint64_t>(round)});
    const bool have_policy = !pbs.empty();
    const int m = std::min(cfg.n_bs, cfg.m_ue);
    double total = 0.0;

    for (int t_idx = 0; t_idx <= dp.n_steps; ++t_idx) {
        // pre-action DP value at the realized state
        double val = 0.0;
        if (have_policy) {
            for (int i = 0; i < cfg.n_bs; ++i) {
                const hjb::Vec x{s.beta_at(i, i), s.power_at(i, i), s.tx[i]};
                val += vts[i].interp_at(t_idx, x);
            }
            val /= cfg.n_bs;
        }
        art.value[art.idx_rt(round, t_idx)] = val;

        std::vector<int> deltas(cfg.n_bs, 0);
        if (t_idx < dp.n_steps) {
            for (int i = 0; i < cfg.n_bs; ++i) {
                if (have_policy) {
                    const hjb::Vec x{s.beta_at(i, i), s.power_at(i, i), s.tx[i]};
                    Rng er = Rng::stream(dp.seed,
                                         {kTagExec,
                                          static_cast<std::uint64_t>(round),
                                          static_cast<std::uint64_t>(t_idx),
                                          static_cast<std::uint64_t>(i)});
                    deltas[i] = hjb::greedy_action(pbs[i], vts[i], t_idx, x,
                                                   kExecSamples, er) -
                                1;
                } else {
                    Rng r = Rng::stream(dp.seed,
                                        {kTagRandomPolicy,
                                         static_cast<std::uint64_t>(round),
                                         static_cast<std::uint64_t>(t_idx),
                                         static_cast<std::uint64_t>(i)});
                    deltas[i] = static_cast<int>(r.next() % 3) - 1;
                }
            }
            apply_action(s, deltas, cfg);
        }

        for (int i = 0; i < cfg.n_bs; ++i) {
            art.tx[art.idx_rt(round, t_idx) * cfg.n_bs + i] = s.tx[i];
            art.action[art.idx_rt(round, t_idx) * cfg.n_bs + i] = deltas[i];
        }
        for (int l = 0; l < m; ++l)
            art.sinr[art.idx_rt(round, t_idx) * cfg.m_ue + l] =
                sinr(s, l, l, cfg.eta);

        double c;
        if (w.variant == CostVariant::paper_eq52) {
            c = stage_cost(s, w, cfg.eta);
            if (t_idx < dp.n_steps)
                total += c * dp.dt;
        } else {
            const ComparativeCost cc = comparative_cost(s, prev_tx, w, cfg.eta);
            c = t_idx < dp.n_steps ? cc.running : cc.terminal;
            total += t_idx < dp.n_steps ? cc.running * dp.dt : cc.terminal;
        }
        art.cost[art.idx_rt(round, t_idx)] = c;

        // replay snapshot at t_idx
        for (int i = 0; i < cfg.n_bs; ++i) {
            replay.tx[replay.ib(t_idx, i)] = s.tx[i];
            for (int l = 0; l < cfg.m_ue; ++l) {
                replay.beta[replay.il(t_idx, i, l)] = s.beta_at(i, l);
                replay.power[replay.il(t_idx, i, l)] = s.power_at(i, l);
            }
        }
        for (int i = 0; i < cfg.n_bs; ++i)
            for (int l = 0; l < cfg.m_ue; ++l) {
                const size_t k =
                    (art.idx_rt(round, t_idx) * cfg.n_bs + i) * cfg.m_ue + l;
                art.link_power[k] = s.power_at(i, l);
            }

        prev_tx = s.tx;
        if (t_idx < dp.n_steps) {
            const StepRecord rec = network_step(s, cfg, dp.dt, rng);
            for (int i = 0; i < cfg.n_bs; ++i)
                for (int l = 0; l < cfg.m_ue; ++l) {
                    const size_t src = static_cast<size_t>(i) * cfg.m_ue + l;
                    const size_t dst =
                        (art.idx_rt(round, t_idx + 1) * cfg.n_bs + i) * cfg.m_ue +
                        l;
                    art.link_noise[dst] = rec.noise[src];
                    art.link_clipped[dst] = rec.clipped[src];
                }
        }
    }
    art.round_total_cost[round] = total;
}

// Re-simulates only BS i's own links under its fresh policy and overwrites
// its replay rows (the Gauss-Seidel refresh inside a round).
void partial_forward(const NetworkConfig& cfg, const DpConfig& dp, int round,
                     int i, const hjb::ControlProblem& pb,
                     const hjb::ValueTable& vt, Replay& replay) {
    Rng rng = Rng::stream(dp.seed, {kTagPartial, static_cast<std::uint64_t>(round),
                                    static_cast<std::uint64_t>(i)});
    std::vector<double> beta(cfg.m_ue), power(cfg.m_ue);
    for (int l = 0; l < cfg.m_ue; ++l) {
        beta[l] = -cfg.b_offset(i, l);
        power[l] = cfg.gain(i, l) * cfg.p0;
    }
    double tx = cfg.p0;

    for (int t_idx = 0; t_idx <= dp.n_steps; ++t_idx) {
        if (t_idx < dp.n_steps) {
            const hjb::Vec x{beta[i], power[i], tx};
            Rng er = Rng::stream(dp.seed, {kTagPartial ^ kTagExec,
                                           static_cast<std::uint64_t>(round),
                                           static_cast<std::uint64_t>(i),
                                           static_cast<std::uint64_t>(t_idx)});
            const int delta =
                hjb::greedy_action(pb, vt, t_idx, x, kExecSamples, er) - 1;
            tx = std::clamp(tx + delta * cfg.u_step, cfg.p_min, cfg.p_max);
        }
        replay.tx[replay.ib(t_idx, i)] = tx;
        for (int l = 0; l < cfg.m_ue; ++l) {
            replay.beta[replay.il(t_idx, i, l)] = beta[l];
            replay.power[replay.il(t_idx, i, l)] = power[l];
        }
        if (t_idx < dp.n_steps) {
            for (int l = 0; l < cfg.m_ue; ++l) {
                sde::LongTermParams lt = cfg.lt;
                lt.b = cfg.b_offset(i, l);
                const double beta_old = beta[l];
                const sde::Step bs_step = sde::step_long_term(beta_old, lt, dp.dt, rng);
                const sde::Step ps_step =
                    sde::step_short_term(power[l], beta_old, tx, cfg.st, dp.dt, rng);
                if (std::isfinite(bs_step.value) && std::isfinite(ps_step.value) &&
                    std::abs(bs_step.value) <= 1e12 &&
                    std::abs(ps_step.value) <= 1e12) {
                    beta[l] = bs_step.value;
                    power[l] = ps_step.value;
                }
            }
        }
    }
}

} // namespace

RunArtifacts run_downlink(const NetworkConfig& cfg, const CostWeights& weights,
                          const DpConfig& dp) {
    cfg.validate();
    weights.validate();
    dp.validate();
    require(std::min(cfg.n_bs, cfg.m_ue) >= 1, "run_downlink: empty network");
    require(cfg.n_bs <= 8, "run_downlink: at most 8 base stations");

    RunArtifacts art;
    art.n_bs = cfg.n_bs;
    art.m_ue = cfg.m_ue;
    art.n_steps = dp.n_steps;
    art.n_rounds = dp.rounds;
    art.dt = dp.dt;
    art.variant = weights.variant;
    const size_t rt = static_cast<size_t>(dp.rounds + 1) * (dp.n_steps + 1);
    art.tx.assign(rt * cfg.n_bs, 0.0);
    art.action.assign(rt * cfg.n_bs, 0);
    art.sinr.assign(rt * cfg.m_ue, 0.0);
    art.value.assign(rt, 0.0);
    art.cost.assign(rt, 0.0);
    art.link_power.assign(rt * cfg.n_bs * cfg.m_ue, 0.0);
    art.link_noise.assign(rt * cfg.n_bs * cfg.m_ue, 0.0);
    art.link_clipped.assign(rt * cfg.n_bs * cfg.m_ue, 0);
    art.round_total_cost.assign(dp.rounds + 1, 0.0);

    Replay replay;
    replay.resize(dp.n_steps, cfg.n_bs, cfg.m_ue);

    std::vector<hjb::ControlProblem> pbs;
    std::vector<hjb::ValueTable> vts;

    // round 0: random policy
    forward_round(cfg, weights, dp, 0, pbs, vts, art, replay);

    // Fictitious-play averaging: each round's sweeps respond to the running
    // average of past joint trajectories, which damps the best-response
    // cycling a raw last-round replay produces.
    Replay avg = replay;

    const int n_tx_levels =
        static_cast<int>(std::lround((cfg.p_max - cfg.p_min) / cfg.u_step)) + 1;

    pbs.resize(cfg.n_bs);
    vts.resize(cfg.n_bs);
    for (int r = 1; r <= dp.rounds; ++r) {
        Replay working = avg; // predecessors' partial refreshes land here
        for (int i = 0; i < cfg.n_bs; ++i) {
            pbs[i] = build_bs_problem(cfg, weights, dp, working, i);
            hjb::SweepConfig sc;
            sc.n_nodes = {dp.beta_nodes, dp.p_nodes, n_tx_levels};
            sc.n_steps = dp.n_steps;
            sc.mc_samples = dp.mc_samples;
            sc.seed = Rng::stream(dp.seed, {kTagSweep, static_cast<std::uint64_t>(r),
                                            static_cast<std::uint64_t>(i)})
                          .next();
            hjb::SweepResult res =
                hjb::backward_sweep(pbs[i], hjb::Scheme::mc_lookahead, sc);
            vts[i] = std::move(res.value);
            partial_forward(cfg, dp, r, i, pbs[i], vts[i], working);
        }
        forward_round(cfg, weights, dp, r, pbs, vts, art, replay);
        const double w = 1.0 / (r + 1.0);
        for (size_t k = 0; k < avg.beta.size(); ++k) {
            avg.beta[k] += w * (replay.beta[k] - avg.beta[k]);
            avg.power[k] += w * (replay.power[k] - avg.power[k]);
        }
        for (size_t k = 0; k < avg.tx.size(); ++k)
            avg.tx[k] += w * (replay.tx[k] - avg.tx[k]);
    }
    return art;
}

ExceedanceCounts noise_power_exceedance(const RunArtifacts& art) {
    ExceedanceCounts out;
    out.per_link.assign(static_cast<size_t>(art.n_bs) * art.m_ue, 0);
    for (int r = 0; r <= art.n_rounds; ++r)
        for (int t = 1; t <= art.n_steps; ++t)
            for (int i = 0; i < art.n_bs; ++i)
                for (int l = 0; l < art.m_ue; ++l) {
                    ++out.steps_counted;
                    if (std::abs(art.noise_at(r, t, i, l)) >
                        art.power_at(r, t, i, l)) {
                        ++out.per_link[static_cast<size_t>(i) * art.m_ue + l];
                        ++out.total;
                    }
                }
    return out;
}

namespace {

long count_action_changes(const RunArtifacts& art, int round) {
    long changes = 0;
    for (int i = 0; i < art.n_bs; ++i)
        for (int t = 1; t < art.n_steps; ++t)
            if (art.action_at(round, t, i) != art.action_at(round, t - 1, i))
                ++changes;
    return changes;
}

double sinr_iqr(const RunArtifacts& art, int round) {
    std::vector<double> v;
    const int m = std::min(art.n_bs, art.m_ue);
    v.reserve(static_cast<size_t>(art.n_steps + 1) * m);
    for (int t = 0; t <= art.n_steps; ++t)
        for (int l = 0; l < m; ++l)
            v.push_back(art.sinr_at(round, t, l));
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

} // namespace

GaussianLevyResult gaussian_levy_comparison(const NetworkConfig& cfg,
                                            const CostWeights& base,
                                            const DpConfig& dp,
                                            double gauss_sum_rate_weight,
                                            double levy_sum_rate_weight,
                                            double levy_alpha) {
    require(base.variant == CostVariant::comparative,
            "gaussian_levy_comparison: comparative weights expected");

    NetworkConfig cfg_g = cfg;
    cfg_g.lt.alpha = 2.0;
    cfg_g.st.alpha = 2.0;
    CostWeights w_g = base;
    w_g.sum_rate_terminal_weight = gauss_sum_rate_weight;

    NetworkConfig cfg_l = cfg;
    cfg_l.lt.alpha = levy_alpha;
    cfg_l.st.alpha = levy_alpha;
    CostWeights w_l = base;
    w_l.sum_rate_terminal_weight = levy_sum_rate_weight;

    GaussianLevyResult out;
    out.gaussian = run_downlink(cfg_g, w_g, dp);
    out.levy = run_downlink(cfg_l, w_l, dp);
    out.summary.action_changes_gaussian =
        count_action_changes(out.gaussian, out.gaussian.n_rounds);
    out.summary.action_changes_levy =
        count_action_changes(out.levy, out.levy.n_rounds);
    out.summary.sinr_iqr_gaussian = sinr_iqr(out.gaussian, out.gaussian.n_rounds);
    out.summary.sinr_iqr_levy = sinr_iqr(out.levy, out.levy.n_rounds);
    return out;
}

void write_artifacts(const RunArtifacts& art, const std::string& out_dir,
                     const std::map<std::string, std::string>& manifest) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream os(out_dir + "/powers.csv");
        if (!os)
            throw std::runtime_error("cannot open powers.csv in " + out_dir);
        os << "round,t,bs,tx,action\n";
        for (int r = 0; r <= art.n_rounds; ++r)
            for (int t = 0; t <= art.n_steps; ++t)
                for (int i = 0; i < art.n_bs; ++i) {
                    os << r << ',';
                    print_num(os, t * art.dt);
                    os << ',' << i << ',';
                    print_num(os, art.tx_at(r, t, i));
                    os << ',' << art.action_at(r, t, i) << '\n';
                }
    }
    {
        std::ofstream os(out_dir + "/sinr.csv");
        os << "round,t,ue,sinr\n";
        const int m = std::min(art.n_bs, art.m_ue);
        for (int r = 0; r <= art.n_rounds; ++r)
            for (int t = 0; t <= art.n_steps; ++t)
                for (int l = 0; l < m; ++l) {
                    os << r << ',';
                    print_num(os, t * art.dt);
                    os << ',' << l << ',';
                    print_num(os, art.sinr_at(r, t, l));
                    os << '\n';
                }
    }
    {
        std::ofstream os(out_dir + "/value.csv");
        os << "round,t,value\n";
        for (int r = 0; r <= art.n_rounds; ++r)
            for (int t = 0; t <= art.n_steps; ++t) {
                os << r << ',';
                print_num(os, t * art.dt);
                os << ',';
                print_num(os, art.value[art.idx_rt(r, t)]);
                os << '\n';
            }
    }
    {
        std::ofstream os(out_dir + "/costs.csv");
        os << "round,t,cost\n";
        for (int r = 0; r <= art.n_rounds; ++r)
            for (int t = 0; t <= art.n_steps; ++t) {
                os << r << ',';
                print_num(os, t * art.dt);
                os << ',';
                print_num(os, art.cost[art.idx_rt(r, t)]);
                os << '\n';
            }
    }
    {
        std::ofstream os(out_dir + "/noise.csv");
        os << "round,t,bs,ue,p,noise\n";
        for (int r = 0; r <= art.n_rounds; ++r)
            for (int t = 0; t <= art.n_steps; ++t)
                for (int i = 0; i < art.n_bs; ++i)
                    for (int l = 0; l < art.m_ue; ++l) {
                        os << r << ',';
                        print_num(os, t * art.dt);
                        os << ',' << i << ',' << l << ',';
                        print_num(os, art.power_at(r, t, i, l));
                        os << ',';
                        print_num(os, art.noise_at(r, t, i, l));
                        os << '\n';
                    }
    }
    {
        nlohmann::json j;
        for (const auto& [k, v] : manifest)
            j[k] = v;
        std::ofstream os(out_dir + "/manifest");
        os << j.dump(2) << '\n';
    }
}

} // namespace levychan::netsim
