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

#ifndef LEVYCHAN_NETSIM_HPP
#define LEVYCHAN_NETSIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levychan/rng.hpp"
#include "levychan/sde.hpp"

namespace levychan::netsim {

/// Multi-cell downlink configuration: N base stations broadcasting to M users
/// on the same band. Per-link long-term equilibria come from the median gain
/// matrix e^{b_il} (serving links i == l, interfering links i != l).
struct NetworkConfig {
    int n_bs = 3;
    int m_ue = 3;
    std::vector<double> median_gain; ///< [i * m_ue + l], each in (0, 1)
    double eta = 1.0;                ///< thermal noise power
    double p_min = 0.0;
    double p_max = 15.0;
    double p0 = 8.0;    ///< initial transmit power
    double u_step = 1.0; ///< action granularity (W)
    sde::LongTermParams lt;  ///< a, sigma_beta, alpha (b is per-link)
    sde::ShortTermParams st; ///< sigma_chi, c_eps, tau, rho, alpha, noise_scale

    static NetworkConfig table_defaults();
    double gain(int bs, int ue) const { return median_gain[bs * m_ue + ue]; }
    double b_offset(int bs, int ue) const; ///< b_il = -ln(gain)
    void validate() const;
};

/// Instantaneous joint channel state.
struct NetworkState {
    int n_bs = 0, m_ue = 0;
    std::vector<double> beta;  ///< [i * m_ue + l]
    std::vector<double> power; ///< received p_il >= 0
    std::vector<double> tx;    ///< transmit powers, within [p_min, p_max]
    double t = 0.0;

    double& beta_at(int i, int l) { return beta[i * m_ue + l]; }
    double beta_at(int i, int l) const { return beta[i * m_ue + l]; }
    double& power_at(int i, int l) { return power[i * m_ue + l]; }
    double power_at(int i, int l) const { return power[i * m_ue + l]; }
};

NetworkState initial_state(const NetworkConfig& cfg);

enum class CostVariant { paper_eq52, comparative };

struct CostWeights {
    double r_th = 1.5;     ///< SINR threshold
    double varsigma = 1.0; ///< outage penalty weight
    double lambda = 0.1;   ///< power cost weight
    CostVariant variant = CostVariant::paper_eq52;
    // comparative variant only:
    double fairness_weight = 0.5;
    double sum_rate_terminal_weight = 1.0;
    double power_increase_weight = 0.1;

    void validate() const;
};

/// SINR of the (bs -> ue) link: p_il / (sum_{k != i} p_kl + eta).
double sinr(const NetworkState& s, int ue, int bs, double eta);

/// Stage cost, summed over all (i, l) pairs:
/// -log2(1 + gamma_il) + varsigma (r_th - gamma_il)^+ + lambda p_in,i.
double stage_cost(const NetworkState& s, const CostWeights& w, double eta);

/// Comparative cost variant: running and terminal parts over the serving
/// SINRs {gamma_ll}. The terminal sum-rate reward enters negated.
struct ComparativeCost {
    double running = 0.0;
    double terminal = 0.0;
};
ComparativeCost comparative_cost(const NetworkState& s,
                                 const std::vector<double>& prev_tx,
                                 const CostWeights& w, double eta);

/// Applies per-BS power adjustments (each in {-1, 0, +1} action steps);
/// transmit powers clamp to [p_min, p_max].
void apply_action(NetworkState& s, const std::vector<int>& deltas,
                  const NetworkConfig& cfg);

/// Advances every link one Euler step; returns the realized per-link noise
/// terms and clip flags (indexed [i * m_ue + l]).
struct StepRecord {
    std::vector<double> noise;
    std::vector<std::uint8_t> clipped;
    std::vector<std::uint8_t> failed;
};
StepRecord network_step(NetworkState& s, const NetworkConfig& cfg, double dt,
                        Rng& rng);

/// Round-based DP configuration (per-BS Gauss-Seidel best response).
struct DpConfig {
    int rounds = 100;
    int n_steps = 100; ///< N_t
    double dt = 0.1;
    int beta_nodes = 8;
    int p_nodes = 10;
    int mc_samples = 12;
    double p_state_max = 12.0;   ///< DP grid upper bound for received power
    double beta_halfwidth = 1.0; ///< DP grid half-width around -b_serving
    std::uint64_t seed = 1;

    void validate() const;
};

/// Everything a downlink run records, round by round. Round index 0 is the
/// initial random-policy forward run; rounds 1..R follow the per-round DP
/// updates. Time rows run 0..n_steps (actions are 0 on the terminal row).
struct RunArtifacts {
    int n_bs = 0, m_ue = 0, n_steps = 0, n_rounds = 0; ///< n_rounds excludes round 0
    double dt = 0.1;
    CostVariant variant = CostVariant::paper_eq52;

    // [round][t][bs]
    std::vector<double> tx;
    std::vector<int> action;
    // [round][t][ue]: serving SINR gamma_ll
    std::vector<double> sinr;
    // [round][t]
    std::vector<double> value;
    std::vector<double> cost;
    // [round][t][bs][ue]
    std::vector<double> link_power;
    std::vector<double> link_noise;
    std::vector<std::uint8_t> link_clipped;
    // [round]
    std::vector<double> round_total_cost;

    int rounds_recorded() const { return n_rounds + 1; }
    size_t idx_rt(int r, int t) const {
        return static_cast<size_t>(r) * (n_steps + 1) + t;
    }
    double tx_at(int r, int t, int i) const {
        return tx[idx_rt(r, t) * n_bs + i];
    }
    int action_at(int r, int t, int i) const {
        return action[idx_rt(r, t) * n_bs + i];
    }
    double sinr_at(int r, int t, int l) const {
        return sinr[idx_rt(r, t) * m_ue + l];
    }
    double power_at(int r, int t, int i, int l) const {
        return link_power[(idx_rt(r, t) * n_bs + i) * m_ue + l];
    }
    double noise_at(int r, int t, int i, int l) const {
        return link_noise[(idx_rt(r, t) * n_bs + i) * m_ue + l];
    }
};

/// The downlink experiment: `rounds` rounds of per-BS backward Monte Carlo
/// DP against frozen previous-round trajectories (Gauss-Seidel order), each
/// followed by a joint forward simulation that records the round.
RunArtifacts run_downlink(const NetworkConfig& cfg, const CostWeights& weights,
                          const DpConfig& dp);

/// Counts recorded steps with |noise term| > p_il(t), per link and total.
struct ExceedanceCounts {
    std::vector<long> per_link; ///< [i * m_ue + l]
    long total = 0;
    long steps_counted = 0; ///< total (round, t>=1, link) triples examined
};
ExceedanceCounts noise_power_exceedance(const RunArtifacts& art);

/// Matched-seed Gaussian (alpha = 2) vs Levy (alpha = 1.8) comparison with
/// the comparative cost variant and the stated terminal sum-rate weights.
struct ComparisonSummary {
    long action_changes_gaussian = 0;
    long action_changes_levy = 0;
    double sinr_iqr_gaussian = 0.0;
    double sinr_iqr_levy = 0.0;
};
struct GaussianLevyResult {
    RunArtifacts gaussian;
    RunArtifacts levy;
    ComparisonSummary summary;
};
GaussianLevyResult gaussian_levy_comparison(const NetworkConfig& cfg,
                                            const CostWeights& base,
                                            const DpConfig& dp,
                                            double gauss_sum_rate_weight,
                                            double levy_sum_rate_weight,
                                            double levy_alpha);

/// Writes powers.csv, sinr.csv, value.csv, noise.csv, costs.csv and the
/// manifest into out_dir (fixed column orders, full-precision floats).
void write_artifacts(const RunArtifacts& art, const std::string& out_dir,
                     const std::map<std::string, std::string>& manifest);

} // namespace levychan::netsim

#endif // LEVYCHAN_NETSIM_HPP
