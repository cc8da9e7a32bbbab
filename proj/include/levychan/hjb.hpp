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

#ifndef LEVYCHAN_HJB_HPP
#define LEVYCHAN_HJB_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levychan/rng.hpp"

namespace levychan::hjb {

using Vec = std::array<double, 3>; ///< state vector, unused trailing dims = 0

/// Uniform tensor-product grid over a rectangular state box (1 to 3 dims).
/// Interpolation queries outside the box clamp to the nearest face.
struct StateGrid {
    int dim = 1;
    std::array<int, 3> n{2, 1, 1};
    Vec lo{0.0, 0.0, 0.0};
    Vec hi{1.0, 0.0, 0.0};

    int total() const { return n[0] * n[1] * n[2]; }
    double spacing(int axis) const {
        return n[axis] > 1 ? (hi[axis] - lo[axis]) / (n[axis] - 1) : 0.0;
    }
    double coord(int axis, int idx) const {
        return n[axis] > 1 ? lo[axis] + spacing(axis) * idx : lo[axis];
    }
    Vec node(int flat) const;
    int flat(int i0, int i1, int i2) const { return (i0 * n[1] + i1) * n[2] + i2; }

    /// Multilinear interpolation (constant-preserving nested lerps).
    double interp(const std::vector<double>& vals, const Vec& x) const;
    /// Nearest node index; ties resolve toward the lower index.
    int nearest(const Vec& x) const;

    void validate() const;
};

/// Finite-horizon control problem on a rectangular state box with a finite
/// action set and per-dimension stable noise intensities.
struct ControlProblem {
    int dim = 1;
    int n_actions = 1;
    double alpha = 2.0; ///< stability index of the driving noise, (1, 2]
    double t0 = 0.0;
    double T = 1.0;
    Vec box_lo{-1.0, 0.0, 0.0};
    Vec box_hi{1.0, 0.0, 0.0};

    std::function<void(const Vec& x, int u, Vec& drift)> drift;
    std::function<void(const Vec& x, Vec& sigma_diag)> noise;
    std::function<double(double t, const Vec& x, int u)> running_cost;
    std::function<double(const Vec& x)> terminal_cost;

    void validate() const;
};

/// Hamiltonian H(x, p) = min_u [ p . b(x,u) + L(t,x,u) ] with the minimizing
/// action (lowest index wins ties).
std::pair<double, int> hamiltonian(const ControlProblem& pb, double t,
                                   const Vec& x, const Vec& p);

/// Numerical linear-growth constant of the Hamiltonian: max over sampled
/// grid states and unit co-state directions of |H(x,q) - H(x,0)| + |H(x,0)|.
double estimate_hamiltonian_growth(const ControlProblem& pb,
                                   const StateGrid& grid);

enum class Scheme { semi_lagrangian, mc_lookahead };

struct SweepConfig {
    std::array<int, 3> n_nodes{33, 1, 1};
    int n_steps = 10;
    int mc_samples = 1000; ///< K, mc_lookahead only
    std::uint64_t seed = 1;
};

struct ValueTable {
    StateGrid grid;
    std::vector<double> times;  ///< ascending, t0 .. T
    std::vector<double> values; ///< [t * grid.total() + node]

    double at(int t_idx, int node) const {
        return values[static_cast<size_t>(t_idx) * grid.total() + node];
    }
    double interp_at(int t_idx, const Vec& x) const;
};

struct Policy {
    StateGrid grid;
    std::vector<double> times;
    std::vector<int> actions; ///< [t * grid.total() + node]; terminal layer 0

    int at(int t_idx, int node) const {
        return actions[static_cast<size_t>(t_idx) * grid.total() + node];
    }
};

struct SweepResult {
    ValueTable value;
    Policy policy;
    std::vector<std::string> warnings; ///< CFL-style stability notes
};

/// Backward dynamic-programming sweep. Both schemes are monotone in the
/// future value layer: interpolation weights and sample averages are
/// non-negative. semi_lagrangian needs dim <= 2 and isotropic sigma (the
/// nonlocal term is evaluated with the generator-form operator);
/// mc_lookahead replaces the expectation with mc_samples sampled stable
/// transitions per (node, action), with RNG streams keyed by
/// (time index, node index, action index). Non-finite values abort.
SweepResult backward_sweep(const ControlProblem& pb, Scheme scheme,
                           const SweepConfig& cfg);

/// One-step-lookahead argmin at an arbitrary (off-grid) state against a
/// computed value table: the greedy policy w.r.t. V, evaluated with common
/// random numbers across actions. Used by forward simulations to avoid
/// nearest-node policy quantization.
int greedy_action(const ControlProblem& pb, const ValueTable& vt, int t_idx,
                  const Vec& x, int mc_samples, Rng& rng);

/// Checks -W1 - 2 C_H (T-t) <= V(t,x) <= W1 + 2 C_H (T-t) at every node,
/// with tolerance one scheme-truncation estimate (dt * C_H). Report only.
struct EnvelopeReport {
    bool pass = true;
    double worst_violation = 0.0;
    int worst_t = -1;
    int worst_node = -1;
    double tolerance = 0.0;
};

EnvelopeReport envelope_check(const ValueTable& vt, double w1, double c_h);

/// Solves the problem twice with identical scheme/seed under terminal costs
/// g1 <= g2 and verifies V1 <= V2 + eps_float node-wise (the monotone scheme
/// transports the terminal ordering backward).
struct ComparisonReport {
    bool pass = true;
    double worst_gap = 0.0; ///< max over nodes of V1 - V2
    int worst_t = -1;
    int worst_node = -1;
};

ComparisonReport comparison_monotonicity_check(
    const ControlProblem& pb, const std::function<double(const Vec&)>& g1,
    const std::function<double(const Vec&)>& g2, Scheme scheme,
    const SweepConfig& cfg);

/// CSV exports: "t,x0[,x1[,x2]],value" and "t,x0[,x1[,x2]],action".
void write_value_csv(const ValueTable& vt, const std::string& path);
void write_policy_csv(const Policy& pol, const std::string& path);

} // namespace levychan::hjb

#endif // LEVYCHAN_HJB_HPP
