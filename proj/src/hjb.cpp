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

#include "levychan/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "levychan/riesz.hpp"
#include "levychan/stable.hpp"

namespace levychan::hjb {

namespace {

void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(what);
}

double lerp(double a, double b, double w) { return a + w * (b - a); }

} // namespace

Vec StateGrid::node(int flat_idx) const {
    const int i2 = flat_idx % n[2];
    const int i1 = (flat_idx / n[2]) % n[1];
    const int i0 = flat_idx / (n[1] * n[2]);
    return {coord(0, i0), coord(1, i1), coord(2, i2)};
}

void StateGrid::validate() const {
    require(dim >= 1 && dim <= 3, "StateGrid: dim must be 1..3");
    for (int a = 0; a < 3; ++a) {
        require(n[a] >= 1, "StateGrid: node counts must be >= 1");
        if (a < dim) {
            require(n[a] >= 2, "StateGrid: active axes need >= 2 nodes");
            require(hi[a] > lo[a], "StateGrid: box must have positive extent");
        }
    }
}

double StateGrid::interp(const std::vector<double>& vals, const Vec& x) const {
    int i[3];
    double w[3];
    for (int a = 0; a < 3; ++a) {
        if (n[a] == 1) {
            i[a] = 0;
            w[a] = 0.0;
            continue;
        }
        const double h = spacing(a);
        double r = (x[a] - lo[a]) / h;
        if (r <= 0.0) {
            i[a] = 0;
            w[a] = 0.0;
        } else if (r >= n[a] - 1) {
            i[a] = n[a] - 2;
            w[a] = 1.0;
        } else {
            i[a] = static_cast<int>(r);
            w[a] = r - i[a];
        }
    }
    auto v = [&](int d0, int d1, int d2) {
        const int j0 = std::min(i[0] + d0, n[0] - 1);
        const int j1 = std::min(i[1] + d1, n[1] - 1);
        const int j2 = std::min(i[2] + d2, n[2] - 1);
        return vals[static_cast<size_t>(flat(j0, j1, j2))];
    };
    const double c00 = lerp(v(0, 0, 0), v(0, 0, 1), w[2]);
    const double c01 = lerp(v(0, 1, 0), v(0, 1, 1), w[2]);
    const double c10 = lerp(v(1, 0, 0), v(1, 0, 1), w[2]);
    const double c11 = lerp(v(1, 1, 0), v(1, 1, 1), w[2]);
    const double c0 = lerp(c00, c01, w[1]);
    const double c1 = lerp(c10, c11, w[1]);
    return lerp(c0, c1, w[0]);
}

int StateGrid::nearest(const Vec& x) const {
    int idx[3] = {0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        if (n[a] == 1)
            continue;
        const double r = (x[a] - lo[a]) / spacing(a);
        int base = static_cast<int>(std::floor(r));
        const double frac = r - base;
        int j = frac > 0.5 ? base + 1 : base; // ties resolve low
        idx[a] = std::max(0, std::min(n[a] - 1, j));
    }
    return flat(idx[0], idx[1], idx[2]);
}

void ControlProblem::validate() const {
    require(dim >= 1 && dim <= 3, "ControlProblem: dim must be 1..3");
    require(n_actions >= 1, "ControlProblem: need at least one action");
    require(alpha > 1.0 && alpha <= 2.0, "ControlProblem: alpha must be in (1, 2]");
    require(T > t0, "ControlProblem: T must exceed t0");
    for (int a = 0; a < dim; ++a)
        require(box_hi[a] > box_lo[a], "ControlProblem: state box must have extent");
    require(static_cast<bool>(drift) && static_cast<bool>(noise) &&
                static_cast<bool>(running_cost) && static_cast<bool>(terminal_cost),
            "ControlProblem: drift/noise/costs must all be set");
}

std::pair<double, int> hamiltonian(const ControlProblem& pb, double t,
                                   const Vec& x, const Vec& p) {
    pb.validate();
    double best = std::numeric_limits<double>::infinity();
    int best_u = 0;
    Vec b{};
    for (int u = 0; u < pb.n_actions; ++u) {
        pb.drift(x, u, b);
        double v = pb.running_cost(t, x, u);
        for (int a = 0; a < pb.dim; ++a)
            v += p[a] * b[a];
        if (v < best) { // strict: lowest index wins ties
            best = v;
            best_u = u;
        }
    }
    return {best, best_u};
}

double estimate_hamiltonian_growth(const ControlProblem& pb,
                                   const StateGrid& grid) {
    // unit co-state directions: +-e_a plus the normalized all-ones vector
    std::vector<Vec> dirs;
    for (int a = 0; a < pb.dim; ++a) {
        Vec d{0, 0, 0};
        d[a] = 1.0;
        dirs.push_back(d);
        d[a] = -1.0;
        dirs.push_back(d);
    }
    Vec ones{0, 0, 0};
    for (int a = 0; a < pb.dim; ++a)
        ones[a] = 1.0 / std::sqrt(static_cast<double>(pb.dim));
    dirs.push_back(ones);

    const int total = grid.total();
    const int stride = std::max(1, total / 512);
    double c_h = 0.0;
    const Vec zero{0, 0, 0};
    for (int node = 0; node < total; node += stride) {
        const Vec x = grid.node(node);
        const double h0 = hamiltonian(pb, pb.t0, x, zero).first;
        for (const Vec& q : dirs) {
            const double hq = hamiltonian(pb, pb.t0, x, q).first;
            c_h = std::max(c_h, std::abs(hq - h0) + std::abs(h0));
        }
    }
    return c_h;
}

namespace {

StateGrid make_grid(const ControlProblem& pb, const SweepConfig& cfg) {
    StateGrid g;
    g.dim = pb.dim;
    for (int a = 0; a < 3; ++a) {
        g.n[a] = a < pb.dim ? cfg.n_nodes[a] : 1;
        g.lo[a] = a < pb.dim ? pb.box_lo[a] : 0.0;
        g.hi[a] = a < pb.dim ? pb.box_hi[a] : 0.0;
    }
    g.validate();
    return g;
}

void check_layer_finite(const std::vector<double>& layer, int t_idx) {
    for (double v : layer)
        if (!std::isfinite(v)) {
            char msg[96];
            std::snprintf(msg, sizeof(msg),
                          "backward_sweep: non-finite value at time layer %d", t_idx);
            throw std::runtime_error(msg);
        }
}

} // namespace

SweepResult backward_sweep(const ControlProblem& pb, Scheme scheme,
                           const SweepConfig& cfg) {
    pb.validate();
    require(cfg.n_steps >= 1, "SweepConfig: n_steps must be >= 1");
    require(cfg.mc_samples >= 1, "SweepConfig: mc_samples must be >= 1");

    const StateGrid grid = make_grid(pb, cfg);
    const int total = grid.total();
    const double dt = (pb.T - pb.t0) / cfg.n_steps;

    SweepResult res;
    res.value.grid = grid;
    res.policy.grid = grid;
    res.value.times.resize(cfg.n_steps + 1);
    for (int s = 0; s <= cfg.n_steps; ++s)
        res.value.times[s] = pb.t0 + dt * s;
    res.policy.times = res.value.times;
    res.value.values.assign(static_cast<size_t>(cfg.n_steps + 1) * total, 0.0);
    res.policy.actions.assign(static_cast<size_t>(cfg.n_steps + 1) * total, 0);

    // terminal condition, assigned exactly
    for (int node = 0; node < total; ++node)
        res.value.values[static_cast<size_t>(cfg.n_steps) * total + node] =
            pb.terminal_cost(grid.node(node));

    // drift CFL advisory
    {
        double worst = 0.0;
        Vec b{};
        const int stride = std::max(1, total / 256);
        for (int node = 0; node < total; node += stride) {
            const Vec x = grid.node(node);
            for (int u = 0; u < pb.n_actions; ++u) {
                pb.drift(x, u, b);
                for (int a = 0; a < pb.dim; ++a)
                    if (grid.n[a] > 1)
                        worst = std::max(worst,
                                         std::abs(b[a]) * dt / grid.spacing(a));
            }
        }
        if (worst > 1.0) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "CFL advisory: dt * max|drift| / dx = %.3g exceeds 1",
                          worst);
            res.warnings.push_back(msg);
        }
    }

    if (scheme == Scheme::semi_lagrangian) {
        require(pb.dim <= 2, "semi_lagrangian: state dimension must be <= 2");
        require(pb.alpha < 2.0,
                "semi_lagrangian: alpha must be in (1, 2) for the generator term");

        // the nonlocal term needs an isotropic scalar sigma
        Vec sd{};
        riesz::SigmaField sf;
        double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
        for (int node = 0; node < total; ++node) {
            pb.noise(grid.node(node), sd);
            for (int a = 1; a < pb.dim; ++a)
                require(std::abs(sd[a] - sd[0]) <= 1e-12 * (1.0 + std::abs(sd[0])),
                        "semi_lagrangian: sigma must be isotropic");
            smin = std::min(smin, sd[0] * sd[0]);
            smax = std::max(smax, sd[0] * sd[0]);
        }
        require(smin > 0.0, "semi_lagrangian: sigma must be positive");
        sf.lambda_min = smin;
        sf.lambda_max = smax;
        sf.eval = [&pb](double x, double y) {
            Vec s{};
            pb.noise({x, y, 0.0}, s);
            return s[0];
        };

        // nonlocal-diagonal CFL advisory (explicit generator term)
        {
            const double h = grid.spacing(0);
            const double c1 = stable::alpha_normalization_constant(pb.alpha, 1);
            const double smax_s = std::sqrt(smax);
            const double mass =
                2.0 * c1 / pb.alpha * std::pow(0.5 * h / smax_s, -pb.alpha);
            const double inner = smax * c1 *
                                 std::pow(0.5 * h / smax_s, 2.0 - pb.alpha) /
                                 (2.0 - pb.alpha);
            const double diag = mass + 2.0 * inner / (h * h);
            if (dt * diag > 1.0) {
                char msg[160];
                std::snprintf(msg, sizeof(msg),
                              "CFL advisory: dt * nonlocal diagonal = %.3g exceeds "
                              "1; the explicit generator term may lose monotonicity",
                              dt * diag);
                res.warnings.push_back(msg);
            }
        }

        riesz::GridFn layer_fn;
        if (pb.dim == 1) {
            layer_fn = riesz::GridFn::compact_1d(grid.lo[0], grid.spacing(0),
                                                 grid.n[0], riesz::Boundary::clamp);
        } else {
            require(std::abs(grid.spacing(0) - grid.spacing(1)) <=
                        1e-12 * grid.spacing(0),
                    "semi_lagrangian 2D: grid spacing must be square");
            layer_fn.dim = 2;
            layer_fn.shape = {grid.n[0], grid.n[1]};
            layer_fn.origin = {grid.lo[0], grid.lo[1]};
            layer_fn.spacing = {grid.spacing(0), grid.spacing(1)};
            layer_fn.boundary = riesz::Boundary::clamp;
            layer_fn.values.assign(static_cast<size_t>(total), 0.0);
        }

        std::vector<double> next(total), cur(total);
        for (int s = cfg.n_steps - 1; s >= 0; --s) {
            const double t = res.value.times[s];
            for (int node = 0; node < total; ++node)
                next[node] =
                    res.value.values[static_cast<size_t>(s + 1) * total + node];
            layer_fn.values = next;
            const riesz::GridFn gen =
                riesz::apply_generator_form(layer_fn, sf, pb.alpha);

            Vec b{};
            for (int node = 0; node < total; ++node) {
                const Vec x = grid.node(node);
                double best = std::numeric_limits<double>::infinity();
                int best_u = 0;
                for (int u = 0; u < pb.n_actions; ++u) {
                    pb.drift(x, u, b);
                    Vec xs = x;
                    for (int a = 0; a < pb.dim; ++a)
                        xs[a] = std::clamp(x[a] + b[a] * dt, grid.lo[a], grid.hi[a]);
                    const double v =
                        pb.running_cost(t, x, u) * dt + grid.interp(next, xs);
                    if (v < best) {
                        best = v;
                        best_u = u;
                    }
                }
                cur[node] = best + dt * gen.values[node];
                res.policy.actions[static_cast<size_t>(s) * total + node] = best_u;
            }
            check_layer_finite(cur, s);
            for (int node = 0; node < total; ++node)
                res.value.values[static_cast<size_t>(s) * total + node] = cur[node];
        }
        return res;
    }

    // Monte Carlo one-step lookahead. The stable increments are drawn once
    // per (time, node) and shared across actions (common random numbers), so
    // the argmin compares actions on matched noise.
    std::vector<double> next(total), cur(total);
    std::vector<double> incr(static_cast<size_t>(cfg.mc_samples) * pb.dim);
    const double dt_a = std::pow(dt, 1.0 / pb.alpha);
    for (int s = cfg.n_steps - 1; s >= 0; --s) {
        const double t = res.value.times[s];
        for (int node = 0; node < total; ++node)
            next[node] = res.value.values[static_cast<size_t>(s + 1) * total + node];

        Vec b{}, sd{};
        for (int node = 0; node < total; ++node) {
            const Vec x = grid.node(node);
            pb.noise(x, sd);
            Rng rng = Rng::stream(cfg.seed, {static_cast<std::uint64_t>(s),
                                             static_cast<std::uint64_t>(node)});
            for (int k = 0; k < cfg.mc_samples; ++k)
                for (int a = 0; a < pb.dim; ++a)
                    incr[static_cast<size_t>(k) * pb.dim + a] =
                        sd[a] == 0.0
                            ? 0.0
                            : sd[a] * dt_a *
                                  stable::sample_standard_sas(pb.alpha, rng);

            double best = std::numeric_limits<double>::infinity();
            int best_u = 0;
            for (int u = 0; u < pb.n_actions; ++u) {
                pb.drift(x, u, b);
                double acc = 0.0;
                for (int k = 0; k < cfg.mc_samples; ++k) {
                    Vec xs = x;
                    for (int a = 0; a < pb.dim; ++a)
                        xs[a] = std::clamp(
                            x[a] + b[a] * dt +
                                incr[static_cast<size_t>(k) * pb.dim + a],
                            grid.lo[a], grid.hi[a]);
                    acc += grid.interp(next, xs);
                }
                const double v = pb.running_cost(t, x, u) * dt +
                                 acc / static_cast<double>(cfg.mc_samples);
                if (v < best) {
                    best = v;
                    best_u = u;
                }
            }
            cur[node] = best;
            res.policy.actions[static_cast<size_t>(s) * total + node] = best_u;
        }
        check_layer_finite(cur, s);
        for (int node = 0; node < total; ++node)
            res.value.values[static_cast<size_t>(s) * total + node] = cur[node];
    }
    return res;
}

int greedy_action(const ControlProblem& pb, const ValueTable& vt, int t_idx,
                  const Vec& x, int mc_samples, Rng& rng) {
    const StateGrid& grid = vt.grid;
    const int total = grid.total();
    const int nt = static_cast<int>(vt.times.size()) - 1;
    if (t_idx < 0 || t_idx >= nt)
        throw std::invalid_argument("greedy_action: time index out of range");
    const double dt = vt.times[t_idx + 1] - vt.times[t_idx];
    const double dt_a = std::pow(dt, 1.0 / pb.alpha);

    std::vector<double> next(vt.values.begin() +
                                 static_cast<size_t>(t_idx + 1) * total,
                             vt.values.begin() +
                                 static_cast<size_t>(t_idx + 2) * total);
    Vec sd{}, b{};
    pb.noise(x, sd);
    std::vector<double> incr(static_cast<size_t>(mc_samples) * pb.dim);
    for (int k = 0; k < mc_samples; ++k)
        for (int a = 0; a < pb.dim; ++a)
            incr[static_cast<size_t>(k) * pb.dim + a] =
                sd[a] == 0.0 ? 0.0
                             : sd[a] * dt_a *
                                   stable::sample_standard_sas(pb.alpha, rng);

    double best = std::numeric_limits<double>::infinity();
    int best_u = 0;
    for (int u = 0; u < pb.n_actions; ++u) {
        pb.drift(x, u, b);
        double acc = 0.0;
        for (int k = 0; k < mc_samples; ++k) {
            Vec xs = x;
            for (int a = 0; a < pb.dim; ++a)
                xs[a] = std::clamp(x[a] + b[a] * dt +
                                       incr[static_cast<size_t>(k) * pb.dim + a],
                                   grid.lo[a], grid.hi[a]);
            acc += grid.interp(next, xs);
        }
        const double v = pb.running_cost(vt.times[t_idx], x, u) * dt +
                         acc / static_cast<double>(mc_samples);
        if (v < best) {
            best = v;
            best_u = u;
        }
    }
    return best_u;
}

double ValueTable::interp_at(int t_idx, const Vec& x) const {
    const int total = grid.total();
    std::vector<double> layer(values.begin() + static_cast<size_t>(t_idx) * total,
                              values.begin() +
                                  static_cast<size_t>(t_idx + 1) * total);
    return grid.interp(layer, x);
}

EnvelopeReport envelope_check(const ValueTable& vt, double w1, double c_h) {
    EnvelopeReport rep;
    const int total = vt.grid.total();
    const int nt = static_cast<int>(vt.times.size()) - 1;
    const double T = vt.times.back();
    const double dt = nt >= 1 ? vt.times[1] - vt.times[0] : 0.0;
    double vmax = 0.0;
    for (double v : vt.values)
        vmax = std::max(vmax, std::abs(v));
    rep.tolerance = dt * c_h + 1e-9 * (1.0 + vmax);
    for (int s = 0; s <= nt; ++s) {
        const double bound = w1 + 2.0 * c_h * (T - vt.times[s]);
        for (int node = 0; node < total; ++node) {
            const double v = vt.at(s, node);
            const double viol = std::abs(v) - bound;
            if (viol > rep.worst_violation) {
                rep.worst_violation = viol;
                rep.worst_t = s;
                rep.worst_node = node;
            }
        }
    }
    rep.pass = rep.worst_violation <= rep.tolerance;
    return rep;
}

ComparisonReport comparison_monotonicity_check(
    const ControlProblem& pb, const std::function<double(const Vec&)>& g1,
    const std::function<double(const Vec&)>& g2, Scheme scheme,
    const SweepConfig& cfg) {
    ControlProblem p1 = pb, p2 = pb;
    p1.terminal_cost = g1;
    p2.terminal_cost = g2;

    // precondition: g1 <= g2 pointwise on the grid
    const StateGrid grid = make_grid(pb, cfg);
    for (int node = 0; node < grid.total(); ++node) {
        const Vec x = grid.node(node);
        if (g1(x) > g2(x))
            throw std::invalid_argument(
                "comparison_monotonicity_check: g1 > g2 at a grid node");
    }

    const SweepResult r1 = backward_sweep(p1, scheme, cfg);
    const SweepResult r2 = backward_sweep(p2, scheme, cfg);

    ComparisonReport rep;
    const int total = grid.total();
    const int nt = static_cast<int>(r1.value.times.size()) - 1;
    double vscale = 0.0;
    for (double v : r2.value.values)
        vscale = std::max(vscale, std::abs(v));
    const double eps_float = 1e-9 * (1.0 + vscale);
    for (int s = 0; s <= nt; ++s)
        for (int node = 0; node < total; ++node) {
            const double gap = r1.value.at(s, node) - r2.value.at(s, node);
            if (gap > rep.worst_gap) {
                rep.worst_gap = gap;
                rep.worst_t = s;
                rep.worst_node = node;
            }
        }
    rep.pass = rep.worst_gap <= eps_float;
    return rep;
}

namespace {

void write_table_csv(const StateGrid& grid, const std::vector<double>& times,
                     const std::string& path, const char* value_header,
                     const std::function<std::string(int, int)>& cell) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << "t";
    for (int a = 0; a < grid.dim; ++a)
        os << ",x" << a;
    os << ',' << value_header << '\n';
    char buf[64];
    for (size_t s = 0; s < times.size(); ++s) {
        for (int node = 0; node < grid.total(); ++node) {
            std::snprintf(buf, sizeof(buf), "%.17g", times[s]);
            os << buf;
            const Vec x = grid.node(node);
            for (int a = 0; a < grid.dim; ++a) {
                std::snprintf(buf, sizeof(buf), "%.17g", x[a]);
                os << ',' << buf;
            }
            os << ',' << cell(static_cast<int>(s), node) << '\n';
        }
    }
}

} // namespace

void write_value_csv(const ValueTable& vt, const std::string& path) {
    write_table_csv(vt.grid, vt.times, path, "value", [&](int s, int node) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", vt.at(s, node));
        return std::string(buf);
    });
}

void write_policy_csv(const Policy& pol, const std::string& path) {
    write_table_csv(pol.grid, pol.times, path, "action", [&](int s, int node) {
        return std::to_string(pol.at(s, node));
    });
}

} // namespace levychan::hjb
