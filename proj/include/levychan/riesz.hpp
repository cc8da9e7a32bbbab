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

#ifndef LEVYCHAN_RIESZ_HPP
#define LEVYCHAN_RIESZ_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace levychan::riesz {

/// How a grid function continues beyond its stored nodes.
enum class Boundary {
    periodic,     ///< f(x + L) = f(x); the stored nodes cover one period
    zero_outside, ///< compactly supported, f = 0 beyond the grid
    clamp         ///< f freezes at its edge values beyond the grid
};

/// Function sampled on a uniform tensor grid (1 or 2 dimensions).
/// Values are stored row-major: index = ix * shape[1] + iy.
struct GridFn {
    int dim = 1;
    std::array<int, 2> shape{0, 1};
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> spacing{1.0, 1.0};
    Boundary boundary = Boundary::periodic;
    std::vector<double> values;

    /// Periodic 1D grid of n nodes on [x0, x0 + length); spacing = length/n.
    static GridFn periodic_1d(double x0, double length, int n);
    /// Compact 1D grid of n nodes on [x0, x0 + (n-1)*dx].
    static GridFn compact_1d(double x0, double dx, int n, Boundary b);
    /// Periodic 2D grid, nx by ny nodes on [x0, x0+lx) x [y0, y0+ly).
    static GridFn periodic_2d(double x0, double lx, int nx, double y0, double ly,
                              int ny);

    int size() const { return shape[0] * shape[1]; }
    double coord(int axis, int idx) const {
        return origin[axis] + spacing[axis] * idx;
    }
    double& at(int ix, int iy = 0) { return values[ix * shape[1] + iy]; }
    double at(int ix, int iy = 0) const { return values[ix * shape[1] + iy]; }

    /// Sample with the boundary rule applied to out-of-range indices.
    double sample(int ix, int iy = 0) const;

    double mean() const;
    void validate() const; // throws std::invalid_argument
};

/// Scalar noise-intensity field sigma(x) with ellipticity bounds
/// lambda_min <= sigma(x)^2 <= lambda_max (checked at every grid node).
struct SigmaField {
    std::function<double(double, double)> eval; ///< (x, y) -> sigma; y unused in 1D
    double lambda_min = 1.0;
    double lambda_max = 1.0;

    static SigmaField constant(double s);
    double operator()(double x, double y = 0.0) const { return eval(x, y); }
};

/// Kernel form of the generalized Riesz fractional operator:
/// P.V. integral of [f(x) - f(y)] K_sigma(x,y) dy with
/// K_sigma(x,y) = C_alpha / (|sigma(x)^{-1}(x-y)|^{d+alpha} |det sigma(x)|).
/// Positive operator: Fourier symbol +|sigma k|^alpha for constant sigma.
/// alpha in (1, 2).
GridFn apply_kernel_form(const GridFn& f, const SigmaField& sigma, double alpha);

/// Generator (Levy-Khintchine) form:
/// integral of [f(x + sigma(x) xi) - f(x) - 1_{|xi|<1} sigma(x) xi . grad f(x)]
/// nu(d xi), nu(d xi) = C_alpha |xi|^{-d-alpha} d xi. The gradient is taken by
/// centered finite differences. Symbol -|sigma k|^alpha for constant sigma.
GridFn apply_generator_form(const GridFn& f, const SigmaField& sigma, double alpha);

/// Validation oracle for the two quadratures: multiplies each Fourier mode by
/// -|sigma k|^alpha (generator) or +|sigma k|^alpha (riesz) via a discrete
/// transform. Requires a periodic grid and constant sigma. alpha in (0, 2].
enum class SpectralSign { generator, riesz };
GridFn spectral_reference(const GridFn& f, double sigma_const, double alpha,
                          SpectralSign sign);

/// CSV export/import, columns "x,value" (1D) or "x,y,value" (2D).
void write_gridfn_csv(const GridFn& f, const std::string& path);
GridFn read_gridfn_csv(const std::string& path, Boundary boundary);

} // namespace levychan::riesz

#endif // LEVYCHAN_RIESZ_HPP
