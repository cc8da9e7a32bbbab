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

#include "levychan/riesz.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "levychan/stable.hpp"

namespace levychan::riesz {

namespace {

constexpr double kPi = 3.14159265358979323846;

int wrap(int idx, int n) {
    idx %= n;
    return idx < 0 ? idx + n : idx;
}

// Exact mass of the 1D measure c * r^(-1-alpha) dr over [lo, hi], one side.
double cell_mass_1d(double c, double alpha, double lo, double hi) {
    return c / alpha * (std::pow(lo, -alpha) - std::pow(hi, -alpha));
}

// Exact first moment int_lo^hi xi * c xi^(-1-alpha) d xi (positive side).
double cell_moment_1d(double c, double alpha, double lo, double hi) {
    return c / (alpha - 1.0) *
           (std::pow(lo, 1.0 - alpha) - std::pow(hi, 1.0 - alpha));
}

void check_alpha_range(double alpha, const char* who) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument(std::string(who) + ": alpha must be in (1, 2)");
}

// Evaluates sigma at every node, enforcing the ellipticity bounds.
std::vector<double> sigma_at_nodes(const GridFn& f, const SigmaField& sigma) {
    const double slack = 1e-9 * std::max(1.0, sigma.lambda_max);
    std::vector<double> s(f.size());
    for (int ix = 0; ix < f.shape[0]; ++ix) {
        for (int iy = 0; iy < f.shape[1]; ++iy) {
            const double v = sigma(f.coord(0, ix), f.coord(1, iy));
            if (!std::isfinite(v) || v <= 0.0 ||
                v * v < sigma.lambda_min - slack ||
                v * v > sigma.lambda_max + slack) {
                char msg[128];
                std::snprintf(msg, sizeof(msg),
                              "ellipticity violation at node (%d, %d): sigma^2 = %g "
                              "outside [%g, %g]",
                              ix, iy, v * v, sigma.lambda_min, sigma.lambda_max);
                throw std::domain_error(msg);
            }
            s[ix * f.shape[1] + iy] = v;
        }
    }
    return s;
}

} // namespace

GridFn GridFn::periodic_1d(double x0, double length, int n) {
    if (n < 4 || !(length > 0.0))
        throw std::invalid_argument("GridFn::periodic_1d: need n >= 4, length > 0");
    GridFn g;
    g.dim = 1;
    g.shape = {n, 1};
    g.origin = {x0, 0.0};
    g.spacing = {length / n, 1.0};
    g.boundary = Boundary::periodic;
    g.values.assign(n, 0.0);
    return g;
}

GridFn GridFn::compact_1d(double x0, double dx, int n, Boundary b) {
    if (n < 4 || !(dx > 0.0))
        throw std::invalid_argument("GridFn::compact_1d: need n >= 4, dx > 0");
    if (b == Boundary::periodic)
        throw std::invalid_argument("GridFn::compact_1d: use periodic_1d");
    GridFn g;
    g.dim = 1;
    g.shape = {n, 1};
    g.origin = {x0, 0.0};
    g.spacing = {dx, 1.0};
    g.boundary = b;
    g.values.assign(n, 0.0);
    return g;
}

GridFn GridFn::periodic_2d(double x0, double lx, int nx, double y0, double ly,
                           int ny) {
    if (nx < 4 || ny < 4 || !(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("GridFn::periodic_2d: need nx,ny >= 4 and positive lengths");
    GridFn g;
    g.dim = 2;
    g.shape = {nx, ny};
    g.origin = {x0, y0};
    g.spacing = {lx / nx, ly / ny};
    g.boundary = Boundary::periodic;
    g.values.assign(static_cast<size_t>(nx) * ny, 0.0);
    return g;
}

double GridFn::sample(int ix, int iy) const {
    switch (boundary) {
    case Boundary::periodic:
        return values[wrap(ix, shape[0]) * shape[1] + wrap(iy, shape[1])];
    case Boundary::zero_outside:
        if (ix < 0 || ix >= shape[0] || iy < 0 || iy >= shape[1])
            return 0.0;
        return values[ix * shape[1] + iy];
    case Boundary::clamp: {
        const int cx = std::max(0, std::min(shape[0] - 1, ix));
        const int cy = std::max(0, std::min(shape[1] - 1, iy));
        return values[cx * shape[1] + cy];
    }
    }
    return 0.0;
}

double GridFn::mean() const {
    double acc = 0.0;
    for (double v : values)
        acc += v;
    return acc / static_cast<double>(values.size());
}

void GridFn::validate() const {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("GridFn: dim must be 1 or 2");
    if (shape[0] < 4 || shape[1] < 1 || (dim == 2 && shape[1] < 4))
        throw std::invalid_argument("GridFn: too few nodes");
    if (!(spacing[0] > 0.0) || !(spacing[1] > 0.0))
        throw std::invalid_argument("GridFn: spacing must be positive");
    if (values.size() != static_cast<size_t>(shape[0]) * shape[1])
        throw std::invalid_argument("GridFn: values size does not match shape");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFn: values must be finite");
}

SigmaField SigmaField::constant(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("SigmaField::constant: s must be positive");
    SigmaField f;
    f.eval = [s](double, double) { return s; };
    f.lambda_min = s * s;
    f.lambda_max = s * s;
    return f;
}

// ---------------------------------------------------------------------------
// Kernel form
// ---------------------------------------------------------------------------

namespace {

GridFn kernel_form_1d(const GridFn& f, const SigmaField& sigma, double alpha) {
    const int n = f.shape[0];
    const double h = f.spacing[0];
    const double c1 = stable::alpha_normalization_constant(alpha, 1);
    const std::vector<double> sig = sigma_at_nodes(f, sigma);

    GridFn out = f;

    // Exact per-cell masses of C |r|^(-1-alpha) dr. Cell m covers
    // [mh - h/2, mh + h/2]; the first cell is clipped to start at the inner
    // Taylor radius h.
    auto mass_m = [&](long m) {
        const double lo = std::max(h, (static_cast<double>(m) - 0.5) * h);
        const double hi = (static_cast<double>(m) + 0.5) * h;
        return lo < hi ? cell_mass_1d(c1, alpha, lo, hi) : 0.0;
    };

    if (f.boundary == Boundary::periodic) {
        const int periods = 16;
        const long m_max = static_cast<long>(periods) * n;
        // fold image offsets onto one period
        std::vector<double> w(n, 0.0);
        for (long m = 1; m <= m_max; ++m) {
            const double wm = mass_m(m);
            w[wrap(static_cast<int>(m % n), n)] += wm;
            w[wrap(static_cast<int>(-(m % n)), n)] += wm;
        }
        const double tail =
            2.0 * c1 * std::pow((static_cast<double>(m_max) + 0.5) * h, -alpha) /
            alpha;
        const double fbar = f.mean();
        const double inner_c = c1 * std::pow(h, 2.0 - alpha) / (2.0 - alpha);
        for (int i = 0; i < n; ++i) {
            const double fi = f.values[i];
            double acc = 0.0;
            for (int j = 1; j < n; ++j)
                acc += w[j] * (fi - f.values[(i + j) % n]);
            acc += tail * (fi - fbar);
            const double fpp =
                (f.sample(i + 1) - 2.0 * fi + f.sample(i - 1)) / (h * h);
            const double sa = std::pow(sig[i], alpha);
            out.values[i] = sa * (acc - fpp * inner_c);
        }
        return out;
    }

    // compact support (zero_outside / clamp)
    const long m_max = 8L * n;
    std::vector<double> w(static_cast<size_t>(m_max) + 1, 0.0);
    for (long m = 1; m <= m_max; ++m)
        w[m] = mass_m(m);
    const double r_cut = (static_cast<double>(m_max) + 0.5) * h;
    const double tail_side = c1 * std::pow(r_cut, -alpha) / alpha;
    const double inner_c = c1 * std::pow(h, 2.0 - alpha) / (2.0 - alpha);
    for (int i = 0; i < n; ++i) {
        const double fi = f.values[i];
        double acc = 0.0;
        for (long m = 1; m <= m_max; ++m)
            acc += w[m] * (2.0 * fi - f.sample(i + static_cast<int>(m)) -
                           f.sample(i - static_cast<int>(m)));
        const double f_left =
            f.boundary == Boundary::zero_outside ? 0.0 : f.values[0];
        const double f_right =
            f.boundary == Boundary::zero_outside ? 0.0 : f.values[n - 1];
        acc += tail_side * ((fi - f_left) + (fi - f_right));
        const double fpp = (f.sample(i + 1) - 2.0 * fi + f.sample(i - 1)) / (h * h);
        const double sa = std::pow(sig[i], alpha);
        out.values[i] = sa * (acc - fpp * inner_c);
    }
    return out;
}

GridFn kernel_form_2d(const GridFn& f, const SigmaField& sigma, double alpha) {
    const int nx = f.shape[0], ny = f.shape[1];
    const double h = f.spacing[0];
    if (std::abs(f.spacing[1] - h) > 1e-12 * h)
        throw std::invalid_argument("kernel form 2D: grid spacing must be square");
    const double c2 = stable::alpha_normalization_constant(alpha, 2);
    const std::vector<double> sig = sigma_at_nodes(f, sigma);

    GridFn out = f;
    const int m_side = std::max(nx, ny); // one extra period each way
    const double r0 = h / std::sqrt(kPi); // area-matched inner disc
    const double inner_c = 2.0 * kPi * c2 * std::pow(r0, 2.0 - alpha) / (2.0 - alpha);
    const double r_cut = (static_cast<double>(m_side) + 0.5) * h;
    const double tail = 2.0 * kPi * c2 * std::pow(r_cut, -alpha) / alpha;
    const double fbar = f.mean();

    // offsets and their center-rule masses (shared across nodes; the sigma
    // dependence enters as sigma^alpha)
    struct Off { int mx, my; double w; };
    std::vector<Off> offs;
    offs.reserve(static_cast<size_t>(2 * m_side + 1) * (2 * m_side + 1));
    for (int mx = -m_side; mx <= m_side; ++mx) {
        for (int my = -m_side; my <= m_side; ++my) {
            if (mx == 0 && my == 0)
                continue;
            const double r = h * std::sqrt(double(mx) * mx + double(my) * my);
            if (r > r_cut)
                continue;
            offs.push_back({mx, my, c2 * std::pow(r, -2.0 - alpha) * h * h});
        }
    }

    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double fi = f.at(ix, iy);
            double acc = 0.0;
            for (const Off& o : offs)
                acc += o.w * (fi - f.sample(ix + o.mx, iy + o.my));
            acc += tail * (fi - fbar);
            const double lap = (f.sample(ix + 1, iy) + f.sample(ix - 1, iy) +
                                f.sample(ix, iy + 1) + f.sample(ix, iy - 1) -
                                4.0 * fi) /
                               (h * h);
            const double sa = std::pow(sig[ix * ny + iy], alpha);
            out.at(ix, iy) = sa * (acc - 0.25 * lap * inner_c);
        }
    }
    return out;
}

} // namespace

GridFn apply_kernel_form(const GridFn& f, const SigmaField& sigma, double alpha) {
    f.validate();
    check_alpha_range(alpha, "apply_kernel_form");
    return f.dim == 1 ? kernel_form_1d(f, sigma, alpha)
                      : kernel_form_2d(f, sigma, alpha);
}

// ---------------------------------------------------------------------------
// Generator form
// ---------------------------------------------------------------------------

namespace {

GridFn generator_form_1d(const GridFn& f, const SigmaField& sigma, double alpha) {
    const int n = f.shape[0];
    const double h = f.spacing[0];
    const double c1 = stable::alpha_normalization_constant(alpha, 1);
    const std::vector<double> sig = sigma_at_nodes(f, sigma);

    const long m_max =
        (f.boundary == Boundary::periodic ? 16L : 8L) * static_cast<long>(n);
    const double fbar = f.mean();

    // Per-cell second-moment defect of the node-point rule: evaluating f at
    // the cell's node while using the exact nu cell mass leaves a paired
    // error f'' sigma^2 (m2 - xi_m^2 mass) per mirror pair; both moments have
    // closed forms, so the defect is summed once (unit-spacing cells) and
    // rescaled per node.
    double moment_defect = 0.0;
    for (long m = 1; m <= m_max; ++m) {
        const double lo = static_cast<double>(m) - 0.5;
        const double hi = static_cast<double>(m) + 0.5;
        const double m2 =
            (std::pow(hi, 2.0 - alpha) - std::pow(lo, 2.0 - alpha)) /
            (2.0 - alpha);
        const double mass =
            (std::pow(lo, -alpha) - std::pow(hi, -alpha)) / alpha;
        moment_defect += m2 - static_cast<double>(m) * m * mass;
    }

    GridFn out = f;
    for (int i = 0; i < n; ++i) {
        const double s = sig[i];
        const double fi = f.values[i];
        const double grad = (f.sample(i + 1) - f.sample(i - 1)) / (2.0 * h);

        // Displacements sigma * xi land exactly on grid offsets m*h when the
        // xi cells are [(m-1/2) h/s, (m+1/2) h/s]; the nu mass and the
        // compensator moment over each cell are integrated in closed form.
        double acc = 0.0;
        for (long m = 1; m <= m_max; ++m) {
            const double lo = (static_cast<double>(m) - 0.5) * h / s;
            const double hi = (static_cast<double>(m) + 0.5) * h / s;
            const double mass = cell_mass_1d(c1, alpha, lo, hi);
            const double fp = f.sample(i + static_cast<int>(m));
            const double fm = f.sample(i - static_cast<int>(m));
            acc += (fp - fi) * mass + (fm - fi) * mass;
            if (lo < 1.0) {
                const double mom = cell_moment_1d(c1, alpha, lo, std::min(hi, 1.0));
                acc -= s * grad * mom; // positive-side cell
                acc += s * grad * mom; // mirrored cell
            }
        }

        // inner Taylor correction over |xi| < h/(2s), plus the summed
        // node-point-rule defect of the discrete cells
        const double fpp = (f.sample(i + 1) - 2.0 * fi + f.sample(i - 1)) / (h * h);
        const double r0 = 0.5 * h / s;
        acc += fpp * s * s * c1 * std::pow(r0, 2.0 - alpha) / (2.0 - alpha);
        acc += fpp * c1 * std::pow(s, alpha) * std::pow(h, 2.0 - alpha) *
               moment_defect;

        // far tail beyond Xi = (m_max + 1/2) h / s
        const double xi_cut = (static_cast<double>(m_max) + 0.5) * h / s;
        const double tail_side = c1 * std::pow(xi_cut, -alpha) / alpha;
        if (f.boundary == Boundary::periodic) {
            acc += 2.0 * tail_side * (fbar - fi);
        } else if (f.boundary == Boundary::zero_outside) {
            acc += 2.0 * tail_side * (0.0 - fi);
        } else {
            acc += tail_side * (f.values[0] - fi) +
                   tail_side * (f.values[n - 1] - fi);
        }
        out.values[i] = acc;
    }
    return out;
}

GridFn generator_form_2d(const GridFn& f, const SigmaField& sigma, double alpha) {
    const int nx = f.shape[0], ny = f.shape[1];
    const double h = f.spacing[0];
    if (std::abs(f.spacing[1] - h) > 1e-12 * h)
        throw std::invalid_argument("generator form 2D: grid spacing must be square");
    const double c2 = stable::alpha_normalization_constant(alpha, 2);
    const std::vector<double> sig = sigma_at_nodes(f, sigma);

    const int m_side = std::max(nx, ny);
    const double fbar = f.mean();

    struct Off { int mx, my; double r; };
    std::vector<Off> offs;
    for (int mx = -m_side; mx <= m_side; ++mx)
        for (int my = -m_side; my <= m_side; ++my) {
            if (mx == 0 && my == 0)
                continue;
            const double r = std::sqrt(double(mx) * mx + double(my) * my);
            if (r * h <= (m_side + 0.5) * h)
                offs.push_back({mx, my, r});
        }

    GridFn out = f;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double s = sig[ix * ny + iy];
            const double fi = f.at(ix, iy);
            const double gx = (f.sample(ix + 1, iy) - f.sample(ix - 1, iy)) / (2.0 * h);
            const double gy = (f.sample(ix, iy + 1) - f.sample(ix, iy - 1)) / (2.0 * h);

            const double cell = (h / s) * (h / s);
            double acc = 0.0;
            for (const Off& o : offs) {
                const double xir = o.r * h / s; // |xi| at the cell center
                const double mass = c2 * std::pow(xir, -2.0 - alpha) * cell;
                double term = f.sample(ix + o.mx, iy + o.my) - fi;
                if (xir < 1.0)
                    term -= (o.mx * h * gx + o.my * h * gy); // sigma xi . grad f
                acc += term * mass;
            }

            const double lap = (f.sample(ix + 1, iy) + f.sample(ix - 1, iy) +
                                f.sample(ix, iy + 1) + f.sample(ix, iy - 1) -
                                4.0 * fi) /
                               (h * h);
            const double r0 = (h / std::sqrt(kPi)) / s;
            acc += 0.25 * lap * s * s * 2.0 * kPi * c2 *
                   std::pow(r0, 2.0 - alpha) / (2.0 - alpha);

            const double xi_cut = (m_side + 0.5) * h / s;
            const double tail = 2.0 * kPi * c2 * std::pow(xi_cut, -alpha) / alpha;
            const double f_far = f.boundary == Boundary::zero_outside ? 0.0 : fbar;
            acc += tail * (f_far - fi);
            out.at(ix, iy) = acc;
        }
    }
    return out;
}

} // namespace

GridFn apply_generator_form(const GridFn& f, const SigmaField& sigma, double alpha) {
    f.validate();
    check_alpha_range(alpha, "apply_generator_form");
    return f.dim == 1 ? generator_form_1d(f, sigma, alpha)
                      : generator_form_2d(f, sigma, alpha);
}

// ---------------------------------------------------------------------------
// Spectral reference
// ---------------------------------------------------------------------------

namespace {

using cvec = std::vector<std::complex<double>>;

// naive DFT with a precomputed twiddle table; n is small enough here
void dft_1d(const cvec& in, cvec& out, int n, bool inverse) {
    std::vector<std::complex<double>> tw(n);
    const double sgn = inverse ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j)
        tw[j] = std::polar(1.0, sgn * 2.0 * kPi * j / n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j)
            acc += in[j] * tw[static_cast<int>((static_cast<long>(j) * k) % n)];
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
}

} // namespace

GridFn spectral_reference(const GridFn& f, double sigma_const, double alpha,
                          SpectralSign sign) {
    f.validate();
    if (f.boundary != Boundary::periodic)
        throw std::invalid_argument("spectral_reference: periodic grid required");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("spectral_reference: alpha must be in (0, 2]");
    if (!(sigma_const > 0.0))
        throw std::invalid_argument("spectral_reference: sigma must be positive");

    const double s = sign == SpectralSign::generator ? -1.0 : 1.0;

    if (f.dim == 1) {
        const int n = f.shape[0];
        const double length = n * f.spacing[0];
        cvec a(n), b(n);
        for (int i = 0; i < n; ++i)
            a[i] = f.values[i];
        dft_1d(a, b, n, false);
        for (int k = 0; k < n; ++k) {
            const int kk = k <= n / 2 ? k : k - n;
            const double freq = 2.0 * kPi * kk / length;
            b[k] *= s * std::pow(std::abs(sigma_const * freq), alpha);
        }
        dft_1d(b, a, n, true);
        GridFn out = f;
        for (int i = 0; i < n; ++i)
            out.values[i] = a[i].real();
        return out;
    }

    const int nx = f.shape[0], ny = f.shape[1];
    const double lx = nx * f.spacing[0], ly = ny * f.spacing[1];
    std::vector<cvec> rows(nx, cvec(ny));
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            rows[ix][iy] = f.at(ix, iy);
    cvec tmp(ny), tmp2(std::max(nx, ny));
    for (int ix = 0; ix < nx; ++ix) {
        dft_1d(rows[ix], tmp, ny, false);
        rows[ix] = tmp;
    }
    cvec col(nx), colT(nx);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix)
            col[ix] = rows[ix][iy];
        dft_1d(col, colT, nx, false);
        for (int ix = 0; ix < nx; ++ix)
            rows[ix][iy] = colT[ix];
    }
    for (int kx = 0; kx < nx; ++kx) {
        const int kkx = kx <= nx / 2 ? kx : kx - nx;
        const double fx = 2.0 * kPi * kkx / lx;
        for (int ky = 0; ky < ny; ++ky) {
            const int kky = ky <= ny / 2 ? ky : ky - ny;
            const double fy = 2.0 * kPi * kky / ly;
            const double kn = std::sqrt(fx * fx + fy * fy);
            rows[kx][ky] *= s * std::pow(sigma_const * kn, alpha);
        }
    }
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix)
            col[ix] = rows[ix][iy];
        dft_1d(col, colT, nx, true);
        for (int ix = 0; ix < nx; ++ix)
            rows[ix][iy] = colT[ix];
    }
    GridFn out = f;
    for (int ix = 0; ix < nx; ++ix) {
        dft_1d(rows[ix], tmp, ny, true);
        for (int iy = 0; iy < ny; ++iy)
            out.at(ix, iy) = tmp[iy].real();
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_gridfn_csv(const GridFn& f, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("write_gridfn_csv: cannot open " + path);
    char buf[64];
    if (f.dim == 1) {
        os << "x,value\n";
        for (int i = 0; i < f.shape[0]; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", f.coord(0, i));
            os << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", f.values[i]);
            os << buf << '\n';
        }
    } else {
        os << "x,y,value\n";
        for (int ix = 0; ix < f.shape[0]; ++ix)
            for (int iy = 0; iy < f.shape[1]; ++iy) {
                std::snprintf(buf, sizeof(buf), "%.17g", f.coord(0, ix));
                os << buf << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", f.coord(1, iy));
                os << buf << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", f.at(ix, iy));
                os << buf << '\n';
            }
    }
}

GridFn read_gridfn_csv(const std::string& path, Boundary boundary) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("read_gridfn_csv: cannot open " + path);
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("read_gridfn_csv: empty file " + path);
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string sx, sv;
        if (!std::getline(ls, sx, ',') || !std::getline(ls, sv))
            throw std::runtime_error("read_gridfn_csv: malformed row: " + line);
        xs.push_back(std::stod(sx));
        vs.push_back(std::stod(sv));
    }
    if (xs.size() < 4)
        throw std::runtime_error("read_gridfn_csv: too few rows");
    const double dx = xs[1] - xs[0];
    for (size_t i = 1; i + 1 < xs.size(); ++i)
        if (std::abs((xs[i + 1] - xs[i]) - dx) > 1e-9 * std::abs(dx))
            throw std::runtime_error("read_gridfn_csv: grid is not uniform");
    GridFn g;
    g.dim = 1;
    g.shape = {static_cast<int>(xs.size()), 1};
    g.origin = {xs[0], 0.0};
    g.spacing = {dx, 1.0};
    g.boundary = boundary;
    g.values = vs;
    g.validate();
    return g;
}

} // namespace levychan::riesz
