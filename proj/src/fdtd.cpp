#include "emsens/fdtd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace emsens {

std::string to_string(Component c) {
    switch (c) {
        case Component::Ex: return "Ex";
        case Component::Ey: return "Ey";
        case Component::Ez: return "Ez";
        case Component::Hx: return "Hx";
        case Component::Hy: return "Hy";
        case Component::Hz: return "Hz";
    }
    return "?";
}

Component component_from_string(const std::string& s) {
    if (s == "Ex") return Component::Ex;
    if (s == "Ey") return Component::Ey;
    if (s == "Ez") return Component::Ez;
    if (s == "Hx") return Component::Hx;
    if (s == "Hy") return Component::Hy;
    if (s == "Hz") return Component::Hz;
    throw std::invalid_argument("unknown component: " + s);
}

Component coeff_row(CoeffArray a) {
    switch (a) {
        case CoeffArray::ExY: case CoeffArray::ExZ: return Component::Ex;
        case CoeffArray::EyZ: case CoeffArray::EyX: return Component::Ey;
        case CoeffArray::EzX: case CoeffArray::EzY: return Component::Ez;
        case CoeffArray::HxY: case CoeffArray::HxZ: return Component::Hx;
        case CoeffArray::HyZ: case CoeffArray::HyX: return Component::Hy;
        case CoeffArray::HzX: case CoeffArray::HzY: return Component::Hz;
    }
    throw std::logic_error("bad coefficient array");
}

double gaussian(double t, double t0, double ts) {
    if (ts <= 0) throw std::invalid_argument("gaussian: Ts must be positive");
    const double u = (t - t0) / ts;
    return std::exp(-u * u);
}

double cfl_limit(const YeeGrid& grid) {
    if (grid.is_1d()) {
        double dzmin = grid.dz[0];
        for (double d : grid.dz) dzmin = std::min(dzmin, d);
        return dzmin / kC0;
    }
    double worst = 0.0;
    const long p = grid.cell_count();
    for (long q = 0; q < p; ++q) {
        const double s = 1.0 / (grid.dx[q] * grid.dx[q]) + 1.0 / (grid.dy[q] * grid.dy[q]) +
                         1.0 / (grid.dz[q] * grid.dz[q]);
        worst = std::max(worst, s);
    }
    return 1.0 / (kC0 * std::sqrt(worst));
}

namespace {

// mean of eps_r over the cells adjacent to a dof along the given axes,
// clamped at domain boundaries
double mean_over(const YeeGrid& g, const std::vector<double>& cellv,
                 int i, int j, int k, bool span_x, bool span_y, bool span_z) {
    double acc = 0.0;
    int cnt = 0;
    const int i0 = span_x ? i - 1 : i, i1 = i;
    const int j0 = span_y ? j - 1 : j, j1 = j;
    const int k0 = span_z ? k - 1 : k, k1 = k;
    for (int kk = k0; kk <= k1; ++kk)
        for (int jj = j0; jj <= j1; ++jj)
            for (int ii = i0; ii <= i1; ++ii) {
                if (ii < 1 || ii > g.nx || jj < 1 || jj > g.ny || kk < 1 || kk > g.nz) continue;
                acc += cellv[g.at(ii, jj, kk)];
                ++cnt;
            }
    return acc / cnt;
}

}  // namespace

DofMaterials dof_materials(const YeeGrid& grid) {
    const long p = grid.cell_count();
    DofMaterials m;
    m.eps_ex.resize(p); m.eps_ey.resize(p); m.eps_ez.resize(p);
    m.mu_hx.resize(p); m.mu_hy.resize(p); m.mu_hz.resize(p);
    for (int k = 1; k <= grid.nz; ++k)
        for (int j = 1; j <= grid.ny; ++j)
            for (int i = 1; i <= grid.nx; ++i) {
                const long q = grid.at(i, j, k);
                m.eps_ex[q] = mean_over(grid, grid.eps_r, i, j, k, false, true, true);
                m.eps_ey[q] = mean_over(grid, grid.eps_r, i, j, k, true, false, true);
                m.eps_ez[q] = mean_over(grid, grid.eps_r, i, j, k, true, true, false);
                m.mu_hx[q] = mean_over(grid, grid.mu_r, i, j, k, true, false, false);
                m.mu_hy[q] = mean_over(grid, grid.mu_r, i, j, k, false, true, false);
                m.mu_hz[q] = mean_over(grid, grid.mu_r, i, j, k, false, false, true);
            }
    return m;
}

UpdateCoefficients<double> update_coefficients(const YeeGrid& grid, double dt) {
    if (dt <= 0) throw std::invalid_argument("update_coefficients: dt must be positive");
    grid.validate();
    const DofMaterials m = dof_materials(grid);
    const long p = grid.cell_count();
    UpdateCoefficients<double> c;
    auto fill = [p](std::vector<double>& dst, auto f) {
        dst.resize(p);
        for (long q = 0; q < p; ++q) dst[q] = f(q);
    };
    fill(c.ex_y, [&](long q) { return dt / (kEps0 * m.eps_ex[q] * grid.dy[q]); });
    fill(c.ex_z, [&](long q) { return dt / (kEps0 * m.eps_ex[q] * grid.dz[q]); });
    fill(c.ey_z, [&](long q) { return dt / (kEps0 * m.eps_ey[q] * grid.dz[q]); });
    fill(c.ey_x, [&](long q) { return dt / (kEps0 * m.eps_ey[q] * grid.dx[q]); });
    fill(c.ez_x, [&](long q) { return dt / (kEps0 * m.eps_ez[q] * grid.dx[q]); });
    fill(c.ez_y, [&](long q) { return dt / (kEps0 * m.eps_ez[q] * grid.dy[q]); });
    fill(c.hx_y, [&](long q) { return dt / (kMu0 * m.mu_hx[q] * grid.dy[q]); });
    fill(c.hx_z, [&](long q) { return dt / (kMu0 * m.mu_hx[q] * grid.dz[q]); });
    fill(c.hy_z, [&](long q) { return dt / (kMu0 * m.mu_hy[q] * grid.dz[q]); });
    fill(c.hy_x, [&](long q) { return dt / (kMu0 * m.mu_hy[q] * grid.dx[q]); });
    fill(c.hz_x, [&](long q) { return dt / (kMu0 * m.mu_hz[q] * grid.dx[q]); });
    fill(c.hz_y, [&](long q) { return dt / (kMu0 * m.mu_hz[q] * grid.dy[q]); });
    return c;
}

namespace {
std::atomic<long> g_method_runs{0};
std::atomic<long> g_calibration_runs{0};
std::atomic<long> g_oracle_runs{0};

std::atomic<long>& counter(RunCategory c) {
    switch (c) {
        case RunCategory::Method: return g_method_runs;
        case RunCategory::Calibration: return g_calibration_runs;
        case RunCategory::Oracle: return g_oracle_runs;
    }
    return g_method_runs;
}
}  // namespace

void run_counter_increment(RunCategory c) { counter(c).fetch_add(1, std::memory_order_relaxed); }
long run_counter_value(RunCategory c) { return counter(c).load(std::memory_order_relaxed); }
void run_counter_reset() {
    g_method_runs = 0;
    g_calibration_runs = 0;
    g_oracle_runs = 0;
}

}  // namespace emsens
