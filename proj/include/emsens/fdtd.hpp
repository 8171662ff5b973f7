#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "emsens/constants.hpp"
#include "emsens/grid.hpp"
#include "emsens/poly.hpp"

namespace emsens {

enum class Component : std::uint8_t { Ex, Ey, Ez, Hx, Hy, Hz };

[[nodiscard]] inline bool is_electric(Component c) {
    return c == Component::Ex || c == Component::Ey || c == Component::Ez;
}
[[nodiscard]] std::string to_string(Component c);
[[nodiscard]] Component component_from_string(const std::string& s);

/// Time instants a record is attached to: E-type quantities live on integer
/// steps n*dt, H-type on half steps (n+1/2)*dt.
enum class SamplePhase : std::uint8_t { Integer, Half };

enum class BoundaryKind : std::uint8_t { Mur1, Pec };

struct Boundaries {
    BoundaryKind xlo = BoundaryKind::Mur1, xhi = BoundaryKind::Mur1;
    BoundaryKind ylo = BoundaryKind::Mur1, yhi = BoundaryKind::Mur1;
    BoundaryKind zlo = BoundaryKind::Mur1, zhi = BoundaryKind::Mur1;
};

/// Gaussian pulse exp(-((t-t0)/Ts)^2).
[[nodiscard]] double gaussian(double t, double t0, double ts);

/// Courant bound: 3-D uses 1/(c*sqrt(max_cells(1/dx^2+1/dy^2+1/dz^2))),
/// 1-D lines use min(dz)/c.
[[nodiscard]] double cfl_limit(const YeeGrid& grid);

struct SourceSpec {
    Component component = Component::Ex;
    int i0 = 1, i1 = 1, j0 = 1, j1 = 1, k0 = 1, k1 = 1;  // inclusive cell ranges
    double t0 = 0.0;
    double ts = 1.0e-12;
    double amplitude = 1.0;
    enum class Kind : std::uint8_t { Soft, Hard } kind = Kind::Soft;
};

struct ProbeSpec {
    std::string name;
    Component component = Component::Ex;
    int i = 1, j = 1, k = 1;
};

struct SimulationConfig {
    double dt = 0.0;
    int nsteps = 0;
    SourceSpec source;
    std::vector<ProbeSpec> probes;
    Boundaries boundary;
};

template <typename S>
struct ProbeRecordT {
    std::string name;
    Component component = Component::Ex;
    int i = 1, j = 1, k = 1;
    long cell = 1;  // 1-based linear cell index
    SamplePhase phase = SamplePhase::Integer;
    std::vector<S> samples;
};
using ProbeRecord = ProbeRecordT<double>;

/// Per-dof update coefficients. Naming: <row>_<difference axis>, e.g. ex_y
/// multiplies the Hz difference along y inside the Ex update.
template <typename S>
struct UpdateCoefficients {
    std::vector<S> ex_y, ex_z, ey_z, ey_x, ez_x, ez_y;
    std::vector<S> hx_y, hx_z, hy_z, hy_x, hz_x, hz_y;
};

enum class CoeffArray : std::uint8_t {
    ExY, ExZ, EyZ, EyX, EzX, EzY, HxY, HxZ, HyZ, HyX, HzX, HzY
};

template <typename S>
[[nodiscard]] std::vector<S>& coeff_array(UpdateCoefficients<S>& c, CoeffArray a) {
    switch (a) {
        case CoeffArray::ExY: return c.ex_y;
        case CoeffArray::ExZ: return c.ex_z;
        case CoeffArray::EyZ: return c.ey_z;
        case CoeffArray::EyX: return c.ey_x;
        case CoeffArray::EzX: return c.ez_x;
        case CoeffArray::EzY: return c.ez_y;
        case CoeffArray::HxY: return c.hx_y;
        case CoeffArray::HxZ: return c.hx_z;
        case CoeffArray::HyZ: return c.hy_z;
        case CoeffArray::HyX: return c.hy_x;
        case CoeffArray::HzX: return c.hz_x;
        case CoeffArray::HzY: return c.hz_y;
    }
    throw std::logic_error("bad coefficient array");
}

[[nodiscard]] Component coeff_row(CoeffArray a);

/// Relative permittivity/permeability assigned to each field dof, with
/// arithmetic averaging of the adjacent cells at material boundaries.
struct DofMaterials {
    std::vector<double> eps_ex, eps_ey, eps_ez;
    std::vector<double> mu_hx, mu_hy, mu_hz;
};

[[nodiscard]] DofMaterials dof_materials(const YeeGrid& grid);
[[nodiscard]] UpdateCoefficients<double> update_coefficients(const YeeGrid& grid, double dt);

template <typename T>
[[nodiscard]] UpdateCoefficients<Poly<T>> lift_coefficients(const UpdateCoefficients<T>& c, int order) {
    UpdateCoefficients<Poly<T>> out;
    auto conv = [order](const std::vector<T>& in, std::vector<Poly<T>>& dst) {
        dst.reserve(in.size());
        for (const T& v : in) dst.push_back(Poly<T>::constant(v, order));
    };
    conv(c.ex_y, out.ex_y); conv(c.ex_z, out.ex_z);
    conv(c.ey_z, out.ey_z); conv(c.ey_x, out.ey_x);
    conv(c.ez_x, out.ez_x); conv(c.ez_y, out.ez_y);
    conv(c.hx_y, out.hx_y); conv(c.hx_z, out.hx_z);
    conv(c.hy_z, out.hy_z); conv(c.hy_x, out.hy_x);
    conv(c.hz_x, out.hz_x); conv(c.hz_y, out.hz_y);
    return out;
}

/// Category of a forward run for the atomic run counters. Method runs are
/// the ones counted against the per-task budget; calibration covers shared
/// port-reference runs; oracle covers CFD/dual/remeshed verification runs.
enum class RunCategory : std::uint8_t { Method, Calibration, Oracle };

void run_counter_increment(RunCategory c);
[[nodiscard]] long run_counter_value(RunCategory c);
void run_counter_reset();

template <typename S>
struct Fields {
    std::vector<S> ex, ey, ez, hx, hy, hz;
};

template <typename S>
[[nodiscard]] const std::vector<S>& field_array(const Fields<S>& f, Component c) {
    switch (c) {
        case Component::Ex: return f.ex;
        case Component::Ey: return f.ey;
        case Component::Ez: return f.ez;
        case Component::Hx: return f.hx;
        case Component::Hy: return f.hy;
        case Component::Hz: return f.hz;
    }
    throw std::logic_error("bad component");
}

template <typename S>
struct RunResultT {
    std::vector<ProbeRecordT<S>> probes;
    std::vector<double> source_waveform;  // injected amplitude per step

    [[nodiscard]] const ProbeRecordT<S>& probe(const std::string& name) const {
        for (const auto& p : probes)
            if (p.name == name) return p;
        throw std::out_of_range("no probe named " + name);
    }
};
using RunResult = RunResultT<double>;

template <typename S>
struct StepHooksT {
    // invoked with E^n in place, before the H update of step n
    std::function<void(int, const Fields<S>&)> before_h;
    // invoked with H^{n+1/2} in place, before the E update of step n
    std::function<void(int, const Fields<S>&)> after_h;
};
using StepHooks = StepHooksT<double>;

namespace detail {
inline double value0(double x) { return x; }
template <typename T>
inline double value0(const Poly<T>& p) { return p.value(); }
}  // namespace detail

/// Leapfrog Yee solver over one grid. Template parameter S is the field
/// scalar: double for production runs, Poly<double> for the forward-mode
/// derivative oracle. 1-D lines (nx == ny == 1) use a dedicated Ex/Hy pair
/// propagating along z.
template <typename S>
class Engine {
public:
    Engine(YeeGrid grid, SimulationConfig config, UpdateCoefficients<S> coeffs)
        : grid_(std::move(grid)), cfg_(std::move(config)), c_(std::move(coeffs)) {
        if (cfg_.dt <= 0 || cfg_.nsteps <= 0)
            throw std::invalid_argument("Engine: dt and nsteps must be positive");
        if constexpr (!std::is_same_v<S, double>) {
            zero_ = S::constant(0.0, c_.ex_z.front().order());
        }
        mats_ = dof_materials(grid_);
        one_d_ = grid_.is_1d();
        if (!one_d_ && (grid_.nx < 3 || grid_.ny < 3 || grid_.nz < 3))
            throw std::invalid_argument("Engine: 3-D grids need at least 3 cells per axis");
        init_fields();
        build_pec_masks();
        build_mur();
        resolve_source();
    }

    [[nodiscard]] const YeeGrid& grid() const { return grid_; }
    [[nodiscard]] const SimulationConfig& config() const { return cfg_; }
    [[nodiscard]] Fields<S>& fields() { return f_; }
    [[nodiscard]] const Fields<S>& fields() const { return f_; }

    [[nodiscard]] const std::vector<std::uint8_t>& pec_mask(Component c) const {
        switch (c) {
            case Component::Ex: return pec_ex_;
            case Component::Ey: return pec_ey_;
            case Component::Ez: return pec_ez_;
            default: throw std::invalid_argument("pec_mask: electric components only");
        }
    }

    /// One full leapfrog cycle (H then E) with sources and boundaries.
    void step(int n, const StepHooksT<S>* hooks = nullptr) {
        if (hooks && hooks->before_h) hooks->before_h(n, f_);
        store_mur_olds();
        update_h(1.0);
        if (hooks && hooks->after_h) hooks->after_h(n, f_);
        update_e(1.0);
        inject_source(n);
        apply_mur();
        apply_pec();
        if ((n & 15) == 0) check_finite(n);
    }

    /// Inverse leapfrog cycle (pure curl part only); for reversibility tests
    /// in closed PEC boxes with the source off.
    void step_backward() {
        update_e(-1.0);
        update_h(-1.0);
    }

    [[nodiscard]] RunResultT<S> run(RunCategory category, const StepHooksT<S>* hooks = nullptr) {
        run_counter_increment(category);
        RunResultT<S> out;
        out.probes.reserve(cfg_.probes.size());
        for (const auto& ps : cfg_.probes) {
            ProbeRecordT<S> rec;
            rec.name = ps.name;
            rec.component = ps.component;
            rec.i = ps.i; rec.j = ps.j; rec.k = ps.k;
            rec.cell = linear_index(ps.i, ps.j, ps.k, grid_.nx, grid_.ny, grid_.nz);
            rec.phase = is_electric(ps.component) ? SamplePhase::Integer : SamplePhase::Half;
            rec.samples.reserve(static_cast<std::size_t>(cfg_.nsteps));
            out.probes.push_back(std::move(rec));
        }
        out.source_waveform.resize(static_cast<std::size_t>(cfg_.nsteps));

        StepHooksT<S> merged;
        merged.before_h = [&](int n, const Fields<S>& f) {
            sample_probes(out, SamplePhase::Integer);
            if (hooks && hooks->before_h) hooks->before_h(n, f);
        };
        merged.after_h = [&](int n, const Fields<S>& f) {
            sample_probes(out, SamplePhase::Half);
            if (hooks && hooks->after_h) hooks->after_h(n, f);
        };
        for (int n = 0; n < cfg_.nsteps; ++n) {
            out.source_waveform[static_cast<std::size_t>(n)] = waveform(n);
            step(n, &merged);
        }
        check_finite(cfg_.nsteps - 1);
        return out;
    }

    /// Discrete field energy sum(eps |E|^2 + mu |H|^2) * cell volume.
    [[nodiscard]] double energy() const {
        double acc = 0.0;
        const long p = grid_.cell_count();
        for (long q = 0; q < p; ++q) {
            const double vol = grid_.dx[q] * grid_.dy[q] * grid_.dz[q];
            auto e2 = [&](const std::vector<S>& v, const std::vector<double>& epsr) {
                if (v.empty()) return 0.0;
                const double x = detail::value0(v[static_cast<std::size_t>(q)]);
                return kEps0 * epsr[static_cast<std::size_t>(q)] * x * x * vol;
            };
            auto h2 = [&](const std::vector<S>& v, const std::vector<double>& mur) {
                if (v.empty()) return 0.0;
                const double x = detail::value0(v[static_cast<std::size_t>(q)]);
                return kMu0 * mur[static_cast<std::size_t>(q)] * x * x * vol;
            };
            acc += e2(f_.ex, mats_.eps_ex) + e2(f_.ey, mats_.eps_ey) + e2(f_.ez, mats_.eps_ez);
            acc += h2(f_.hx, mats_.mu_hx) + h2(f_.hy, mats_.mu_hy) + h2(f_.hz, mats_.mu_hz);
        }
        return acc;
    }

    [[nodiscard]] double waveform(int n) const {
        const double t = n * cfg_.dt;
        return cfg_.source.amplitude * gaussian(t, cfg_.source.t0, cfg_.source.ts);
    }

    [[nodiscard]] long dof_index(Component comp, int i, int j, int k) const {
        return grid_.at(i, j, k);
    }

private:
    YeeGrid grid_;
    SimulationConfig cfg_;
    UpdateCoefficients<S> c_;
    DofMaterials mats_;
    Fields<S> f_;
    bool one_d_ = false;

    std::vector<std::uint8_t> pec_ex_, pec_ey_, pec_ez_;
    std::vector<long> pec_list_ex_, pec_list_ey_, pec_list_ez_;

    struct MurEntry {
        Component comp;
        long b = 0, nb = 0;
        double kappa = 0.0;
        S old_b{}, old_nb{};
    };
    std::vector<MurEntry> mur_;
    std::vector<long> src_dofs_;
    S zero_{};  // zero at the scalar's truncation order

    [[nodiscard]] long at(int i, int j, int k) const { return grid_.at(i, j, k); }

    void init_fields() {
        const std::size_t p = static_cast<std::size_t>(grid_.cell_count());
        if (one_d_) {
            f_.ex.assign(p, zero_);
            f_.hy.assign(p, zero_);
        } else {
            f_.ex.assign(p, zero_);
            f_.ey.assign(p, zero_);
            f_.ez.assign(p, zero_);
            f_.hx.assign(p, zero_);
            f_.hy.assign(p, zero_);
            f_.hz.assign(p, zero_);
        }
    }

    std::vector<S>& field_of(Component comp) {
        switch (comp) {
            case Component::Ex: return f_.ex;
            case Component::Ey: return f_.ey;
            case Component::Ez: return f_.ez;
            case Component::Hx: return f_.hx;
            case Component::Hy: return f_.hy;
            case Component::Hz: return f_.hz;
        }
        throw std::logic_error("bad component");
    }

    void build_pec_masks() {
        const std::size_t p = static_cast<std::size_t>(grid_.cell_count());
        pec_ex_.assign(p, 0);
        pec_ey_.assign(p, 0);
        pec_ez_.assign(p, 0);
        const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;

        auto mark = [&](std::vector<std::uint8_t>& m, int i, int j, int k) {
            if (i >= 1 && i <= nx && j >= 1 && j <= ny && k >= 1 && k <= nz)
                m[static_cast<std::size_t>(at(i, j, k))] = 1;
        };

        // internal PEC sheets from the grid face masks
        for (int k = 1; k <= nz; ++k)
            for (int j = 1; j <= ny; ++j)
                for (int ip = 1; ip <= nx + 1; ++ip) {
                    const long f = (ip - 1) + static_cast<long>(nx + 1) * ((j - 1) + static_cast<long>(ny) * (k - 1));
                    if (!grid_.pec.x[static_cast<std::size_t>(f)]) continue;
                    mark(pec_ey_, ip, j, k);
                    mark(pec_ey_, ip, j, k + 1);
                    mark(pec_ez_, ip, j, k);
                    mark(pec_ez_, ip, j + 1, k);
                }
        for (int k = 1; k <= nz; ++k)
            for (int jp = 1; jp <= ny + 1; ++jp)
                for (int i = 1; i <= nx; ++i) {
                    const long f = (i - 1) + static_cast<long>(nx) * ((jp - 1) + static_cast<long>(ny + 1) * (k - 1));
                    if (!grid_.pec.y[static_cast<std::size_t>(f)]) continue;
                    mark(pec_ex_, i, jp, k);
                    mark(pec_ex_, i, jp, k + 1);
                    mark(pec_ez_, i, jp, k);
                    mark(pec_ez_, i + 1, jp, k);
                }
        for (int kp = 1; kp <= nz + 1; ++kp)
            for (int j = 1; j <= ny; ++j)
                for (int i = 1; i <= nx; ++i) {
                    const long f = (i - 1) + static_cast<long>(nx) * ((j - 1) + static_cast<long>(ny) * (kp - 1));
                    if (!grid_.pec.z[static_cast<std::size_t>(f)]) continue;
                    mark(pec_ex_, i, j, kp);
                    mark(pec_ex_, i, j + 1, kp);
                    mark(pec_ey_, i, j, kp);
                    mark(pec_ey_, i + 1, j, kp);
                }

        // PEC domain boundaries
        if (!one_d_) {
            auto sweep = [&](BoundaryKind kind, auto fn) { if (kind == BoundaryKind::Pec) fn(); };
            sweep(cfg_.boundary.xlo, [&] {
                for (int k = 1; k <= nz; ++k) for (int j = 1; j <= ny; ++j) { mark(pec_ey_, 1, j, k); mark(pec_ez_, 1, j, k); }
            });
            sweep(cfg_.boundary.xhi, [&] {
                for (int k = 1; k <= nz; ++k) for (int j = 1; j <= ny; ++j) { mark(pec_ey_, nx, j, k); mark(pec_ez_, nx, j, k); }
            });
            sweep(cfg_.boundary.ylo, [&] {
                for (int k = 1; k <= nz; ++k) for (int i = 1; i <= nx; ++i) { mark(pec_ex_, i, 1, k); mark(pec_ez_, i, 1, k); }
            });
            sweep(cfg_.boundary.yhi, [&] {
                for (int k = 1; k <= nz; ++k) for (int i = 1; i <= nx; ++i) { mark(pec_ex_, i, ny, k); mark(pec_ez_, i, ny, k); }
            });
            sweep(cfg_.boundary.zlo, [&] {
                for (int j = 1; j <= ny; ++j) for (int i = 1; i <= nx; ++i) { mark(pec_ex_, i, j, 1); mark(pec_ey_, i, j, 1); }
            });
            sweep(cfg_.boundary.zhi, [&] {
                for (int j = 1; j <= ny; ++j) for (int i = 1; i <= nx; ++i) { mark(pec_ex_, i, j, nz); mark(pec_ey_, i, j, nz); }
            });
        } else {
            if (cfg_.boundary.zlo == BoundaryKind::Pec) pec_ex_[static_cast<std::size_t>(at(1, 1, 1))] = 1;
            if (cfg_.boundary.zhi == BoundaryKind::Pec) pec_ex_[static_cast<std::size_t>(at(1, 1, nz))] = 1;
        }

        auto collect = [](const std::vector<std::uint8_t>& m, std::vector<long>& list) {
            list.clear();
            for (long q = 0; q < static_cast<long>(m.size()); ++q)
                if (m[static_cast<std::size_t>(q)]) list.push_back(q);
        };
        collect(pec_ex_, pec_list_ex_);
        collect(pec_ey_, pec_list_ey_);
        collect(pec_ez_, pec_list_ez_);
    }

    void add_mur_entry(Component comp, long b, long nb, double eps_rel) {
        const std::vector<std::uint8_t>& mask =
            comp == Component::Ex ? pec_ex_ : comp == Component::Ey ? pec_ey_ : pec_ez_;
        if (mask[static_cast<std::size_t>(b)]) return;
        for (const auto& e : mur_)
            if (e.comp == comp && e.b == b) return;
        MurEntry e;
        e.comp = comp;
        e.b = b;
        e.nb = nb;
        const double v = kC0 / std::sqrt(eps_rel);
        double dn;
        if (one_d_) {
            dn = grid_.dz[static_cast<std::size_t>(b)];
        } else {
            // normal cell size taken from the boundary dof's cell
            dn = mur_normal_size_;
        }
        e.kappa = (v * cfg_.dt - dn) / (v * cfg_.dt + dn);
        mur_.push_back(e);
    }

    double mur_normal_size_ = 0.0;

    void build_mur() {
        mur_.clear();
        const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
        if (one_d_) {
            if (cfg_.boundary.zlo == BoundaryKind::Mur1)
                add_mur_entry(Component::Ex, at(1, 1, 1), at(1, 1, 2), mats_.eps_ex[static_cast<std::size_t>(at(1, 1, 1))]);
            if (cfg_.boundary.zhi == BoundaryKind::Mur1)
                add_mur_entry(Component::Ex, at(1, 1, nz), at(1, 1, nz - 1), mats_.eps_ex[static_cast<std::size_t>(at(1, 1, nz))]);
            return;
        }
        auto eps_at = [&](Component comp, long dof) {
            const auto& v = comp == Component::Ex ? mats_.eps_ex : comp == Component::Ey ? mats_.eps_ey : mats_.eps_ez;
            return v[static_cast<std::size_t>(dof)];
        };
        auto face = [&](BoundaryKind kind, std::initializer_list<Component> comps, auto dofpairs, double dn) {
            if (kind != BoundaryKind::Mur1) return;
            mur_normal_size_ = dn;
            for (Component comp : comps)
                for (auto [b, nb] : dofpairs(comp))
                    add_mur_entry(comp, b, nb, eps_at(comp, b));
        };
        using PairList = std::vector<std::pair<long, long>>;
        face(cfg_.boundary.xlo, {Component::Ey, Component::Ez}, [&](Component comp) {
            PairList v;
            for (int k = 1; k <= nz; ++k)
                for (int j = 1; j <= ny; ++j) {
                    if (comp == Component::Ey && j == ny) continue;
                    if (comp == Component::Ez && k == nz) continue;
                    v.emplace_back(at(1, j, k), at(2, j, k));
                }
            return v;
        }, grid_.dx[0]);
        face(cfg_.boundary.xhi, {Component::Ey, Component::Ez}, [&](Component comp) {
            PairList v;
            for (int k = 1; k <= nz; ++k)
                for (int j = 1; j <= ny; ++j) {
                    if (comp == Component::Ey && j == ny) continue;
                    if (comp == Component::Ez && k == nz) continue;
                    v.emplace_back(at(nx, j, k), at(nx - 1, j, k));
                }
            return v;
        }, grid_.dx[0]);
        face(cfg_.boundary.ylo, {Component::Ex, Component::Ez}, [&](Component comp) {
            PairList v;
            for (int k = 1; k <= nz; ++k)
                for (int i = 1; i <= nx; ++i) {
                    if (comp == Component::Ex && i == nx) continue;
                    if (comp == Component::Ez && k == nz) continue;
                    v.emplace_back(at(i, 1, k), at(i, 2, k));
                }
            return v;
        }, grid_.dy[0]);
        face(cfg_.boundary.yhi, {Component::Ex, Component::Ez}, [&](Component comp) {
            PairList v;
            for (int k = 1; k <= nz; ++k)
                for (int i = 1; i <= nx; ++i) {
                    if (comp == Component::Ex && i == nx) continue;
                    if (comp == Component::Ez && k == nz) continue;
                    v.emplace_back(at(i, ny, k), at(i, ny - 1, k));
                }
            return v;
        }, grid_.dy[0]);
        face(cfg_.boundary.zlo, {Component::Ex, Component::Ey}, [&](Component comp) {
            PairList v;
            for (int j = 1; j <= ny; ++j)
                for (int i = 1; i <= nx; ++i) {
                    if (comp == Component::Ex && i == nx) continue;
                    if (comp == Component::Ey && j == ny) continue;
                    v.emplace_back(at(i, j, 1), at(i, j, 2));
                }
            return v;
        }, grid_.dz[0]);
        face(cfg_.boundary.zhi, {Component::Ex, Component::Ey}, [&](Component comp) {
            PairList v;
            for (int j = 1; j <= ny; ++j)
                for (int i = 1; i <= nx; ++i) {
                    if (comp == Component::Ex && i == nx) continue;
                    if (comp == Component::Ey && j == ny) continue;
                    v.emplace_back(at(i, j, nz), at(i, j, nz - 1));
                }
            return v;
        }, grid_.dz[0]);
    }

    void resolve_source() {
        src_dofs_.clear();
        const auto& s = cfg_.source;
        if (!is_electric(s.component))
            throw std::invalid_argument("Engine: sources drive electric components");
        if (s.i0 < 1 || s.i1 > grid_.nx || s.j0 < 1 || s.j1 > grid_.ny || s.k0 < 1 || s.k1 > grid_.nz)
            throw std::out_of_range("Engine: source range outside grid");
        const std::vector<std::uint8_t>& mask =
            s.component == Component::Ex ? pec_ex_ : s.component == Component::Ey ? pec_ey_ : pec_ez_;
        for (int k = s.k0; k <= s.k1; ++k)
            for (int j = s.j0; j <= s.j1; ++j)
                for (int i = s.i0; i <= s.i1; ++i) {
                    const long d = at(i, j, k);
                    if (!mask[static_cast<std::size_t>(d)]) src_dofs_.push_back(d);
                }
    }

    void update_h(double sign) {
        if (one_d_) {
            const int nz = grid_.nz;
            for (long p = 0; p <= nz - 2; ++p) {
                S d = f_.ex[static_cast<std::size_t>(p + 1)] - f_.ex[static_cast<std::size_t>(p)];
                f_.hy[static_cast<std::size_t>(p)] -= (c_.hy_z[static_cast<std::size_t>(p)] * d) * sign;
            }
            return;
        }
        const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
        const long sx = 1, sy = nx, sz = static_cast<long>(nx) * ny;
        // Hx: needs Ey(k+1), Ez(j+1)
        for (int k = 1; k <= nz - 1; ++k)
            for (int j = 1; j <= ny - 1; ++j)
                for (int i = 1; i <= nx; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.hx_z[p] * (f_.ey[p + sz] - f_.ey[p]) - c_.hx_y[p] * (f_.ez[p + sy] - f_.ez[p])) * sign;
                    f_.hx[static_cast<std::size_t>(p)] += d;
                }
        // Hy: needs Ez(i+1), Ex(k+1)
        for (int k = 1; k <= nz - 1; ++k)
            for (int j = 1; j <= ny; ++j)
                for (int i = 1; i <= nx - 1; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.hy_x[p] * (f_.ez[p + sx] - f_.ez[p]) - c_.hy_z[p] * (f_.ex[p + sz] - f_.ex[p])) * sign;
                    f_.hy[static_cast<std::size_t>(p)] += d;
                }
        // Hz: needs Ex(j+1), Ey(i+1)
        for (int k = 1; k <= nz; ++k)
            for (int j = 1; j <= ny - 1; ++j)
                for (int i = 1; i <= nx - 1; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.hz_y[p] * (f_.ex[p + sy] - f_.ex[p]) - c_.hz_x[p] * (f_.ey[p + sx] - f_.ey[p])) * sign;
                    f_.hz[static_cast<std::size_t>(p)] += d;
                }
    }

    void update_e(double sign) {
        if (one_d_) {
            const int nz = grid_.nz;
            for (long p = 1; p <= nz - 2; ++p) {
                S d = f_.hy[static_cast<std::size_t>(p)] - f_.hy[static_cast<std::size_t>(p - 1)];
                f_.ex[static_cast<std::size_t>(p)] -= (c_.ex_z[static_cast<std::size_t>(p)] * d) * sign;
            }
            return;
        }
        const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
        const long sx = 1, sy = nx, sz = static_cast<long>(nx) * ny;
        // Ex: interior j,k; i up to nx-1 (outermost x half-layer stays off)
        for (int k = 2; k <= nz - 1; ++k)
            for (int j = 2; j <= ny - 1; ++j)
                for (int i = 1; i <= nx - 1; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.ex_y[p] * (f_.hz[p] - f_.hz[p - sy]) - c_.ex_z[p] * (f_.hy[p] - f_.hy[p - sz])) * sign;
                    f_.ex[static_cast<std::size_t>(p)] += d;
                }
        for (int k = 2; k <= nz - 1; ++k)
            for (int j = 1; j <= ny - 1; ++j)
                for (int i = 2; i <= nx - 1; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.ey_z[p] * (f_.hx[p] - f_.hx[p - sz]) - c_.ey_x[p] * (f_.hz[p] - f_.hz[p - sx])) * sign;
                    f_.ey[static_cast<std::size_t>(p)] += d;
                }
        for (int k = 1; k <= nz - 1; ++k)
            for (int j = 2; j <= ny - 1; ++j)
                for (int i = 2; i <= nx - 1; ++i) {
                    const long p = at(i, j, k);
                    S d = (c_.ez_x[p] * (f_.hy[p] - f_.hy[p - sx]) - c_.ez_y[p] * (f_.hx[p] - f_.hx[p - sy])) * sign;
                    f_.ez[static_cast<std::size_t>(p)] += d;
                }
    }

    void inject_source(int n) {
        const double g = waveform(n);
        std::vector<S>& arr = field_of(cfg_.source.component);
        if (cfg_.source.kind == SourceSpec::Kind::Soft) {
            for (long d : src_dofs_) arr[static_cast<std::size_t>(d)] += make_scalar(g);
        } else {
            // hard source: force while the pulse is meaningfully on
            if (n * cfg_.dt <= cfg_.source.t0 + 6.0 * cfg_.source.ts)
                for (long d : src_dofs_) arr[static_cast<std::size_t>(d)] = make_scalar(g);
        }
    }

    [[nodiscard]] S make_scalar(double x) const {
        if constexpr (std::is_same_v<S, double>) {
            return x;
        } else {
            return S::constant(x, zero_.order());
        }
    }

    void store_mur_olds() {
        for (auto& e : mur_) {
            const std::vector<S>& arr = field_of(e.comp);
            e.old_b = arr[static_cast<std::size_t>(e.b)];
            e.old_nb = arr[static_cast<std::size_t>(e.nb)];
        }
    }

    void apply_mur() {
        for (auto& e : mur_) {
            std::vector<S>& arr = field_of(e.comp);
            S nb_new = arr[static_cast<std::size_t>(e.nb)];
            arr[static_cast<std::size_t>(e.b)] = e.old_nb + (nb_new - e.old_b) * e.kappa;
        }
    }

    void apply_pec() {
        for (long d : pec_list_ex_) f_.ex[static_cast<std::size_t>(d)] = zero_;
        for (long d : pec_list_ey_) f_.ey[static_cast<std::size_t>(d)] = zero_;
        for (long d : pec_list_ez_) f_.ez[static_cast<std::size_t>(d)] = zero_;
    }

    void sample_probes(RunResultT<S>& out, SamplePhase phase) {
        for (auto& rec : out.probes) {
            if (rec.phase != phase) continue;
            const std::vector<S>& arr = field_of(rec.component);
            const long d = at(rec.i, rec.j, rec.k);
            rec.samples.push_back(arr[static_cast<std::size_t>(d)]);
        }
    }

    void check_finite(int n) const {
        auto scan = [n](const std::vector<S>& v, const char* name) {
            for (const S& x : v)
                if (!all_finite(x))
                    throw std::runtime_error("FDTD instability: non-finite " + std::string(name) +
                                             " near step " + std::to_string(n) +
                                             " (check the CFL condition)");
        };
        scan(f_.ex, "Ex");
        if (!one_d_) {
            scan(f_.ey, "Ey");
            scan(f_.ez, "Ez");
            scan(f_.hx, "Hx");
            scan(f_.hz, "Hz");
        }
        scan(f_.hy, "Hy");
    }
};

}  // namespace emsens
