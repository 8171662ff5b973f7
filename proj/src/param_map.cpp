#include "emsens/param_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace emsens {

double size_reciprocal_derivative(double delta, int m) {
    if (delta <= 0) throw std::invalid_argument("size_reciprocal_derivative: delta must be positive");
    if (m < 1) throw std::invalid_argument("size_reciprocal_derivative: order must be >= 1");
    double v = std::pow(delta, -(m + 1));
    for (int i = 2; i <= m; ++i) v *= i;
    return (m % 2 == 0) ? v : -v;
}

double AffectedCoeff::derivative(int m) const {
    if (m < 1) throw std::invalid_argument("AffectedCoeff::derivative: order must be >= 1");
    double v = scale * std::pow(weight, m) * std::pow(base, -(m + 1));
    for (int i = 2; i <= m; ++i) v *= i;
    return (m % 2 == 0) ? v : -v;
}

StencilTerm stencil_term(CoeffArray array, int i, int j, int k, const YeeGrid& grid) {
    auto at = [&](int ii, int jj, int kk) {
        if (ii < 1 || ii > grid.nx || jj < 1 || jj > grid.ny || kk < 1 || kk > grid.nz)
            throw std::out_of_range("stencil_term: subset cell too close to the domain edge");
        return grid.at(ii, jj, kk);
    };
    StencilTerm t;
    t.array = array;
    switch (array) {
        case CoeffArray::ExY: t.diff_field = Component::Hz; t.sign = +1; t.p_plus = at(i, j, k); t.p_minus = at(i, j - 1, k); break;
        case CoeffArray::ExZ: t.diff_field = Component::Hy; t.sign = -1; t.p_plus = at(i, j, k); t.p_minus = at(i, j, k - 1); break;
        case CoeffArray::EyZ: t.diff_field = Component::Hx; t.sign = +1; t.p_plus = at(i, j, k); t.p_minus = at(i, j, k - 1); break;
        case CoeffArray::EyX: t.diff_field = Component::Hz; t.sign = -1; t.p_plus = at(i, j, k); t.p_minus = at(i - 1, j, k); break;
        case CoeffArray::EzX: t.diff_field = Component::Hy; t.sign = +1; t.p_plus = at(i, j, k); t.p_minus = at(i - 1, j, k); break;
        case CoeffArray::EzY: t.diff_field = Component::Hx; t.sign = -1; t.p_plus = at(i, j, k); t.p_minus = at(i, j - 1, k); break;
        case CoeffArray::HxY: t.diff_field = Component::Ez; t.sign = -1; t.p_plus = at(i, j + 1, k); t.p_minus = at(i, j, k); break;
        case CoeffArray::HxZ: t.diff_field = Component::Ey; t.sign = +1; t.p_plus = at(i, j, k + 1); t.p_minus = at(i, j, k); break;
        case CoeffArray::HyZ: t.diff_field = Component::Ex; t.sign = -1; t.p_plus = at(i, j, k + 1); t.p_minus = at(i, j, k); break;
        case CoeffArray::HyX: t.diff_field = Component::Ez; t.sign = +1; t.p_plus = at(i + 1, j, k); t.p_minus = at(i, j, k); break;
        case CoeffArray::HzX: t.diff_field = Component::Ey; t.sign = -1; t.p_plus = at(i + 1, j, k); t.p_minus = at(i, j, k); break;
        case CoeffArray::HzY: t.diff_field = Component::Ex; t.sign = +1; t.p_plus = at(i, j + 1, k); t.p_minus = at(i, j, k); break;
    }
    return t;
}

namespace {

void cell_to_ijk(long cell1, const YeeGrid& g, int& i, int& j, int& k) {
    const long c0 = cell1 - 1;
    i = static_cast<int>(c0 % g.nx) + 1;
    j = static_cast<int>((c0 / g.nx) % g.ny) + 1;
    k = static_cast<int>(c0 / (static_cast<long>(g.nx) * g.ny)) + 1;
}

double delta_along(const YeeGrid& g, Axis a, long dof0) {
    switch (a) {
        case Axis::X: return g.dx[dof0];
        case Axis::Y: return g.dy[dof0];
        case Axis::Z: return g.dz[dof0];
        default: throw std::logic_error("delta_along: geometric axes only");
    }
}

std::vector<CoeffArray> e_arrays_for_axis(Axis a, bool one_d) {
    if (one_d) {
        if (a != Axis::Z) throw std::invalid_argument("1-D grids support z-axis geometry parameters only");
        return {CoeffArray::ExZ};
    }
    switch (a) {
        case Axis::X: return {CoeffArray::EyX, CoeffArray::EzX};
        case Axis::Y: return {CoeffArray::ExY, CoeffArray::EzY};
        case Axis::Z: return {CoeffArray::ExZ, CoeffArray::EyZ};
        default: throw std::logic_error("e_arrays_for_axis: geometric axes only");
    }
}

std::vector<CoeffArray> h_arrays_for_axis(Axis a, bool one_d) {
    if (one_d) return {CoeffArray::HyZ};
    switch (a) {
        case Axis::X: return {CoeffArray::HyX, CoeffArray::HzX};
        case Axis::Y: return {CoeffArray::HxY, CoeffArray::HzY};
        case Axis::Z: return {CoeffArray::HxZ, CoeffArray::HyZ};
        default: throw std::logic_error("h_arrays_for_axis: geometric axes only");
    }
}

// coefficient arrays of one E component, restricted to what the kernel uses
std::vector<CoeffArray> e_arrays_of_component(Component c, bool one_d) {
    if (one_d) return {CoeffArray::ExZ};
    switch (c) {
        case Component::Ex: return {CoeffArray::ExY, CoeffArray::ExZ};
        case Component::Ey: return {CoeffArray::EyZ, CoeffArray::EyX};
        case Component::Ez: return {CoeffArray::EzX, CoeffArray::EzY};
        default: throw std::logic_error("not an E component");
    }
}

Axis diff_axis(CoeffArray a) {
    switch (a) {
        case CoeffArray::ExY: case CoeffArray::EzY: case CoeffArray::HxY: case CoeffArray::HzY:
            return Axis::Y;
        case CoeffArray::ExZ: case CoeffArray::EyZ: case CoeffArray::HxZ: case CoeffArray::HyZ:
            return Axis::Z;
        default:
            return Axis::X;
    }
}

bool pec_at(const std::vector<std::uint8_t>* mask, long dof) {
    return mask && !mask->empty() && (*mask)[static_cast<std::size_t>(dof)] != 0;
}

struct DofKey {
    Component comp;
    long dof;
    bool operator<(const DofKey& o) const {
        return comp != o.comp ? comp < o.comp : dof < o.dof;
    }
};

// the cells whose eps_r averages into the E dof, mirroring dof_materials
std::vector<long> averaging_cells(const YeeGrid& g, Component c, int i, int j, int k) {
    bool sx = false, sy = false, sz = false;
    switch (c) {
        case Component::Ex: sy = sz = true; break;
        case Component::Ey: sx = sz = true; break;
        case Component::Ez: sx = sy = true; break;
        default: throw std::logic_error("averaging_cells: E components only");
    }
    std::vector<long> cells;
    for (int kk = (sz ? k - 1 : k); kk <= k; ++kk)
        for (int jj = (sy ? j - 1 : j); jj <= j; ++jj)
            for (int ii = (sx ? i - 1 : i); ii <= i; ++ii) {
                if (ii < 1 || ii > g.nx || jj < 1 || jj > g.ny || kk < 1 || kk > g.nz) continue;
                cells.push_back(g.at(ii, jj, kk));
            }
    return cells;
}

}  // namespace

CoeffDerivatives coeff_derivatives(const YeeGrid& grid, double dt, const DesignParameter& param,
                                   const std::vector<std::uint8_t>* pec_ex,
                                   const std::vector<std::uint8_t>* pec_ey,
                                   const std::vector<std::uint8_t>* pec_ez) {
    if (dt <= 0) throw std::invalid_argument("coeff_derivatives: dt must be positive");
    const bool one_d = grid.is_1d();
    const DofMaterials mats = dof_materials(grid);
    CoeffDerivatives out;
    out.param = param.name;

    auto pec_mask_of = [&](Component c) {
        switch (c) {
            case Component::Ex: return pec_ex;
            case Component::Ey: return pec_ey;
            case Component::Ez: return pec_ez;
            default: return static_cast<const std::vector<std::uint8_t>*>(nullptr);
        }
    };
    auto eps_of = [&](Component c, long dof) {
        switch (c) {
            case Component::Ex: return mats.eps_ex[dof];
            case Component::Ey: return mats.eps_ey[dof];
            case Component::Ez: return mats.eps_ez[dof];
            default: throw std::logic_error("eps_of: E components only");
        }
    };
    auto mu_of = [&](Component c, long dof) {
        switch (c) {
            case Component::Hx: return mats.mu_hx[dof];
            case Component::Hy: return mats.mu_hy[dof];
            case Component::Hz: return mats.mu_hz[dof];
            default: throw std::logic_error("mu_of: H components only");
        }
    };

    std::map<DofKey, AffectedDof> e_map, h_map;
    auto push = [&](std::map<DofKey, AffectedDof>& m, Component comp, int i, int j, int k,
                    const StencilTerm& term, const AffectedCoeff& coeff) {
        const long dof = grid.at(i, j, k);
        auto [it, inserted] = m.try_emplace(DofKey{comp, dof});
        AffectedDof& d = it->second;
        if (inserted) {
            d.at = comp;
            d.i = i; d.j = j; d.k = k;
            d.cell = linear_index(i, j, k, grid.nx, grid.ny, grid.nz);
            d.dof = dof;
        }
        d.terms.push_back(term);
        d.coeffs.push_back(coeff);
    };

    if (!param.is_material()) {
        const Axis ax = param.subset.axis;
        for (long cell1 : param.subset.indices) {
            int i, j, k;
            cell_to_ijk(cell1, grid, i, j, k);
            const long dof = grid.at(i, j, k);
            const double dsize = delta_along(grid, ax, dof);
            for (CoeffArray a : e_arrays_for_axis(ax, one_d)) {
                const Component row = coeff_row(a);
                if (pec_at(pec_mask_of(row), dof)) continue;
                AffectedCoeff c;
                c.array = a;
                c.dof = dof;
                c.scale = dt / (kEps0 * eps_of(row, dof));
                c.base = dsize;
                c.weight = 1.0;
                push(e_map, row, i, j, k, stencil_term(a, i, j, k, grid), c);
            }
            for (CoeffArray a : h_arrays_for_axis(ax, one_d)) {
                const Component row = coeff_row(a);
                AffectedCoeff c;
                c.array = a;
                c.dof = dof;
                c.scale = dt / (kMu0 * mu_of(row, dof));
                c.base = dsize;
                c.weight = 1.0;
                push(h_map, row, i, j, k, stencil_term(a, i, j, k, grid), c);
            }
        }
    } else {
        // material parameter: every E dof whose averaged permittivity mixes in
        // at least one subset cell carries the derivative, weighted by the
        // subset share of its averaging set
        std::vector<std::uint8_t> in_subset(static_cast<std::size_t>(grid.cell_count()), 0);
        for (long cell1 : param.subset.indices) in_subset[static_cast<std::size_t>(cell1 - 1)] = 1;

        const std::vector<Component> comps =
            one_d ? std::vector<Component>{Component::Ex}
                  : std::vector<Component>{Component::Ex, Component::Ey, Component::Ez};
        std::set<DofKey> seen;
        for (long cell1 : param.subset.indices) {
            int ci, cj, ck;
            cell_to_ijk(cell1, grid, ci, cj, ck);
            for (Component comp : comps) {
                // candidate dofs around this cell whose average includes it
                for (int dk = 0; dk <= 1; ++dk)
                    for (int dj = 0; dj <= 1; ++dj)
                        for (int di = 0; di <= 1; ++di) {
                            const int i = ci + (comp != Component::Ex ? di : 0);
                            const int j = cj + (comp != Component::Ey ? dj : 0);
                            const int k = ck + (comp != Component::Ez ? dk : 0);
                            if (i > grid.nx || j > grid.ny || k > grid.nz) continue;
                            const long dof = grid.at(i, j, k);
                            if (!seen.insert(DofKey{comp, dof}).second) continue;
                            if (pec_at(pec_mask_of(comp), dof)) continue;
                            const std::vector<long> cells = averaging_cells(grid, comp, i, j, k);
                            int hits = 0;
                            for (long c0 : cells) hits += in_subset[static_cast<std::size_t>(c0)];
                            if (hits == 0) continue;
                            const double w = static_cast<double>(hits) / static_cast<double>(cells.size());
                            for (CoeffArray a : e_arrays_of_component(comp, one_d)) {
                                AffectedCoeff c;
                                c.array = a;
                                c.dof = dof;
                                c.scale = dt / (kEps0 * delta_along(grid, diff_axis(a), dof));
                                c.base = eps_of(comp, dof);
                                c.weight = w;
                                push(e_map, comp, i, j, k, stencil_term(a, i, j, k, grid), c);
                            }
                        }
            }
        }
    }

    for (auto& [key, dof] : e_map) out.e_dofs.push_back(std::move(dof));
    for (auto& [key, dof] : h_map) out.h_dofs.push_back(std::move(dof));
    return out;
}

double coeff_derivative(const YeeGrid& grid, double dt, const DesignParameter& param, long cell,
                        int m) {
    if (m < 1) throw std::invalid_argument("coeff_derivative: order must be >= 1");
    if (!std::binary_search(param.subset.indices.begin(), param.subset.indices.end(), cell))
        return 0.0;
    const CoeffDerivatives cd = coeff_derivatives(grid, dt, param);
    for (const AffectedDof& d : cd.e_dofs) {
        if (d.cell != cell) continue;
        return d.coeffs.front().derivative(m);
    }
    return 0.0;
}

double mixed_coeff_derivative(const DesignParameter& u, const DesignParameter& v, long cell) {
    (void)cell;
    if (u.name == v.name)
        throw std::invalid_argument("mixed_coeff_derivative: same parameter twice; use coeff_derivative at order 2");
    if (!u.subset.disjoint_with(v.subset))
        throw std::invalid_argument("mixed_coeff_derivative: overlapping affected subsets");
    return 0.0;
}

void lift_parameter(UpdateCoefficients<Poly<double>>& coeffs, const CoeffDerivatives& cd,
                    int order) {
    auto apply = [&](const std::vector<AffectedDof>& dofs) {
        for (const AffectedDof& d : dofs)
            for (const AffectedCoeff& c : d.coeffs) {
                Poly<double> den = Poly<double>::constant(c.base, order);
                if (order >= 1) den[1] = c.weight;
                coeff_array(coeffs, c.array)[static_cast<std::size_t>(c.dof)] =
                    den.reciprocal() * c.scale;
            }
    };
    apply(cd.e_dofs);
    apply(cd.h_dofs);
}

}  // namespace emsens
