#include "emsens/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace emsens {

long linear_index(int i, int j, int k, int nx, int ny, int nz) {
    if (i < 1 || i > nx || j < 1 || j > ny || k < 1 || k > nz) {
        throw std::out_of_range("linear_index: cell coordinates out of range");
    }
    return static_cast<long>(k - 1) * nx * ny + static_cast<long>(j - 1) * nx + i;
}

std::string to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
        case Axis::Material: return "material";
    }
    return "?";
}

Axis axis_from_string(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    if (s == "material") return Axis::Material;
    throw std::invalid_argument("unknown axis: " + s);
}

CellSubset::CellSubset(std::vector<long> idx, Axis ax, long cell_count)
    : indices(std::move(idx)), axis(ax) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t n = 0; n < indices.size(); ++n) {
        if (indices[n] < 1 || indices[n] > cell_count) {
            throw std::out_of_range("CellSubset: index out of range");
        }
        if (n > 0 && indices[n] == indices[n - 1]) {
            throw std::invalid_argument("CellSubset: duplicate index");
        }
    }
}

bool CellSubset::disjoint_with(const CellSubset& other) const {
    std::size_t a = 0, b = 0;
    while (a < indices.size() && b < other.indices.size()) {
        if (indices[a] == other.indices[b]) return false;
        if (indices[a] < other.indices[b]) ++a; else ++b;
    }
    return true;
}

YeeGrid::YeeGrid(int nx_, int ny_, int nz_, double dx0, double dy0, double dz0)
    : nx(nx_), ny(ny_), nz(nz_) {
    if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("YeeGrid: cell counts must be >= 1");
    if (dx0 <= 0 || dy0 <= 0 || dz0 <= 0) throw std::invalid_argument("YeeGrid: cell sizes must be > 0");
    const long p = cell_count();
    dx.assign(p, dx0);
    dy.assign(p, dy0);
    dz.assign(p, dz0);
    eps_r.assign(p, 1.0);
    mu_r.assign(p, 1.0);
    pec.x.assign(static_cast<long>(nx + 1) * ny * nz, 0);
    pec.y.assign(static_cast<long>(nx) * (ny + 1) * nz, 0);
    pec.z.assign(static_cast<long>(nx) * ny * (nz + 1), 0);
}

void YeeGrid::set_material_box(int i0, int i1, int j0, int j1, int k0, int k1,
                               double eps, double mu) {
    if (i0 < 1 || i1 > nx || j0 < 1 || j1 > ny || k0 < 1 || k1 > nz || i0 > i1 || j0 > j1 || k0 > k1) {
        throw std::out_of_range("set_material_box: region out of grid bounds");
    }
    if (eps <= 0 || mu <= 0) throw std::invalid_argument("set_material_box: material must be positive");
    for (int k = k0; k <= k1; ++k)
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                eps_r[at(i, j, k)] = eps;
                mu_r[at(i, j, k)] = mu;
            }
}

void YeeGrid::add_pec_sheet(Axis plane_axis, int plane_index, int a0, int a1, int b0, int b1) {
    auto mark = [](std::vector<std::uint8_t>& m, long idx) { m[idx] = 1; };
    switch (plane_axis) {
        case Axis::X: {
            if (plane_index < 1 || plane_index > nx + 1 || a0 < 1 || a1 > ny || b0 < 1 || b1 > nz)
                throw std::out_of_range("add_pec_sheet: x-plane out of bounds");
            for (int k = b0; k <= b1; ++k)
                for (int j = a0; j <= a1; ++j)
                    mark(pec.x, (plane_index - 1) + static_cast<long>(nx + 1) * ((j - 1) + static_cast<long>(ny) * (k - 1)));
            break;
        }
        case Axis::Y: {
            if (plane_index < 1 || plane_index > ny + 1 || a0 < 1 || a1 > nx || b0 < 1 || b1 > nz)
                throw std::out_of_range("add_pec_sheet: y-plane out of bounds");
            for (int k = b0; k <= b1; ++k)
                for (int i = a0; i <= a1; ++i)
                    mark(pec.y, (i - 1) + static_cast<long>(nx) * ((plane_index - 1) + static_cast<long>(ny + 1) * (k - 1)));
            break;
        }
        case Axis::Z: {
            if (plane_index < 1 || plane_index > nz + 1 || a0 < 1 || a1 > nx || b0 < 1 || b1 > ny)
                throw std::out_of_range("add_pec_sheet: z-plane out of bounds");
            for (int j = b0; j <= b1; ++j)
                for (int i = a0; i <= a1; ++i)
                    mark(pec.z, (i - 1) + static_cast<long>(nx) * ((j - 1) + static_cast<long>(ny) * (plane_index - 1)));
            break;
        }
        case Axis::Material:
            throw std::invalid_argument("add_pec_sheet: material is not a face plane");
    }
}

void YeeGrid::validate() const {
    const long p = cell_count();
    auto check_size = [p](const std::vector<double>& v, const char* name) {
        if (static_cast<long>(v.size()) != p)
            throw std::invalid_argument(std::string("YeeGrid: bad array size for ") + name);
    };
    check_size(dx, "dx");
    check_size(dy, "dy");
    check_size(dz, "dz");
    check_size(eps_r, "eps_r");
    check_size(mu_r, "mu_r");
    for (long q = 0; q < p; ++q) {
        if (dx[q] <= 0 || dy[q] <= 0 || dz[q] <= 0)
            throw std::invalid_argument("YeeGrid: cell sizes must stay positive");
        if (eps_r[q] <= 0 || mu_r[q] <= 0)
            throw std::invalid_argument("YeeGrid: materials must stay positive");
    }
}

YeeGrid perturb(const YeeGrid& grid, const CellSubset& subset, double delta) {
    YeeGrid out = grid;
    for (long idx1 : subset.indices) {
        const long q = idx1 - 1;
        switch (subset.axis) {
            case Axis::X: out.dx[q] += delta; break;
            case Axis::Y: out.dy[q] += delta; break;
            case Axis::Z: out.dz[q] += delta; break;
            case Axis::Material: out.eps_r[q] += delta; break;
        }
    }
    out.validate();
    return out;
}

}  // namespace emsens
