#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emsens {

/// 1-based (i,j,k) -> 1-based linear cell index, i running fastest.
[[nodiscard]] long linear_index(int i, int j, int k, int nx, int ny, int nz);

/// Perturbation axis of a cell subset: one cell-size component or the
/// relative permittivity of the cells.
enum class Axis : std::uint8_t { X, Y, Z, Material };

[[nodiscard]] std::string to_string(Axis a);
[[nodiscard]] Axis axis_from_string(const std::string& s);

/// Ordered set of 1-based linear cell indices tied to one perturbation axis.
struct CellSubset {
    std::vector<long> indices;  // unique, ascending, in [1, P]
    Axis axis = Axis::Z;

    CellSubset() = default;
    CellSubset(std::vector<long> idx, Axis ax, long cell_count);

    [[nodiscard]] bool disjoint_with(const CellSubset& other) const;
};

/// Perfect-electric-conductor faces, stored per cell-face plane.
/// An x-face mask entry (ip, j, k) marks the face at node plane ip
/// spanning cell (j, k) in the transverse directions; analogous for y, z.
struct PecFaces {
    std::vector<std::uint8_t> x;  // (nx+1) * ny * nz
    std::vector<std::uint8_t> y;  // nx * (ny+1) * nz
    std::vector<std::uint8_t> z;  // nx * ny * (nz+1)
};

/// Discretized simulation domain: cell counts, per-cell sizes in meters,
/// per-cell materials, and PEC face marks. Immutable once built; oracle
/// runs derive perturbed copies via perturb().
struct YeeGrid {
    int nx = 1, ny = 1, nz = 1;
    std::vector<double> dx, dy, dz;       // size P, meters
    std::vector<double> eps_r, mu_r;      // size P
    PecFaces pec;

    YeeGrid() = default;
    YeeGrid(int nx_, int ny_, int nz_, double dx0, double dy0, double dz0);

    [[nodiscard]] long cell_count() const { return static_cast<long>(nx) * ny * nz; }
    [[nodiscard]] bool is_1d() const { return nx == 1 && ny == 1; }

    /// 0-based storage index for 1-based cell coordinates.
    [[nodiscard]] long at(int i, int j, int k) const {
        return (i - 1) + static_cast<long>(nx) * ((j - 1) + static_cast<long>(ny) * (k - 1));
    }

    void set_material_box(int i0, int i1, int j0, int j1, int k0, int k1,
                          double eps, double mu = 1.0);
    /// Marks the tangential-face rectangle of a PEC sheet. plane_axis is the
    /// face normal, plane_index the 1-based node plane, the ranges span the
    /// two in-plane cell coordinates (inclusive, 1-based).
    void add_pec_sheet(Axis plane_axis, int plane_index, int a0, int a1, int b0, int b1);

    void validate() const;
};

/// Returns a copy of the grid with the subset's sizes (axis x/y/z) or eps_r
/// (axis material) shifted by +delta. Rejects non-positive results.
[[nodiscard]] YeeGrid perturb(const YeeGrid& grid, const CellSubset& subset, double delta);

}  // namespace emsens
