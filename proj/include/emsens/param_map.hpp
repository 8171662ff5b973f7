#pragma once

#include <string>
#include <vector>

#include "emsens/fdtd.hpp"
#include "emsens/grid.hpp"

namespace emsens {

/// A named design parameter: a cell subset plus the axis (or material) its
/// perturbation enters through, and the nominal value in parameter units.
struct DesignParameter {
    std::string name;
    CellSubset subset;
    double nominal = 0.0;

    [[nodiscard]] bool is_material() const { return subset.axis == Axis::Material; }
};

/// d^m(1/delta)/dxi^m for a reciprocal cell size 1/(delta + xi - xi0):
/// (-1)^m m! delta^-(m+1).
[[nodiscard]] double size_reciprocal_derivative(double delta, int m);

/// One update-stencil term whose coefficient depends on a parameter:
/// coeff(d) = scale / (base + weight * d), so all derivative orders and the
/// forward-mode lift come from the same three numbers.
struct AffectedCoeff {
    CoeffArray array;
    long dof = 0;     // 0-based index into the coefficient array
    double scale = 0.0;
    double base = 0.0;
    double weight = 1.0;

    [[nodiscard]] double nominal() const { return scale / base; }
    [[nodiscard]] double derivative(int m) const;  // m >= 1
};

/// Stencil geometry of one differentiated update term at a dof, mirroring
/// the engine kernels: sample = sign * (field[p_plus] - field[p_minus]).
struct StencilTerm {
    CoeffArray array;
    Component diff_field;
    long p_plus = 0, p_minus = 0;
    double sign = 1.0;
};

/// All nonzero coefficient-derivative entries of one parameter, grouped per
/// affected dof with the matching stencil geometry.
struct AffectedDof {
    Component at;  // E component (J support) or H component (K support)
    int i = 1, j = 1, k = 1;
    long cell = 1;  // 1-based linear cell index
    long dof = 0;
    std::vector<StencilTerm> terms;
    std::vector<AffectedCoeff> coeffs;  // aligned with terms
};

struct CoeffDerivatives {
    std::string param;
    std::vector<AffectedDof> e_dofs;
    std::vector<AffectedDof> h_dofs;

    [[nodiscard]] bool empty() const { return e_dofs.empty() && h_dofs.empty(); }
};

/// Stencil geometry for a coefficient array entry at 1-based (i,j,k).
[[nodiscard]] StencilTerm stencil_term(CoeffArray array, int i, int j, int k, const YeeGrid& grid);

/// Builds the full sparse derivative description of a parameter on a grid.
/// PEC-clamped dofs are dropped (their fields and derivative fields are
/// identically zero). Requires subset cells with full stencil neighborhoods.
[[nodiscard]] CoeffDerivatives coeff_derivatives(const YeeGrid& grid, double dt,
                                                 const DesignParameter& param,
                                                 const std::vector<std::uint8_t>* pec_ex = nullptr,
                                                 const std::vector<std::uint8_t>* pec_ey = nullptr,
                                                 const std::vector<std::uint8_t>* pec_ez = nullptr);

/// m-th derivative of the affected E-update coefficient at one cell
/// (0 when the cell is outside the parameter's subset).
[[nodiscard]] double coeff_derivative(const YeeGrid& grid, double dt, const DesignParameter& param,
                                      long cell, int m);

/// Cross derivative of any update coefficient for two distinct parameters
/// with disjoint subsets: exactly zero. Overlapping subsets and u == v are
/// contract violations.
[[nodiscard]] double mixed_coeff_derivative(const DesignParameter& u, const DesignParameter& v,
                                            long cell);

/// Applies a parameter's exact coefficient lift to a truncated-polynomial
/// coefficient set: every affected entry becomes scale / (base + weight*d).
void lift_parameter(UpdateCoefficients<Poly<double>>& coeffs, const CoeffDerivatives& cd, int order);

}  // namespace emsens
