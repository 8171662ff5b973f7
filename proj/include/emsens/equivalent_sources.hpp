#pragma once

#include <string>
#include <vector>

#include "emsens/fdtd.hpp"
#include "emsens/param_map.hpp"

namespace emsens {

/// Per-parameter time series of the equivalent sources at the affected dofs,
/// plus the raw stencil field differences each term was built from (the raw
/// series drive the high-order frequency-domain recursion).
/// J samples share the E-update instant (integer phase), K samples the
/// H-update instant's E input (integer phase as well).
struct EquivalentSourceRecord {
    std::string param;
    std::vector<std::vector<double>> j;  // [e_dof][step]
    std::vector<std::vector<double>> k;  // [h_dof][step]
    std::vector<std::vector<std::vector<double>>> j_raw;  // [e_dof][term][step]
    std::vector<std::vector<std::vector<double>>> k_raw;  // [h_dof][term][step]
};

/// Samples first-order equivalent sources for several parameters at once
/// during a single run; wire into Engine::run through hooks().
class EquivalentSourceSampler {
public:
    EquivalentSourceSampler(std::vector<const CoeffDerivatives*> params, int nsteps);

    /// K = dAh/dxi * (E differences); call with E^n before the H update.
    void sample_k(int n, const Fields<double>& f);
    /// J = dAe/dxi * (H differences); call with H^{n+1/2} after the H update.
    void sample_j(int n, const Fields<double>& f);

    [[nodiscard]] StepHooks hooks();

    [[nodiscard]] std::vector<EquivalentSourceRecord>& records() { return records_; }
    [[nodiscard]] const std::vector<EquivalentSourceRecord>& records() const { return records_; }

private:
    std::vector<const CoeffDerivatives*> params_;
    std::vector<EquivalentSourceRecord> records_;
};

}  // namespace emsens
