#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "emsens/fdtd.hpp"
#include "emsens/grid.hpp"
#include "emsens/param_map.hpp"

namespace emsens {

struct MaterialRegion {
    std::string name;
    int i0 = 1, i1 = 1, j0 = 1, j1 = 1, k0 = 1, k1 = 1;
    double eps_r = 1.0;
    double mu_r = 1.0;
};

struct PecSheet {
    std::string name;
    Axis plane = Axis::Z;
    int index = 1;         // 1-based node plane along the normal
    int a0 = 1, a1 = 1;    // in-plane ranges (x-normal: j,k; y-normal: i,k; z-normal: i,j)
    int b0 = 1, b1 = 1;
};

struct ParamSpec {
    std::string name;
    int i0 = 1, i1 = 1, j0 = 1, j1 = 1, k0 = 1, k1 = 1;
    Axis axis = Axis::Z;
    double nominal = 0.0;
};

struct AnalysisSpec {
    std::string observable = "S11";  // S11 | S21 | field
    std::string port;                // probe name of the observation port
    std::string reference;           // scenario name/path providing the incident record
    double f_lo = 0.0, f_hi = 0.0;
    int freq_count = 401;
};

/// Parsed scenario file: grid layout, simulation setup, declared design
/// parameters, and the analysis request. parse_scenario() reports every
/// validation problem it finds, not just the first.
struct Scenario {
    std::string name;
    int nx = 1, ny = 1, nz = 1;
    double dx = 0.0, dy = 0.0, dz = 0.0;
    std::vector<MaterialRegion> materials;
    std::vector<PecSheet> sheets;

    double dt = 0.0;  // 0 means derive from cfl_fraction
    int nsteps = 0;
    double cfl_fraction = 0.99;
    bool dt_override = false;
    Boundaries boundary;
    SourceSpec source;
    std::vector<ProbeSpec> probes;
    std::vector<ParamSpec> params;
    AnalysisSpec analysis;

    [[nodiscard]] double effective_dt(const YeeGrid& grid) const;
};

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> errs);
    [[nodiscard]] const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

[[nodiscard]] Scenario parse_scenario(const std::string& text);
[[nodiscard]] std::string serialize_scenario(const Scenario& sc);

/// Built-in scenarios: "multilayer", "multilayer-ref", "microstrip",
/// "microstrip-ref", "microstrip-desk", "microstrip-desk-ref".
[[nodiscard]] const std::vector<std::string>& builtin_scenario_names();
[[nodiscard]] std::string builtin_scenario_text(const std::string& name);
/// Loads a built-in by name or parses a file path.
[[nodiscard]] Scenario load_scenario(const std::string& name_or_path);

/// Scenario lowered onto concrete simulation inputs.
struct BuiltScenario {
    std::string name;
    YeeGrid grid;
    SimulationConfig config;
    std::vector<DesignParameter> params;
    AnalysisSpec analysis;

    [[nodiscard]] const DesignParameter& param(const std::string& pname) const;
    [[nodiscard]] std::vector<double> frequency_grid() const;
};

[[nodiscard]] BuiltScenario build_scenario(const Scenario& sc);

}  // namespace emsens
