#ifndef GCLAB_CONFIG_HPP
#define GCLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gclab/oracle.hpp"
#include "gclab/rate.hpp"
#include "gclab/transition.hpp"

namespace gclab {

/// One cos/sin pair of the deterministic force.
struct ForceMode {
    int j = 1;
    double cos = 0.0;
    double sin = 0.0;
};

struct BurgersModelConfig {
    double nu = 0.5;
    int modes = 64;
    int substeps = 1000;
    bool dealias = true;
    int grid_size = 0;  // 0 -> 4N
    std::vector<ForceMode> h_modes;
};

struct ScalarGridConfig {
    double L = 10.0;
    int n = 512;
    QuadRule rule = QuadRule::GaussLegendre;
};

struct ScalarModelConfig {
    std::string map_kind = "tanh";  // tanh | linear | constant | table
    double kappa = 2.0;
    double slope = 0.5;
    double c = 0.0;
    std::vector<double> table_u, table_s;
    ScalarGridConfig grid;
};

struct NoiseConfig {
    std::string family = "gaussian";  // gaussian | genexp
    double b0 = 1.0;
    double r = 1.0;
    double a = 0.5;
    double beta = 2.0;
    std::vector<double> q_coeffs;
};

struct RunSection {
    long k = 10000;
    int ensemble = 1;
    long burn_in = 1000;
    int block = 100;
    std::uint64_t seed = 1;
    int thin = 100;
};

struct ScgfSection {
    std::vector<double> alphas;  // explicit grid wins over window+step
    double alpha_min = -1.0;
    double alpha_max = 2.0;
    double alpha_step = 0.05;
    std::string method = "oracle";  // oracle | mc_naive | mc_cloning
    long mc_k = 200;
    int mc_ensemble = 2000;
    int population = 1000;
    int repetitions = 8;

    std::vector<double> grid() const;
};

struct RateSection {
    double r_min = -2.0;
    double r_max = 2.0;
    double r_step = 0.01;

    std::vector<double> grid() const;
};

struct OutputSection {
    std::string dir = "out";
    std::string tag;  // empty -> config hash prefix
    bool csv = true;
    bool json = true;
    bool plot = false;
};

/// Parsed and validated run configuration. Unknown keys anywhere in the file
/// are rejected with the offending path.
struct RunConfig {
    std::string model_type;  // "burgers" | "scalar"
    std::optional<BurgersModelConfig> burgers;
    std::optional<ScalarModelConfig> scalar;
    NoiseConfig noise;
    RunSection run;
    std::optional<ScgfSection> scgf;
    std::optional<RateSection> rate;
    OutputSection output;
    int threads = 0;

    /// Resolved form with every default filled, suitable for echoing.
    nlohmann::json resolved() const;
    std::uint64_t hash() const;
    std::string tag_or_hash() const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Model builders. The scalar model builds both the grid kernel (oracle side)
/// and the one-mode embedded transition model (chain side).
ComponentDensity make_component_density(const NoiseConfig& n);
NoiseModel make_noise_model(const NoiseConfig& n, int modes);
ScalarMap make_scalar_map(const ScalarModelConfig& m);
TransitionModel make_transition_model(const RunConfig& cfg);
GridKernel make_grid_kernel(const RunConfig& cfg);
FlowConfig make_flow_config(const BurgersModelConfig& m);

}  // namespace gclab

#endif
