#ifndef GCLAB_BURGERS_HPP
#define GCLAB_BURGERS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "gclab/spectral.hpp"

namespace gclab {

/// Parameters of the deterministic Burgers flow u_t - nu u_xx + u u_x = h on
/// the circle, truncated to N modes. `substeps` is the number of time steps
/// per unit interval; the kicks live outside this map.
struct FlowConfig {
    double nu = 0.5;
    SpectralField h;            ///< deterministic force, same truncation
    int substeps = 1000;
    bool dealias = true;        ///< 2/3-rule truncation of the product inputs
    int grid_size = 0;          ///< physical grid M; 0 picks 4N

    int modes() const { return h.modes(); }
    void validate() const;
};

/// Time-1 solution operator of the truncated system. Stateless facade over a
/// per-thread workspace; deterministic and bit-stable for a fixed config.
SpectralField flow_map(const SpectralField& u0, const FlowConfig& cfg);

/// Reusable integrator: keeps the FFT workspace and the integrating factors,
/// so chains that apply S hundreds of thousands of times avoid replanning.
/// One instance per thread.
class BurgersFlow {
public:
    explicit BurgersFlow(FlowConfig cfg);
    ~BurgersFlow();
    BurgersFlow(const BurgersFlow&) = delete;
    BurgersFlow& operator=(const BurgersFlow&) = delete;

    SpectralField operator()(const SpectralField& u0) const;
    const FlowConfig& config() const { return cfg_; }

private:
    struct Impl;
    FlowConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

/// Empirical check of ||S(u)|| <= e^{-nu} ||u|| + C on samples with norms up
/// to `radius`. The reported constant is measured, not proved.
struct DissipativityReport {
    double q = 0.0;                      ///< contraction factor e^{-nu}
    double c_hat = 0.0;                  ///< max of ||S(u)|| - q ||u||
    bool all_bounded = true;             ///< every sample obeys the bound with c_hat
    std::vector<double> radii;           ///< sample-norm grid
    std::vector<double> c_profile;       ///< running max of the excess per radius
    int samples = 0;
    std::uint64_t seed = 0;
};

DissipativityReport dissipativity_probe(const FlowConfig& cfg, int samples, double radius,
                                        std::uint64_t seed, int threads = 0);

/// Uniform-smoothing check: max ||S(u)||_{m+1} over samples per radius should
/// plateau as the radius grows.
struct KruzhkovReport {
    int order = 0;                       ///< m; the probed norm is m+1
    std::vector<double> radii;
    std::vector<double> max_norm;        ///< max ||S(u)||_{m+1} per radius
    int samples = 0;
    std::uint64_t seed = 0;
};

KruzhkovReport kruzhkov_probe(const FlowConfig& cfg, int m, int samples,
                              const std::vector<double>& radii, std::uint64_t seed,
                              int threads = 0);

}  // namespace gclab

#endif
