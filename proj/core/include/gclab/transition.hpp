#ifndef GCLAB_TRANSITION_HPP
#define GCLAB_TRANSITION_HPP

#include <cstdint>
#include <memory>

#include "gclab/burgers.hpp"
#include "gclab/noise.hpp"
#include "gclab/scalar_map.hpp"
#include "gclab/spectral.hpp"

namespace gclab {

/// Deterministic step of the chain. Implementations may keep scratch state
/// (the Burgers integrator does), so a worker thread clones its own copy.
class FlowOperator {
public:
    virtual ~FlowOperator() = default;
    virtual SpectralField apply(const SpectralField& u) const = 0;
    virtual std::unique_ptr<FlowOperator> clone() const = 0;
    virtual int modes() const = 0;
};

std::unique_ptr<FlowOperator> make_burgers_flow(const FlowConfig& cfg);
/// S(u) = c for every u.
std::unique_ptr<FlowOperator> make_constant_flow(SpectralField c);
/// Scalar map acting on the first cos coordinate; every other coordinate maps
/// to zero, so the embedded chain's first coordinate is exactly the scalar model.
std::unique_ptr<FlowOperator> make_scalar_embedding_flow(const ScalarMap& map, int modes);

/// Flow map paired with a noise law; carries everything needed for the
/// transition density rho(u, v) and the flux observable sigma(u, v).
struct TransitionModel {
    std::shared_ptr<const FlowOperator> flow;
    NoiseModel noise;

    TransitionModel(std::shared_ptr<const FlowOperator> f, NoiseModel n)
        : flow(std::move(f)), noise(std::move(n)) {
        if (flow->modes() != noise.modes())
            throw DimensionError("TransitionModel: flow/noise truncation mismatch");
    }
    int modes() const { return noise.modes(); }
};

/// log rho(u, v) with the flow value already computed: the density of the
/// shifted noise law against the unshifted one, evaluated at v.
inline double log_rho_from(const NoiseModel& noise, const SpectralField& flow_u,
                           const SpectralField& v) {
    return log_shift_density(noise, flow_u, v);
}

double log_rho(const TransitionModel& tm, const SpectralField& u, const SpectralField& v);

/// sigma(u,v) = log rho(u,v) - log rho(v,u) as a single coordinate-wise series,
/// summed in ascending mode order with compensated summation (the two halves
/// nearly cancel mode by mode for high modes). Negating the argument order
/// negates every term, so sigma(v,u) == -sigma(u,v) exactly.
double sigma_series(const NoiseModel& noise, const SpectralField& u, const SpectralField& v,
                    const SpectralField& flow_u, const SpectralField& flow_v);

/// Gaussian closed form 0.5||S(v)||_b^2 - 0.5||S(u)||_b^2 + (S(u),v)_b - (S(v),u)_b.
double sigma_gaussian(const NoiseModel& noise, const SpectralField& u, const SpectralField& v,
                      const SpectralField& flow_u, const SpectralField& flow_v);

/// Canonical sigma: the series form (valid for every density family).
double sigma(const TransitionModel& tm, const SpectralField& u, const SpectralField& v);

/// Affine envelope fit of max |sigma| over shells of ||u|| + ||v||.
struct SigmaGrowthReport {
    std::vector<double> shell_radius;   ///< total norm per shell
    std::vector<double> shell_max;      ///< max |sigma| observed in the shell
    double slope = 0.0;                 ///< affine envelope slope
    double intercept = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

SigmaGrowthReport sigma_growth_bound_probe(const TransitionModel& tm, int samples, double radius,
                                           std::uint64_t seed, int threads = 0);

}  // namespace gclab

#endif
