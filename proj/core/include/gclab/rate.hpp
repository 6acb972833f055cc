#ifndef GCLAB_RATE_HPP
#define GCLAB_RATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gclab/transition.hpp"

namespace gclab {

enum class ScgfProvenance { Oracle, McNaive, McCloning };

std::string to_string(ScgfProvenance p);

/// Sampled scaled cumulant generating function e(alpha). The stored curve is
/// the alpha |-> I*(-alpha) branch, so the fluctuation symmetry reads
/// e(alpha) = e(1 - alpha) and the transform below uses -alpha r - e(alpha).
struct ScgfCurve {
    std::vector<double> alphas;    ///< sorted
    std::vector<double> values;
    std::vector<double> stderrs;   ///< zero for oracle curves
    std::vector<double> ess;       ///< effective-sample fraction (MC naive)
    std::vector<bool> flagged;     ///< ESS below 10% or degenerate weights
    ScgfProvenance provenance = ScgfProvenance::Oracle;

    double tolerance() const;  ///< provenance-dependent slack for validation
    /// Checks e(0) = 0 (when 0 is on the grid) and discrete convexity within
    /// the provenance tolerance; throws std::runtime_error on violation.
    void validate() const;
};

/// Legendre-Fenchel transform of the SCGF sampled on a grid of r values.
/// +infinity outside the attainable slope range is an explicit sentinel.
struct RateFunction {
    std::vector<double> rs;
    std::vector<double> values;       ///< I(r); +inf sentinel off-domain
    double domain_lo = 0.0;           ///< attainable r interval
    double domain_hi = 0.0;
    double hull_correction = 0.0;     ///< max lowering applied to convexify

    bool finite_at(std::size_t i) const;
};

/// I(r) = max over sampled alpha of (-alpha r - e(alpha)), computed on the
/// lower convex hull in linear time. Nonconvexity beyond `convexity_slack`
/// (default: curve tolerance) raises an error naming the violating triple.
RateFunction legendre_transform(const ScgfCurve& curve, const std::vector<double>& rs,
                                double convexity_slack = -1.0);

/// Max over paired grid points of |I(-r) - I(r) - r|; requires a grid
/// symmetric about zero and a nonempty overlap of finite values.
double gc_residual(const RateFunction& I);

/// Direct estimator of e(alpha) = (1/k) log E exp(-alpha k xi_k) over an
/// independent ensemble, with delete-one jackknife errors and an effective-
/// sample-size flag per tilt.
ScgfCurve mc_scgf_naive(const TransitionModel& tm, const SpectralField& u0,
                        const std::vector<double>& alphas, long k, int ensemble,
                        std::uint64_t seed, int threads = 0);

struct CloningResult {
    double scgf = 0.0;
    double stderr_ = 0.0;
    int repetitions = 0;
    std::vector<double> per_repetition;
};

/// Population-dynamics estimator: propagate a fixed-size population, weight
/// each walker by exp(-alpha sigma-increment), resample, and accumulate the
/// log mean weight per step.
CloningResult mc_scgf_cloning(const TransitionModel& tm, const SpectralField& u0, double alpha,
                              long k, int population, std::uint64_t seed, int repetitions = 8,
                              int threads = 0);

}  // namespace gclab

#endif
