#ifndef GCLAB_CHAIN_HPP
#define GCLAB_CHAIN_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gclab/stats.hpp"
#include "gclab/transition.hpp"

namespace gclab {

/// One realisation of the kicked chain u_k = S(u_{k-1}) + eta_k. States may be
/// thinned for storage (every `stride`-th state kept); the scalar per-step
/// records (flux increments, norms) are always complete.
struct Trajectory {
    int modes = 0;
    long steps = 0;                     ///< k
    int stride = 1;                     ///< state storage stride
    std::vector<SpectralField> states;  ///< u_0, u_stride, u_2*stride, ...
    std::vector<double> flux_increments;  ///< sigma(u_n, u_{n+1}), n = 0..k-1
    std::vector<double> norm_l2;          ///< ||u_n||, n = 0..k
    std::vector<double> norm_h1;          ///< ||u_n||_1
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t config_hash = 0;

    const SpectralField& state_at(long n) const;  ///< requires n % stride == 0
};

/// Simulates k steps from u0. The flow value S(u_n) is computed once per step
/// and shared between the chain update and both sigma evaluations touching
/// step n. Reproducible: (seed, stream) fixes the noise bit-for-bit.
Trajectory simulate(const TransitionModel& tm, const SpectralField& u0, long k,
                    std::uint64_t seed, std::uint64_t stream = 0, int stride = 1,
                    std::uint64_t config_hash = 0);

/// Running averages xi_m = (1/m) sum_{n<m} sigma(u_n, u_{n+1}), m = 1..k.
std::vector<double> ergodic_flux(const Trajectory& traj);

/// Stationary entropy production estimate from the flux increments, with an
/// overlapping-batch-means confidence interval.
EpEstimate estimate_ep(const Trajectory& traj, long burn_in, int block);

/// Empirical distributions of scalar functionals of the trajectory.
/// Observables: "norm_l2", "norm_h1", "sigma", "mode_cos1" (first cosine
/// coefficient along stored states).
std::map<std::string, Histogram> occupation_stats(const Trajectory& traj,
                                                  const std::vector<std::string>& observables,
                                                  int bins);

/// Monte Carlo fit of E[||u_1||  | u on the sphere of radius r] = q r + M.
struct DriftReport {
    std::vector<double> radii;
    std::vector<double> mean_next_norm;
    double q_hat = 0.0;
    double m_hat = 0.0;
    bool contracting = false;  ///< q_hat < 1 with the fitted margin
    int samples = 0;
    std::uint64_t seed = 0;
};

DriftReport lyapunov_drift_probe(const TransitionModel& tm, int samples,
                                 const std::vector<double>& radii, std::uint64_t seed,
                                 int threads = 0);

}  // namespace gclab

#endif
