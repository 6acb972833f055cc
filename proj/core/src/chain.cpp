#include "gclab/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace gclab {

const SpectralField& Trajectory::state_at(long n) const {
    if (n % stride != 0 || n / stride >= static_cast<long>(states.size()))
        throw std::out_of_range("Trajectory: state not stored at this step");
    return states[static_cast<std::size_t>(n / stride)];
}

Trajectory simulate(const TransitionModel& tm, const SpectralField& u0, long k,
                    std::uint64_t seed, std::uint64_t stream, int stride,
                    std::uint64_t config_hash) {
    if (k < 1) throw std::invalid_argument("simulate: k must be >= 1");
    if (stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");
    Trajectory traj;
    traj.modes = tm.modes();
    traj.steps = k;
    traj.stride = stride;
    traj.seed = seed;
    traj.stream = stream;
    traj.config_hash = config_hash;
    traj.states.reserve(static_cast<std::size_t>(k / stride) + 1);
    traj.flux_increments.reserve(static_cast<std::size_t>(k));
    traj.norm_l2.reserve(static_cast<std::size_t>(k) + 1);
    traj.norm_h1.reserve(static_cast<std::size_t>(k) + 1);

    const RngStream rng(seed, substream(0x10, stream));
    SpectralField u = u0;
    // S at the current state; reused by the step update and by the sigma of
    // the transition leaving this state.
    SpectralField flow_u = tm.flow->apply(u);
    traj.states.push_back(u);
    traj.norm_l2.push_back(l2_norm(u));
    traj.norm_h1.push_back(sobolev_norm(u, 1.0));

    for (long n = 0; n < k; ++n) {
        SpectralField v = flow_u + sample(tm.noise, rng, static_cast<std::uint64_t>(n));
        SpectralField flow_v = tm.flow->apply(v);
        traj.flux_increments.push_back(sigma_series(tm.noise, u, v, flow_u, flow_v));
        traj.norm_l2.push_back(l2_norm(v));
        traj.norm_h1.push_back(sobolev_norm(v, 1.0));
        if ((n + 1) % stride == 0) traj.states.push_back(v);
        u = std::move(v);
        flow_u = std::move(flow_v);
    }
    return traj;
}

std::vector<double> ergodic_flux(const Trajectory& traj) {
    if (traj.flux_increments.empty())
        throw std::invalid_argument("ergodic_flux: empty trajectory");
    std::vector<double> xi(traj.flux_increments.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < xi.size(); ++n) {
        acc += traj.flux_increments[n];
        xi[n] = acc / static_cast<double>(n + 1);
    }
    return xi;
}

EpEstimate estimate_ep(const Trajectory& traj, long burn_in, int block) {
    const long k = traj.steps;
    if (k - burn_in < 10L * block)
        throw InsufficientDataError("estimate_ep: k - burn_in must cover 10 blocks");
    const std::span<const double> tail(traj.flux_increments.data() + burn_in,
                                       static_cast<std::size_t>(k - burn_in));
    return batch_means(tail, block);
}

std::map<std::string, Histogram> occupation_stats(const Trajectory& traj,
                                                  const std::vector<std::string>& observables,
                                                  int bins) {
    std::map<std::string, Histogram> out;
    for (const std::string& name : observables) {
        const std::vector<double>* src = nullptr;
        std::vector<double> scratch;
        if (name == "norm_l2") {
            src = &traj.norm_l2;
        } else if (name == "norm_h1") {
            src = &traj.norm_h1;
        } else if (name == "sigma") {
            src = &traj.flux_increments;
        } else if (name == "mode_cos1") {
            scratch.reserve(traj.states.size());
            for (const auto& s : traj.states) scratch.push_back(s.cos_coeff(1));
            src = &scratch;
        } else {
            throw std::invalid_argument("occupation_stats: unknown observable " + name);
        }
        double lo = src->empty() ? 0.0 : (*src)[0], hi = lo;
        for (double v : *src) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi <= lo) hi = lo + 1.0;
        Histogram h(name, lo, hi, bins);
        for (double v : *src) h.add(v);
        h.finalize();
        out.emplace(name, std::move(h));
    }
    return out;
}

DriftReport lyapunov_drift_probe(const TransitionModel& tm, int samples,
                                 const std::vector<double>& radii, std::uint64_t seed,
                                 int threads) {
    DriftReport rep;
    rep.radii = radii;
    rep.samples = samples;
    rep.seed = seed;
    rep.mean_next_norm.assign(radii.size(), 0.0);

    const int total = samples * static_cast<int>(radii.size());
    std::vector<double> next_norm(total);
    int T = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (T < 1) T = 1;
    T = std::min(T, total);
    auto work = [&](int t, const FlowOperator& flow) {
        for (int idx = t; idx < total; idx += T) {
            const int ri = idx / samples;
            const RngStream rng(seed, substream(0x11, static_cast<std::uint64_t>(idx)));
            const SpectralField u = random_direction(tm.modes(), radii[ri], rng);
            const SpectralField v = flow.apply(u) + sample(tm.noise, rng, 1u << 20);
            next_norm[idx] = l2_norm(v);
        }
    };
    if (T <= 1) {
        work(0, *tm.flow);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t)
            pool.emplace_back([&, t] {
                const auto flow = tm.flow->clone();
                work(t, *flow);
            });
        for (auto& th : pool) th.join();
    }
    for (int idx = 0; idx < total; ++idx)
        rep.mean_next_norm[idx / samples] += next_norm[idx] / samples;

    // Affine fit E||u_1|| = q r + M over the probed radii.
    const int nr = static_cast<int>(radii.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < nr; ++i) {
        sx += radii[i];
        sy += rep.mean_next_norm[i];
        sxx += radii[i] * radii[i];
        sxy += radii[i] * rep.mean_next_norm[i];
    }
    const double det = nr * sxx - sx * sx;
    rep.q_hat = det != 0.0 ? (nr * sxy - sx * sy) / det : 0.0;
    rep.m_hat = nr > 0 ? (sy - rep.q_hat * sx) / nr : 0.0;
    rep.contracting = rep.q_hat < 1.0;
    return rep;
}

}  // namespace gclab
