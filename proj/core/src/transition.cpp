#include "gclab/transition.hpp"

#include <cmath>
#include <thread>

namespace gclab {

namespace {

class BurgersFlowOp final : public FlowOperator {
public:
    explicit BurgersFlowOp(FlowConfig cfg) : cfg_(std::move(cfg)), flow_(cfg_) {}
    SpectralField apply(const SpectralField& u) const override { return flow_(u); }
    std::unique_ptr<FlowOperator> clone() const override {
        return std::make_unique<BurgersFlowOp>(cfg_);
    }
    int modes() const override { return cfg_.modes(); }

private:
    FlowConfig cfg_;
    BurgersFlow flow_;
};

class ConstantFlowOp final : public FlowOperator {
public:
    explicit ConstantFlowOp(SpectralField c) : c_(std::move(c)) {}
    SpectralField apply(const SpectralField& u) const override {
        u.check_same(c_);
        return c_;
    }
    std::unique_ptr<FlowOperator> clone() const override {
        return std::make_unique<ConstantFlowOp>(c_);
    }
    int modes() const override { return c_.modes(); }

private:
    SpectralField c_;
};

class ScalarEmbeddingFlowOp final : public FlowOperator {
public:
    ScalarEmbeddingFlowOp(ScalarMap map, int modes) : map_(std::move(map)), modes_(modes) {}
    SpectralField apply(const SpectralField& u) const override {
        SpectralField out(modes_);
        out[0] = map_(u[0]);
        return out;
    }
    std::unique_ptr<FlowOperator> clone() const override {
        return std::make_unique<ScalarEmbeddingFlowOp>(map_, modes_);
    }
    int modes() const override { return modes_; }

private:
    ScalarMap map_;
    int modes_;
};

}  // namespace

std::unique_ptr<FlowOperator> make_burgers_flow(const FlowConfig& cfg) {
    return std::make_unique<BurgersFlowOp>(cfg);
}

std::unique_ptr<FlowOperator> make_constant_flow(SpectralField c) {
    return std::make_unique<ConstantFlowOp>(std::move(c));
}

std::unique_ptr<FlowOperator> make_scalar_embedding_flow(const ScalarMap& map, int modes) {
    return std::make_unique<ScalarEmbeddingFlowOp>(map, modes);
}

double log_rho(const TransitionModel& tm, const SpectralField& u, const SpectralField& v) {
    return log_rho_from(tm.noise, tm.flow->apply(u), v);
}

double sigma_series(const NoiseModel& noise, const SpectralField& u, const SpectralField& v,
                    const SpectralField& flow_u, const SpectralField& flow_v) {
    u.check_same(v);
    const ComponentDensity& rho = noise.component;
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double inv_b = 1.0 / noise.weights[i];
        const double fwd = rho.log_shape((v[i] - flow_u[i]) * inv_b) - rho.log_shape(v[i] * inv_b);
        const double bwd = rho.log_shape((u[i] - flow_v[i]) * inv_b) - rho.log_shape(u[i] * inv_b);
        const double term = (fwd - bwd) - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

double sigma_gaussian(const NoiseModel& noise, const SpectralField& u, const SpectralField& v,
                      const SpectralField& flow_u, const SpectralField& flow_v) {
    const WeightSequence& b = noise.weights;
    return 0.5 * weighted_inner(flow_v, flow_v, b, 2) - 0.5 * weighted_inner(flow_u, flow_u, b, 2) +
           weighted_inner(flow_u, v, b, 2) - weighted_inner(flow_v, u, b, 2);
}

double sigma(const TransitionModel& tm, const SpectralField& u, const SpectralField& v) {
    return sigma_series(tm.noise, u, v, tm.flow->apply(u), tm.flow->apply(v));
}

SigmaGrowthReport sigma_growth_bound_probe(const TransitionModel& tm, int samples, double radius,
                                           std::uint64_t seed, int threads) {
    SigmaGrowthReport rep;
    rep.samples = samples;
    rep.seed = seed;
    const int shells = 8;
    rep.shell_radius.resize(shells);
    rep.shell_max.assign(shells, 0.0);
    for (int s = 0; s < shells; ++s) rep.shell_radius[s] = radius * (s + 1) / shells;
    if (radius <= 0.0 || samples < 1) return rep;

    const int total = shells * samples;
    std::vector<double> abs_sigma(total);
    int T = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (T < 1) T = 1;
    T = std::min(T, total);
    auto work = [&](int t, const FlowOperator& flow) {
        for (int idx = t; idx < total; idx += T) {
            const int s = idx / samples;
            const RngStream rng(seed, substream(0x03, static_cast<std::uint64_t>(idx)));
            // Split the shell total norm between the two endpoints.
            const double split = rng.uniform(1u << 20);
            const double ru = rep.shell_radius[s] * split;
            const double rv = rep.shell_radius[s] - ru;
            const SpectralField u = random_direction(tm.modes(), ru, rng, 1);
            const SpectralField v = random_direction(tm.modes(), rv, rng, 1 + tm.modes());
            abs_sigma[idx] = std::abs(sigma_series(tm.noise, u, v, flow.apply(u), flow.apply(v)));
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
        rep.shell_max[idx / samples] = std::max(rep.shell_max[idx / samples], abs_sigma[idx]);

    // Least-squares affine envelope through the shell maxima.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int s = 0; s < shells; ++s) {
        sx += rep.shell_radius[s];
        sy += rep.shell_max[s];
        sxx += rep.shell_radius[s] * rep.shell_radius[s];
        sxy += rep.shell_radius[s] * rep.shell_max[s];
    }
    const double det = shells * sxx - sx * sx;
    rep.slope = det != 0.0 ? (shells * sxy - sx * sy) / det : 0.0;
    rep.intercept = (sy - rep.slope * sx) / shells;
    return rep;
}

}  // namespace gclab
