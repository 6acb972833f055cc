#include "gclab/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gclab/chain.hpp"
#include "gclab/stats.hpp"

namespace gclab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(ScgfProvenance p) {
    switch (p) {
        case ScgfProvenance::Oracle:
            return "oracle";
        case ScgfProvenance::McNaive:
            return "mc_naive";
        case ScgfProvenance::McCloning:
            return "mc_cloning";
    }
    return "?";
}

double ScgfCurve::tolerance() const {
    if (provenance == ScgfProvenance::Oracle) return 1e-8;
    double worst = 0.0;
    for (double s : stderrs)
        if (std::isfinite(s)) worst = std::max(worst, s);
    return std::max(1e-8, 4.0 * worst);
}

void ScgfCurve::validate() const {
    if (alphas.size() != values.size() || alphas.size() < 2)
        throw std::runtime_error("ScgfCurve: need at least two sampled tilts");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]))
            throw std::runtime_error("ScgfCurve: tilt grid must be strictly increasing");
    const double tol = tolerance();
    for (std::size_t i = 0; i < alphas.size(); ++i)
        if (std::abs(alphas[i]) < 1e-12 && std::abs(values[i]) > tol)
            throw std::runtime_error("ScgfCurve: e(0) deviates from zero beyond tolerance");
    for (std::size_t i = 1; i + 1 < alphas.size(); ++i) {
        const double h0 = alphas[i] - alphas[i - 1];
        const double h1 = alphas[i + 1] - alphas[i];
        const double second = (values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0;
        if (second < -tol * (1.0 / h0 + 1.0 / h1)) {
            std::ostringstream msg;
            msg << "ScgfCurve: convexity violated at alpha triple (" << alphas[i - 1] << ", "
                << alphas[i] << ", " << alphas[i + 1] << ")";
            throw std::runtime_error(msg.str());
        }
    }
}

bool RateFunction::finite_at(std::size_t i) const { return std::isfinite(values[i]); }

RateFunction legendre_transform(const ScgfCurve& curve, const std::vector<double>& rs,
                                double convexity_slack) {
    curve.validate();
    const std::size_t n = curve.alphas.size();
    const double slack = convexity_slack >= 0.0 ? convexity_slack : curve.tolerance();

    // Lower convex hull of the sampled points (Andrew scan, keeping collinear
    // endpoints); points above the hull are the convexification correction.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (curve.alphas[b] - curve.alphas[a]) *
                                     (curve.values[i] - curve.values[a]) -
                                 (curve.values[b] - curve.values[a]) *
                                     (curve.alphas[i] - curve.alphas[a]);
            if (cross < 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    RateFunction out;
    out.rs = rs;
    out.values.assign(rs.size(), kInf);

    double correction = 0.0;
    {
        std::size_t seg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            while (seg + 1 < hull.size() && curve.alphas[hull[seg + 1]] < curve.alphas[i]) ++seg;
            const std::size_t a = hull[seg];
            const std::size_t b = hull[std::min(seg + 1, hull.size() - 1)];
            double hv = curve.values[a];
            if (b != a) {
                const double t =
                    (curve.alphas[i] - curve.alphas[a]) / (curve.alphas[b] - curve.alphas[a]);
                hv = curve.values[a] + t * (curve.values[b] - curve.values[a]);
            }
            correction = std::max(correction, curve.values[i] - hv);
        }
    }
    out.hull_correction = correction;
    if (correction > slack) {
        // Find the worst discrete second difference to name the triple.
        std::size_t worst = 1;
        double worst_val = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double second =
                (curve.values[i + 1] - curve.values[i]) /
                    (curve.alphas[i + 1] - curve.alphas[i]) -
                (curve.values[i] - curve.values[i - 1]) / (curve.alphas[i] - curve.alphas[i - 1]);
            if (second < worst_val) {
                worst_val = second;
                worst = i;
            }
        }
        std::ostringstream msg;
        msg << "legendre_transform: input not convex within tolerance; worst triple (alpha = "
            << curve.alphas[worst - 1] << ", " << curve.alphas[worst] << ", "
            << curve.alphas[worst + 1] << "), hull correction " << correction;
        throw std::runtime_error(msg.str());
    }

    // Chord slopes of the hull bound the attainable r range: r = -e'(alpha).
    const std::size_t m = hull.size();
    if (m < 2) throw std::runtime_error("legendre_transform: hull degenerated to a point");
    std::vector<double> slopes(m - 1);
    for (std::size_t t = 0; t + 1 < m; ++t)
        slopes[t] = (curve.values[hull[t + 1]] - curve.values[hull[t]]) /
                    (curve.alphas[hull[t + 1]] - curve.alphas[hull[t]]);
    out.domain_lo = -slopes.back();
    out.domain_hi = -slopes.front();
    const double edge_tol = 1e-12 * (1.0 + std::abs(out.domain_lo) + std::abs(out.domain_hi));

    // Two-pointer sweep: as r grows, the optimal hull vertex moves left.
    std::size_t t = m - 1;
    std::vector<std::size_t> order(rs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rs[a] < rs[b]; });
    for (std::size_t oi : order) {
        const double r = rs[oi];
        if (r < out.domain_lo - edge_tol || r > out.domain_hi + edge_tol) continue;
        while (t > 0 && slopes[t - 1] >= -r) --t;
        const std::size_t v = hull[t];
        out.values[oi] = -curve.alphas[v] * r - curve.values[v];
        // Guard tiny negative round-off: the conjugate of a curve through
        // e(0) = 0 is nonnegative.
        if (out.values[oi] < 0.0 && out.values[oi] > -1e-12) out.values[oi] = 0.0;
    }
    return out;
}

double gc_residual(const RateFunction& I) {
    const std::size_t n = I.rs.size();
    // Locate the mirror index of each grid point; the grid must be symmetric.
    double worst = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = I.rs[i];
        if (r < 0.0) continue;
        // binary search for -r
        const auto it = std::lower_bound(I.rs.begin(), I.rs.end(), -r - 1e-12);
        if (it == I.rs.end() || std::abs(*it + r) > 1e-9)
            throw std::runtime_error("gc_residual: grid not symmetric about zero");
        const std::size_t j = static_cast<std::size_t>(it - I.rs.begin());
        if (!I.finite_at(i) || !I.finite_at(j)) continue;
        worst = std::max(worst, std::abs(I.values[j] - I.values[i] - r));
    }
    if (worst < 0.0)
        throw std::runtime_error("gc_residual: no grid pair with finite rate on both sides");
    return worst;
}

ScgfCurve mc_scgf_naive(const TransitionModel& tm, const SpectralField& u0,
                        const std::vector<double>& alphas, long k, int ensemble,
                        std::uint64_t seed, int threads) {
    if (k < 1 || ensemble < 1)
        throw std::invalid_argument("mc_scgf_naive: k and ensemble must be positive");
    // Accumulated flux sum_n sigma(u_n, u_{n+1}) per ensemble member.
    std::vector<double> flux_total(ensemble);
    int T = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (T < 1) T = 1;
    T = std::min<int>(T, ensemble);
    auto work = [&](int t, const FlowOperator& flow) {
        for (int e = t; e < ensemble; e += T) {
            const RngStream rng(seed, substream(0x23, static_cast<std::uint64_t>(e)));
            SpectralField u = u0;
            SpectralField flow_u = flow.apply(u);
            double acc = 0.0, comp = 0.0;
            for (long n = 0; n < k; ++n) {
                SpectralField v = flow_u + sample(tm.noise, rng, static_cast<std::uint64_t>(n));
                SpectralField flow_v = flow.apply(v);
                const double term = sigma_series(tm.noise, u, v, flow_u, flow_v) - comp;
                const double s = acc + term;
                comp = (s - acc) - term;
                acc = s;
                u = std::move(v);
                flow_u = std::move(flow_v);
            }
            flux_total[e] = acc;
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

    ScgfCurve curve;
    curve.provenance = ScgfProvenance::McNaive;
    curve.alphas = alphas;
    curve.values.resize(alphas.size());
    curve.stderrs.resize(alphas.size());
    curve.ess.resize(alphas.size());
    curve.flagged.resize(alphas.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        const double a = alphas[ai];
        // Shifted weights keep exp in range; the shift cancels in the ESS and
        // adds a constant to the log-mean.
        double max_lw = -kInf;
        std::vector<double> lw(ensemble);
        for (int e = 0; e < ensemble; ++e) {
            lw[e] = -a * flux_total[e];
            max_lw = std::max(max_lw, lw[e]);
        }
        std::vector<double> w(ensemble);
        double sum_w = 0.0, sum_w2 = 0.0;
        for (int e = 0; e < ensemble; ++e) {
            w[e] = std::exp(lw[e] - max_lw);
            sum_w += w[e];
            sum_w2 += w[e] * w[e];
        }
        curve.values[ai] = (std::log(sum_w / ensemble) + max_lw) / static_cast<double>(k);
        curve.ess[ai] = sum_w2 > 0.0 ? (sum_w * sum_w / sum_w2) / ensemble : 0.0;
        curve.stderrs[ai] = jackknife_stderr_log_mean(w, static_cast<double>(k));
        curve.flagged[ai] = curve.ess[ai] < 0.10 || !std::isfinite(curve.stderrs[ai]);
    }
    return curve;
}

CloningResult mc_scgf_cloning(const TransitionModel& tm, const SpectralField& u0, double alpha,
                              long k, int population, std::uint64_t seed, int repetitions,
                              int threads) {
    if (population < 100)
        throw std::invalid_argument("mc_scgf_cloning: population must be at least 100");
    if (repetitions < 2)
        throw std::invalid_argument("mc_scgf_cloning: need at least 2 repetitions");
    CloningResult out;
    out.repetitions = repetitions;
    out.per_repetition.assign(repetitions, 0.0);

    int T = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (T < 1) T = 1;
    T = std::min(T, repetitions);
    auto run_rep = [&](int rep, const FlowOperator& flow) {
        const RngStream noise_rng(seed, substream(0x21, static_cast<std::uint64_t>(rep)));
        const RngStream resample_rng(seed, substream(0x22, static_cast<std::uint64_t>(rep)));
        std::vector<SpectralField> u(population, u0), su(population);
        for (int i = 0; i < population; ++i) su[i] = flow.apply(u[i]);
        std::vector<SpectralField> v(population), sv(population);
        std::vector<double> w(population), cum(population);
        double log_growth = 0.0;
        for (long n = 0; n < k; ++n) {
            double max_lw = -kInf;
            std::vector<double> lw(population);
            for (int i = 0; i < population; ++i) {
                const std::uint64_t virtual_step =
                    static_cast<std::uint64_t>(n) * population + static_cast<std::uint64_t>(i);
                v[i] = su[i] + sample(tm.noise, noise_rng, virtual_step);
                sv[i] = flow.apply(v[i]);
                lw[i] = -alpha * sigma_series(tm.noise, u[i], v[i], su[i], sv[i]);
                max_lw = std::max(max_lw, lw[i]);
            }
            double sum_w = 0.0;
            for (int i = 0; i < population; ++i) {
                w[i] = std::exp(lw[i] - max_lw);
                sum_w += w[i];
                cum[i] = sum_w;
            }
            if (!(sum_w > 0.0))
                throw ConvergenceError("mc_scgf_cloning: population collapse (all weights zero)",
                                       0.0);
            log_growth += std::log(sum_w / population) + max_lw;
            // Systematic resampling proportional to the weights.
            const double u01 = resample_rng.uniform(static_cast<std::uint64_t>(n));
            std::vector<SpectralField> nu(population), nsu(population);
            int src = 0;
            for (int m = 0; m < population; ++m) {
                const double target = (m + u01) / population * sum_w;
                while (src + 1 < population && cum[src] < target) ++src;
                nu[m] = v[src];
                nsu[m] = sv[src];
            }
            u = std::move(nu);
            su = std::move(nsu);
        }
        out.per_repetition[rep] = log_growth / static_cast<double>(k);
    };
    if (T <= 1) {
        for (int rep = 0; rep < repetitions; ++rep) run_rep(rep, *tm.flow);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t)
            pool.emplace_back([&, t] {
                const auto flow = tm.flow->clone();
                for (int rep = t; rep < repetitions; rep += T) run_rep(rep, *flow);
            });
        for (auto& th : pool) th.join();
    }
    out.scgf = mean_of(out.per_repetition);
    out.stderr_ = std::sqrt(variance_of(out.per_repetition) / repetitions);
    return out;
}

}  // namespace gclab
