#include "gclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gclab/errors.hpp"

namespace gclab {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double variance_of(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

EpEstimate batch_means(std::span<const double> x, int block) {
    const long n = static_cast<long>(x.size());
    if (block < 1) throw std::invalid_argument("batch_means: block must be positive");
    if (n < 10L * block)
        throw InsufficientDataError("batch_means: need at least 10 blocks of data");
    const double xbar = mean_of(x);
    // Overlapping batch means (Meketon-Schmeiser): estimates the asymptotic
    // variance sum of autocovariances, then Var(mean) = sigma2 / n.
    const long nb = n - block + 1;
    double acc = 0.0;
    double window = 0.0;
    for (long i = 0; i < block; ++i) window += x[i];
    acc += (window / block - xbar) * (window / block - xbar);
    for (long i = 1; i < nb; ++i) {
        window += x[i + block - 1] - x[i - 1];
        const double d = window / block - xbar;
        acc += d * d;
    }
    const double sigma2 = static_cast<double>(n) * block /
                          (static_cast<double>(n - block) * (n - block + 1)) * acc;
    EpEstimate e;
    e.mean = xbar;
    e.stderr_ = std::sqrt(sigma2 / n);
    e.ci95_lo = e.mean - 1.96 * e.stderr_;
    e.ci95_hi = e.mean + 1.96 * e.stderr_;
    e.used = n;
    e.block = block;
    return e;
}

double autocorrelation_time(std::span<const double> x, int max_lag) {
    const long n = static_cast<long>(x.size());
    if (n < 4) return 1.0;
    const double m = mean_of(x);
    const double c0 = variance_of(x) * (n - 1) / n;
    if (c0 <= 0.0) return 1.0;
    double tau = 1.0;
    const int lags = static_cast<int>(std::min<long>(max_lag, n / 2));
    for (int lag = 1; lag <= lags; ++lag) {
        double c = 0.0;
        for (long i = 0; i + lag < n; ++i) c += (x[i] - m) * (x[i + lag] - m);
        c /= static_cast<double>(n);
        if (c <= 0.0) break;  // initial positive sequence cut
        tau += 2.0 * c / c0;
    }
    return tau;
}

double jackknife_stderr_log_mean(std::span<const double> weights, double k) {
    const long n = static_cast<long>(weights.size());
    if (n < 2) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
    std::vector<double> loo(n);
    bool degenerate = false;
    for (long i = 0; i < n; ++i) {
        const double rest = total - weights[i];
        if (!(rest > 0.0)) degenerate = true;
        loo[i] = std::log(rest / (n - 1)) / k;
    }
    if (degenerate) return std::numeric_limits<double>::infinity();
    const double lm = mean_of(loo);
    double s = 0.0;
    for (double v : loo) s += (v - lm) * (v - lm);
    return std::sqrt(s * (n - 1) / n);
}

void Histogram::add(double x) {
    if (counts.empty()) return;
    const int bins = static_cast<int>(counts.size());
    int idx = static_cast<int>(std::floor((x - lo) / (hi - lo) * bins));
    idx = std::clamp(idx, 0, bins - 1);
    counts[idx] += 1.0;
    ++total;
    mean += x;
    variance += x * x;
}

void Histogram::finalize() {
    if (total == 0) return;
    for (double& c : counts) c /= static_cast<double>(total);
    mean /= static_cast<double>(total);
    variance = variance / static_cast<double>(total) - mean * mean;
    if (total > 1) variance *= static_cast<double>(total) / (total - 1);
}

double histogram_tv(const Histogram& a, const Histogram& b) {
    if (a.counts.size() != b.counts.size())
        throw std::invalid_argument("histogram_tv: bin counts differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.counts.size(); ++i) s += std::abs(a.counts[i] - b.counts[i]);
    return 0.5 * s;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

}  // namespace gclab
