#ifndef GCLAB_STATS_HPP
#define GCLAB_STATS_HPP

#include <span>
#include <string>
#include <vector>

namespace gclab {

struct EpEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    long used = 0;      ///< samples after burn-in
    int block = 0;
};

/// Mean with an overlapping-batch-means variance estimate; increments along a
/// chain are serially correlated, so iid errors would be optimistic.
EpEstimate batch_means(std::span<const double> x, int block);

double mean_of(std::span<const double> x);
double variance_of(std::span<const double> x);

/// Integrated autocorrelation time by the initial-positive-sequence cut.
double autocorrelation_time(std::span<const double> x, int max_lag = 1000);

/// Delete-one jackknife standard error of f(sample mean of weights) where the
/// caller supplies per-sample values already transformed; here specialised to
/// (1/k) log mean(w): pass the weights and k.
double jackknife_stderr_log_mean(std::span<const double> weights, double k);

/// Fixed-width histogram over [lo, hi]; out-of-range mass lands in the edge bins.
struct Histogram {
    std::string name;
    double lo = 0.0, hi = 1.0;
    std::vector<double> counts;   ///< normalised to sum 1 when finalised
    long total = 0;
    double mean = 0.0;
    double variance = 0.0;

    Histogram() = default;
    Histogram(std::string n, double lo_, double hi_, int bins)
        : name(std::move(n)), lo(lo_), hi(hi_), counts(bins, 0.0) {}
    void add(double x);
    void finalize();  ///< convert counts to frequencies, fill moments
};

/// Total-variation distance between two normalised histograms on the same bins.
double histogram_tv(const Histogram& a, const Histogram& b);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace gclab

#endif
