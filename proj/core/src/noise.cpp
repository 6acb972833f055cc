#include "gclab/noise.hpp"

#include <algorithm>
#include <cmath>

#include "gclab/quad.hpp"

namespace gclab {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 log(2 pi)
constexpr int kTableSize = 4096;

// Acklam's rational approximation of the standard normal quantile, polished
// by one Halley step against erfc; good to ~1e-15 across (0,1).
double norm_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

}  // namespace

ComponentDensity ComponentDensity::gaussian() {
    ComponentDensity d;
    d.family_ = DensityFamily::Gaussian;
    d.log_norm_ = kHalfLog2Pi;
    d.var_ = std::sqrt(2.0 / M_PI);  // 2 phi(0)
    d.abs_moment_ = std::sqrt(2.0 / M_PI);
    return d;
}

ComponentDensity ComponentDensity::gen_exp(double a, double beta, std::vector<double> q_coeffs) {
    if (!(a > 0.0)) throw std::invalid_argument("ComponentDensity: a must be positive");
    if (!(beta > 1.0 && beta <= 2.0))
        throw std::invalid_argument("ComponentDensity: beta must lie in (1, 2]");
    ComponentDensity d;
    d.family_ = DensityFamily::GenExp;
    d.a_ = a;
    d.beta_ = beta;
    d.q_ = std::move(q_coeffs);
    for (std::size_t m = 0; m < d.q_.size(); ++m) {
        d.q_bound_ += std::abs(d.q_[m]);
        d.q_deriv_bound_ += (m + 1) * std::abs(d.q_[m]);
    }
    d.finalize();
    return d;
}

double ComponentDensity::q_at(double r) const {
    double s = 0.0;
    for (std::size_t m = 0; m < q_.size(); ++m) s += q_[m] * std::cos((m + 1) * r);
    return s;
}

double ComponentDensity::dq_at(double r) const {
    double s = 0.0;
    for (std::size_t m = 0; m < q_.size(); ++m) s -= q_[m] * (m + 1) * std::sin((m + 1) * r);
    return s;
}

double ComponentDensity::log_shape(double r) const {
    if (family_ == DensityFamily::Gaussian) return -0.5 * r * r;
    return -a_ * std::pow(std::abs(r), beta_) + q_at(r);
}

double ComponentDensity::log_shape_derivative(double r) const {
    if (family_ == DensityFamily::Gaussian) return -r;
    const double mag = a_ * beta_ * std::pow(std::abs(r), beta_ - 1.0);
    return (r >= 0.0 ? -mag : mag) + dq_at(r);
}

double ComponentDensity::log_pdf(double r) const { return log_shape(r) - log_norm_; }

double ComponentDensity::pdf(double r) const { return std::exp(log_pdf(r)); }

void ComponentDensity::finalize() {
    // Table edge: a R^beta large enough that the tail mass lies below the
    // smallest uniform the 53-bit sampler can produce.
    const double exponent = 50.0 + 2.0 * q_bound_;
    table_edge_ = std::max(8.0, std::pow(exponent / a_, 1.0 / beta_));

    const double Z =
        2.0 * integrate_adaptive([this](double r) { return std::exp(log_shape(r)); }, 0.0,
                                 table_edge_, 1e-14);
    log_norm_ = std::log(Z);

    var_ = 2.0 *
           integrate_adaptive(
               [this](double r) {
                   return std::abs(log_shape_derivative(r)) * std::exp(log_shape(r));
               },
               0.0, table_edge_, 1e-13) /
           Z;
    abs_moment_ = 2.0 *
                  integrate_adaptive(
                      [this](double r) { return r * std::exp(log_shape(r)); }, 0.0,
                      table_edge_, 1e-13) /
                  Z;

    table_r_.resize(kTableSize + 1);
    table_cdf_.resize(kTableSize + 1);
    table_pdf_.resize(kTableSize + 1);
    const double h = 2.0 * table_edge_ / kTableSize;
    for (int i = 0; i <= kTableSize; ++i) {
        table_r_[i] = -table_edge_ + h * i;
        table_pdf_[i] = pdf(table_r_[i]);
    }
    const auto cell = gauss_legendre(5, 0.0, 1.0);
    const double tail0 = tail_mass(table_edge_);
    double acc = tail0;
    table_cdf_[0] = acc;
    for (int i = 0; i < kTableSize; ++i) {
        double cell_mass = 0.0;
        for (std::size_t g = 0; g < cell.nodes.size(); ++g)
            cell_mass += cell.weights[g] * pdf(table_r_[i] + h * cell.nodes[g]);
        acc += h * cell_mass;
        table_cdf_[i + 1] = acc;
    }
    // Pin the accumulated endpoint to 1 - tail0 so inversion stays symmetric.
    const double measured = table_cdf_[kTableSize] - tail0;
    const double fix = (1.0 - 2.0 * tail0) / (measured > 0.0 ? measured : 1.0);
    for (int i = 1; i <= kTableSize; ++i)
        table_cdf_[i] = tail0 + (table_cdf_[i] - tail0) * fix;
}

double ComponentDensity::tail_mass(double x) const {
    if (family_ == DensityFamily::Gaussian) return 0.5 * std::erfc(x / std::sqrt(2.0));
    if (x >= table_edge_ || table_cdf_.empty()) {
        // Leading term of integration by parts for exp(-a r^beta); q is
        // bounded and neglected beyond the table.
        const double x0 = std::max(x, 1.0);
        return std::exp(log_shape(x0) - log_norm_) / (a_ * beta_ * std::pow(x0, beta_ - 1.0));
    }
    const auto it = std::lower_bound(table_r_.begin(), table_r_.end(), x);
    const std::size_t i =
        std::min<std::size_t>(table_r_.size() - 1, static_cast<std::size_t>(it - table_r_.begin()));
    return 1.0 - table_cdf_[i];
}

double ComponentDensity::tail_asymptotic_inverse(double mass) const {
    // Newton on log tail(r) = log mass, starting from the table edge.
    double r = table_edge_;
    for (int it = 0; it < 50; ++it) {
        const double f = log_shape(r) - log_norm_ -
                         std::log(a_ * beta_ * std::pow(r, beta_ - 1.0)) - std::log(mass);
        const double df = log_shape_derivative(r) - (beta_ - 1.0) / r;
        const double step = f / df;
        r -= step;
        if (std::abs(step) < 1e-12 * std::max(1.0, r)) break;
    }
    return r;
}

double ComponentDensity::sample(double u) const {
    if (family_ == DensityFamily::Gaussian) return norm_quantile(u);
    if (u <= table_cdf_.front()) return -tail_asymptotic_inverse(std::max(u, 1e-300));
    if (u >= table_cdf_.back()) return tail_asymptotic_inverse(std::max(1.0 - u, 1e-300));
    const auto it = std::upper_bound(table_cdf_.begin(), table_cdf_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - table_cdf_.begin()) - 1;
    // Hermite interpolation of the inverse CDF on [F_i, F_{i+1}] with the
    // exact derivatives dr/dF = 1/pdf at the nodes.
    const double f0 = table_cdf_[i], f1 = table_cdf_[i + 1];
    const double r0 = table_r_[i], r1 = table_r_[i + 1];
    const double d0 = 1.0 / table_pdf_[i], d1 = 1.0 / table_pdf_[i + 1];
    const double hF = f1 - f0;
    const double t = (u - f0) / hF;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * r0 + (t3 - 2 * t2 + t) * hF * d0 + (-2 * t3 + 3 * t2) * r1 +
           (t3 - t2) * hF * d1;
}

SpectralField sample(const NoiseModel& model, const RngStream& rng, std::uint64_t step) {
    const int dim = 2 * model.modes();
    SpectralField eta(model.modes());
    if (model.component.family() == DensityFamily::Gaussian) {
        for (int i = 0; i < dim; ++i)
            eta[i] = model.weights[i] * rng.normal((step << 16) | static_cast<unsigned>(i));
    } else {
        for (int i = 0; i < dim; ++i) {
            const double u = rng.uniform((step << 16) | static_cast<unsigned>(i));
            eta[i] = model.weights[i] * model.component.sample(u);
        }
    }
    return eta;
}

double log_shift_density(const NoiseModel& model, const SpectralField& a, const SpectralField& u) {
    a.check_same(u);
    if (model.modes() != a.modes())
        throw DimensionError("log_shift_density: model truncation mismatch");
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double inv_b = 1.0 / model.weights[i];
        const double term = model.component.log_shape((u[i] - a[i]) * inv_b) -
                            model.component.log_shape(u[i] * inv_b) - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

double log_shift_density_gaussian(const NoiseModel& model, const SpectralField& a,
                                  const SpectralField& u) {
    return -0.5 * weighted_inner(a, a, model.weights, 2) + weighted_inner(a, u, model.weights, 2);
}

double tv_shift_bound(const NoiseModel& model, const SpectralField& a, const SpectralField& a2) {
    a.check_same(a2);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - a2[i]) / model.weights[i];
    return 0.5 * model.component.density_total_variation() * s;
}

double tv_shift_bound_gaussian(const NoiseModel& model, const SpectralField& a,
                               const SpectralField& a2) {
    const SpectralField d = a - a2;
    const double h2 = weighted_inner(d, d, model.weights, 2);
    return 2.0 * std::sqrt(1.0 - std::exp(-0.25 * h2));
}

AdmissibilityReport admissibility_check(const NoiseModel& model, double s) {
    AdmissibilityReport rep;
    const int dim = 2 * model.modes();
    std::vector<double> terms(dim);
    double c2sq = 0.0, c3sq = 0.0;
    for (int i = 0; i < dim; ++i) {
        const int j = SpectralField::mode_of(i);
        const double alpha = static_cast<double>(j) * j;
        const double inv_b2 = 1.0 / (model.weights[i] * model.weights[i]);
        terms[i] = inv_b2 * std::pow(alpha, -1.0 - s);
        c2sq += inv_b2 * std::pow(alpha, -(s + 1.0));
        c3sq += inv_b2 * inv_b2 * std::pow(alpha, -2.0 * (s + 1.0));
    }
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < dim; ++i) {
        total += terms[i];
        if (i >= 3 * dim / 4) tail += terms[i];
    }
    rep.series_total = total;
    rep.last_quarter_fraction = total > 0.0 ? tail / total : 0.0;
    rep.series_flat = rep.last_quarter_fraction < 0.01;
    rep.shift_constant = std::sqrt(c2sq);
    rep.density_constant = std::sqrt(c3sq);
    rep.first_abs_moment = model.component.first_abs_moment();
    rep.density_variation = model.component.density_total_variation();
    return rep;
}

}  // namespace gclab
