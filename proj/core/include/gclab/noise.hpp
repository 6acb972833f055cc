#ifndef GCLAB_NOISE_HPP
#define GCLAB_NOISE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gclab/spectral.hpp"

namespace gclab {

enum class DensityFamily { Gaussian, GenExp };

/// One-dimensional noise density. Gaussian is the unit-variance normal law;
/// GenExp is exp(-a|r|^beta + q(r)) / Z with beta in (1,2], a > 0 and q a
/// finite cosine series q(r) = sum_m q_m cos(m r). The per-coordinate scale
/// enters through the weight sequence, not here.
class ComponentDensity {
public:
    static ComponentDensity gaussian();
    static ComponentDensity gen_exp(double a, double beta, std::vector<double> q_coeffs = {});

    DensityFamily family() const { return family_; }
    double a() const { return a_; }
    double beta() const { return beta_; }
    const std::vector<double>& q_coeffs() const { return q_; }

    /// Normalised log density log rho~(r).
    double log_pdf(double r) const;
    double pdf(double r) const;
    /// Unnormalised exponent (-a|r|^beta + q(r), or -r^2/2); differences of
    /// log_pdf reduce to differences of this, with the constant cancelled.
    double log_shape(double r) const;
    double log_shape_derivative(double r) const;

    /// Total variation of the density as a function: integral of |rho~'|.
    /// Computed once at construction (Gaussian: 2*phi(0) = sqrt(2/pi)).
    double density_total_variation() const { return var_; }
    /// First absolute moment, integral of |r| rho~(r) dr.
    double first_abs_moment() const { return abs_moment_; }
    /// Upper bounds on |q| and |q'| from the cosine coefficients.
    double q_bound() const { return q_bound_; }
    double q_derivative_bound() const { return q_deriv_bound_; }

    /// Mass of (x, +inf); symmetric densities, so also the mass of (-inf,-x).
    double tail_mass(double x) const;

    /// Inverse-CDF draw from one uniform in (0,1).
    double sample(double u) const;

private:
    ComponentDensity() = default;
    void finalize();

    DensityFamily family_ = DensityFamily::Gaussian;
    double a_ = 0.5;
    double beta_ = 2.0;
    std::vector<double> q_;
    double q_bound_ = 0.0;
    double q_deriv_bound_ = 0.0;
    double log_norm_ = 0.0;  // log Z
    double var_ = 0.0;
    double abs_moment_ = 0.0;

    // Inverse-CDF table (GenExp only): nodes, CDF values, pdf at nodes.
    double table_edge_ = 0.0;
    std::vector<double> table_r_;
    std::vector<double> table_cdf_;
    std::vector<double> table_pdf_;
    double q_at(double r) const;
    double dq_at(double r) const;
    double tail_asymptotic_inverse(double mass) const;
};

/// Product measure over the truncated basis: coordinate j has density
/// b_j^{-1} rho~(r / b_j), coordinates independent.
struct NoiseModel {
    WeightSequence weights;
    ComponentDensity component;

    NoiseModel(WeightSequence w, ComponentDensity c)
        : weights(std::move(w)), component(std::move(c)) {}
    int modes() const { return weights.modes(); }
};

/// One draw eta = sum_j b_j xi_j e_j. Coordinate i at `step` reads counter
/// block (step << 16) | i of the stream, so ensembles are reproducible and
/// coordinate draws are order-independent.
SpectralField sample(const NoiseModel& model, const RngStream& rng, std::uint64_t step);

/// log of d(ell_a)/d(ell) at u: sum_j [log rho_j(u_j - a_j) - log rho_j(u_j)].
/// Exact finite sum at truncation, evaluated in log space throughout.
double log_shift_density(const NoiseModel& model, const SpectralField& a, const SpectralField& u);

/// Gaussian closed form -0.5 ||a||_b^2 + (a,u)_b of the same quantity.
double log_shift_density_gaussian(const NoiseModel& model, const SpectralField& a,
                                  const SpectralField& u);

/// Upper bound (C/2) sum_j |a_j - a2_j| / b_j on ||ell_a - ell_a2||_var,
/// with C the total variation of the component density.
double tv_shift_bound(const NoiseModel& model, const SpectralField& a, const SpectralField& a2);

/// Gaussian companion bound 2 (1 - exp(-||a-a2||_b^2 / 4))^(1/2).
double tv_shift_bound_gaussian(const NoiseModel& model, const SpectralField& a,
                               const SpectralField& a2);

/// Numeric predicates behind the admissibility of shifts at smoothness s:
/// partial sums of b_j^{-2} alpha_j^{-1-s}, the best embedding constants on
/// unit spheres at truncation, and the component-density moment bounds.
struct AdmissibilityReport {
    double series_total = 0.0;          ///< sum over j <= N of b_j^{-2} alpha_j^{-1-s}
    double last_quarter_fraction = 0.0; ///< contribution of the last quarter of modes
    bool series_flat = false;           ///< last-quarter fraction below 1%
    double shift_constant = 0.0;        ///< best C with sum b_j^{-1}|v_j| <= C ||v||_{s+1}
    double density_constant = 0.0;      ///< best C with sum b_j^{-2}|v_j| <= C ||v||_{2(s+1)}
    double first_abs_moment = 0.0;
    double density_variation = 0.0;
};

AdmissibilityReport admissibility_check(const NoiseModel& model, double s);

}  // namespace gclab

#endif
