#ifndef GCLAB_ORACLE_HPP
#define GCLAB_ORACLE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gclab/noise.hpp"
#include "gclab/quad.hpp"
#include "gclab/scalar_map.hpp"

namespace gclab {

/// Discretised scalar Markov kernel on [-L, L]: quadrature nodes/weights, the
/// transition density table and the marginal noise density. log_density(i, j)
/// stores log theta(v_j - S(u_i)), the Lebesgue density of P(u_i, .); the
/// density against the noise law ell subtracts log_theta(j). Quadrature
/// against ell uses lweights = weights * theta(nodes).
class GridKernel {
public:
    GridKernel(ScalarMap map, ComponentDensity density, double L, int n, QuadRule rule,
               double scale = 1.0);

    int size() const { return n_; }
    double domain() const { return L_; }
    double noise_scale() const { return scale_; }
    const ScalarMap& map() const { return map_; }
    const ComponentDensity& density() const { return density_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const Eigen::VectorXd& lweights() const { return lweights_; }
    const Eigen::VectorXd& log_theta() const { return log_theta_; }
    const Eigen::MatrixXd& log_density() const { return log_density_; }

    /// log rho(u_i, v_j) against ell.
    double log_rho(int i, int j) const { return log_density_(i, j) - log_theta_(j); }
    /// sigma(u_i, v_j) = log rho(i,j) - log rho(j,i); exact on the table.
    double sigma(int i, int j) const { return log_rho(i, j) - log_rho(j, i); }
    double flow_at(int i) const { return flow_nodes_[i]; }

    /// Max row-sum defect |sum_j w_j theta(v_j - S(u_i)) - 1|; the measured
    /// quadrature tolerance used to close the exact identities.
    double tau_q() const { return tau_q_; }
    /// Mass of the transition density outside [-L, L], maximised over rows.
    double boundary_leakage() const { return leakage_; }

    /// Density transfer operator (R f)(v) = int f(u) rho(u,v) ell(du).
    Eigen::VectorXd transfer(const Eigen::VectorXd& f) const;
    /// Tilted operator action (P^{a sigma} f)(u_i) against ell; entries
    /// combine as (1-a) log rho(i,j) + a log rho(j,i), so the ell-adjoint of
    /// the a-tilted operator is exactly the (1-a)-tilted one on this grid.
    Eigen::MatrixXd tilted_matrix(double alpha, double* log_scale_out = nullptr) const;

    /// (f, g)_ell = sum_i lw_i f_i g_i.
    double inner_ell(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

private:
    ScalarMap map_;
    ComponentDensity density_;
    double L_;
    int n_;
    double scale_;
    std::vector<double> nodes_, weights_, flow_nodes_;
    Eigen::VectorXd lweights_, log_theta_;
    Eigen::MatrixXd log_density_;
    Eigen::MatrixXd kernel_;  // exp(log_density), cached for operator actions
    double tau_q_ = 0.0;
    double leakage_ = 0.0;
};

GridKernel build_kernel(const ScalarMap& map, const ComponentDensity& density, double L, int n,
                        QuadRule rule, double scale = 1.0);

/// Density with respect to ell at the kernel nodes, normalised to mass one.
struct ScalarState {
    Eigen::VectorXd f;
    long iterations = 0;
    double residual = 0.0;
};

/// Fixed point of the transfer operator by power iteration from the uniform
/// density; L1(ell) residual below tol.
ScalarState stationary_density(const GridKernel& k, double tol = 1e-13, long max_iter = 100000);

/// Mean entropy production in the stationary state:
/// int rho(u) rho(u,v) sigma(u,v) ell(du) ell(dv).
double ep_rate(const GridKernel& k, const ScalarState& rho);

/// Max over node pairs of lw_i lw_j |rho_i rho(i,j) - rho_j rho(j,i)|; zero
/// (up to tau_q) iff the chain is reversible.
double detailed_balance_residual(const GridKernel& k, const ScalarState& rho);

/// Entropy balance pieces for an arbitrary normalised density f:
/// delta_S = S(R f) - S(f) with S the entropy relative to the stationary
/// state, ep the entropy production of f, flux the mean of the dissipated-
/// entropy observable, boundary the one-step correction int log rho d(Rf - f).
struct EntropyBalance {
    double ep = 0.0;
    double flux = 0.0;
    double delta_S = 0.0;
    double boundary = 0.0;
};

EntropyBalance ep_functional(const GridKernel& k, const ScalarState& f, const ScalarState& rho);

/// Leading eigenvalue of the tilted operator with left/right eigenvectors;
/// scgf = log lambda.
struct TiltedEigen {
    double lambda = 0.0;
    double scgf = 0.0;
    Eigen::VectorXd right;
    Eigen::VectorXd left;
    long iterations = 0;
    double boundary_mass = 0.0;  ///< eigenvector mass in the outer 2% of nodes
};

TiltedEigen tilted_eigenvalue(const GridKernel& k, double alpha,
                              const Eigen::VectorXd* warm_right = nullptr,
                              const Eigen::VectorXd* warm_left = nullptr);

/// Max over random nonnegative f, g and path lengths 1..3 of the relative
/// defect of (P_k^{a s} f, g)_ell = (f, P_k^{(1-a) s} g)_ell.
double duality_residual(const GridKernel& k, double alpha, int trials, std::uint64_t seed);

/// Entropies per unit time of the stationary chain and its time reversal;
/// h_minus - h_plus equals the mean entropy production.
struct KsEntropies {
    double h_plus = 0.0;
    double h_minus = 0.0;
    double sigma_mean = 0.0;
};

KsEntropies ks_entropies(const GridKernel& k, const ScalarState& rho);

/// e(alpha) = log of the leading tilted eigenvalue over an alpha grid, with
/// warm-started eigensolves.
struct ScgfSample {
    double alpha = 0.0;
    double value = 0.0;
};

std::vector<ScgfSample> oracle_scgf_curve(const GridKernel& k, const std::vector<double>& alphas);

}  // namespace gclab

#endif
