#include "gclab/oracle.hpp"

#include <cmath>
#include <sstream>

#include "gclab/errors.hpp"
#include "gclab/philox.hpp"

namespace gclab {

GridKernel::GridKernel(ScalarMap map, ComponentDensity density, double L, int n, QuadRule rule,
                       double scale)
    : map_(std::move(map)), density_(std::move(density)), L_(L), n_(n), scale_(scale) {
    if (n < 64) throw std::invalid_argument("GridKernel: need at least 64 nodes");
    if (!(L > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("GridKernel: domain and scale must be positive");
    const Quadrature q = make_quadrature(rule, n, -L, L);
    nodes_ = q.nodes;
    weights_ = q.weights;
    flow_nodes_.resize(n);
    for (int i = 0; i < n; ++i) flow_nodes_[i] = map_(nodes_[i]);

    const double log_scale = std::log(scale_);
    log_theta_.resize(n);
    for (int j = 0; j < n; ++j) log_theta_(j) = density_.log_pdf(nodes_[j] / scale_) - log_scale;

    log_density_.resize(n, n);
    kernel_.resize(n, n);
    double leak = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = flow_nodes_[i];
        for (int j = 0; j < n; ++j) {
            const double ld = density_.log_pdf((nodes_[j] - s) / scale_) - log_scale;
            log_density_(i, j) = ld;
            kernel_(i, j) = std::exp(ld);
        }
        leak = std::max(leak, density_.tail_mass((L_ - s) / scale_) +
                                  density_.tail_mass((L_ + s) / scale_));
    }
    leakage_ = leak;
    if (leakage_ >= 1e-10) {
        std::ostringstream msg;
        msg << "GridKernel: domain [-" << L_ << ", " << L_ << "] too small, boundary mass "
            << leakage_;
        throw DomainTooSmallError(msg.str(), leakage_);
    }

    lweights_.resize(n);
    for (int j = 0; j < n; ++j) lweights_(j) = weights_[j] * std::exp(log_theta_(j));

    // Row stochasticity: sum_j w_j theta(v_j - S(u_i)) should be 1.
    Eigen::Map<const Eigen::VectorXd> w(weights_.data(), n);
    const Eigen::VectorXd row_sums = kernel_ * w;
    tau_q_ = (row_sums.array() - 1.0).abs().maxCoeff();
}

GridKernel build_kernel(const ScalarMap& map, const ComponentDensity& density, double L, int n,
                        QuadRule rule, double scale) {
    return GridKernel(map, density, L, n, rule, scale);
}

Eigen::VectorXd GridKernel::transfer(const Eigen::VectorXd& f) const {
    // (R f)(v_j) = sum_i lw_i f_i rho(i,j) = [K^T (lw . f)]_j / theta_j.
    const Eigen::VectorXd weighted = lweights_.array() * f.array();
    Eigen::VectorXd out = kernel_.transpose() * weighted;
    out.array() *= (-log_theta_).array().exp();
    return out;
}

Eigen::MatrixXd GridKernel::tilted_matrix(double alpha, double* log_scale_out) const {
    // Exponent (1-a) log rho(i,j) + a log rho(j,i); a global shift keeps the
    // entries inside double range, reported via log_scale_out.
    Eigen::MatrixXd E(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            E(i, j) = (1.0 - alpha) * (log_density_(i, j) - log_theta_(j)) +
                      alpha * (log_density_(j, i) - log_theta_(i));
    const double shift = E.maxCoeff();
    Eigen::MatrixXd M = (E.array() - shift).exp().matrix();
    for (int j = 0; j < n_; ++j) M.col(j) *= lweights_(j);
    if (log_scale_out) *log_scale_out = shift;
    return M;
}

double GridKernel::inner_ell(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
    return (lweights_.array() * f.array() * g.array()).sum();
}

ScalarState stationary_density(const GridKernel& k, double tol, long max_iter) {
    const int n = k.size();
    ScalarState st;
    st.f = Eigen::VectorXd::Ones(n);
    const double mass0 = k.lweights().sum();
    st.f /= mass0;  // int f dl = 1
    double residual = 0.0;
    for (long it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd next = k.transfer(st.f);
        const double mass = (k.lweights().array() * next.array()).sum();
        next /= mass;
        residual = (k.lweights().array() * (next - st.f).array().abs()).sum();
        st.f = std::move(next);
        st.iterations = it;
        if (residual < tol) {
            st.residual = residual;
            return st;
        }
    }
    throw ConvergenceError("stationary_density: power iteration did not reach tolerance",
                           residual);
}

double ep_rate(const GridKernel& k, const ScalarState& rho) {
    const int n = k.size();
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wi = k.lweights()(i) * rho.f(i);
        if (wi == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double p = std::exp(k.log_rho(i, j));
            const double term = wi * k.lweights()(j) * p * k.sigma(i, j) - comp;
            const double t = sum + term;
            comp = (t - sum) - term;
            sum = t;
        }
    }
    return sum;
}

double detailed_balance_residual(const GridKernel& k, const ScalarState& rho) {
    const int n = k.size();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double fwd = rho.f(i) * std::exp(k.log_rho(i, j));
            const double bwd = rho.f(j) * std::exp(k.log_rho(j, i));
            worst = std::max(worst, k.lweights()(i) * k.lweights()(j) * std::abs(fwd - bwd));
        }
    return worst;
}

EntropyBalance ep_functional(const GridKernel& k, const ScalarState& f, const ScalarState& rho) {
    const int n = k.size();
    const Eigen::VectorXd f1 = k.transfer(f.f);
    EntropyBalance out;

    double ep = 0.0, flux = 0.0;
    for (int i = 0; i < n; ++i) {
        const double fi = f.f(i);
        if (fi <= 0.0) continue;
        const double wi = k.lweights()(i) * fi;
        const double log_fi = std::log(fi);
        const double log_rho_i = std::log(rho.f(i));
        for (int j = 0; j < n; ++j) {
            const double w = wi * k.lweights()(j) * std::exp(k.log_rho(i, j));
            const double sig = k.sigma(i, j);
            ep += w * (log_fi - std::log(f1(j)) + sig);
            flux += w * (log_rho_i - std::log(rho.f(j)) + sig);
        }
    }
    out.ep = ep;
    out.flux = flux;

    double s0 = 0.0, s1 = 0.0, boundary = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lw = k.lweights()(i);
        const double lr = std::log(rho.f(i));
        if (f.f(i) > 0.0) s0 -= lw * f.f(i) * (std::log(f.f(i)) - lr);
        if (f1(i) > 0.0) s1 -= lw * f1(i) * (std::log(f1(i)) - lr);
        boundary += lw * (f1(i) - f.f(i)) * lr;
    }
    out.delta_S = s1 - s0;
    out.boundary = boundary;
    return out;
}

TiltedEigen tilted_eigenvalue(const GridKernel& k, double alpha, const Eigen::VectorXd* warm_right,
                              const Eigen::VectorXd* warm_left) {
    const int n = k.size();
    double shift = 0.0;
    const Eigen::MatrixXd M = k.tilted_matrix(alpha, &shift);
    const Eigen::MatrixXd Mt = M.transpose();

    Eigen::VectorXd x = warm_right && warm_right->size() == n
                            ? *warm_right
                            : Eigen::VectorXd::Ones(n).eval();
    Eigen::VectorXd y = warm_left && warm_left->size() == n ? *warm_left
                                                            : Eigen::VectorXd::Ones(n).eval();
    x /= x.sum();
    y /= y.sum();

    double lambda_scaled = 0.0;
    int stable = 0;
    long it = 0;
    const long max_iter = 500000;
    std::vector<double> history;
    for (it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd mx = M * x;
        Eigen::VectorXd my = Mt * y;
        const double nx = mx.sum();
        const double ny = my.sum();
        x = mx / nx;
        y = my / ny;
        const double est = y.dot(M * x) / y.dot(x);
        history.push_back(est);
        if (history.size() > 16) history.erase(history.begin());
        const double rel = std::abs(est - lambda_scaled) / std::max(std::abs(est), 1e-300);
        lambda_scaled = est;
        stable = rel < 1e-13 ? stable + 1 : 0;
        if (stable >= 10) break;
    }
    if (stable < 10) {
        std::ostringstream msg;
        msg << "tilted_eigenvalue: Rayleigh quotient stagnated, last values:";
        for (double h : history) msg << ' ' << h;
        throw ConvergenceError(msg.str(), lambda_scaled);
    }

    TiltedEigen out;
    out.scgf = std::log(lambda_scaled) + shift;
    out.lambda = std::exp(out.scgf);
    out.right = x;
    out.left = y;
    out.iterations = it;
    // Perron vector mass near the domain edge; tilting can push the operator
    // into boundary-dominated territory where the eigenvalue is a grid artifact.
    const int edge = std::max(1, n / 50);
    double edge_mass = 0.0;
    for (int i = 0; i < edge; ++i) edge_mass += x(i) + x(n - 1 - i) + y(i) + y(n - 1 - i);
    out.boundary_mass = 0.5 * edge_mass;
    if (out.boundary_mass > 1e-6) {
        std::ostringstream msg;
        msg << "tilted_eigenvalue: alpha=" << alpha << " concentrates " << out.boundary_mass
            << " of the eigenvector at the domain edge";
        throw DomainTooSmallError(msg.str(), out.boundary_mass);
    }
    return out;
}

double duality_residual(const GridKernel& k, double alpha, int trials, std::uint64_t seed) {
    const int n = k.size();
    double shift_a = 0.0, shift_b = 0.0;
    const Eigen::MatrixXd Ma = k.tilted_matrix(alpha, &shift_a);
    const Eigen::MatrixXd Mb = k.tilted_matrix(1.0 - alpha, &shift_b);
    const RngStream rng(seed, substream(0x20, 0));
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd f(n), g(n);
        for (int i = 0; i < n; ++i) {
            const auto u = rng.uniform2((static_cast<std::uint64_t>(t) << 32) | i);
            f(i) = u[0];
            g(i) = u[1];
        }
        Eigen::VectorXd pf = f, pg = g;
        for (int steps = 1; steps <= 3; ++steps) {
            pf = Ma * pf;
            pg = Mb * pg;
            // Undo the per-matrix shifts so both sides carry the same scale.
            const double lhs = k.inner_ell(pf, g) * std::exp(steps * shift_a);
            const double rhs = k.inner_ell(f, pg) * std::exp(steps * shift_b);
            const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            worst = std::max(worst, std::abs(lhs - rhs) / denom);
        }
    }
    return worst;
}

KsEntropies ks_entropies(const GridKernel& k, const ScalarState& rho) {
    const int n = k.size();
    KsEntropies out;
    double hp = 0.0, hm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wi = k.lweights()(i) * rho.f(i);
        if (wi == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double w = wi * k.lweights()(j) * std::exp(k.log_rho(i, j));
            hp -= w * k.log_rho(i, j);
            hm -= w * k.log_rho(j, i);
        }
    }
    out.h_plus = hp;
    out.h_minus = hm;
    out.sigma_mean = ep_rate(k, rho);
    return out;
}

std::vector<ScgfSample> oracle_scgf_curve(const GridKernel& k, const std::vector<double>& alphas) {
    std::vector<ScgfSample> out;
    out.reserve(alphas.size());
    Eigen::VectorXd warm_r, warm_l;
    for (double a : alphas) {
        const TiltedEigen te = tilted_eigenvalue(k, a, warm_r.size() ? &warm_r : nullptr,
                                                 warm_l.size() ? &warm_l : nullptr);
        warm_r = te.right;
        warm_l = te.left;
        out.push_back({a, te.scgf});
    }
    return out;
}

}  // namespace gclab
