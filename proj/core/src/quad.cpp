#include "gclab/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace gclab {

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Newton on P_n with the Chebyshev-like initial guess; roots come in +/- pairs.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.nodes[i] = mid - half * x;
        q.nodes[n - 1 - i] = mid + half * x;
        q.weights[i] = half * w;
        q.weights[n - 1 - i] = half * w;
    }
    return q;
}

Quadrature trapezoid(int n, double a, double b) {
    if (n < 2) throw std::invalid_argument("trapezoid: need at least 2 points");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = a + h * i;
        q.weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
    return q;
}

Quadrature make_quadrature(QuadRule rule, int n, double a, double b) {
    return rule == QuadRule::GaussLegendre ? gauss_legendre(n, a, b) : trapezoid(n, a, b);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth) {
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace gclab
