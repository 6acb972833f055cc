#ifndef GCLAB_QUAD_HPP
#define GCLAB_QUAD_HPP

#include <functional>
#include <vector>

namespace gclab {

enum class QuadRule { GaussLegendre, Trapezoid };

/// Quadrature nodes and weights on an interval [a, b].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [a, b].
Quadrature gauss_legendre(int n, double a, double b);

/// Composite trapezoid rule with n points on [a, b] (endpoints included).
Quadrature trapezoid(int n, double a, double b);

Quadrature make_quadrature(QuadRule rule, int n, double a, double b);

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, int max_depth = 40);

}  // namespace gclab

#endif
