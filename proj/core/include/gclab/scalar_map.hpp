#ifndef GCLAB_SCALAR_MAP_HPP
#define GCLAB_SCALAR_MAP_HPP

#include <string>
#include <vector>

namespace gclab {

enum class ScalarMapKind { Tanh, Linear, Constant, Table };

/// Continuous scalar dynamics S: R -> R for the model case. Tanh, Constant
/// and Table have bounded image; Linear exists for the reversible AR(1)
/// fixture. Table uses a natural cubic spline with constant extrapolation.
class ScalarMap {
public:
    static ScalarMap tanh_map(double kappa) { return ScalarMap(ScalarMapKind::Tanh, kappa); }
    static ScalarMap linear(double slope) { return ScalarMap(ScalarMapKind::Linear, slope); }
    static ScalarMap constant(double c) { return ScalarMap(ScalarMapKind::Constant, c); }
    static ScalarMap table(std::vector<double> u, std::vector<double> s);

    double operator()(double u) const;
    ScalarMapKind kind() const { return kind_; }
    double parameter() const { return param_; }
    /// max |S| over the probe range (exact for tanh/constant/table).
    double image_bound() const;
    std::string describe() const;

private:
    ScalarMap(ScalarMapKind k, double p) : kind_(k), param_(p) {}
    ScalarMap() = default;

    ScalarMapKind kind_ = ScalarMapKind::Constant;
    double param_ = 0.0;
    std::vector<double> tab_u_, tab_s_, tab_m_;  // spline knots, values, second derivatives
};

}  // namespace gclab

#endif
