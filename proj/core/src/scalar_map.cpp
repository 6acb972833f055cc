#include "gclab/scalar_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gclab {

ScalarMap ScalarMap::table(std::vector<double> u, std::vector<double> s) {
    if (u.size() != s.size() || u.size() < 2)
        throw std::invalid_argument("ScalarMap::table: need matching knots and values");
    for (std::size_t i = 1; i < u.size(); ++i)
        if (!(u[i] > u[i - 1]))
            throw std::invalid_argument("ScalarMap::table: knots must be strictly increasing");
    ScalarMap m;
    m.kind_ = ScalarMapKind::Table;
    m.tab_u_ = std::move(u);
    m.tab_s_ = std::move(s);
    // Natural cubic spline second derivatives (tridiagonal sweep).
    const std::size_t n = m.tab_u_.size();
    m.tab_m_.assign(n, 0.0);
    if (n > 2) {
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = m.tab_u_[i] - m.tab_u_[i - 1];
            const double h1 = m.tab_u_[i + 1] - m.tab_u_[i];
            const double rhs = 6.0 * ((m.tab_s_[i + 1] - m.tab_s_[i]) / h1 -
                                      (m.tab_s_[i] - m.tab_s_[i - 1]) / h0);
            const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
            c[i] = h1 / diag;
            d[i] = (rhs - h0 * d[i - 1]) / diag;
        }
        for (std::size_t i = n - 2; i >= 1; --i) m.tab_m_[i] = d[i] - c[i] * m.tab_m_[i + 1];
    }
    return m;
}

double ScalarMap::operator()(double u) const {
    switch (kind_) {
        case ScalarMapKind::Tanh:
            return std::tanh(param_ * u);
        case ScalarMapKind::Linear:
            return param_ * u;
        case ScalarMapKind::Constant:
            return param_;
        case ScalarMapKind::Table: {
            // Constant extrapolation keeps the image bounded.
            if (u <= tab_u_.front()) return tab_s_.front();
            if (u >= tab_u_.back()) return tab_s_.back();
            const auto it = std::upper_bound(tab_u_.begin(), tab_u_.end(), u);
            const std::size_t i = static_cast<std::size_t>(it - tab_u_.begin()) - 1;
            const double h = tab_u_[i + 1] - tab_u_[i];
            const double A = (tab_u_[i + 1] - u) / h;
            const double B = 1.0 - A;
            return A * tab_s_[i] + B * tab_s_[i + 1] +
                   ((A * A * A - A) * tab_m_[i] + (B * B * B - B) * tab_m_[i + 1]) * h * h / 6.0;
        }
    }
    return 0.0;
}

double ScalarMap::image_bound() const {
    switch (kind_) {
        case ScalarMapKind::Tanh:
            return 1.0;
        case ScalarMapKind::Constant:
            return std::abs(param_);
        case ScalarMapKind::Table: {
            double b = 0.0;
            // Spline extrema between knots are bounded by values plus overshoot;
            // sample densely, the map is only used on compact grids anyway.
            for (std::size_t i = 0; i + 1 < tab_u_.size(); ++i)
                for (int t = 0; t <= 8; ++t) {
                    const double x = tab_u_[i] + (tab_u_[i + 1] - tab_u_[i]) * t / 8.0;
                    b = std::max(b, std::abs((*this)(x)));
                }
            return b;
        }
        case ScalarMapKind::Linear:
            return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

std::string ScalarMap::describe() const {
    switch (kind_) {
        case ScalarMapKind::Tanh:
            return "tanh(" + std::to_string(param_) + " u)";
        case ScalarMapKind::Linear:
            return std::to_string(param_) + " u";
        case ScalarMapKind::Constant:
            return "const " + std::to_string(param_);
        case ScalarMapKind::Table:
            return "table[" + std::to_string(tab_u_.size()) + "]";
    }
    return "?";
}

}  // namespace gclab
