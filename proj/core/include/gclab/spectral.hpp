#ifndef GCLAB_SPECTRAL_HPP
#define GCLAB_SPECTRAL_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/philox.hpp"

namespace gclab {

/// Mean-zero real field on the circle, stored as coefficients against the
/// L2-normalised trigonometric basis cos(jx)/sqrt(pi), sin(jx)/sqrt(pi),
/// j = 1..N. Coefficients are interleaved (c_1, s_1, c_2, s_2, ...), so the
/// plain Euclidean norm of `coeffs` is the L2 norm of the field. There is no
/// j = 0 entry: the zero-mean constraint holds by construction.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(int modes) : modes_(modes), coeffs_(2 * static_cast<std::size_t>(modes), 0.0) {}
    SpectralField(int modes, std::vector<double> coeffs) : modes_(modes), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != 2 * static_cast<std::size_t>(modes_))
            throw DimensionError("SpectralField: coefficient count does not match truncation");
    }

    int modes() const { return modes_; }
    std::size_t size() const { return coeffs_.size(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::vector<double>& coeffs() { return coeffs_; }

    double cos_coeff(int j) const { return coeffs_[2 * (j - 1)]; }
    double sin_coeff(int j) const { return coeffs_[2 * (j - 1) + 1]; }
    void set_cos(int j, double v) { coeffs_[2 * (j - 1)] = v; }
    void set_sin(int j, double v) { coeffs_[2 * (j - 1) + 1] = v; }

    /// Mode index j of coordinate i (the Laplacian eigenvalue is j^2).
    static int mode_of(std::size_t i) { return static_cast<int>(i / 2) + 1; }

    bool finite() const {
        for (double c : coeffs_)
            if (!std::isfinite(c)) return false;
        return true;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (double& c : coeffs_) c *= a;
        return *this;
    }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField u) { return u *= a; }

    void check_same(const SpectralField& o) const {
        if (o.modes_ != modes_) throw DimensionError("SpectralField: truncation mismatch");
    }

private:
    int modes_ = 0;
    std::vector<double> coeffs_;
};

/// Noise weights b_j > 0, one per basis coordinate, equal on each cos/sin
/// pair. Generated from the power law b_j = b0 * j^(-r); square-summable at
/// any truncation, and genuinely so as N grows when r > 1/2.
class WeightSequence {
public:
    WeightSequence(int modes, double b0, double r) : modes_(modes), b0_(b0), r_(r) {
        if (b0 <= 0.0) throw std::invalid_argument("WeightSequence: b0 must be positive");
        b_.resize(2 * static_cast<std::size_t>(modes));
        for (int j = 1; j <= modes; ++j) {
            const double bj = b0 * std::pow(static_cast<double>(j), -r);
            b_[2 * (j - 1)] = bj;
            b_[2 * (j - 1) + 1] = bj;
        }
    }
    /// Explicit per-coordinate weights (2N entries, all positive).
    WeightSequence(int modes, std::vector<double> b) : modes_(modes), b_(std::move(b)) {
        if (b_.size() != 2 * static_cast<std::size_t>(modes))
            throw DimensionError("WeightSequence: weight count does not match truncation");
        for (double v : b_)
            if (!(v > 0.0)) throw std::invalid_argument("WeightSequence: weights must be positive");
    }

    int modes() const { return modes_; }
    double operator[](std::size_t i) const { return b_[i]; }
    const std::vector<double>& values() const { return b_; }
    double b0() const { return b0_; }
    double decay() const { return r_; }

    double sum_squares() const {
        double s = 0.0;
        for (double v : b_) s += v * v;
        return s;
    }

private:
    int modes_ = 0;
    double b0_ = 1.0;
    double r_ = 1.0;
    std::vector<double> b_;
};

/// L2 norm (Parseval: equals the Euclidean norm of the coefficients).
inline double l2_norm(const SpectralField& u) {
    double s = 0.0;
    for (double c : u.coeffs()) s += c * c;
    return std::sqrt(s);
}

/// Sobolev norm of order s: (sum_j j^(2s) (c_j^2 + s_j^2))^(1/2).
inline double sobolev_norm(const SpectralField& u, double s) {
    double acc = 0.0;
    for (int j = 1; j <= u.modes(); ++j) {
        const double c = u.cos_coeff(j), sn = u.sin_coeff(j);
        acc += std::pow(static_cast<double>(j), 2.0 * s) * (c * c + sn * sn);
    }
    return std::sqrt(acc);
}

/// Weighted pairing sum_j b_j^(-power) u_j v_j; power 2 is the Cameron-Martin
/// inner product (.,.)_b, power 4 the (.,.)_{b^2} pairing. Summed in ascending
/// mode order with Kahan compensation: the b_j^(-power) factors amplify high
/// modes and the pairing feeds near-cancelling differences downstream.
inline double weighted_inner(const SpectralField& u, const SpectralField& v,
                             const WeightSequence& b, int power = 2) {
    u.check_same(v);
    if (b.modes() != u.modes()) throw DimensionError("weighted_inner: weight truncation mismatch");
    if (power != 2 && power != 4) throw std::invalid_argument("weighted_inner: power must be 2 or 4");
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double w = power == 2 ? 1.0 / (b[i] * b[i]) : 1.0 / (b[i] * b[i] * b[i] * b[i]);
        const double term = w * u[i] * v[i] - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

inline double weighted_norm(const SpectralField& u, const WeightSequence& b, int power = 2) {
    return std::sqrt(weighted_inner(u, u, b, power));
}

/// Isotropic Gaussian draw scaled to the requested L2 norm (uniform direction
/// on the sphere of radius `norm`). Block i of the stream feeds coordinates
/// 2i, 2i+1.
inline SpectralField random_direction(int modes, double norm, const RngStream& rng,
                                      std::uint64_t index_base = 0) {
    SpectralField u(modes);
    for (int i = 0; i < modes; ++i) {
        const auto z = rng.normal2(index_base + i);
        u[2 * i] = z[0];
        u[2 * i + 1] = z[1];
    }
    const double n = l2_norm(u);
    if (n > 0.0) u *= norm / n;
    return u;
}

}  // namespace gclab

#endif
