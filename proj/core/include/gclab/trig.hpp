#ifndef GCLAB_TRIG_HPP
#define GCLAB_TRIG_HPP

#include <memory>
#include <vector>

#include "gclab/spectral.hpp"

namespace gclab {

/// Synthesis/analysis between spectral coefficients and values on the uniform
/// grid x_m = 2*pi*m/M. Requires M >= 2N+2 so the analysis quadrature is exact
/// on the truncated space. Owns FFTW plans and scratch buffers; one workspace
/// per thread, not shareable.
class TrigWorkspace {
public:
    TrigWorkspace(int modes, int grid_size);
    ~TrigWorkspace();
    TrigWorkspace(const TrigWorkspace&) = delete;
    TrigWorkspace& operator=(const TrigWorkspace&) = delete;

    int modes() const { return modes_; }
    int grid_size() const { return grid_size_; }

    /// u(x_m) for m = 0..M-1.
    void synthesize(const SpectralField& u, std::vector<double>& out) const;
    /// Projection of grid values onto the truncated basis.
    void analyze(const std::vector<double>& grid, SpectralField& out) const;

    std::vector<double> synthesize(const SpectralField& u) const {
        std::vector<double> g(grid_size_);
        synthesize(u, g);
        return g;
    }
    SpectralField analyze(const std::vector<double>& grid) const {
        SpectralField u(modes_);
        analyze(grid, u);
        return u;
    }

private:
    struct Impl;
    int modes_;
    int grid_size_;
    std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper used by output paths; probes and integrators keep a
/// workspace instead.
std::vector<double> evaluate_on_grid(const SpectralField& u, int grid_size);

/// Coefficients of the x-derivative: pairwise rotation (c_j, s_j) -> (j s_j, -j c_j).
inline SpectralField derivative(const SpectralField& u) {
    SpectralField d(u.modes());
    for (int j = 1; j <= u.modes(); ++j) {
        d.set_cos(j, j * u.sin_coeff(j));
        d.set_sin(j, -j * u.cos_coeff(j));
    }
    return d;
}

}  // namespace gclab

#endif
