#include "gclab/trig.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace gclab {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct TrigWorkspace::Impl {
    fftw_plan c2r = nullptr;
    fftw_plan r2c = nullptr;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    int M = 0;

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        if (c2r) fftw_destroy_plan(c2r);
        if (r2c) fftw_destroy_plan(r2c);
        if (real) fftw_free(real);
        if (spec) fftw_free(spec);
    }
};

TrigWorkspace::TrigWorkspace(int modes, int grid_size)
    : modes_(modes), grid_size_(grid_size), impl_(std::make_unique<Impl>()) {
    if (grid_size < 2 * modes + 2)
        throw DimensionError("TrigWorkspace: grid size must be at least 2N+2 to avoid aliasing");
    impl_->M = grid_size;
    impl_->real = fftw_alloc_real(grid_size);
    impl_->spec = fftw_alloc_complex(grid_size / 2 + 1);
    std::lock_guard<std::mutex> lock(plan_mutex());
    // FFTW_ESTIMATE keeps plans deterministic, so runs are bit-reproducible.
    impl_->c2r = fftw_plan_dft_c2r_1d(grid_size, impl_->spec, impl_->real, FFTW_ESTIMATE);
    impl_->r2c = fftw_plan_dft_r2c_1d(grid_size, impl_->real, impl_->spec, FFTW_ESTIMATE);
}

TrigWorkspace::~TrigWorkspace() = default;

void TrigWorkspace::synthesize(const SpectralField& u, std::vector<double>& out) const {
    if (u.modes() != modes_) throw DimensionError("TrigWorkspace: field truncation mismatch");
    const int M = grid_size_;
    const int nc = M / 2 + 1;
    std::memset(impl_->spec, 0, sizeof(fftw_complex) * nc);
    // c_j cos(jx) + s_j sin(jx) = Re[(c_j - i s_j) e^{ijx}]; FFTW c2r applies
    // the factor 2 for 0 < j < M/2 itself.
    const double scale = 1.0 / (2.0 * std::sqrt(M_PI));
    for (int j = 1; j <= modes_; ++j) {
        impl_->spec[j][0] = scale * u.cos_coeff(j);
        impl_->spec[j][1] = -scale * u.sin_coeff(j);
    }
    fftw_execute_dft_c2r(impl_->c2r, impl_->spec, impl_->real);
    out.assign(impl_->real, impl_->real + M);
}

void TrigWorkspace::analyze(const std::vector<double>& grid, SpectralField& out) const {
    if (static_cast<int>(grid.size()) != grid_size_)
        throw DimensionError("TrigWorkspace: grid size mismatch");
    if (out.modes() != modes_) out = SpectralField(modes_);
    std::memcpy(impl_->real, grid.data(), sizeof(double) * grid_size_);
    fftw_execute_dft_r2c(impl_->r2c, impl_->real, impl_->spec);
    const double scale = 2.0 * std::sqrt(M_PI) / grid_size_;
    for (int j = 1; j <= modes_; ++j) {
        out.set_cos(j, scale * impl_->spec[j][0]);
        out.set_sin(j, -scale * impl_->spec[j][1]);
    }
}

std::vector<double> evaluate_on_grid(const SpectralField& u, int grid_size) {
    TrigWorkspace ws(u.modes(), grid_size);
    return ws.synthesize(u);
}

}  // namespace gclab
