#include "frd/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <cstring>
#include <stdexcept>

namespace frd {

RealFft::RealFft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("RealFft size must be a power of two");
    }
    real_buf_ = fftw_alloc_real(n_);
    auto* c = fftw_alloc_complex(n_ / 2 + 1);
    cplx_buf_ = c;
    // FFTW_ESTIMATE keeps planning deterministic run to run.
    plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_buf_, c, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), c, real_buf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    assert(in.size() == n_ && out.size() == spectrum_size());
    std::memcpy(real_buf_, in.data(), n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out.data(), cplx_buf_, spectrum_size() * sizeof(fftw_complex));
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    assert(in.size() == spectrum_size() && out.size() == n_);
    std::memcpy(cplx_buf_, in.data(), spectrum_size() * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t m = 0; m < n_; ++m) out[m] = real_buf_[m] * scale;
}

std::vector<double> halfcomplex_to_real(std::vector<std::complex<double>>&& spectrum,
                                        std::size_t n) {
    if (spectrum.size() != n / 2 + 1) {
        throw std::invalid_argument("halfcomplex_to_real: spectrum size mismatch");
    }
    std::vector<double> out(n);
    fftw_plan plan = fftw_plan_dft_c2r_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(spectrum.data()), out.data(),
        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    spectrum.clear();
    spectrum.shrink_to_fit();
    return out;
}

}  // namespace frd
