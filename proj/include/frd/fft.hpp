#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace frd {

/// Real <-> half-complex FFT pair of fixed size, with cached plans.
/// Transforms follow the sign convention
///   forward:  out[k] = sum_m in[m] * exp(-2 pi i k m / n)
///   inverse:  out[m] = (1/n) sum_k in[k] * exp(+2 pi i k m / n)
/// so inverse(forward(x)) == x.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const { return n_; }
    std::size_t spectrum_size() const { return n_ / 2 + 1; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

private:
    std::size_t n_;
    void* plan_fwd_;
    void* plan_inv_;
    double* real_buf_;
    void* cplx_buf_;
};

/// One-shot unnormalized Hermitian-to-real transform used by the table builder:
///   out[m] = sum_{k=-n/2..n/2-1} spec[|k|]^(sign k) * exp(+2 pi i k m / n)
/// where spec holds the non-negative frequencies (size n/2 + 1).
std::vector<double> halfcomplex_to_real(std::vector<std::complex<double>>&& spectrum,
                                        std::size_t n);

}  // namespace frd
