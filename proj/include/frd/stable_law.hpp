#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "frd/interp.hpp"
#include "frd/stable_params.hpp"

namespace frd {

/// Controls for the characteristic-function inversion behind a DistTable.
struct TableSpec {
    /// Half-width of the tabulated window; 0 selects a default by alpha.
    double x_max = 0.0;
    /// Target absolute accuracy of pdf/cdf inside the table window.
    double tolerance = 1e-8;
    /// Period of the sampling comb in x (aliasing distance); 0 selects a default.
    double alias_period = 0.0;
    /// Lower bound on the spectral extent, which fixes the output spacing dx <= pi/extent.
    double min_lambda_extent = 208.0;
    /// Required relative agreement between table and leading tail series at the cuts.
    /// Higher-order tail terms decay like x^-alpha, so small alpha matches loosely.
    double tail_match_tol = 0.10;
    /// Hard cap on the inversion FFT size.
    std::size_t max_fft_size = std::size_t{1} << 26;
};

/// Tabulated stable distribution on a uniform grid with leading-order tail patches.
struct DistTable {
    StableParams params;
    double x0 = 0.0;  // first abscissa; grid is x0 + i*dx
    double dx = 0.0;
    std::vector<double> pdf_values;
    std::vector<double> cdf_values;
    double tail_cut_left = 0.0;
    double tail_cut_right = 0.0;
    // Leading tail coefficients: 1-F(x) ~ c1 x^-alpha, F(-x) ~ d1 x^-alpha.
    double c1 = 0.0;
    double d1 = 0.0;
    // Amplitudes matched to the table at the cuts, used for evaluation beyond them.
    double c1_pdf = 0.0, c1_cdf = 0.0;
    double d1_pdf = 0.0, d1_cdf = 0.0;
    double tolerance = 0.0;
    double achieved_error = 0.0;
    double tail_mismatch = 0.0;  // relative series/table disagreement at the cuts

    std::size_t size() const { return pdf_values.size(); }
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    std::vector<double> grid() const;
};

/// Numerical Fourier inversion of the characteristic function.
/// Throws accuracy_error when the requested tolerance is out of reach
/// (slow spectral decay at small alpha, or an FFT beyond max_fft_size).
DistTable build_table(const StableParams& params, const TableSpec& spec = {});

/// Evaluation front end: density, cdf and quantile of one stable law.
/// Immutable after construction; safe to share across threads.
class StableLaw {
public:
    explicit StableLaw(const StableParams& params, const TableSpec& spec = {});
    explicit StableLaw(DistTable table);

    const StableParams& params() const { return table_.params; }
    double alpha() const { return table_.params.alpha; }
    const DistTable& table() const { return table_; }

    double density(double x) const;
    double cdf(double x) const;
    /// Inverse cdf; zeta must lie in (0,1).
    double quantile(double zeta) const;

    /// cdf value at x = 0 (exact: 1/2 - rho/(2 alpha)).
    double cdf_at_zero() const;
    /// cdf values at the tail cuts; quantiles outside this range resolve via the series.
    double cdf_at_cut_left() const { return cdf_cut_left_; }
    double cdf_at_cut_right() const { return cdf_cut_right_; }

private:
    void init_interp();

    DistTable table_;
    UniformInterp<12> pdf_interp_;
    UniformInterp<12> cdf_interp_;
    double cdf_cut_left_ = 0.0;
    double cdf_cut_right_ = 0.0;
};

/// Shared-table convenience for callers that repeatedly need the same law.
std::shared_ptr<const StableLaw> make_law(double alpha, double beta,
                                          const TableSpec& spec = {});

}  // namespace frd
