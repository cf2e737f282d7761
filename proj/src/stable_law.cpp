#include "frd/stable_law.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "frd/errors.hpp"
#include "frd/fft.hpp"

namespace frd {

namespace {

std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

// Fornberg's algorithm: weights of the m-th derivative at z from the given nodes.
std::vector<double> fd_weights(const std::vector<double>& nodes, double z, int m) {
    const int n = static_cast<int>(nodes.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int j = 0; j <= n; ++j) w[j] = c[j][m];
    return w;
}

// m-th derivative of the tabulated values, 9-point stencils, spacing h.
std::vector<double> table_derivative(const std::vector<double>& f, double h, int m) {
    constexpr int S = 9;
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<double> out(f.size());
    const double hm = std::pow(h, m);
    // precompute weights for every stencil placement relative to the query node
    std::vector<std::vector<double>> w(S);
    for (int pos = 0; pos < S; ++pos) {
        std::vector<double> nodes(S);
        for (int j = 0; j < S; ++j) nodes[j] = static_cast<double>(j - pos);
        w[pos] = fd_weights(nodes, 0.0, m);
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        std::ptrdiff_t base = std::clamp<std::ptrdiff_t>(i - S / 2, 0, n - S);
        const int pos = static_cast<int>(i - base);
        double acc = 0.0;
        for (int j = 0; j < S; ++j) acc += w[pos][j] * f[static_cast<std::size_t>(base + j)];
        out[static_cast<std::size_t>(i)] = acc / hm;
    }
    return out;
}

struct TailFit {
    double c1 = 0.0;  // right: 1-F ~ c1 x^-alpha
    double d1 = 0.0;  // left:  F ~ d1 (-x)^-alpha
};

// Least squares on the three leading tail orders x^(-1-j a), j = 1..3; the
// higher orders soak up series curvature that a one-term fit would fold into
// the leading coefficient and then leak through the alias correction.
double fit_tail_side(const std::vector<double>& f, double x0, double dx, double alpha,
                     bool right) {
    const std::size_t n = f.size();
    const double x_max = x0 + dx * static_cast<double>(n - 1);
    const double w_lo = 0.55 * x_max, w_hi = 0.90 * x_max;
    long double g[3][3] = {};
    long double r[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + dx * static_cast<double>(i);
        const double ax = right ? x : -x;
        if (ax < w_lo || ax > w_hi) continue;
        long double b[3];
        const double t = ax / w_lo;  // scaled basis keeps the normal matrix tame
        for (int j = 0; j < 3; ++j) b[j] = std::pow(t, -1.0 - (j + 1) * alpha);
        for (int j = 0; j < 3; ++j) {
            for (int k = j; k < 3; ++k) g[j][k] += b[j] * b[k];
            r[j] += f[i] * b[j];
        }
    }
    for (int j = 1; j < 3; ++j)
        for (int k = 0; k < j; ++k) g[j][k] = g[k][j];
    // 3x3 Gaussian elimination with partial pivoting, long double throughout
    long double A[3][4] = {{g[0][0], g[0][1], g[0][2], r[0]},
                           {g[1][0], g[1][1], g[1][2], r[1]},
                           {g[2][0], g[2][1], g[2][2], r[2]}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(static_cast<double>(A[row][col])) >
                std::abs(static_cast<double>(A[piv][col])))
                piv = row;
        std::swap(A[piv], A[col]);
        for (int row = col + 1; row < 3; ++row) {
            const long double m = A[row][col] / A[col][col];
            for (int k = col; k < 4; ++k) A[row][k] -= m * A[col][k];
        }
    }
    long double sol[3];
    for (int row = 2; row >= 0; --row) {
        long double acc = A[row][3];
        for (int k = row + 1; k < 3; ++k) acc -= A[row][k] * sol[k];
        sol[row] = acc / A[row][row];
    }
    // undo the basis scaling: sol[0] * (x/w_lo)^(-1-a) = sol[0] w_lo^(1+a) x^(-1-a)
    const double a1 = static_cast<double>(sol[0]) * std::pow(w_lo, 1.0 + alpha);
    return a1 / alpha;
}

TailFit fit_tails(const std::vector<double>& f, double x0, double dx, double alpha) {
    return {fit_tail_side(f, x0, dx, alpha, true), fit_tail_side(f, x0, dx, alpha, false)};
}

// Sum of the leading tail model over the images x +- k*P of the sampling comb;
// the infinite remainder is folded in with a midpoint-rule integral.
double alias_sum(double x, double period, double alpha, double c1, double d1) {
    constexpr int K = 32;
    double acc = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double p = static_cast<double>(k) * period;
        acc += alpha * c1 * std::pow(p + x, -1.0 - alpha);
        acc += alpha * d1 * std::pow(p - x, -1.0 - alpha);
    }
    const double edge = (K + 0.5) * period;
    acc += c1 * std::pow(edge + x, -alpha) / period;
    acc += d1 * std::pow(edge - x, -alpha) / period;
    return acc;
}

}  // namespace

std::vector<double> DistTable::grid() const {
    std::vector<double> g(size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = x_at(i);
    return g;
}

DistTable build_table(const StableParams& params, const TableSpec& spec) {
    const double alpha = params.alpha;
    const double c = std::cos(0.5 * M_PI * params.rho);
    const double s = std::sin(0.5 * M_PI * params.rho);
    if (spec.tolerance < 1e-12) {
        throw domain_error("table tolerance must be >= 1e-12");
    }

    const double x_max = spec.x_max > 0.0 ? spec.x_max : (alpha >= 1.0 ? 150.0 : 400.0);
    if (x_max < 50.0) throw domain_error("table extent must cover at least [-50, 50]");
    const double period =
        spec.alias_period > 0.0 ? spec.alias_period
                                : (alpha >= 1.0 ? 5e4 : (alpha >= 0.8 ? 3e4 : 4e4));
    if (x_max > period / 8.0) throw domain_error("table extent too large for alias period");

    const double dlambda = 2.0 * M_PI / period;
    const double decay_exponent = 39.0;  // exp(-39) ~ 1e-17 at the spectral boundary
    // alpha < 1 densities are peakier relative to their tails; keep the output
    // grid finer there so the order-12 interpolation stays below tolerance
    const double min_extent =
        alpha >= 1.0 ? spec.min_lambda_extent : std::max(spec.min_lambda_extent, 520.0);
    const double lambda_needed =
        std::max(min_extent, std::pow(decay_exponent / c, 1.0 / alpha));
    std::size_t n_fft = next_pow2(2.0 * lambda_needed / dlambda);
    n_fft = std::min(n_fft, spec.max_fft_size);
    const double lambda_eff = 0.5 * static_cast<double>(n_fft) * dlambda;

    // leftover spectral mass beyond the grid
    const double expo = std::pow(lambda_eff, alpha) * c;
    const double truncation =
        std::exp(-expo) * std::pow(lambda_eff, 1.0 - alpha) / (M_PI * alpha * c);
    if (truncation > 0.05 * spec.tolerance) {
        throw accuracy_error(
            "characteristic function decays too slowly for the requested tolerance "
            "(alpha=" + std::to_string(alpha) + ")",
            truncation);
    }

    // invert: f(m*dx) = (dlambda/2pi) * sum_k conj(phi(k dlambda)) e^{+2pi i km/N}
    std::vector<std::complex<double>> spectrum(n_fft / 2 + 1);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double u = std::pow(static_cast<double>(k) * dlambda, alpha);
        const double mag = std::exp(-u * c);
        spectrum[k] = {mag * std::cos(u * s), -mag * std::sin(u * s)};
    }
    spectrum.back().imag(0.0);
    std::vector<double> raw = halfcomplex_to_real(std::move(spectrum), n_fft);

    // sum_m out[m] = N * in[0] exactly; the numerical defect is the FFT's
    // constant-mode roundoff, which would otherwise bias the whole density
    double fft_bias;
    {
        long double acc = 0.0L;
        for (double v : raw) acc += v;
        fft_bias = static_cast<double>(acc / static_cast<long double>(n_fft) - 1.0L);
    }

    const double dx_fft = period / static_cast<double>(n_fft);
    const double target_dx = M_PI / min_extent;
    const auto decimate = std::max<std::ptrdiff_t>(
        1, static_cast<std::ptrdiff_t>(std::floor(target_dx / dx_fft)));
    const double dx = dx_fft * static_cast<double>(decimate);
    const auto m_half = static_cast<std::ptrdiff_t>(std::floor(x_max / dx));
    const std::size_t n_table = static_cast<std::size_t>(2 * m_half + 1);

    const double scale = dlambda / (2.0 * M_PI);
    std::vector<double> pdf_raw(n_table);
    for (std::size_t i = 0; i < n_table; ++i) {
        const std::ptrdiff_t m = (static_cast<std::ptrdiff_t>(i) - m_half) * decimate;
        const std::size_t j =
            static_cast<std::size_t>((m % static_cast<std::ptrdiff_t>(n_fft) +
                                      static_cast<std::ptrdiff_t>(n_fft)) %
                                     static_cast<std::ptrdiff_t>(n_fft));
        pdf_raw[i] = scale * (raw[j] - fft_bias);
    }
    raw.clear();
    raw.shrink_to_fit();

    DistTable t;
    t.params = params;
    t.dx = dx;
    t.x0 = -dx * static_cast<double>(m_half);
    t.tolerance = spec.tolerance;

    // fit leading tail coefficients, remove the model's alias images, refit
    std::vector<double> pdf = pdf_raw;
    TailFit fit{};
    for (int pass = 0; pass < 2; ++pass) {
        fit = fit_tails(pdf, t.x0, dx, alpha);
        for (std::size_t i = 0; i < n_table; ++i) {
            const double x = t.x0 + dx * static_cast<double>(i);
            pdf[i] = pdf_raw[i] - alias_sum(x, period, alpha, fit.c1, fit.d1);
        }
    }
    t.c1 = fit.c1;
    t.d1 = fit.d1;
    t.pdf_values = std::move(pdf);
    for (double v : t.pdf_values) {
        if (!(v > 0.0)) {
            throw accuracy_error("inverted density is not positive across the table window",
                                 std::abs(v));
        }
    }

    // cdf by Euler-Maclaurin corrected cumulative trapezoid, anchored at
    // F(0) = 1/2 - rho/(2 alpha)
    const double cdf0 = 0.5 - params.rho / (2.0 * alpha);
    const auto center = static_cast<std::size_t>(m_half);
    const std::vector<double> df1 = table_derivative(t.pdf_values, dx, 1);
    const std::vector<double> df3 = table_derivative(t.pdf_values, dx, 3);
    const std::vector<double> df5 = table_derivative(t.pdf_values, dx, 5);
    const double h2 = dx * dx / 12.0;
    const double h4 = h2 * dx * dx / 60.0;        // dx^4/720
    const double h6 = h4 * dx * dx / 42.0;        // dx^6/30240
    std::vector<double> cdf(n_table);
    cdf[center] = cdf0;
    {
        double sum = 0.0, comp = 0.0;  // Kahan
        for (std::size_t i = center + 1; i < n_table; ++i) {
            const double term = 0.5 * dx * (t.pdf_values[i - 1] + t.pdf_values[i]);
            const double y = term - comp;
            const double u = sum + y;
            comp = (u - sum) - y;
            sum = u;
            cdf[i] = cdf0 + sum - h2 * (df1[i] - df1[center]) + h4 * (df3[i] - df3[center]) -
                     h6 * (df5[i] - df5[center]);
        }
        sum = 0.0;
        comp = 0.0;
        for (std::size_t k = 1; k <= center; ++k) {
            const std::size_t i = center - k;
            const double term = 0.5 * dx * (t.pdf_values[i + 1] + t.pdf_values[i]);
            const double y = term - comp;
            const double u = sum + y;
            comp = (u - sum) - y;
            sum = u;
            cdf[i] = cdf0 - sum - h2 * (df1[i] - df1[center]) + h4 * (df3[i] - df3[center]) -
                     h6 * (df5[i] - df5[center]);
        }
    }
    t.cdf_values = std::move(cdf);

    // choose the tail cuts: outermost nodes where the leading series still matches
    auto pick_cut = [&](bool right) {
        const double x_lo = 0.45 * x_max, x_hi = 0.92 * x_max;
        double best_mis = 1e300;
        std::size_t best_i = right ? n_table - 1 : 0;
        std::size_t chosen = 0;
        double chosen_mis = 0.0;
        bool found = false;
        for (std::size_t i = 0; i < n_table; ++i) {
            const double x = t.x0 + dx * static_cast<double>(i);
            const double ax = right ? x : -x;
            if (ax < x_lo || ax > x_hi) continue;
            const double fs = alpha * (right ? t.c1 : t.d1) * std::pow(ax, -1.0 - alpha);
            const double Fs = (right ? t.c1 : t.d1) * std::pow(ax, -alpha);
            const double Ft = right ? 1.0 - t.cdf_values[i] : t.cdf_values[i];
            const double mis = std::max(std::abs(t.pdf_values[i] - fs) / t.pdf_values[i],
                                        std::abs(Ft - Fs) / Ft);
            if (mis < best_mis) {
                best_mis = mis;
                best_i = i;
            }
            if (mis <= spec.tail_match_tol) {
                chosen = i;  // keep scanning; prefer the outermost admissible node
                chosen_mis = mis;
                found = true;
                if (!right) break;
            }
        }
        struct R {
            std::size_t idx;
            double mismatch;
        };
        if (found) return R{chosen, chosen_mis};
        return R{best_i, best_mis};
    };
    const auto cut_r = pick_cut(true);
    const auto cut_l = pick_cut(false);
    t.tail_mismatch = std::max(cut_r.mismatch, cut_l.mismatch);
    if (t.tail_mismatch > spec.tail_match_tol) {
        throw accuracy_error("leading tail series does not reach the requested match tolerance",
                             t.tail_mismatch);
    }
    t.tail_cut_right = t.x_at(cut_r.idx);
    t.tail_cut_left = t.x_at(cut_l.idx);
    // amplitudes matched at the cuts keep evaluation continuous across them
    t.c1_pdf = t.pdf_values[cut_r.idx] * std::pow(t.tail_cut_right, 1.0 + alpha) / alpha;
    t.c1_cdf = (1.0 - t.cdf_values[cut_r.idx]) * std::pow(t.tail_cut_right, alpha);
    t.d1_pdf = t.pdf_values[cut_l.idx] * std::pow(-t.tail_cut_left, 1.0 + alpha) / alpha;
    t.d1_cdf = t.cdf_values[cut_l.idx] * std::pow(-t.tail_cut_left, alpha);

    // achieved-error estimate: truncation + residual aliasing + interpolation,
    // the latter probed by reconstructing odd nodes from the even ones
    double interp_est = 0.0;
    {
        std::vector<double> coarse((n_table + 1) / 2);
        for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = t.pdf_values[2 * i];
        UniformInterp<12> probe(t.x0, 2.0 * dx, coarse);
        for (std::size_t i = 1; i + 1 < n_table; i += 2) {
            interp_est = std::max(interp_est, std::abs(probe(t.x_at(i)) - t.pdf_values[i]));
        }
        interp_est /= 4096.0;  // order-12 refinement factor between h and 2h
    }
    const double alias_resid =
        4.0 * alpha * (std::abs(t.c1) + std::abs(t.d1)) * std::pow(0.9 * period, -1.0 - 2.0 * alpha);
    t.achieved_error = truncation + alias_resid + interp_est + 5e-15;
    if (t.achieved_error > spec.tolerance) {
        throw accuracy_error("table build missed the requested tolerance", t.achieved_error);
    }

    // table invariants
    for (std::size_t i = 0; i + 1 < n_table; ++i) {
        if (!(t.cdf_values[i] < t.cdf_values[i + 1])) {
            throw accuracy_error("tabulated cdf is not strictly increasing", dx);
        }
    }
    if (!(t.cdf_values.front() > 0.0) || !(t.cdf_values.back() < 1.0)) {
        throw accuracy_error("tabulated cdf left (0,1)", 0.0);
    }
    return t;
}

StableLaw::StableLaw(const StableParams& params, const TableSpec& spec)
    : StableLaw(build_table(params, spec)) {}

StableLaw::StableLaw(DistTable table) : table_(std::move(table)) { init_interp(); }

void StableLaw::init_interp() {
    pdf_interp_ = UniformInterp<12>(table_.x0, table_.dx, table_.pdf_values);
    cdf_interp_ = UniformInterp<12>(table_.x0, table_.dx, table_.cdf_values);
    const double a = alpha();
    cdf_cut_left_ = table_.d1_cdf * std::pow(-table_.tail_cut_left, -a);
    cdf_cut_right_ = 1.0 - table_.c1_cdf * std::pow(table_.tail_cut_right, -a);
}

double StableLaw::cdf_at_zero() const {
    return 0.5 - table_.params.rho / (2.0 * table_.params.alpha);
}

double StableLaw::density(double x) const {
    const double a = alpha();
    if (x > table_.tail_cut_right) return a * table_.c1_pdf * std::pow(x, -1.0 - a);
    if (x < table_.tail_cut_left) return a * table_.d1_pdf * std::pow(-x, -1.0 - a);
    return pdf_interp_(x);
}

double StableLaw::cdf(double x) const {
    const double a = alpha();
    if (x > table_.tail_cut_right) return 1.0 - table_.c1_cdf * std::pow(x, -a);
    if (x < table_.tail_cut_left) return table_.d1_cdf * std::pow(-x, -a);
    return cdf_interp_(x);
}

double StableLaw::quantile(double zeta) const {
    if (!(zeta > 0.0) || !(zeta < 1.0)) {
        throw domain_error("quantile argument must lie in (0,1), got " + std::to_string(zeta));
    }
    const double a = alpha();
    if (zeta < cdf_cut_left_) return -std::pow(table_.d1_cdf / zeta, 1.0 / a);
    if (zeta > cdf_cut_right_) return std::pow(table_.c1_cdf / (1.0 - zeta), 1.0 / a);

    // bracket on the table nodes, then Newton with bisection fallback
    const auto& F = table_.cdf_values;
    auto hi_it = std::lower_bound(F.begin(), F.end(), zeta);
    std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(hi_it - F.begin()), 1,
                                             F.size() - 1);
    double lo_x = table_.x_at(hi - 1), hi_x = table_.x_at(hi);
    double lo_F = F[hi - 1], hi_F = F[hi];
    double x = lo_x + (zeta - lo_F) / (hi_F - lo_F) * (hi_x - lo_x);
    for (int it = 0; it < 100; ++it) {
        const double Fx = cdf(x);
        const double err = Fx - zeta;
        if (err > 0) {
            hi_x = x;
        } else {
            lo_x = x;
        }
        double step = err / std::max(density(x), 1e-300);
        double x_new = x - step;
        if (!(x_new > lo_x) || !(x_new < hi_x)) x_new = 0.5 * (lo_x + hi_x);
        if (std::abs(x_new - x) <= 1e-13 * (1.0 + std::abs(x_new))) {
            return x_new;
        }
        x = x_new;
    }
    return x;
}

std::shared_ptr<const StableLaw> make_law(double alpha, double beta, const TableSpec& spec) {
    static std::mutex mu;
    static std::map<std::tuple<double, double, double, double>,
                    std::shared_ptr<const StableLaw>>
        cache;
    const auto key = std::make_tuple(alpha, beta, spec.x_max, spec.tolerance);
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto law = std::make_shared<const StableLaw>(make_params(alpha, beta), spec);
    cache.emplace(key, law);
    return law;
}

}  // namespace frd
