#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace frd {

/// Local barycentric Lagrange interpolation of order `Stencil-1` on a uniform grid.
/// The stencil is centered on the query point and clamped at the ends.
template <std::size_t Stencil = 12>
class UniformInterp {
public:
    UniformInterp() = default;
    UniformInterp(double x0, double dx, std::span<const double> values)
        : x0_(x0), dx_(dx), values_(values.begin(), values.end()) {}

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + dx_ * static_cast<double>(values_.size() - 1); }
    double spacing() const { return dx_; }
    std::size_t size() const { return values_.size(); }

    double operator()(double x) const {
        const double t_global = (x - x0_) / dx_;
        const auto n = static_cast<std::ptrdiff_t>(values_.size());
        std::ptrdiff_t base = static_cast<std::ptrdiff_t>(std::floor(t_global)) -
                              static_cast<std::ptrdiff_t>(Stencil / 2 - 1);
        base = std::clamp<std::ptrdiff_t>(base, 0, n - static_cast<std::ptrdiff_t>(Stencil));
        const double t = t_global - static_cast<double>(base);

        // On-node queries short-circuit to the stored value.
        const double tr = std::round(t);
        if (std::abs(t - tr) < 1e-12 && tr >= 0 && tr < static_cast<double>(Stencil)) {
            return values_[static_cast<std::size_t>(base + static_cast<std::ptrdiff_t>(tr))];
        }

        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < Stencil; ++j) {
            const double c = weights()[j] / (t - static_cast<double>(j));
            num += c * values_[static_cast<std::size_t>(base) + j];
            den += c;
        }
        return num / den;
    }

private:
    // Barycentric weights for equispaced nodes: (-1)^j C(S-1, j).
    static const std::array<double, Stencil>& weights() {
        static const std::array<double, Stencil> w = [] {
            std::array<double, Stencil> a{};
            double binom = 1.0;
            for (std::size_t j = 0; j < Stencil; ++j) {
                a[j] = (j % 2 == 0) ? binom : -binom;
                binom = binom * static_cast<double>(Stencil - 1 - j) / static_cast<double>(j + 1);
            }
            return a;
        }();
        return w;
    }

    double x0_ = 0;
    double dx_ = 1;
    std::vector<double> values_;
};

/// Shape-preserving monotone cubic (Fritsch-Carlson) on a uniform grid.
/// Used where guaranteed monotonicity matters more than high order.
class PchipInterp {
public:
    PchipInterp() = default;
    PchipInterp(double x0, double dx, std::span<const double> values)
        : x0_(x0), dx_(dx), y_(values.begin(), values.end()) {
        const std::size_t n = y_.size();
        d_.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> slope(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (y_[i + 1] - y_[i]) / dx_;
        d_[0] = slope[0];
        d_[n - 1] = slope[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (slope[i - 1] * slope[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                // harmonic mean keeps the interpolant monotone on monotone data
                d_[i] = 2.0 * slope[i - 1] * slope[i] / (slope[i - 1] + slope[i]);
            }
        }
    }

    double operator()(double x) const {
        const std::size_t n = y_.size();
        double t_global = (x - x0_) / dx_;
        auto i = static_cast<std::ptrdiff_t>(std::floor(t_global));
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
        const double t = t_global - static_cast<double>(i);
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        const auto k = static_cast<std::size_t>(i);
        return h00 * y_[k] + h10 * dx_ * d_[k] + h01 * y_[k + 1] + h11 * dx_ * d_[k + 1];
    }

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + dx_ * static_cast<double>(y_.size() - 1); }

private:
    double x0_ = 0;
    double dx_ = 1;
    std::vector<double> y_;
    std::vector<double> d_;
};

}  // namespace frd
