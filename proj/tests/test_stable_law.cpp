#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frd/stable_law.hpp"
#include "oracles.hpp"

using namespace frd;

TEST_CASE("parameter construction and the rho case split") {
    CHECK(make_params(1.0, 0.4).rho == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(make_params(0.5, 0.0).rho == doctest::Approx(0.0));
    CHECK(make_params(1.5, 0.5).rho == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(make_params(0.5, 0.4).rho == doctest::Approx(0.2).epsilon(1e-15));

    CHECK_THROWS_AS(make_params(2.0, 0.0), domain_error);
    CHECK_THROWS_AS(make_params(0.0, 0.0), domain_error);
    CHECK_THROWS_AS(make_params(-0.5, 0.0), domain_error);
    CHECK_THROWS_AS(make_params(1.0, 1.0), domain_error);
    CHECK_THROWS_AS(make_params(1.0, -1.0), domain_error);

    // |rho| < min(alpha, 2 - alpha) holds across the admissible box
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ua(1e-3, 2.0 - 1e-3), ub(-1.0 + 1e-3, 1.0 - 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const auto p = make_params(ua(rng), ub(rng));
        CHECK(std::abs(p.rho) < std::min(p.alpha, 2.0 - p.alpha));
    }
}

TEST_CASE("symbol values") {
    const auto sym = make_params(1.0, 0.0);
    CHECK(char_exponent(sym, 1.0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(char_exponent(sym, 1.0).imag() == doctest::Approx(0.0));
    CHECK(std::abs(char_exponent(sym, 0.0)) == 0.0);

    const auto skew = make_params(1.0, 0.5);  // rho = 0.5
    const auto v = char_exponent(skew, 1.0);
    CHECK(v.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));

    // conjugate symmetry, exact to machine precision
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> ua(0.05, 1.95), ub(-0.95, 0.95), ul(-40.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = make_params(ua(rng), ub(rng));
        const double lam = ul(rng);
        const auto a = char_exponent(p, lam);
        const auto b = char_exponent(p, -lam);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == -b.imag());
        CHECK(std::abs(char_exponent(p, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("characteristic function agrees with exp(-symbol)") {
    const auto p0 = make_params(0.5, 0.0);
    CHECK(char_function(p0, 1.0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(char_function(p0, 0.0).real() == doctest::Approx(1.0));

    const auto p1 = make_params(1.0, 0.5);
    const auto expect = std::exp(-std::complex<double>(std::sqrt(0.5), -std::sqrt(0.5)));
    CHECK(char_function(p1, 1.0).real() == doctest::Approx(expect.real()).epsilon(1e-14));
    CHECK(char_function(p1, 1.0).imag() == doctest::Approx(expect.imag()).epsilon(1e-14));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.05, 1.95), ub(-0.95, 0.95), ul(-20.0, 20.0);
    for (int i = 0; i < 300; ++i) {
        const auto p = make_params(ua(rng), ub(rng));
        const double lam = ul(rng);
        const auto lhs = char_function(p, lam);
        const auto rhs = std::exp(-char_exponent(p, lam));
        CHECK(std::abs(lhs - rhs) < 1e-15);
    }
}

TEST_CASE("alpha = 1 explicit family to 1e-10") {
    for (double beta : {-0.8, -0.5, 0.0, 0.5, 0.8}) {
        CAPTURE(beta);
        auto law = make_law(1.0, beta);
        oracle::Alpha1 ex(beta);

        double worst_pdf = 0, worst_cdf = 0, worst_q = 0;
        for (int i = 0; i < 1000; ++i) {
            const double x = -30.0 + 60.0 * i / 999.0;
            worst_pdf = std::max(worst_pdf, std::abs(law->density(x) - ex.pdf(x)));
            worst_cdf = std::max(worst_cdf, std::abs(law->cdf(x) - ex.cdf(x)));
        }
        for (int i = 0; i < 1000; ++i) {
            const double zeta = 0.025 + 0.95 * i / 999.0;
            worst_q = std::max(worst_q, std::abs(law->quantile(zeta) - ex.quantile(zeta)));
        }
        CHECK(worst_pdf < 1e-10);
        CHECK(worst_cdf < 1e-10);
        CHECK(worst_q < 1e-10);
    }
}

TEST_CASE("explicit values from the alpha = 1 block") {
    auto cauchy = make_law(1.0, 0.0);
    CHECK(cauchy->density(0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    CHECK(cauchy->cdf(1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cauchy->quantile(0.75) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(std::abs(cauchy->quantile(0.5)) < 1e-12);

    auto law = make_law(1.0, 0.5);
    const double sigma = std::sin(M_PI / 4.0), kappa = std::cos(M_PI / 4.0);
    CHECK(law->density(sigma) == doctest::Approx(1.0 / (M_PI * kappa)).epsilon(1e-12));
    CHECK(law->cdf(sigma) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("symmetric density at zero: Gamma(1+1/alpha)/pi") {
    for (double alpha : {0.5, 0.8, 1.2, 1.7}) {
        CAPTURE(alpha);
        auto law = make_law(alpha, 0.0);
        const double expect = oracle::symmetric_pdf_at_zero(alpha);
        CHECK(std::abs(law->density(0.0) / expect - 1.0) < 1e-7);
        // the quadrature oracle itself agrees with the Gamma closed form
        CHECK(expect == doctest::Approx(std::tgamma(1.0 + 1.0 / alpha) / M_PI).epsilon(1e-11));
    }
}

TEST_CASE("density cross-checked against direct quadrature, asymmetric case") {
    auto law = make_law(1.5, 0.3);
    for (double x : {-3.0, -1.0, 0.0, 0.7, 2.0, 5.0}) {
        CAPTURE(x);
        const double expect = oracle::stable_pdf(1.5, law->params().rho, x);
        CHECK(std::abs(law->density(x) - expect) < 1e-9);
    }
}

TEST_CASE("cdf at zero") {
    // alpha < 1: F(0) = (1 - beta)/2
    auto law = make_law(0.5, 0.4);
    CHECK(law->cdf(0.0) == doctest::Approx(0.3).epsilon(1e-9));

    // general: independent quadrature
    for (auto [alpha, beta] : {std::pair{1.5, 0.3}, {1.2, -0.6}, {0.8, 0.5}}) {
        CAPTURE(alpha);
        CAPTURE(beta);
        auto l = make_law(alpha, beta);
        CHECK(l->cdf(0.0) ==
              doctest::Approx(oracle::stable_cdf_at_zero(alpha, l->params().rho)).epsilon(1e-9));
    }
}

TEST_CASE("reflection: swapping the sign of beta mirrors the law") {
    for (auto [alpha, beta] : {std::pair{1.5, 0.3}, {0.7, 0.5}, {1.0, 0.8}}) {
        CAPTURE(alpha);
        CAPTURE(beta);
        auto plus = make_law(alpha, beta);
        auto minus = make_law(alpha, -beta);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> ux(-40.0, 40.0);
        for (int i = 0; i < 200; ++i) {
            const double x = ux(rng);
            CHECK(std::abs(plus->density(x) - minus->density(-x)) < 1e-9);
            CHECK(std::abs(plus->cdf(x) - (1.0 - minus->cdf(-x))) < 1e-9);
        }
    }
}

TEST_CASE("cdf is strictly monotone") {
    auto law = make_law(1.3, 0.5);
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> ux(-120.0, 120.0);
    for (int i = 0; i < 500; ++i) {
        double x1 = ux(rng), x2 = ux(rng);
        if (x1 == x2) continue;
        if (x1 > x2) std::swap(x1, x2);
        CHECK(law->cdf(x1) < law->cdf(x2));
    }
}

TEST_CASE("normalization: table mass plus tail series mass is one") {
    for (auto [alpha, beta] : {std::pair{1.0, 0.5}, {1.3, -0.5}, {1.6, 0.0}}) {
        CAPTURE(alpha);
        CAPTURE(beta);
        auto law = make_law(alpha, beta);
        const auto& t = law->table();
        const double lo = t.tail_cut_left, hi = t.tail_cut_right;
        const double interior =
            oracle::integrate([&](double x) { return law->density(x); }, lo, hi, 1e-10);
        const double left_mass = t.d1_cdf * std::pow(-lo, -alpha);
        const double right_mass = t.c1_cdf * std::pow(hi, -alpha);
        CHECK(interior + left_mass + right_mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("tail exponents from log-log fits") {
    for (double alpha : {0.7, 1.3, 1.6}) {
        for (double beta : {-0.5, 0.0, 0.5}) {
            CAPTURE(alpha);
            CAPTURE(beta);
            auto law = make_law(alpha, beta);
            const double cut = law->table().tail_cut_right;
            std::vector<double> xs, tail_f, tail_F;
            for (int i = 0; i < 40; ++i) {
                const double x = cut * std::pow(4.0, i / 39.0);
                xs.push_back(x);
                tail_f.push_back(law->density(x));
                tail_F.push_back(1.0 - law->cdf(x));
            }
            CHECK(std::abs(oracle::loglog_slope(xs, tail_F) / (-alpha) - 1.0) < 0.02);
            CHECK(std::abs(oracle::loglog_slope(xs, tail_f) / (-1.0 - alpha) - 1.0) < 0.02);
        }
    }
}

TEST_CASE("quantile round trips and domain checks") {
    auto law = make_law(1.5, 0.3);
    CHECK(law->quantile(law->cdf(2.0)) == doctest::Approx(2.0).epsilon(1e-10));
    // round trip through the far tails exercises the series branch
    for (double zeta : {1e-6, 1e-3, 0.2, 0.5, 0.9, 1.0 - 1e-6}) {
        CAPTURE(zeta);
        const double x = law->quantile(zeta);
        CHECK(law->cdf(x) == doctest::Approx(zeta).epsilon(1e-9));
    }
    // strictly increasing
    double prev = law->quantile(1e-4);
    for (int i = 1; i <= 200; ++i) {
        const double q = law->quantile(1e-4 + (1.0 - 2e-4) * i / 200.0);
        CHECK(q > prev);
        prev = q;
    }
    CHECK_THROWS_AS(law->quantile(0.0), domain_error);
    CHECK_THROWS_AS(law->quantile(1.0), domain_error);
    CHECK_THROWS_AS(law->quantile(-0.2), domain_error);
}

TEST_CASE("table builder diagnostics") {
    // symmetric law has cdf(0) = 1/2 on the nose
    auto t = build_table(make_params(1.5, 0.0));
    const auto mid = static_cast<std::size_t>(-t.x0 / t.dx + 0.5);
    CHECK(t.x_at(mid) == doctest::Approx(0.0));
    CHECK(t.cdf_values[mid] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(t.achieved_error <= t.tolerance);
    CHECK(t.tail_cut_right > 50.0);
    CHECK(t.tail_cut_left < -50.0);

    // very small alpha cannot reach the default tolerance
    CHECK_THROWS_AS(build_table(make_params(0.3, 0.0)), accuracy_error);

    TableSpec bad;
    bad.tolerance = 1e-13;
    CHECK_THROWS_AS(build_table(make_params(1.5, 0.0), bad), domain_error);
    TableSpec small;
    small.x_max = 10.0;
    CHECK_THROWS_AS(build_table(make_params(1.5, 0.0), small), domain_error);
}
