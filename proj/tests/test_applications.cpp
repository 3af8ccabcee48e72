#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lcentropy/applications.hpp"
#include "lcentropy/two_piece.hpp"
#include "oracles.hpp"

using namespace lcentropy;

namespace {

Density exp1() {
    return normalized(PiecewiseExpAffineDensity({{{0.0, 40.0}, 1.0, 0.0}}));
}

Density uniform01() { return PiecewiseExpAffineDensity({{{0.0, 1.0}, 0.0, 0.0}}); }

Density gaussian_grid(std::size_t n = 10001) {
    const double lo = -8.0, hi = 8.0;
    const double step = (hi - lo) / double(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + step * double(i);
        v[i] = std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
    }
    return normalized(GridDensity(lo, step, std::move(v)));
}

constexpr double kEulerGamma = 0.577215664901532861;

}  // namespace

TEST_CASE("corollary_constants") {
    CHECK(corollary_constants(2.0, 2.0, 1.0).renyi_floor_shift ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(corollary_constants(2.0, 3.0, 3.0).fmw_gap == doctest::Approx(0.0));
    // (p, q) = (inf, 1): the gap is 1, attained by Exp(1)
    const auto c = corollary_constants(2.0, std::numeric_limits<double>::infinity(), 1.0);
    CHECK(c.fmw_gap == doctest::Approx(1.0));
    const Density e1 = exp1();
    CHECK(shannon_entropy(e1) - renyi_entropy(e1, kAlphaInfinity) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(corollary_constants(1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("relative_entropy_to_gaussian") {
    CHECK(relative_entropy_to_gaussian(gaussian_grid()) == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(std::abs(relative_entropy_to_gaussian(gaussian_grid())) < 1e-4);
    CHECK(relative_entropy_to_gaussian(exp1()) ==
          doctest::Approx(0.5 * std::log(2.0 * M_PI / M_E)).epsilon(1e-9));
    CHECK(relative_entropy_to_gaussian(uniform01()) ==
          doctest::Approx(0.5 * std::log(2.0 * M_PI * M_E / 12.0)).epsilon(1e-12));

    // maximum-entropy property: nonnegative on anything
    std::mt19937_64 rng(oracles::test_seed() + 40);
    for (int trial = 0; trial < 200; ++trial) {
        Density d = oracles::random_log_concave(rng);
        CHECK(relative_entropy_to_gaussian(d) >= -1e-10);
    }
    for (int trial = 0; trial < 100; ++trial) {
        Density d = oracles::random_step(rng);
        CHECK(relative_entropy_to_gaussian(d) >= -1e-10);
    }
}

TEST_CASE("capacity_bounds") {
    const auto b = capacity_bounds(exp1(), 1.0);
    CHECK(b.gaussian_capacity == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-10));
    CHECK(b.upper == doctest::Approx(0.765513).epsilon(1e-5));
    CHECK(b.upper == b.gaussian_capacity + b.relative_entropy);  // exact by construction

    const auto g = capacity_bounds(gaussian_grid(), 2.5);
    CHECK(g.upper - g.gaussian_capacity == doctest::Approx(0.0).epsilon(1e-4));

    // log-concave noise never opens the sandwich beyond 0.42 nats
    std::mt19937_64 rng(oracles::test_seed() + 41);
    for (int trial = 0; trial < 150; ++trial) {
        Density d = oracles::random_log_concave(rng);
        const auto cb = capacity_bounds(d, 1.0 + double(trial % 7));
        CHECK(cb.relative_entropy <= log_concave_gap_ceiling() + 1e-9);
        CHECK(cb.upper - cb.gaussian_capacity < 0.42);
    }
}

TEST_CASE("epi_constants") {
    const auto c2 = epi_constants(2.0);
    CHECK(c2.c_minus == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(c2.c_plus == doctest::Approx(125.0 / 9.0).epsilon(1e-10));
    CHECK(c2.ratio == doctest::Approx(125.0 / 36.0).epsilon(1e-10));
    // alpha -> infinity: C_- -> 1
    CHECK(epi_constants(1e9).c_minus == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(epi_constants(1.0), std::invalid_argument);

    std::mt19937_64 rng(oracles::test_seed() + 42);
    std::uniform_real_distribution<double> ad(1.01, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = epi_constants(ad(rng));
        CHECK(c.c_minus <= c.c_plus);
        CHECK(c.ratio == doctest::Approx(c.c_plus / c.c_minus));
    }
}

TEST_CASE("renyi_power_sandwich_check") {
    // Exp(1), alpha = 2: the left side is tight
    const auto s = renyi_power_sandwich_check(exp1(), 2.0);
    CHECK(s.n_alpha == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s.lower == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s.n_alpha >= s.lower * (1.0 - 1e-9));
    CHECK(s.n_alpha <= s.upper * (1.0 + 1e-9));

    const auto u = renyi_power_sandwich_check(uniform01(), 2.0);
    CHECK(u.n_alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(u.upper == doctest::Approx(125.0 / 108.0).epsilon(1e-9));

    // random two-piece densities: the ordering holds
    std::mt19937_64 rng(oracles::test_seed() + 43);
    std::uniform_real_distribution<double> ad(1.0, 4.0), xd(0.0, 3.0), yd(-4.0, -0.1),
        alph(1.1, 6.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Density d = build_density({ad(rng), xd(rng), yd(rng)});
        const double alpha = alph(rng);
        const auto r = renyi_power_sandwich_check(d, alpha);
        CHECK(r.n_alpha >= r.lower * (1.0 - 1e-9));
        CHECK(r.n_alpha <= r.upper * (1.0 + 1e-9));
    }

    PiecewiseExpAffineDensity valley({{{-1.0, 0.0}, 1.0, 0.0}, {{0.0, 1.0}, -1.0, 0.0}});
    CHECK_THROWS_AS(renyi_power_sandwich_check(normalized(valley), 2.0), std::invalid_argument);
}

TEST_CASE("convolve and reverse_epi_check: Exp + Exp against the Gamma(2) closed form") {
    const Density e = exp1();
    const auto r = reverse_epi_check(e, e, 4096);
    const double n_true = std::exp(2.0 * (1.0 + kEulerGamma)) / (2.0 * M_PI * M_E);
    CHECK(std::abs(r.n_sum - n_true) / n_true < 1e-3);
    CHECK(r.epi_lower == doctest::Approx(2.0 * M_E / (2.0 * M_PI)).epsilon(1e-8));
    CHECK(r.n_sum >= r.epi_lower);
    CHECK(r.n_sum <= r.epi_upper);

    // triangle density: h = 1/2, N(X+Y) >= N(X) + N(Y)
    const Density u = uniform01();
    const auto t = reverse_epi_check(u, u, 4096);
    const double n_tri = std::exp(2.0 * 0.5) / (2.0 * M_PI * M_E);
    CHECK(std::abs(t.n_sum - n_tri) / n_tri < 1e-3);
    CHECK(t.n_sum >= t.epi_lower);
    CHECK(t.n_sum <= t.epi_upper);

    CHECK_THROWS_AS(convolve(u, u, 4), std::invalid_argument);
}

TEST_CASE("reverse EPI holds on random log-concave pairs") {
    std::mt19937_64 rng(oracles::test_seed() + 44);
    for (int trial = 0; trial < 25; ++trial) {
        Density a = oracles::random_log_concave(rng);
        Density b = oracles::random_log_concave(rng);
        const auto r = reverse_epi_check(a, b, 2048);
        CHECK(r.n_sum >= r.epi_lower * (1.0 - 1e-6));
        CHECK(r.n_sum <= r.epi_upper * (1.0 + 1e-6));
    }
}

TEST_CASE("alpha_star") {
    const double a = alpha_star();
    CHECK(a >= 1.2405);
    CHECK(a <= 1.2415);
    CHECK(std::abs(std::log(a) / (a - 1.0) - 0.5 * std::log(6.0)) <= 1e-10);
    // bracketing sanity
    CHECK(std::log(1.2) / 0.2 > 0.5 * std::log(6.0));
    CHECK(std::log(1.3) / 0.3 < 0.5 * std::log(6.0));
}
