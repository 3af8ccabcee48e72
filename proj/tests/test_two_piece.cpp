#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lcentropy/density.hpp"
#include "lcentropy/two_piece.hpp"
#include "oracles.hpp"

using namespace lcentropy;

namespace {

// unnormalized g as a density carrier, for quadrature cross-checks
PiecewiseExpAffineDensity raw_two_piece(const TwoPieceParams& p) {
    std::vector<ExpAffineSegment> segs;
    if (p.x > 0.0) segs.push_back({{-p.a * p.x, 0.0}, 1.0 / p.a, 0.0});
    if (p.y < 0.0) segs.push_back({{0.0, -p.y}, 1.0, 0.0});
    return PiecewiseExpAffineDensity(std::move(segs));
}

TwoPieceParams random_params(std::mt19937_64& rng, double a_hi = 5.0, double x_hi = 3.0,
                             double y_lo = -3.0) {
    std::uniform_real_distribution<double> ad(1.0, a_hi), xd(0.0, x_hi), yd(y_lo, 0.0);
    TwoPieceParams p{ad(rng), xd(rng), yd(rng)};
    if (p.x == 0.0 && p.y == 0.0) p.y = -1.0;
    return p;
}

}  // namespace

TEST_CASE("build_density: reference shapes") {
    const double l2 = std::log(2.0);
    // (1, 0, -ln2): truncated exponential 2 e^{-t} on [0, ln 2]
    auto d = build_density({1.0, 0.0, -l2});
    REQUIRE(d.segments().size() == 1);
    CHECK(d.value(0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(moments(d, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_log_concave(d).log_concave);

    // (1, ln2, -ln2): the rising/falling tent
    auto tent = build_density({1.0, l2, -l2});
    REQUIRE(tent.segments().size() == 2);
    CHECK(tent.support_lo() == doctest::Approx(-l2));
    CHECK(tent.support_hi() == doctest::Approx(l2));

    // (1, 0, -40): Exp(1) up to tail mass e^{-40}
    auto e1 = build_density({1.0, 0.0, -40.0});
    CHECK(entropy_variance_gap(e1) == doctest::Approx(0.0).epsilon(1e-10));

    CHECK_THROWS_AS(build_density({1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_density({0.5, 1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_density({1.0, 501.0, -1.0}), std::invalid_argument);
}

TEST_CASE("closed_form_stats: reference values and quadrature oracle") {
    const double l2 = std::log(2.0);
    CHECK(closed_form_stats({1.0, 0.0, -l2}).mass == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(closed_form_stats({1.0, 0.0, -40.0}).second_moment - 2.0) < 1e-13);

    std::mt19937_64 rng(oracles::test_seed() + 20);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_params(rng);
        const auto s = closed_form_stats(p);
        Density g = raw_two_piece(p);
        CHECK(s.mass == doctest::Approx(oracles::mass_oracle(g)).epsilon(1e-9));
        CHECK(s.first_moment == doctest::Approx(oracles::moment_oracle(g, 1)).epsilon(1e-9));
        CHECK(s.second_moment == doctest::Approx(oracles::moment_oracle(g, 2)).epsilon(1e-9));
        CHECK(s.neg_g_log_g == doctest::Approx(oracles::entropy_oracle(g)).epsilon(1e-9));
    }
}

TEST_CASE("eval_G: equality limit and dual-path consistency") {
    // exponential limit: G vanishes
    CHECK(std::abs(eval_G({1.0, 0.0, -40.0}).G) <= 1e-10);

    // closed-form special case: h = 1 - 2 ln 2, Var = 1 - 2 ln^2 2, m = 1/2
    const double l2 = std::log(2.0);
    const auto r = eval_G({1.0, 0.0, -l2});
    const double expected = 0.25 * (std::exp(2.0 * (1.0 - 2.0 * l2) - 2.0) - (1.0 - 2.0 * l2 * l2));
    CHECK(r.G == doctest::Approx(expected).epsilon(1e-12));

    const auto r2 = eval_G({2.0, 1.0, -1.0});
    CHECK(r2.G > 0.0);
    CHECK(r2.G == doctest::Approx(r2.consistency).epsilon(1e-9));

    std::mt19937_64 rng(oracles::test_seed() + 21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = random_params(rng);
        const auto e = eval_G(p);
        CHECK(std::abs(e.G - e.consistency) <= 1e-9 * (1.0 + std::abs(e.G)));
        // quartic substitution can only lower the value
        CHECK(15.0 * std::exp(2.0 * p.x) * e.G >=
              e.poly_lower_bound - 1e-9 * (1.0 + std::abs(e.poly_lower_bound)));
    }
}

TEST_CASE("exponent_L: closed forms and limits") {
    // at a = 1 the fraction is (x-y)/(e^{x-y}-1), scaled by 2
    std::mt19937_64 rng(oracles::test_seed() + 22);
    std::uniform_real_distribution<double> xd(0.0, 4.0), yd(-4.0, 0.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double x = xd(rng), y = yd(rng);
        if (x - y < 1e-12) continue;
        const double L = exponent_L({1.0, x, y});
        CHECK(L == doctest::Approx(2.0 * (x - y) / std::expm1(x - y)).epsilon(1e-12));
    }

    // theta/(e^theta - 1) -> 1 as theta -> 0+
    CHECK(exponent_L({1.0, 1e-8, -1e-8}) == doctest::Approx(2.0).epsilon(1e-7));

    // a -> infinity: L -> 2x/(e^x - 1)
    const double x = 1.7;
    CHECK(exponent_L({1e6, x, -2.0}) == doctest::Approx(2.0 * x / std::expm1(x)).epsilon(1e-5));

    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_params(rng, 100.0, 5.0, -8.0);
        const double L = exponent_L(p);
        CHECK(L >= 0.0);
        CHECK(L <= 2.0);
    }
}

TEST_CASE("quartic_minorant") {
    CHECK(quartic_minorant(0.0) == doctest::Approx(1.0));
    CHECK(quartic_minorant(2.0) == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
    CHECK(std::exp(-2.0) >= 2.0 / 15.0);
    CHECK_THROWS_AS(quartic_minorant(2.5), std::invalid_argument);

    // e^{-L} - minorant >= 0 on a fine grid; the difference vanishes at 0,
    // is positive at 2, and has |derivative| <= 1 on [0,2], so the grid
    // check with step 2e-4 pins the sign rigorously up to 1e-15 slack
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double L = 2.0 * double(i) / double(n - 1);
        CHECK(std::exp(-L) - quartic_minorant(L) >= -1e-15);
    }
}

TEST_CASE("eval_P: point values") {
    CHECK(eval_P(4, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eval_P(0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eval_P(4, 1.0, 0.0) > 0.0);
    CHECK_THROWS_AS(eval_P(5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("poly_lower_bound: algebraic identity with 15 e^{2x} G_quartic") {
    // at a = 1 only P_0 survives
    const auto pb = poly_lower_bound({1.0, 0.0, -1.0});
    CHECK(pb == doctest::Approx(eval_P(0, 0.0, -1.0)).epsilon(1e-12));
    CHECK(pb >= 0.0);

    std::mt19937_64 rng(oracles::test_seed() + 23);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = random_params(rng);
        const auto s = closed_form_stats(p);
        const double m = s.mass;
        const double L = exponent_L(p);
        const double Gq = m * m * m * m * std::exp(-2.0 * p.x) * quartic_minorant(L) -
                          m * s.second_moment + s.first_moment * s.first_moment;
        const double lhs = 15.0 * std::exp(2.0 * p.x) * Gq;
        const double rhs = poly_lower_bound(p);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs)));

        // both limits of the equality case
        const double full = 15.0 * std::exp(2.0 * p.x) * eval_G(p).G;
        CHECK(full >= rhs - 1e-9 * (1.0 + std::abs(rhs)));
    }

    // equality limit: both sides vanish
    const auto p0 = TwoPieceParams{1.0, 0.0, -40.0};
    CHECK(std::abs(poly_lower_bound(p0)) <= 1e-8);
    CHECK(std::abs(15.0 * std::exp(0.0) * eval_G(p0).G) <= 1e-8);
}

TEST_CASE("minimize_gap: deterministic minimizer") {
    // collapsed to the equality point
    auto r0 = minimize_gap({1.0, 1.0, 0.0, 0.0, -40.0, -40.0}, 100);
    CHECK(r0.gap <= 1e-10);

    // line search in y only: gap of the truncated exponential decreases in |y|
    auto r1 = minimize_gap({1.0, 1.0, 0.0, 0.0, -2.0, -1.0}, 2000);
    CHECK(r1.argmin.y == doctest::Approx(-2.0).epsilon(1e-9));
    // brute-force oracle over the same segment
    double best = 1e300, besty = 0.0;
    for (int i = 0; i < 1001; ++i) {
        const double y = -2.0 + double(i) / 1000.0;
        const double g = gap_closed_form({1.0, 0.0, y});
        if (g < best) {
            best = g;
            besty = y;
        }
    }
    CHECK(besty == doctest::Approx(-2.0));
    CHECK(r1.gap <= best + 1e-12);

    // infimum at the exponential corner: a = 1 (the kink disappears and the
    // density is a pure truncated exponential) with maximal support length
    auto r2 = minimize_gap({1.0, 4.0, 0.0, 4.0, -12.0, 0.0}, 100000);
    CHECK(r2.gap >= -1e-9);
    CHECK(r2.gap <= 1.3e-5);  // ~ T^2 e^{-T}/2 truncation effect at support length 16
    CHECK(r2.argmin.a <= 1.0 + 1e-6);
    CHECK(r2.argmin.x - r2.argmin.y >= 15.9);

    CHECK_THROWS_AS(minimize_gap({1.0, 2.0, 0.0, 1.0, -1.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("sweep_grid: theorem scan on a reduced grid") {
    auto r = sweep_grid({1.0, 6.0, 0.0, 5.0, -6.0, 0.0}, 24, 24, 24, 1);
    CHECK(r.min_gap >= -1e-9);
    CHECK(r.min_G >= -1e-9);
    CHECK(r.L_min >= 0.0);
    CHECK(r.L_max <= 2.0);
    CHECK(r.points == 24 * 24 * 24 - 24);  // the degenerate x = y = 0 line is skipped

    // thread count must not change the result
    auto r4 = sweep_grid({1.0, 6.0, 0.0, 5.0, -6.0, 0.0}, 24, 24, 24, 4);
    CHECK(r4.min_gap == r.min_gap);
    CHECK(r4.min_G == r.min_G);
    CHECK(r4.argmin_gap.a == r.argmin_gap.a);
    CHECK(r4.argmin_gap.x == r.argmin_gap.x);
    CHECK(r4.argmin_gap.y == r.argmin_gap.y);
}

TEST_CASE("gap_closed_form matches density_core on random params") {
    std::mt19937_64 rng(oracles::test_seed() + 24);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_params(rng);
        const double g1 = gap_closed_form(p);
        const double g2 = entropy_variance_gap(build_density(p));
        CHECK(g1 == doctest::Approx(g2).epsilon(1e-9));
        CHECK(g1 >= -1e-9);  // the theorem on the two-piece family
    }
}
