#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lcentropy/density.hpp"
#include "lcentropy/rearrangement.hpp"
#include "oracles.hpp"

using namespace lcentropy;

namespace {

StepDensity nested_step() {
    return StepDensity({{0.0, 2.0}, {0.5, 1.0}}, {0.5, 0.5});
}

// e^{-t} on [-ln2, ln2]: two-piece with a=b=1, x=ln2, y=-ln2, range (1/2, 2]
PiecewiseExpAffineDensity tent() {
    const double l2 = std::log(2.0);
    return PiecewiseExpAffineDensity({{{-l2, 0.0}, 1.0, 0.0}, {{0.0, l2}, 1.0, 0.0}});
}

// random unimodal exp-affine: rising slopes < 0 then falling > 0, continuous V
PiecewiseExpAffineDensity random_unimodal(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.2, 2.0), mag(0.2, 3.0);
    const int nrise = int(rng() % 3), nfall = 1 + int(rng() % 2);
    std::vector<double> slopes;
    for (int i = 0; i < nrise; ++i) slopes.push_back(-mag(rng));
    std::sort(slopes.begin(), slopes.end());
    for (int i = 0; i < nfall; ++i) slopes.push_back(mag(rng));
    std::sort(slopes.begin() + nrise, slopes.end());
    double t = std::uniform_real_distribution<double>(-2.0, 0.0)(rng), p = slopes[0], q = -p * t;
    std::vector<ExpAffineSegment> segs;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double L = len(rng);
        segs.push_back({{t, t + L}, p, q});
        const double knot = t + L;
        if (i + 1 < slopes.size()) {
            const double pn = slopes[i + 1];
            q = p * knot + q - pn * knot;
            p = pn;
        }
        t = knot;
    }
    return normalized(PiecewiseExpAffineDensity(std::move(segs)));
}

}  // namespace

TEST_CASE("superlevel_measure: reference values") {
    auto e1 = normalized(PiecewiseExpAffineDensity({{{0.0, 40.0}, 1.0, 0.0}}));
    CHECK(superlevel_measure(e1, std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(superlevel_measure(nested_step(), 0.5) == doctest::Approx(0.5));
    CHECK(superlevel_measure(nested_step(), 2.0) == doctest::Approx(0.0));

    // |{tent > lambda}| = ln(2/lambda) on (1/2, 2]
    for (double lam : {0.6, 1.0, 1.5, 1.9}) {
        CHECK(superlevel_measure(tent(), lam) == doctest::Approx(std::log(2.0 / lam)).epsilon(1e-12));
    }
}

TEST_CASE("decreasing_rearrangement: uniform is a fixed point") {
    PiecewiseExpAffineDensity u({{{0.0, 1.0}, 0.0, 0.0}});
    auto r = decreasing_rearrangement(u);
    REQUIRE(r.segments().size() == 1);
    CHECK(r.segments()[0].interval.lo == doctest::Approx(0.0));
    CHECK(r.segments()[0].interval.hi == doctest::Approx(1.0));
    CHECK(r.value(0.5) == doctest::Approx(1.0));
}

TEST_CASE("decreasing_rearrangement: nested step rule") {
    auto r = decreasing_rearrangement(nested_step());
    REQUIRE(r.intervals().size() == 2);
    CHECK(r.intervals()[0].lo == 0.0);
    CHECK(r.intervals()[0].hi == doctest::Approx(2.0));
    CHECK(r.intervals()[1].hi == doctest::Approx(0.5));
    CHECK(r.value(0.25) == doctest::Approx(1.25));
    CHECK(r.value(1.0) == doctest::Approx(0.25));
}

TEST_CASE("decreasing_rearrangement: tent inverts the level-set length") {
    auto r = decreasing_rearrangement(tent());
    // 2 e^{-s} on (0, 2 ln 2), a single merged segment
    REQUIRE(r.segments().size() == 1);
    CHECK(r.segments()[0].slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.segments()[0].offset == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    CHECK(r.support_hi() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("decreasing_rearrangement rejects non-unimodal input") {
    PiecewiseExpAffineDensity valley({{{-1.0, 0.0}, 1.0, 0.0}, {{0.0, 1.0}, -1.0, 0.0}});
    CHECK_THROWS_AS(decreasing_rearrangement(valley), std::invalid_argument);
}

TEST_CASE("rearrangement properties on random step densities") {
    std::mt19937_64 rng(oracles::test_seed() + 10);
    std::uniform_real_distribution<double> lam01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        auto d = oracles::random_step(rng);
        auto r = decreasing_rearrangement(d);

        // equimeasurable, exactly for steps
        const double sup = d.sup_value();
        for (int k = 0; k < 20; ++k) {
            const double lam = lam01(rng) * sup * 1.05 + 1e-9;
            CHECK(superlevel_measure(d, lam) == doctest::Approx(superlevel_measure(r, lam)).epsilon(1e-12));
        }

        CHECK(shannon_entropy(r) == doctest::Approx(shannon_entropy(d)).epsilon(1e-10));
        for (double a : {0.5, 2.0, kAlphaInfinity})
            CHECK(renyi_entropy(r, a) == doctest::Approx(renyi_entropy(d, a)).epsilon(1e-10));
        CHECK(variance(r) >= variance(d) - 1e-10);
    }
}

TEST_CASE("rearrangement properties on random unimodal exp-affine densities") {
    std::mt19937_64 rng(oracles::test_seed() + 11);
    std::uniform_real_distribution<double> lam01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        auto d = random_unimodal(rng);
        auto r = decreasing_rearrangement(d);

        const double sup = d.sup_value();
        for (int k = 0; k < 10; ++k) {
            const double lam = lam01(rng) * sup;
            if (lam <= 1e-12) continue;
            CHECK(superlevel_measure(d, lam) ==
                  doctest::Approx(superlevel_measure(r, lam)).epsilon(1e-10));
        }

        CHECK(moments(r, 0) == doctest::Approx(moments(d, 0)).epsilon(1e-10));
        CHECK(shannon_entropy(r) == doctest::Approx(shannon_entropy(d)).epsilon(1e-10));
        for (double a : {0.5, 2.0, kAlphaInfinity})
            CHECK(renyi_entropy(r, a) == doctest::Approx(renyi_entropy(d, a)).epsilon(1e-10));

        CHECK(variance(r) >= variance(d) - 1e-10);

        // log-concavity is preserved
        if (is_log_concave(d).log_concave) CHECK(is_log_concave(r).log_concave);

        // ratio e^{2h}/Var decreases under rearrangement
        const double ratio_d = std::exp(2.0 * shannon_entropy(d)) / variance(d);
        const double ratio_r = std::exp(2.0 * shannon_entropy(r)) / variance(r);
        CHECK(ratio_d >= ratio_r - 1e-9 * ratio_r);
    }
}

TEST_CASE("moment decrease for nonnegative supports") {
    std::mt19937_64 rng(oracles::test_seed() + 12);
    for (int trial = 0; trial < 200; ++trial) {
        auto d0 = random_unimodal(rng);
        // shift the support to [0, len]
        auto d = affine_transform(d0, 1.0, -d0.support_lo());
        auto r = decreasing_rearrangement(d);
        CHECK(moments(r, 1) <= moments(d, 1) + 1e-10);
        CHECK(moments(r, 2) <= moments(d, 2) + 1e-10);
    }
    for (int trial = 0; trial < 200; ++trial) {
        auto s0 = oracles::random_step(rng);
        auto s = affine_transform(s0, 1.0, -s0.support_lo());
        auto r = decreasing_rearrangement(s);
        CHECK(moments(r, 1) <= moments(s, 1) + 1e-10);
        CHECK(moments(r, 2) <= moments(s, 2) + 1e-10);
    }
}
