#include "certifier_data.hpp"

#include <array>
#include <stdexcept>

namespace lcentropy {

namespace {

struct Mono {
    int i, j;
    long long c;  // coefficient of x^i y^j
};

struct GroupSpec {
    int alpha, beta;
    std::vector<Mono> monos;
};

BivariateExpPoly build(const std::vector<GroupSpec>& gs) {
    std::vector<BivariateExpPoly::Term> terms;
    for (const auto& g : gs) {
        int max_i = 0;
        for (const auto& m : g.monos) max_i = std::max(max_i, m.i);
        std::vector<std::vector<Rational>> rows(std::size_t(max_i) + 1);
        for (const auto& m : g.monos) {
            auto& row = rows[std::size_t(m.i)];
            if (int(row.size()) <= m.j) row.resize(std::size_t(m.j) + 1, Rational(0));
            row[std::size_t(m.j)] += m.c;
        }
        std::vector<Poly> polys;
        polys.reserve(rows.size());
        for (auto& r : rows) polys.emplace_back(std::move(r));
        terms.push_back({g.alpha, g.beta, BivarPoly(std::move(polys))});
    }
    return BivariateExpPoly(std::move(terms));
}

// Certification forms as monomial tables per e^{alpha x + beta y} group.
// kP0CertForm is e^{-y} P_0 (the shape whose x-expansion has the e^{0..2}y
// coefficient families); the P_2 table carries the full factor 3.

const std::vector<GroupSpec> kP0CertForm = {
    {0, 3, {{0, 0, 15}, {0, 1, -30}, {0, 2, 30}, {0, 3, -20}, {0, 4, 7}, {1, 0, 30}, {1, 1, -60}, {1, 2, 60}, {1, 3, -28}, {2, 0, 30}, {2, 1, -60}, {2, 2, 42}, {3, 0, 20}, {3, 1, -28}, {4, 0, 7}}},
    {1, 2, {{0, 0, -60}, {0, 1, 90}, {0, 2, -60}, {0, 3, 20}, {1, 0, -90}, {1, 1, 120}, {1, 2, -60}, {2, 0, -60}, {2, 1, 60}, {3, 0, -20}}},
    {2, 1, {{0, 0, 75}, {0, 1, -90}, {0, 2, 30}, {1, 0, 90}, {1, 1, -60}, {2, 0, 30}}},
    {3, 0, {{0, 0, -30}, {0, 1, 30}, {0, 2, 15}, {1, 0, -30}, {1, 1, -30}, {2, 0, 15}}},
};

const std::vector<GroupSpec> kP1CertForm = {
    {0, 3, {{0, 0, 60}, {0, 1, -90}, {0, 2, 60}, {0, 3, -20}, {1, 0, 120}, {1, 1, -180}, {1, 2, 120}, {1, 3, -28}, {2, 0, 120}, {2, 1, -180}, {2, 2, 84}, {3, 0, 80}, {3, 1, -84}, {4, 0, 28}}},
    {1, 2, {{0, 0, -180}, {0, 1, 180}, {0, 2, -60}, {1, 0, -270}, {1, 1, 240}, {1, 2, -60}, {2, 0, -180}, {2, 1, 120}, {3, 0, -60}}},
    {1, 3, {{0, 0, -60}, {0, 1, 90}, {0, 2, -60}, {0, 3, 20}, {1, 0, -90}, {1, 1, 120}, {1, 2, -60}, {2, 0, -60}, {2, 1, 60}, {3, 0, -20}}},
    {2, 1, {{0, 0, 120}, {0, 1, -120}, {0, 2, -15}, {1, 0, 180}, {1, 1, -60}, {2, 0, 60}}},
    {2, 2, {{0, 0, 180}, {0, 1, -180}, {0, 2, 60}, {1, 0, 180}, {1, 1, -120}, {2, 0, 60}}},
    {3, 0, {{2, 0, 15}}},
    {3, 1, {{0, 0, -120}, {0, 1, 120}, {0, 2, 15}, {1, 0, -120}, {1, 1, -60}, {2, 0, 45}}},
};

const std::vector<GroupSpec> kP2CertForm = {
    {0, 2, {{0, 0, 90}, {0, 1, -90}, {0, 2, 30}, {1, 0, 180}, {1, 1, -180}, {1, 2, 60}, {2, 0, 180}, {2, 1, -180}, {2, 2, 42}, {3, 0, 120}, {3, 1, -84}, {4, 0, 42}}},
    {1, 1, {{0, 0, -180}, {0, 1, 90}, {1, 0, -270}, {1, 1, 120}, {2, 0, -180}, {2, 1, 60}, {3, 0, -60}}},
    {1, 2, {{0, 0, -180}, {0, 1, 180}, {0, 2, -60}, {1, 0, -270}, {1, 1, 240}, {1, 2, -60}, {2, 0, -180}, {2, 1, 120}, {3, 0, -60}}},
    {2, 0, {{0, 0, 60}, {1, 0, 90}, {2, 0, 30}}},
    {2, 1, {{0, 0, 300}, {0, 1, -210}, {1, 0, 360}, {1, 1, -120}, {2, 0, 120}}},
    {2, 2, {{0, 0, 90}, {0, 1, -90}, {0, 2, 30}, {1, 0, 90}, {1, 1, -60}, {2, 0, 30}}},
    {3, 0, {{0, 0, -60}, {1, 0, -30}, {2, 0, 45}}},
    {3, 1, {{0, 0, -120}, {0, 1, 120}, {1, 0, -150}, {1, 1, -30}, {2, 0, 45}}},
};

const std::vector<GroupSpec> kP3CertForm = {
    {0, 1, {{0, 0, 60}, {0, 1, -30}, {1, 0, 120}, {1, 1, -60}, {2, 0, 120}, {2, 1, -60}, {3, 0, 80}, {3, 1, -28}, {4, 0, 28}}},
    {1, 0, {{0, 0, -60}, {1, 0, -90}, {2, 0, -60}, {3, 0, -20}}},
    {1, 1, {{0, 0, -180}, {0, 1, 90}, {1, 0, -270}, {1, 1, 120}, {2, 0, -180}, {2, 1, 60}, {3, 0, -60}}},
    {2, 0, {{0, 0, 150}, {1, 0, 180}, {2, 0, 60}}},
    {2, 1, {{0, 0, 150}, {0, 1, -90}, {1, 0, 180}, {1, 1, -60}, {2, 0, 60}}},
    {3, 0, {{0, 0, -90}, {1, 0, -60}, {2, 0, 45}}},
    {3, 1, {{0, 0, -30}, {0, 1, 30}, {1, 0, -60}, {2, 0, 15}}},
};

const std::vector<GroupSpec> kP4CertForm = {
    {0, 0, {{0, 0, 15}, {1, 0, 30}, {2, 0, 30}, {3, 0, 20}, {4, 0, 7}}},
    {1, 0, {{0, 0, -60}, {1, 0, -90}, {2, 0, -60}, {3, 0, -20}}},
    {2, 0, {{0, 0, 75}, {1, 0, 90}, {2, 0, 30}}},
    {3, 0, {{0, 0, -30}, {1, 0, -30}, {2, 0, 15}}},
};

}  // namespace

const BivariateExpPoly& certification_form(Family f) {
    static const std::array<BivariateExpPoly, 5> forms = {
        build(kP0CertForm), build(kP1CertForm), build(kP2CertForm),
        build(kP3CertForm), build(kP4CertForm)};
    return forms[std::size_t(f)];
}

const BivariateExpPoly& exact_P(Family f) {
    // P_0 is e^{y} times its display; the others are their displays
    static const std::array<BivariateExpPoly, 5> exact = {
        certification_form(Family::P0).shifted_y(1), certification_form(Family::P1),
        certification_form(Family::P2), certification_form(Family::P3),
        certification_form(Family::P4)};
    return exact[std::size_t(f)];
}

namespace detail {

namespace {

// shorthand for one base^n * q(n) summand; coefficients ascending in n
ExpPolySequence::Term seq(long long base, std::vector<Rational> coeffs) {
    return {Rational(base), Poly(std::move(coeffs))};
}

ExpPolySequence make(std::vector<ExpPolySequence::Term> ts) {
    return ExpPolySequence(std::move(ts));
}

const Rational k13 = Rational(1, 3);

std::vector<CoefficientGroup> build_family(Family f) {
    // coefficient families behind the certification forms, n >= 5:
    //   3^{n-1} u(n) -> base 3 with u/3, 2^{n+1} u(n) -> base 2 with 2u, ...
    switch (f) {
        case Family::P0:
            return {
                {0,
                 {make({seq(3, {-30, -35 * k13, 5 * k13})}),    // 3^{n-1}(5n^2-35n-90)
                  make({seq(3, {30, -10})}),                    // 10*3^n(3-n)
                  make({seq(3, {15})})}},                       // 5*3^{n+1}
                {1,
                 {make({seq(2, {75, Rational(75, 2), Rational(15, 2)})}),
                  make({seq(2, {-90, -30})}),
                  make({seq(2, {30})})}},
                {2,
                 {make({seq(1, {-60, -70, 0, -20})}),
                  make({seq(1, {90, 60, 60})}),
                  make({seq(1, {-60, -60})}),
                  make({seq(1, {20})})}},
            };
        case Family::P1:
            return {
                {0, {make({seq(3, {0, -5 * k13, 5 * k13})})}},  // 5*3^{n-1}(n-1)n
                {1,
                 {make({seq(3, {-120, -45, 5}), seq(2, {120, 75, 15})}),
                  make({seq(3, {120, -20}), seq(2, {-120, -30})}),
                  make({seq(3, {15}), seq(2, {-15})})}},
                {2,
                 {make({seq(2, {180, 75, 15}), seq(1, {-180, -210, 0, -60})}),
                  make({seq(1, {180, 120, 120}), seq(2, {-180, -60})}),
                  make({seq(2, {60}), seq(1, {-60, -60})})}},
                {3,
                 {make({seq(1, {-60, -70, 0, -20})}),
                  make({seq(1, {90, 60, 60})}),
                  make({seq(1, {-60, -60})}),
                  make({seq(1, {20})})}},
            };
        case Family::P2:
            return {
                {0,
                 {make({seq(2, {60, Rational(75, 2), Rational(15, 2)}),
                        seq(3, {-60, -15, 5})})}},
                {1,
                 {make({seq(1, {-180, -210, 0, -60}), seq(2, {300, 150, 30}),
                        seq(3, {-120, -55, 5})}),
                  make({seq(3, {120, -10}), seq(2, {-210, -60}), seq(1, {90, 60, 60})})}},
                {2,
                 {make({seq(2, {90, Rational(75, 2), Rational(15, 2)}),
                        seq(1, {-180, -210, 0, -60})}),
                  make({seq(1, {180, 120, 120}), seq(2, {-90, -30})}),
                  make({seq(2, {30}), seq(1, {-60, -60})})}},
            };
        case Family::P3:
            return {
                {0,
                 {make({seq(1, {-60, -70, 0, -20}), seq(2, {150, 75, 15}),
                        seq(3, {-90, -25, 5})})}},
                {1,
                 {make({seq(1, {-180, -210, 0, -60}), seq(2, {150, 75, 15}),
                        seq(3, {-30, -65 * k13, 5 * k13})}),
                  make({seq(1, {90, 60, 60}), seq(2, {-90, -30}), seq(3, {30})})}},
            };
        case Family::P4:
            return {
                {0,
                 {make({seq(1, {-60, -70, 0, -20}),
                        seq(2, {75, Rational(75, 2), Rational(15, 2)}),
                        seq(3, {-30, -35 * k13, 5 * k13})})}},
            };
    }
    throw std::logic_error("unknown family");
}

}  // namespace

const std::vector<CoefficientGroup>& family_coefficients(Family f) {
    static const std::array<std::vector<CoefficientGroup>, 5> data = {
        build_family(Family::P0), build_family(Family::P1), build_family(Family::P2),
        build_family(Family::P3), build_family(Family::P4)};
    return data[std::size_t(f)];
}

}  // namespace detail

}  // namespace lcentropy
