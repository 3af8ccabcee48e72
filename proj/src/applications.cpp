#include "lcentropy/applications.hpp"

#include <cmath>
#include <stdexcept>

namespace lcentropy {

namespace {

// log(t)/(t-1) with the limits at t = 1 and t = infinity
double order_shift(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("Renyi order must be positive");
    if (std::isinf(t)) return 0.0;
    if (t == 1.0) return 1.0;
    return std::log(t) / (t - 1.0);
}

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

CorollaryConstants corollary_constants(double alpha, double p, double q) {
    if (!(alpha > 1.0)) throw std::invalid_argument("corollary needs alpha > 1");
    if (!(p >= q) || !(q > 0.0)) throw std::invalid_argument("orders need p >= q > 0");
    return {order_shift(alpha), order_shift(q) - order_shift(p)};
}

double relative_entropy_to_gaussian(const Density& d) {
    const double var = variance(d);
    if (!(var > 0.0)) throw std::invalid_argument("relative entropy needs positive variance");
    return 0.5 * std::log(2.0 * M_PI * M_E * var) - shannon_entropy(d);
}

CapacityBounds capacity_bounds(const Density& noise, double power) {
    if (!(power > 0.0)) throw std::invalid_argument("power budget must be positive");
    const double var = variance(noise);
    if (!(var > 0.0)) throw std::invalid_argument("degenerate noise");
    CapacityBounds b;
    b.gaussian_capacity = 0.5 * std::log1p(power / var);
    b.relative_entropy = relative_entropy_to_gaussian(noise);
    b.upper = b.gaussian_capacity + b.relative_entropy;
    if (is_log_concave(noise).log_concave &&
        b.relative_entropy > log_concave_gap_ceiling() + 1e-9)
        throw std::logic_error("log-concave noise exceeded the 0.42-nat ceiling");
    return b;
}

EpiConstants epi_constants(double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("EPI constants need alpha > 1");
    EpiConstants c;
    c.alpha = alpha;
    c.c_minus = std::pow(alpha, 2.0 / (alpha - 1.0));
    const double B = beta_function(0.5, alpha / (alpha - 1.0));
    c.c_plus = (3.0 * alpha - 1.0) / (alpha - 1.0) *
               std::pow(2.0 * alpha / (3.0 * alpha - 1.0), 2.0 / (1.0 - alpha)) * B * B;
    c.ratio = c.c_plus / c.c_minus;
    return c;
}

SandwichCheck renyi_power_sandwich_check(const Density& d, double alpha) {
    if (!is_log_concave(d).log_concave)
        throw std::invalid_argument("the lower sandwich side needs a log-concave density");
    const EpiConstants c = epi_constants(alpha);
    const double var = variance(d);
    return {renyi_entropy_power(d, alpha), c.c_minus * var, c.c_plus * var};
}

GridDensity convolve(const Density& d1, const Density& d2, int resolution) {
    if (resolution < 16) throw std::invalid_argument("convolution resolution too small");
    const double lo1 = support_lo(d1), hi1 = support_hi(d1);
    const double lo2 = support_lo(d2), hi2 = support_hi(d2);
    const double out_len = (hi1 - lo1) + (hi2 - lo2);
    const double step = out_len / double(resolution - 1);
    if (step > 0.5 * std::min(hi1 - lo1, hi2 - lo2))
        throw std::invalid_argument("resolution too coarse for the input supports");

    // midpoint sampling avoids the half-cell bias at support-edge jumps and
    // makes the Cauchy product conserve the discrete mass exactly
    auto sample = [&](const Density& d, double lo, double hi) {
        const std::size_t n = std::size_t(std::floor((hi - lo) / step)) + 1;
        std::vector<double> v(n, 0.0);
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = density_value(d, lo + step * (double(i) + 0.5));
            mass += v[i];
        }
        mass *= step;
        for (auto& x : v) x /= mass;
        return v;
    };
    const std::vector<double> f1 = sample(d1, lo1, hi1);
    const std::vector<double> f2 = sample(d2, lo2, hi2);

    // midpoint pairs land on the output vertex lattice: cell i + cell j
    // estimates the convolution at (i + j + 1) * step
    std::vector<double> out(f1.size() + f2.size(), 0.0);
    for (std::size_t i = 0; i < f1.size(); ++i) {
        if (f1[i] == 0.0) continue;
        for (std::size_t j = 0; j < f2.size(); ++j) out[i + j + 1] += f1[i] * f2[j];
    }
    double out_mass = 0.0;
    for (auto& x : out) {
        x *= step;
        out_mass += x;
    }
    out_mass *= step;
    if (std::abs(out_mass - 1.0) > 1e-6)
        throw std::runtime_error("convolution mass error above 1e-6: resolution too coarse");
    return normalized(GridDensity(lo1 + lo2, step, std::move(out)));
}

ReverseEpiCheck reverse_epi_check(const Density& d1, const Density& d2, int resolution) {
    const GridDensity sum = convolve(d1, d2, resolution);
    const double n_parts = entropy_power(d1) + entropy_power(d2);
    return {entropy_power(sum), n_parts, (2.0 * M_PI / M_E) * n_parts};
}

double alpha_star() {
    const double target = 0.5 * std::log(6.0);
    double lo = 1.0 + 1e-9, hi = 2.0;
    // order_shift is decreasing: > target at lo, < target at hi
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (order_shift(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace lcentropy
