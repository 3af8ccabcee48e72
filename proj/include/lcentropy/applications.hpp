#pragma once

#include <cmath>

#include "lcentropy/density.hpp"

namespace lcentropy {

/// 0.5 * log(2 pi / e): the capacity penalty and gap ceiling for log-concave
/// noise, < 0.42 nats.
inline double log_concave_gap_ceiling() { return 0.5 * std::log(2.0 * M_PI / M_E); }

struct CorollaryConstants {
    double renyi_floor_shift;  // log(alpha) / (alpha - 1)
    double fmw_gap;            // log(q)/(q-1) - log(p)/(p-1), p >= q
};

/// The Renyi floor shift for alpha > 1 and the order-gap bound for p >= q > 0,
/// with log(t)/(t-1) read as 1 at t = 1 and 0 at t = infinity.
CorollaryConstants corollary_constants(double alpha, double p, double q);

/// D(N) = h(Z) - h(N) for Z Gaussian with the same variance:
/// 0.5 log(2 pi e Var) - h(N), nonnegative.
double relative_entropy_to_gaussian(const Density& d);

struct CapacityBounds {
    double gaussian_capacity;  // C_P(Z) = 0.5 log(1 + P/Var)
    double upper;              // C_P(Z) + D(N)
    double relative_entropy;   // D(N)
};

/// The capacity sandwich for an additive-noise channel with power budget P.
/// For log-concave noise the width D(N) is checked against the 0.42-nat
/// ceiling.
CapacityBounds capacity_bounds(const Density& noise, double power);

struct EpiConstants {
    double alpha;
    double c_minus;  // alpha^{2/(alpha-1)}
    double c_plus;   // ((3a-1)/(a-1)) (2a/(3a-1))^{2/(1-a)} B(1/2, a/(a-1))^2
    double ratio;    // c_plus / c_minus
};

EpiConstants epi_constants(double alpha);

struct SandwichCheck {
    double n_alpha;  // N_alpha(X) = exp(2 h_alpha)
    double lower;    // C_-(alpha) Var
    double upper;    // C_+(alpha) Var
};

/// Both sides of C_-(alpha) Var <= N_alpha <= C_+(alpha) Var.  The left
/// inequality needs log-concavity; non-log-concave input is rejected.
SandwichCheck renyi_power_sandwich_check(const Density& d, double alpha);

/// Grid convolution of two compactly supported densities by direct summation
/// at the given output resolution.  Inputs are sampled and renormalized on
/// the common step so the discrete operator conserves mass exactly; the
/// result is normalized.
GridDensity convolve(const Density& d1, const Density& d2, int resolution = 4096);

struct ReverseEpiCheck {
    double n_sum;      // N(X+Y) from the convolution grid
    double epi_lower;  // N(X) + N(Y), the Shannon-Stam side
    double epi_upper;  // (2 pi / e)(N(X) + N(Y)), the reverse side
};

ReverseEpiCheck reverse_epi_check(const Density& d1, const Density& d2,
                                  int resolution = 4096);

/// Root of log(a)/(a-1) = log(6)/2 on (1, 2], bisected to 1e-10 residual.
double alpha_star();

}  // namespace lcentropy
