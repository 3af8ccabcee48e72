#pragma once

#include "lcentropy/density.hpp"

namespace lcentropy {

/// The reduced two-piece family: g(t) = e^{-t/a} on [-a x, 0] plus e^{-t} on
/// [0, -y], with a >= 1, x >= 0, y <= 0 and (x, y) != (0, 0).  The second
/// slope is normalized to 1.
struct TwoPieceParams {
    double a = 1.0;
    double x = 0.0;
    double y = 0.0;
};

/// Domain caps: e^{3x} appears in the polynomial bound.
inline constexpr double kTwoPieceMaxA = 1e6;
inline constexpr double kTwoPieceMaxX = 500.0;

void validate(const TwoPieceParams& p);

/// Unnormalized integrals of g in closed form.
struct TwoPieceStats {
    double mass;           // a(e^x - 1) - (e^y - 1)
    double first_moment;   // a^2(e^x(1-x)-1) - (e^y(1-y)-1)
    double second_moment;  // a^3(e^x(x^2-2x+2)-2) - (e^y(y^2-2y+2)-2)
    double neg_g_log_g;    // a(e^x(1-x)-1) - (e^y(1-y)-1)
};

struct GEvaluation {
    double G = 0.0;                 // the certificate function
    double mass = 0.0;              // m = a(e^x-1)-(e^y-1)
    double L = 0.0;                 // exponent-shift variable, in [0, 2]
    double poly_lower_bound = 0.0;  // sum_i (a-1)^i P_i(x, y)
    double consistency = 0.0;       // m^2 (e^{2h(f)-2} - Var f), dual path
};

/// The normalized two-piece density as a two-segment carrier.
PiecewiseExpAffineDensity build_density(const TwoPieceParams& p);

TwoPieceStats closed_form_stats(const TwoPieceParams& p);

/// Gap h(f) - log(Var f)/2 - 1 from the closed forms; resolves the
/// exponential limit to ~1e-15 where quadrature would cancel.
double gap_closed_form(const TwoPieceParams& p);

/// The certificate function, together with the dual-path
/// consistency value and the polynomial lower bound.
GEvaluation eval_G(const TwoPieceParams& p);

/// L = 2((x-y)e^y + x(a-1)) / m; lands in [0, 2] on the valid domain.
double exponent_L(const TwoPieceParams& p);

/// 1 - L + L^2/2 - L^3/6 + (7/240) L^4, a minorant of e^{-L} on [0, 2].
double quartic_minorant(double L);

/// Floating evaluation of P_i; agrees with exact_P in the certifier
/// (P_0 carries an e^{y} factor relative to the certification form).
double eval_P(int i, double x, double y);

/// sum_{i=0..4} (a-1)^i P_i(x, y).  Equals 15 e^{2x} G with the quartic
/// minorant substituted for e^{-L}; in particular 15 e^{2x} G >= this.
double poly_lower_bound(const TwoPieceParams& p);

struct ParamBox {
    double a_lo = 1.0, a_hi = 1.0;
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
};

struct MinimizeResult {
    TwoPieceParams argmin;
    double gap = 0.0;
    long long evaluations = 0;
};

/// Deterministic coarse grid scan plus coordinate-descent refinement of the
/// entropy-variance gap over the box; no randomness, so results are
/// reproducible for a fixed budget.
MinimizeResult minimize_gap(const ParamBox& box, long long budget);

/// Grid sweep statistics used by the verification report.
struct SweepResult {
    double min_gap;
    TwoPieceParams argmin_gap;
    double min_G;
    TwoPieceParams argmin_G;
    double L_min, L_max;
    long long points = 0;
};

SweepResult sweep_grid(const ParamBox& box, int na, int nx, int ny, int threads = 1);

}  // namespace lcentropy
