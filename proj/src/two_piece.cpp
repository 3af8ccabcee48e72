#include "lcentropy/two_piece.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace lcentropy {

namespace {

// e^x(1-x) - 1 = -sum_{n>=2} (n-1) x^n / n!
double e2(double x) {
    if (std::abs(x) < kCancellationThreshold) {
        const double c[] = {-1.0 / 2, -1.0 / 3, -1.0 / 8, -1.0 / 30, -1.0 / 144,
                            -1.0 / 840, -1.0 / 5760, -1.0 / 45360};
        double acc = 0.0, xn = x * x;
        for (double ci : c) {
            acc += ci * xn;
            xn *= x;
        }
        return acc;
    }
    return std::exp(x) * (1.0 - x) - 1.0;
}

// e^x(x^2-2x+2) - 2 = sum_{n>=3} (n-1)(n-2) x^n / n!
double e3(double x) {
    if (std::abs(x) < kCancellationThreshold) {
        const double c[] = {1.0 / 3,   1.0 / 4,   1.0 / 10,  1.0 / 36,
                            1.0 / 168, 1.0 / 960, 1.0 / 6480};
        double acc = 0.0, xn = x * x * x;
        for (double ci : c) {
            acc += ci * xn;
            xn *= x;
        }
        return acc;
    }
    return std::exp(x) * (x * x - 2.0 * x + 2.0) - 2.0;
}

}  // namespace

void validate(const TwoPieceParams& p) {
    if (!(p.a >= 1.0)) throw std::invalid_argument("two-piece slope parameter needs a >= 1");
    if (!(p.x >= 0.0) || !(p.y <= 0.0))
        throw std::invalid_argument("two-piece parameters need x >= 0, y <= 0");
    if (p.x == 0.0 && p.y == 0.0)
        throw std::invalid_argument("two-piece support is degenerate at x = y = 0");
    if (p.a > kTwoPieceMaxA || p.x > kTwoPieceMaxX)
        throw std::invalid_argument("two-piece parameters beyond the overflow caps");
}

PiecewiseExpAffineDensity build_density(const TwoPieceParams& p) {
    validate(p);
    std::vector<ExpAffineSegment> segs;
    if (p.x > 0.0) segs.push_back({{-p.a * p.x, 0.0}, 1.0 / p.a, 0.0});
    if (p.y < 0.0) segs.push_back({{0.0, -p.y}, 1.0, 0.0});
    return normalized(PiecewiseExpAffineDensity(std::move(segs)));
}

TwoPieceStats closed_form_stats(const TwoPieceParams& p) {
    validate(p);
    TwoPieceStats s;
    s.mass = p.a * std::expm1(p.x) - std::expm1(p.y);
    s.first_moment = p.a * p.a * e2(p.x) - e2(p.y);
    s.second_moment = p.a * p.a * p.a * e3(p.x) - e3(p.y);
    s.neg_g_log_g = p.a * e2(p.x) - e2(p.y);
    return s;
}

double gap_closed_form(const TwoPieceParams& p) {
    const TwoPieceStats s = closed_form_stats(p);
    if (!(s.mass > 0.0)) throw std::invalid_argument("two-piece mass must be positive");
    const double h = s.neg_g_log_g / s.mass + std::log(s.mass);
    const double mean = s.first_moment / s.mass;
    const double var = s.second_moment / s.mass - mean * mean;
    if (!(var > 0.0)) throw std::runtime_error("two-piece variance not positive");
    return h - 0.5 * std::log(var) - 1.0;
}

double exponent_L(const TwoPieceParams& p) {
    const double m = p.a * std::expm1(p.x) - std::expm1(p.y);
    if (!(m > 0.0)) throw std::invalid_argument("two-piece mass must be positive");
    const double L = 2.0 * ((p.x - p.y) * std::exp(p.y) + p.x * (p.a - 1.0)) / m;
    if (L < -1e-12 || L > 2.0 + 1e-12)
        throw std::logic_error("exponent fraction left [0, 2]");
    return std::clamp(L, 0.0, 2.0);
}

double quartic_minorant(double L) {
    if (L < 0.0 || L > 2.0) throw std::invalid_argument("quartic minorant needs L in [0, 2]");
    return 1.0 - L + L * L / 2.0 - L * L * L / 6.0 + (7.0 / 240.0) * L * L * L * L;
}

GEvaluation eval_G(const TwoPieceParams& p) {
    validate(p);
    GEvaluation r;
    const TwoPieceStats s = closed_form_stats(p);
    r.mass = s.mass;
    if (!(r.mass > 0.0)) throw std::invalid_argument("two-piece mass must be positive");
    const double m = r.mass;
    const double expo = -2.0 * (p.a * p.x * std::exp(p.x) - p.y * std::exp(p.y)) / m;
    r.G = m * m * m * m * std::exp(expo) - m * s.second_moment +
          s.first_moment * s.first_moment;
    if (!std::isfinite(r.G)) throw std::runtime_error("two-piece G evaluation overflow");
    r.L = exponent_L(p);
    r.poly_lower_bound = poly_lower_bound(p);

    // dual path: m^2 (e^{2h(f)-2} - Var f) from the density statistics
    const double h = s.neg_g_log_g / m + std::log(m);
    const double mean = s.first_moment / m;
    const double var = s.second_moment / m - mean * mean;
    r.consistency = m * m * (std::exp(2.0 * h - 2.0) - var);
    return r;
}

double eval_P(int i, double x, double y) {
    const double X = std::exp(x), Y = std::exp(y);
    const double X2 = X * X, X3 = X2 * X, Y2 = Y * Y, Y3 = Y2 * Y;
    switch (i) {
        case 4:
            return 7 * x * x * x * x + 20 * x * x * x + 30 * x * x + 30 * x + 15 +
                   15 * X3 * (x * x - 2 * x - 2) + 15 * X2 * (2 * x * x + 6 * x + 5) -
                   10 * X * (2 * x * x * x + 6 * x * x + 9 * x + 6);
        case 0:
            // e^{y} times the e^{-y}-normalized form the certifier expands
            return Y * (15 * X2 * Y * (2 * x * x + x * (6 - 4 * y) + 2 * y * y - 6 * y + 5) +
                        15 * X3 * (x * x - 2 * x * (y + 1) + y * y + 2 * y - 2) -
                        10 * X * Y2 *
                            (2 * x * x * x - 6 * x * x * (y - 1) + 3 * x * (2 * y * y - 4 * y + 3) -
                             2 * y * y * y + 6 * y * y - 9 * y + 6) +
                        Y3 * (7 * x * x * x * x - 4 * x * x * x * (7 * y - 5) +
                              6 * x * x * (7 * y * y - 10 * y + 5) +
                              x * (-28 * y * y * y + 60 * y * y - 60 * y + 30)) +
                        Y3 * (7 * y * y * y * y - 20 * y * y * y + 30 * y * y - 30 * y + 15));
        case 1:
            return 15 * X2 * Y * (4 * x * x - 4 * x * (y - 3) - y * y - 8 * y + 8) +
                   60 * X2 * Y2 * (x * x + x * (3 - 2 * y) + y * y - 3 * y + 3) +
                   15 * X3 * Y * (3 * x * x - 4 * x * (y + 2) + y * y + 8 * y - 8) +
                   15 * X3 * x * x -
                   30 * X * Y2 *
                       (2 * x * x * x + x * x * (6 - 4 * y) + x * (2 * y * y - 8 * y + 9) +
                        2 * (y * y - 3 * y + 3)) -
                   10 * X * Y3 *
                       (2 * x * x * x - 6 * x * x * (y - 1) + 3 * x * (2 * y * y - 4 * y + 3) -
                        2 * y * y * y + 6 * y * y - 9 * y + 6) -
                   2 * Y3 *
                       (-14 * x * x * x * x + x * x * x * (42 * y - 40) -
                        6 * x * x * (7 * y * y - 15 * y + 10) +
                        2 * x * (7 * y * y * y - 30 * y * y + 45 * y - 30)) -
                   10 * Y3 * (2 * y * y * y - 6 * y * y + 9 * y - 6);
        case 2:
            // written as 3 * (P_2 / 3) so the inner coefficients stay integral
            return 3.0 * (10 * X2 * Y2 * (x * x + x * (3 - 2 * y) + y * y - 3 * y + 3) +
                          10 * X2 * Y * (4 * x * x - 4 * x * (y - 3) - 7 * y + 10) +
                          10 * X2 * (x * x + 3 * x + 2) + 5 * X3 * (3 * x * x - 2 * x - 4) -
                          10 * X * Y2 *
                              (2 * x * x * x + x * x * (6 - 4 * y) +
                               x * (2 * y * y - 8 * y + 9) + 2 * (y * y - 3 * y + 3)) -
                          10 * X * Y *
                              (2 * x * x * x - 2 * x * x * (y - 3) + x * (9 - 4 * y) - 3 * y + 6) +
                          2 * Y2 *
                              (7 * x * x * x * x + x * x * x * (20 - 14 * y) +
                               x * x * (7 * y * y - 30 * y + 30) + 10 * x * (y * y - 3 * y + 3) +
                               5 * (y * y - 3 * y + 3)) +
                          5 * (x - 4) * X3 * Y * (3 * x - 2 * y + 2));
        case 3:
            return 15 * X3 * Y * (x * x - 4 * x + 2 * y - 2) +
                   30 * X2 * Y * (2 * x * x - 2 * x * (y - 3) - 3 * y + 5) +
                   30 * X2 * (2 * x * x + 6 * x + 5) + 15 * X3 * (3 * x * x - 4 * x - 6) -
                   30 * X * Y * (2 * x * x * x - 2 * x * x * (y - 3) + x * (9 - 4 * y) - 3 * y + 6) -
                   10 * X * (2 * x * x * x + 6 * x * x + 9 * x + 6) +
                   Y * (28 * x * x * x * x + x * x * x * (80 - 28 * y) - 60 * x * x * (y - 2) -
                        60 * x * (y - 2) - 30 * (y - 2));
        default:
            throw std::invalid_argument("P index must be 0..4");
    }
}

double poly_lower_bound(const TwoPieceParams& p) {
    validate(p);
    const double c1 = p.a - 1.0;
    double acc = 0.0, pw = 1.0;
    for (int i = 0; i <= 4; ++i) {
        acc += pw * eval_P(i, p.x, p.y);
        pw *= c1;
    }
    return acc;
}

namespace {

// +inf for the degenerate corner so grid scans can skip it uniformly
double gap_or_inf(double a, double x, double y) {
    if (x == 0.0 && y == 0.0) return std::numeric_limits<double>::infinity();
    return gap_closed_form({a, x, y});
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n <= 1 || hi <= lo) return {lo};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

}  // namespace

MinimizeResult minimize_gap(const ParamBox& box, long long budget) {
    if (budget <= 0) throw std::invalid_argument("minimizer budget must be positive");
    if (box.a_lo < 1.0 || box.x_lo < 0.0 || box.y_hi > 0.0 || box.a_hi < box.a_lo ||
        box.x_hi < box.x_lo || box.y_hi < box.y_lo)
        throw std::invalid_argument("minimizer box outside the valid domain");

    MinimizeResult res;
    res.gap = std::numeric_limits<double>::infinity();

    const int per_axis = std::max(
        1, int(std::cbrt(double(budget) / 2.0)));
    const auto as = linspace(box.a_lo, box.a_hi, per_axis);
    const auto xs = linspace(box.x_lo, box.x_hi, per_axis);
    const auto ys = linspace(box.y_lo, box.y_hi, per_axis);

    for (double a : as)
        for (double x : xs)
            for (double y : ys) {
                ++res.evaluations;
                const double g = gap_or_inf(a, x, y);
                if (g < res.gap) {
                    res.gap = g;
                    res.argmin = {a, x, y};
                }
            }

    // coordinate descent with step halving from the coarse spacing
    double step[3] = {
        as.size() > 1 ? as[1] - as[0] : 1e-3,
        xs.size() > 1 ? xs[1] - xs[0] : 1e-3,
        ys.size() > 1 ? ys[1] - ys[0] : 1e-3,
    };
    const double lo[3] = {box.a_lo, box.x_lo, box.y_lo};
    const double hi[3] = {box.a_hi, box.x_hi, box.y_hi};
    double pt[3] = {res.argmin.a, res.argmin.x, res.argmin.y};
    while (res.evaluations < budget &&
           (step[0] > 1e-12 || step[1] > 1e-12 || step[2] > 1e-12)) {
        bool improved = false;
        for (int c = 0; c < 3 && res.evaluations < budget; ++c) {
            if (hi[c] <= lo[c]) continue;
            for (double dir : {-1.0, 1.0}) {
                const double cand = std::clamp(pt[c] + dir * step[c], lo[c], hi[c]);
                if (cand == pt[c]) continue;
                double trial[3] = {pt[0], pt[1], pt[2]};
                trial[c] = cand;
                ++res.evaluations;
                const double g = gap_or_inf(trial[0], trial[1], trial[2]);
                if (g < res.gap) {
                    res.gap = g;
                    pt[c] = cand;
                    improved = true;
                }
                if (res.evaluations >= budget) break;
            }
        }
        if (!improved)
            for (double& s : step) s *= 0.5;
    }
    res.argmin = {pt[0], pt[1], pt[2]};
    return res;
}

SweepResult sweep_grid(const ParamBox& box, int na, int nx, int ny, int threads) {
    if (na < 1 || nx < 1 || ny < 1) throw std::invalid_argument("grid sizes must be positive");
    const auto as = linspace(box.a_lo, box.a_hi, na);
    const auto xs = linspace(box.x_lo, box.x_hi, nx);
    const auto ys = linspace(box.y_lo, box.y_hi, ny);

    struct Local {
        double min_gap = std::numeric_limits<double>::infinity();
        long long gap_idx = -1;
        double min_G = std::numeric_limits<double>::infinity();
        long long G_idx = -1;
        double L_min = std::numeric_limits<double>::infinity();
        double L_max = -std::numeric_limits<double>::infinity();
        long long points = 0;
    };

    const int nthreads = std::max(1, threads);
    std::vector<Local> locals(nthreads);
    auto worker = [&](int tid) {
        Local& loc = locals[tid];
        for (std::size_t ia = tid; ia < as.size(); ia += std::size_t(nthreads)) {
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                    const double a = as[ia], x = xs[ix], y = ys[iy];
                    if (x == 0.0 && y == 0.0) continue;
                    const long long idx =
                        (static_cast<long long>(ia) * static_cast<long long>(xs.size()) +
                         static_cast<long long>(ix)) *
                            static_cast<long long>(ys.size()) +
                        static_cast<long long>(iy);
                    ++loc.points;
                    const double g = gap_closed_form({a, x, y});
                    if (g < loc.min_gap || (g == loc.min_gap && idx < loc.gap_idx)) {
                        loc.min_gap = g;
                        loc.gap_idx = idx;
                    }
                    const TwoPieceParams p{a, x, y};
                    const TwoPieceStats st = closed_form_stats(p);
                    const double m = st.mass;
                    const double expo =
                        -2.0 * (a * x * std::exp(x) - y * std::exp(y)) / m;
                    const double G = m * m * m * m * std::exp(expo) -
                                     m * st.second_moment +
                                     st.first_moment * st.first_moment;
                    if (G < loc.min_G || (G == loc.min_G && idx < loc.G_idx)) {
                        loc.min_G = G;
                        loc.G_idx = idx;
                    }
                    const double L = exponent_L(p);
                    loc.L_min = std::min(loc.L_min, L);
                    loc.L_max = std::max(loc.L_max, L);
                }
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }

    // deterministic merge: value first, flat grid index breaks ties
    SweepResult r{};
    r.min_gap = std::numeric_limits<double>::infinity();
    r.min_G = std::numeric_limits<double>::infinity();
    r.L_min = std::numeric_limits<double>::infinity();
    r.L_max = -std::numeric_limits<double>::infinity();
    long long gap_idx = -1, G_idx = -1;
    for (const auto& loc : locals) {
        r.points += loc.points;
        if (loc.gap_idx >= 0 &&
            (loc.min_gap < r.min_gap || (loc.min_gap == r.min_gap && loc.gap_idx < gap_idx))) {
            r.min_gap = loc.min_gap;
            gap_idx = loc.gap_idx;
        }
        if (loc.G_idx >= 0 &&
            (loc.min_G < r.min_G || (loc.min_G == r.min_G && loc.G_idx < G_idx))) {
            r.min_G = loc.min_G;
            G_idx = loc.G_idx;
        }
        r.L_min = std::min(r.L_min, loc.L_min);
        r.L_max = std::max(r.L_max, loc.L_max);
    }
    auto unflatten = [&](long long idx) -> TwoPieceParams {
        const long long nyl = ny, nxl = nx;
        const long long iy = idx % nyl, ix = (idx / nyl) % nxl, ia = idx / (nyl * nxl);
        return {as[std::size_t(ia)], xs[std::size_t(ix)], ys[std::size_t(iy)]};
    };
    if (gap_idx >= 0) r.argmin_gap = unflatten(gap_idx);
    if (G_idx >= 0) r.argmin_G = unflatten(G_idx);
    return r;
}

}  // namespace lcentropy
