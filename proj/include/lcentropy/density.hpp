#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace lcentropy {

/// Mass tolerance: a density is accepted as normalized when |mass - 1| is
/// below this.
inline constexpr double kMassTolerance = 1e-9;

/// Below this value of |slope * length| segment integrals switch to the
/// series form of the antiderivative; the closed forms subtract nearly
/// equal exponentials there.  At the switch point the degree-8 series is
/// accurate to ~1e-19 while the closed forms are already good to ~2e-11.
inline constexpr double kCancellationThreshold = 5e-2;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

/// One piece of a density e^{-V} with V affine: value(t) = exp(-(slope*t + offset))
/// on the interval.
struct ExpAffineSegment {
    Interval interval;
    double slope = 0.0;   // 1/length units
    double offset = 0.0;  // dimensionless

    double log_value(double t) const { return -(slope * t + offset); }
    double value(double t) const;
};

/// Density e^{-V} with V piecewise affine on contiguous segments.
/// Log-concavity is a checkable property, not an invariant: the type also
/// carries non-log-concave shapes for negative tests.
class PiecewiseExpAffineDensity {
public:
    explicit PiecewiseExpAffineDensity(std::vector<ExpAffineSegment> segments);

    const std::vector<ExpAffineSegment>& segments() const { return segments_; }
    double support_lo() const { return segments_.front().interval.lo; }
    double support_hi() const { return segments_.back().interval.hi; }
    double support_length() const;

    /// Pointwise value; 0 outside the support.
    double value(double t) const;
    double sup_value() const;

private:
    std::vector<ExpAffineSegment> segments_;
};

/// Unimodal step density  sum_k weight_k * 1_{I_k} / |I_k|  with strictly
/// nested intervals I_{k+1} inside I_k.
class StepDensity {
public:
    StepDensity(std::vector<Interval> intervals, std::vector<double> weights);

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<double>& weights() const { return weights_; }

    double support_lo() const { return intervals_.front().lo; }
    double support_hi() const { return intervals_.front().hi; }
    double weight_sum() const;

    /// A maximal region where the density is constant.
    struct Flat {
        double lo;
        double hi;
        double value;
    };
    /// Constant-value regions left to right.  Values rise to the innermost
    /// interval and fall back; regions of equal value are not merged here.
    std::vector<Flat> flatten() const;

    double value(double t) const;
    double sup_value() const;

private:
    std::vector<Interval> intervals_;
    std::vector<double> weights_;
};

/// Uniformly sampled nonnegative values; integrals use the trapezoid rule.
/// Carrier for convolution results.
class GridDensity {
public:
    GridDensity(double origin, double step, std::vector<double> values);

    double origin() const { return origin_; }
    double step() const { return step_; }
    const std::vector<double>& values() const { return values_; }
    double support_lo() const { return origin_; }
    double support_hi() const { return origin_ + step_ * double(values_.size() - 1); }

    double value(double t) const;  // linear interpolation
    double sup_value() const;

private:
    double origin_;
    double step_;
    std::vector<double> values_;
};

using Density = std::variant<PiecewiseExpAffineDensity, StepDensity, GridDensity>;

struct ScalarStats {
    double mass = 0.0;
    double mean = 0.0;            // E X
    double second_moment = 0.0;   // E X^2
    double variance = 0.0;
    double shannon_entropy = 0.0; // nats
};

struct LogConcavity {
    bool log_concave = false;
    /// Step densities are honorary members: the class is closed under limits
    /// of log-concave densities and the variance/rearrangement results hold
    /// on it, so they report log_concave with this flag set.
    bool limit_of_log_concave = false;
};

// --- raw moments (integrals of t^order * f over the support, no mass division) ---

double moments(const PiecewiseExpAffineDensity& d, int order);
double moments(const StepDensity& d, int order);
double moments(const GridDensity& d, int order);
double moments(const Density& d, int order);

double variance(const PiecewiseExpAffineDensity& d);
double variance(const StepDensity& d);
double variance(const GridDensity& d);
double variance(const Density& d);

struct MixtureComponent {
    double weight;
    double mean;
    double variance;
};

/// Variance of a mixture from component stats, folded pairwise:
/// lam*Var(f0) + (1-lam)*Var(f1) + lam*(1-lam)*(mu1-mu0)^2.
double mixture_variance(const std::vector<MixtureComponent>& components);

// --- entropies (nats; inputs must be normalized within kMassTolerance) ---

double shannon_entropy(const PiecewiseExpAffineDensity& d);
double shannon_entropy(const StepDensity& d);
double shannon_entropy(const GridDensity& d);
double shannon_entropy(const Density& d);

inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

/// Renyi entropy of order alpha >= 0; alpha = 1 dispatches to Shannon,
/// alpha = 0 gives log |supp f|, alpha = infinity gives -log sup f.
double renyi_entropy(const PiecewiseExpAffineDensity& d, double alpha);
double renyi_entropy(const StepDensity& d, double alpha);
double renyi_entropy(const GridDensity& d, double alpha);
double renyi_entropy(const Density& d, double alpha);

/// N(X) = exp(2 h(X)) / (2 pi e)
double entropy_power(const Density& d);
/// N_alpha(X) = exp(2 h_alpha(X)), without the normalizing constant.
double renyi_entropy_power(const Density& d, double alpha);

/// h(X) - log(var X)/2 - 1; nonnegative for log-concave X is the statement
/// under test, not a postcondition.
double entropy_variance_gap(const PiecewiseExpAffineDensity& d);
double entropy_variance_gap(const StepDensity& d);
double entropy_variance_gap(const GridDensity& d);
double entropy_variance_gap(const Density& d);

LogConcavity is_log_concave(const PiecewiseExpAffineDensity& d);
LogConcavity is_log_concave(const StepDensity& d);
LogConcavity is_log_concave(const GridDensity& d);
LogConcavity is_log_concave(const Density& d);

/// For a normalized non-increasing density: f(lo)^2 * E (X-lo)^2, measured
/// from the left support endpoint.  The caller asserts <= 2.
double ball_bound_check(const PiecewiseExpAffineDensity& d);
double ball_bound_check(const StepDensity& d);

// --- normalization and transforms ---

PiecewiseExpAffineDensity normalized(const PiecewiseExpAffineDensity& d);
StepDensity normalized(const StepDensity& d);
GridDensity normalized(const GridDensity& d);
Density normalized(const Density& d);

bool is_normalized(const Density& d);

/// Image density under t -> scale*t + shift, scale > 0.
PiecewiseExpAffineDensity affine_transform(const PiecewiseExpAffineDensity& d,
                                           double scale, double shift);
StepDensity affine_transform(const StepDensity& d, double scale, double shift);

ScalarStats stats(const Density& d);

double support_lo(const Density& d);
double support_hi(const Density& d);
double density_value(const Density& d, double t);

namespace detail {
// (1 - e^{-u})/u and friends, stable near u = 0.  phi_k has the series
// sum_j (-u)^j * binom(j+k,k) * k! / (j+k+1)!.
double phi0(double u);
double phi1(double u);
double phi2(double u);
}  // namespace detail

}  // namespace lcentropy
