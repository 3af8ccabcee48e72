#include "lcentropy/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcentropy {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite result: ") + what);
}

double require_normalized_mass(double mass) {
    if (std::abs(mass - 1.0) > kMassTolerance)
        throw std::invalid_argument("density is not normalized (mass deviates from 1)");
    return mass;
}

}  // namespace

double ExpAffineSegment::value(double t) const { return std::exp(log_value(t)); }

// ---------------------------------------------------------------------------
// constructors / invariants
// ---------------------------------------------------------------------------

PiecewiseExpAffineDensity::PiecewiseExpAffineDensity(std::vector<ExpAffineSegment> segments)
    : segments_(std::move(segments)) {
    require(!segments_.empty(), "piecewise density needs at least one segment");
    for (const auto& s : segments_) {
        require(std::isfinite(s.interval.lo) && std::isfinite(s.interval.hi),
                "segment endpoints must be finite");
        require(s.interval.lo < s.interval.hi, "segment requires lo < hi");
        require(std::isfinite(s.value(s.interval.lo)) && std::isfinite(s.value(s.interval.hi)),
                "segment density value must be finite");
    }
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        const double gap = segments_[i + 1].interval.lo - segments_[i].interval.hi;
        require(std::abs(gap) <= 1e-12 * (1.0 + std::abs(segments_[i].interval.hi)),
                "segments must be contiguous");
    }
}

double PiecewiseExpAffineDensity::support_length() const {
    double len = 0.0;
    for (const auto& s : segments_) len += s.interval.length();
    return len;
}

double PiecewiseExpAffineDensity::value(double t) const {
    for (const auto& s : segments_)
        if (s.interval.contains(t)) return s.value(t);
    return 0.0;
}

double PiecewiseExpAffineDensity::sup_value() const {
    // exp of an affine function is monotone per segment: extrema sit at knots
    double m = 0.0;
    for (const auto& s : segments_)
        m = std::max({m, s.value(s.interval.lo), s.value(s.interval.hi)});
    return m;
}

StepDensity::StepDensity(std::vector<Interval> intervals, std::vector<double> weights)
    : intervals_(std::move(intervals)), weights_(std::move(weights)) {
    require(!intervals_.empty(), "step density needs at least one interval");
    require(intervals_.size() == weights_.size(), "intervals/weights size mismatch");
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
        require(intervals_[k].lo < intervals_[k].hi, "interval requires lo < hi");
        require(weights_[k] > 0.0, "step weights must be positive");
    }
    for (std::size_t k = 0; k + 1 < intervals_.size(); ++k) {
        const auto& outer = intervals_[k];
        const auto& inner = intervals_[k + 1];
        const bool nested = inner.lo >= outer.lo && inner.hi <= outer.hi &&
                            inner.length() < outer.length();
        require(nested, "intervals not nested");
    }
}

double StepDensity::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

std::vector<StepDensity::Flat> StepDensity::flatten() const {
    // Nesting makes the density a staircase: each interval adds
    // weight/|I_k| on top of everything inside it.
    const std::size_t n = intervals_.size();
    std::vector<double> cumulative(n);
    double level = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        level += weights_[k] / intervals_[k].length();
        cumulative[k] = level;
    }
    std::vector<Flat> flats;
    // left flank: I_k \ I_{k+1} pieces on the left side
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = intervals_[k].lo;
        const double hi = (k + 1 < n) ? intervals_[k + 1].lo : intervals_[k].hi;
        if (hi > lo) flats.push_back({lo, hi, cumulative[k]});
    }
    // right flank, walking back out
    for (std::size_t k = n; k-- > 0;) {
        if (k + 1 == n) continue;  // innermost already emitted in the loop above
        const double lo = intervals_[k + 1].hi;
        const double hi = intervals_[k].hi;
        if (hi > lo) flats.push_back({lo, hi, cumulative[k]});
    }
    return flats;
}

double StepDensity::value(double t) const {
    double v = 0.0;
    for (std::size_t k = 0; k < intervals_.size(); ++k)
        if (intervals_[k].contains(t)) v += weights_[k] / intervals_[k].length();
    return v;
}

double StepDensity::sup_value() const {
    double level = 0.0;
    for (std::size_t k = 0; k < intervals_.size(); ++k)
        level += weights_[k] / intervals_[k].length();
    return level;
}

GridDensity::GridDensity(double origin, double step, std::vector<double> values)
    : origin_(origin), step_(step), values_(std::move(values)) {
    require(step_ > 0.0, "grid step must be positive");
    require(values_.size() >= 2, "grid needs at least two samples");
    for (double v : values_) require(v >= 0.0 && std::isfinite(v), "grid values must be nonnegative");
}

double GridDensity::value(double t) const {
    const double s = (t - origin_) / step_;
    if (s < 0.0 || s > double(values_.size() - 1)) return 0.0;
    const std::size_t i = std::min(std::size_t(s), values_.size() - 2);
    const double frac = s - double(i);
    return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double GridDensity::sup_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

// ---------------------------------------------------------------------------
// stable segment integrals
// ---------------------------------------------------------------------------

namespace detail {

// phi_k(u) = sum_j (-u)^j binom(j+k,k) k!/(j+k+1)!, truncated at degree 8.
// Truncation error at the switch point is ~1e-19.
static double phi_series(double u, int k) {
    double term = 1.0;  // u^j
    double sum = 0.0;
    for (int j = 0; j <= 8; ++j) {
        double binom = 1.0;
        for (int i = 1; i <= k; ++i) binom *= double(j + i) / double(i);
        double fact = 1.0;
        for (int i = 1; i <= j + k + 1; ++i) fact *= double(i);
        double kfact = 1.0;
        for (int i = 1; i <= k; ++i) kfact *= double(i);
        const double c = ((j % 2 == 0) ? 1.0 : -1.0) * binom * kfact / fact;
        sum += c * term;
        term *= u;
    }
    return sum;
}

double phi0(double u) {
    if (std::abs(u) < kCancellationThreshold) return phi_series(u, 0);
    return -std::expm1(-u) / u;
}

double phi1(double u) {
    if (std::abs(u) < kCancellationThreshold) return phi_series(u, 1);
    return (1.0 - (1.0 + u) * std::exp(-u)) / (u * u);
}

double phi2(double u) {
    if (std::abs(u) < kCancellationThreshold) return phi_series(u, 2);
    return (2.0 - (u * u + 2.0 * u + 2.0) * std::exp(-u)) / (u * u * u);
}

}  // namespace detail

namespace {

struct SegmentMoments {
    double m0, m1, m2;
};

// Closed-form integrals of t^k * exp(-(p t + q)) over the segment,
// as f(lo) * len^{k+1} * phi_k(p*len) shifted back to absolute coordinates.
SegmentMoments segment_moments(const ExpAffineSegment& s) {
    const double lo = s.interval.lo;
    const double len = s.interval.length();
    const double flo = s.value(lo);
    const double u = s.slope * len;
    const double i0 = flo * len * detail::phi0(u);
    const double i1 = flo * len * len * detail::phi1(u);
    const double i2 = flo * len * len * len * detail::phi2(u);
    SegmentMoments m;
    m.m0 = i0;
    m.m1 = lo * i0 + i1;
    m.m2 = lo * lo * i0 + 2.0 * lo * i1 + i2;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// moments / variance
// ---------------------------------------------------------------------------

double moments(const PiecewiseExpAffineDensity& d, int order) {
    require(order >= 0 && order <= 2, "moment order must be 0, 1 or 2");
    double acc = 0.0;
    for (const auto& s : d.segments()) {
        const SegmentMoments m = segment_moments(s);
        acc += (order == 0) ? m.m0 : (order == 1) ? m.m1 : m.m2;
    }
    check_finite(acc, "malformed segment in moment integral");
    return acc;
}

double moments(const StepDensity& d, int order) {
    require(order >= 0 && order <= 2, "moment order must be 0, 1 or 2");
    double acc = 0.0;
    for (std::size_t k = 0; k < d.intervals().size(); ++k) {
        const auto& I = d.intervals()[k];
        const double w = d.weights()[k];
        switch (order) {
            case 0: acc += w; break;
            case 1: acc += w * 0.5 * (I.lo + I.hi); break;
            default: acc += w * (I.lo * I.lo + I.lo * I.hi + I.hi * I.hi) / 3.0; break;
        }
    }
    check_finite(acc, "malformed step density");
    return acc;
}

double moments(const GridDensity& d, int order) {
    require(order >= 0 && order <= 2, "moment order must be 0, 1 or 2");
    const auto& v = d.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = d.origin() + d.step() * double(i);
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        double tk = 1.0;
        for (int k = 0; k < order; ++k) tk *= t;
        acc += w * tk * v[i];
    }
    return acc * d.step();
}

double moments(const Density& d, int order) {
    return std::visit([order](const auto& x) { return moments(x, order); }, d);
}

namespace {
template <class D>
double variance_impl(const D& d) {
    const double mass = moments(d, 0);
    if (mass <= 0.0) throw std::invalid_argument("variance of zero-mass density");
    const double mean = moments(d, 1) / mass;
    return moments(d, 2) / mass - mean * mean;
}
}  // namespace

double variance(const PiecewiseExpAffineDensity& d) { return variance_impl(d); }
double variance(const StepDensity& d) { return variance_impl(d); }
double variance(const GridDensity& d) { return variance_impl(d); }
double variance(const Density& d) {
    return std::visit([](const auto& x) { return variance(x); }, d);
}

double mixture_variance(const std::vector<MixtureComponent>& components) {
    require(!components.empty(), "mixture needs at least one component");
    double wsum = 0.0;
    for (const auto& c : components) {
        require(c.weight > 0.0, "mixture weights must be positive");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > kMassTolerance)
        throw std::invalid_argument("mixture weights must sum to 1");
    // fold pairwise: the two-component decomposition applied left to right
    double w = components[0].weight;
    double mean = components[0].mean;
    double var = components[0].variance;
    for (std::size_t i = 1; i < components.size(); ++i) {
        const auto& c = components[i];
        const double wn = w + c.weight;
        const double lam = w / wn;
        var = lam * var + (1.0 - lam) * c.variance +
              lam * (1.0 - lam) * (c.mean - mean) * (c.mean - mean);
        mean = lam * mean + (1.0 - lam) * c.mean;
        w = wn;
    }
    return var;
}

// ---------------------------------------------------------------------------
// entropies
// ---------------------------------------------------------------------------

double shannon_entropy(const PiecewiseExpAffineDensity& d) {
    require_normalized_mass(moments(d, 0));
    // -f log f = (p t + q) f: entropy falls out of the same moment integrals
    double h = 0.0;
    for (const auto& s : d.segments()) {
        const SegmentMoments m = segment_moments(s);
        h += s.slope * m.m1 + s.offset * m.m0;
    }
    check_finite(h, "entropy integral");
    return h;
}

double shannon_entropy(const StepDensity& d) {
    require_normalized_mass(d.weight_sum());
    double h = 0.0;
    for (const auto& f : d.flatten())
        if (f.value > 0.0) h -= f.value * (f.hi - f.lo) * std::log(f.value);
    return h;
}

double shannon_entropy(const GridDensity& d) {
    require_normalized_mass(moments(d, 0));
    const auto& v = d.values();
    double h = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        if (v[i] > 0.0) h -= w * v[i] * std::log(v[i]);  // 0 log 0 := 0
    }
    return h * d.step();
}

double shannon_entropy(const Density& d) {
    return std::visit([](const auto& x) { return shannon_entropy(x); }, d);
}

namespace {

double support_measure(const PiecewiseExpAffineDensity& d) { return d.support_length(); }
double support_measure(const StepDensity& d) { return d.intervals().front().length(); }
double support_measure(const GridDensity& d) {
    const auto& v = d.values();
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > 0.0 || v[i + 1] > 0.0) len += d.step();
    return len;
}

double renyi_integral(const PiecewiseExpAffineDensity& d, double alpha) {
    // f^alpha is exp-affine again: slope/offset scale by alpha
    double acc = 0.0;
    for (const auto& s : d.segments()) {
        ExpAffineSegment sa{s.interval, alpha * s.slope, alpha * s.offset};
        acc += segment_moments(sa).m0;
    }
    return acc;
}

double renyi_integral(const StepDensity& d, double alpha) {
    double acc = 0.0;
    for (const auto& f : d.flatten())
        if (f.value > 0.0) acc += std::pow(f.value, alpha) * (f.hi - f.lo);
    return acc;
}

double renyi_integral(const GridDensity& d, double alpha) {
    const auto& v = d.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        if (v[i] > 0.0) acc += w * std::pow(v[i], alpha);
    }
    return acc * d.step();
}

template <class D>
double renyi_impl(const D& d, double alpha) {
    require(alpha >= 0.0, "Renyi order must be nonnegative");
    if (alpha == 1.0) return shannon_entropy(d);
    if (alpha == 0.0) return std::log(support_measure(d));
    if (std::isinf(alpha)) return -std::log(d.sup_value());
    const double integral = renyi_integral(d, alpha);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw std::runtime_error("divergent Renyi integral");
    return std::log(integral) / (1.0 - alpha);
}

}  // namespace

double renyi_entropy(const PiecewiseExpAffineDensity& d, double alpha) { return renyi_impl(d, alpha); }
double renyi_entropy(const StepDensity& d, double alpha) { return renyi_impl(d, alpha); }
double renyi_entropy(const GridDensity& d, double alpha) { return renyi_impl(d, alpha); }
double renyi_entropy(const Density& d, double alpha) {
    return std::visit([alpha](const auto& x) { return renyi_entropy(x, alpha); }, d);
}

double entropy_power(const Density& d) {
    return std::exp(2.0 * shannon_entropy(d)) / (2.0 * M_PI * M_E);
}

double renyi_entropy_power(const Density& d, double alpha) {
    return std::exp(2.0 * renyi_entropy(d, alpha));
}

namespace {
template <class D>
double gap_impl(const D& d) {
    const double var = variance(d);
    if (var <= 0.0) throw std::invalid_argument("entropy-variance gap needs positive variance");
    return shannon_entropy(d) - 0.5 * std::log(var) - 1.0;
}
}  // namespace

double entropy_variance_gap(const PiecewiseExpAffineDensity& d) { return gap_impl(d); }
double entropy_variance_gap(const StepDensity& d) { return gap_impl(d); }
double entropy_variance_gap(const GridDensity& d) { return gap_impl(d); }
double entropy_variance_gap(const Density& d) {
    return std::visit([](const auto& x) { return entropy_variance_gap(x); }, d);
}

// ---------------------------------------------------------------------------
// shape checks
// ---------------------------------------------------------------------------

LogConcavity is_log_concave(const PiecewiseExpAffineDensity& d) {
    const auto& segs = d.segments();
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        if (segs[i + 1].slope < segs[i].slope - 1e-12) return {false, false};
        const double t = segs[i].interval.hi;
        const double vl = segs[i].slope * t + segs[i].offset;
        const double vr = segs[i + 1].slope * t + segs[i + 1].offset;
        if (std::abs(vl - vr) > 1e-9 * (1.0 + std::max(std::abs(vl), std::abs(vr))))
            return {false, false};  // V jumps at the knot
    }
    return {true, false};
}

LogConcavity is_log_concave(const StepDensity&) {
    // nested unimodal steps are limits of log-concave densities
    return {true, true};
}

LogConcavity is_log_concave(const GridDensity& d) {
    const auto& v = d.values();
    std::size_t first = 0, last = v.size() - 1;
    while (first < v.size() && v[first] == 0.0) ++first;
    while (last > first && v[last] == 0.0) --last;
    if (first >= last) return {false, false};
    for (std::size_t i = first; i <= last; ++i)
        if (v[i] <= 0.0) return {false, false};  // interior zero: support not an interval
    for (std::size_t i = first + 1; i < last; ++i) {
        const double lhs = 2.0 * std::log(v[i]);
        const double rhs = std::log(v[i - 1]) + std::log(v[i + 1]);
        if (lhs < rhs - 1e-9) return {false, false};
    }
    return {true, false};
}

LogConcavity is_log_concave(const Density& d) {
    return std::visit([](const auto& x) { return is_log_concave(x); }, d);
}

double ball_bound_check(const PiecewiseExpAffineDensity& d) {
    const auto& segs = d.segments();
    bool non_increasing = true;
    for (std::size_t i = 0; i < segs.size() && non_increasing; ++i) {
        if (segs[i].slope < -1e-12) non_increasing = false;
        if (i + 1 < segs.size()) {
            const double vl = segs[i].value(segs[i].interval.hi);
            const double vr = segs[i + 1].value(segs[i + 1].interval.lo);
            if (vr > vl * (1.0 + 1e-9)) non_increasing = false;  // upward jump
        }
    }
    require(non_increasing, "ball bound requires a non-increasing density");
    const double mass = require_normalized_mass(moments(d, 0));
    const double lo = d.support_lo();
    const double f0 = d.value(lo);
    const double ex2 = (moments(d, 2) - 2.0 * lo * moments(d, 1) + lo * lo * mass) / mass;
    return f0 * f0 * ex2;
}

double ball_bound_check(const StepDensity& d) {
    const auto flats = d.flatten();
    for (std::size_t i = 0; i + 1 < flats.size(); ++i)
        require(flats[i + 1].value <= flats[i].value * (1.0 + 1e-12),
                "ball bound requires a non-increasing density");
    const double mass = require_normalized_mass(moments(d, 0));
    const double lo = d.support_lo();
    const double f0 = flats.front().value;
    const double ex2 = (moments(d, 2) - 2.0 * lo * moments(d, 1) + lo * lo * mass) / mass;
    return f0 * f0 * ex2;
}

// ---------------------------------------------------------------------------
// normalization / transforms
// ---------------------------------------------------------------------------

PiecewiseExpAffineDensity normalized(const PiecewiseExpAffineDensity& d) {
    const double mass = moments(d, 0);
    require(mass > 0.0, "cannot normalize zero-mass density");
    // rescaling the offsets keeps the e^{-V} representation closed
    const double dq = std::log(mass);
    auto segs = d.segments();
    for (auto& s : segs) s.offset += dq;
    return PiecewiseExpAffineDensity(std::move(segs));
}

StepDensity normalized(const StepDensity& d) {
    const double wsum = d.weight_sum();
    require(wsum > 0.0, "cannot normalize zero-mass density");
    auto w = d.weights();
    for (auto& x : w) x /= wsum;
    return StepDensity(d.intervals(), std::move(w));
}

GridDensity normalized(const GridDensity& d) {
    const double mass = moments(d, 0);
    require(mass > 0.0, "cannot normalize zero-mass density");
    auto v = d.values();
    for (auto& x : v) x /= mass;
    return GridDensity(d.origin(), d.step(), std::move(v));
}

Density normalized(const Density& d) {
    return std::visit([](const auto& x) -> Density { return normalized(x); }, d);
}

bool is_normalized(const Density& d) {
    return std::abs(moments(d, 0) - 1.0) <= kMassTolerance;
}

PiecewiseExpAffineDensity affine_transform(const PiecewiseExpAffineDensity& d,
                                           double scale, double shift) {
    require(scale > 0.0, "affine transform needs positive scale");
    auto segs = d.segments();
    for (auto& s : segs) {
        // f'(t) = f((t-shift)/scale)/scale stays exp-affine
        const double p = s.slope / scale;
        const double q = s.offset - s.slope * shift / scale + std::log(scale);
        s.interval = {scale * s.interval.lo + shift, scale * s.interval.hi + shift};
        s.slope = p;
        s.offset = q;
    }
    return PiecewiseExpAffineDensity(std::move(segs));
}

StepDensity affine_transform(const StepDensity& d, double scale, double shift) {
    require(scale > 0.0, "affine transform needs positive scale");
    auto iv = d.intervals();
    for (auto& I : iv) I = {scale * I.lo + shift, scale * I.hi + shift};
    return StepDensity(std::move(iv), d.weights());
}

ScalarStats stats(const Density& d) {
    ScalarStats s;
    s.mass = moments(d, 0);
    require(s.mass > 0.0, "stats of zero-mass density");
    s.mean = moments(d, 1) / s.mass;
    s.second_moment = moments(d, 2) / s.mass;
    s.variance = s.second_moment - s.mean * s.mean;
    s.shannon_entropy = shannon_entropy(d);
    return s;
}

double support_lo(const Density& d) {
    return std::visit([](const auto& x) { return x.support_lo(); }, d);
}

double support_hi(const Density& d) {
    return std::visit([](const auto& x) { return x.support_hi(); }, d);
}

double density_value(const Density& d, double t) {
    return std::visit([t](const auto& x) { return x.value(t); }, d);
}

}  // namespace lcentropy
