#include "lcentropy/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcentropy {

namespace {

struct Crossing {
    bool pinned;     // boundary or knot: position constant in lambda
    double position; // only for pinned
    double slope;    // segment slope when not pinned
    double offset;
};

// Leftmost point of {f > lambda}: first segment whose left value clears
// lambda is a pin (support edge or a jump knot), otherwise the level
// crossing sits inside the first segment whose right value clears it.
Crossing left_crossing(const std::vector<ExpAffineSegment>& segs, double lambda) {
    for (const auto& s : segs) {
        const double vlo = s.value(s.interval.lo);
        const double vhi = s.value(s.interval.hi);
        if (vlo > lambda) return {true, s.interval.lo, 0.0, 0.0};
        if (vhi > lambda) return {false, 0.0, s.slope, s.offset};
    }
    throw std::logic_error("level set empty below sup");
}

Crossing right_crossing(const std::vector<ExpAffineSegment>& segs, double lambda) {
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
        const double vlo = it->value(it->interval.lo);
        const double vhi = it->value(it->interval.hi);
        if (vhi > lambda) return {true, it->interval.hi, 0.0, 0.0};
        if (vlo > lambda) return {false, 0.0, it->slope, it->offset};
    }
    throw std::logic_error("level set empty below sup");
}

double crossing_position(const Crossing& c, double lambda) {
    if (c.pinned) return c.position;
    return (-std::log(lambda) - c.offset) / c.slope;
}

void require_unimodal(const PiecewiseExpAffineDensity& d) {
    // value profile along the support must rise to a peak and then fall;
    // a strict drop followed by a strict rise means a valley
    bool falling_seen = false;
    const auto& segs = d.segments();
    auto note = [&](double delta, double scale) {
        if (delta < -1e-12 * scale) falling_seen = true;
        else if (delta > 1e-12 * scale && falling_seen)
            throw std::invalid_argument("rearrangement requires a unimodal density");
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (i > 0) {
            const double prev = segs[i - 1].value(segs[i - 1].interval.hi);
            const double cur = segs[i].value(segs[i].interval.lo);
            note(cur - prev, std::max(prev, cur));
        }
        const double vlo = segs[i].value(segs[i].interval.lo);
        const double vhi = segs[i].value(segs[i].interval.hi);
        note(vhi - vlo, std::max(vlo, vhi));
    }
}

}  // namespace

double superlevel_measure(const PiecewiseExpAffineDensity& d, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("superlevel level must be positive");
    double measure = 0.0;
    for (const auto& s : d.segments()) {
        const double len = s.interval.length();
        if (s.slope == 0.0) {
            if (s.value(s.interval.lo) > lambda) measure += len;
            continue;
        }
        // f > lambda  <=>  slope * t < -log(lambda) - offset
        const double cross = (-std::log(lambda) - s.offset) / s.slope;
        if (s.slope > 0.0)
            measure += std::clamp(cross - s.interval.lo, 0.0, len);
        else
            measure += std::clamp(s.interval.hi - cross, 0.0, len);
    }
    return measure;
}

double superlevel_measure(const StepDensity& d, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("superlevel level must be positive");
    double measure = 0.0;
    for (const auto& f : d.flatten())
        if (f.value > lambda) measure += f.hi - f.lo;
    return measure;
}

double superlevel_measure(const Density& d, double lambda) {
    if (const auto* p = std::get_if<PiecewiseExpAffineDensity>(&d))
        return superlevel_measure(*p, lambda);
    if (const auto* p = std::get_if<StepDensity>(&d)) return superlevel_measure(*p, lambda);
    throw std::invalid_argument("superlevel measure not supported for grid densities");
}

StepDensity decreasing_rearrangement(const StepDensity& d) {
    // nested intervals map to (0, |I_k|) with the same weights; strict
    // nesting gives strictly decreasing lengths, so the result is canonical
    // (positive weights rule out equal-height pieces)
    std::vector<Interval> iv;
    iv.reserve(d.intervals().size());
    for (const auto& I : d.intervals()) iv.push_back({0.0, I.length()});
    return StepDensity(std::move(iv), d.weights());
}

PiecewiseExpAffineDensity decreasing_rearrangement(const PiecewiseExpAffineDensity& d) {
    require_unimodal(d);
    const auto& segs = d.segments();
    const double total = d.support_length();

    // distinct one-sided knot values, descending: the level-set length
    // function L(lambda) is a single logarithmic branch between them
    std::vector<double> levels;
    for (const auto& s : segs) {
        levels.push_back(s.value(s.interval.lo));
        levels.push_back(s.value(s.interval.hi));
    }
    std::sort(levels.begin(), levels.end(), std::greater<double>());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-14 * a; }),
                 levels.end());

    std::vector<ExpAffineSegment> out;
    double cursor = 0.0;
    auto emit_plateau = [&](double upto, double value) {
        if (upto > cursor + 1e-12 * (1.0 + total))
            out.push_back({{cursor, upto}, 0.0, -std::log(value)});
        cursor = std::max(cursor, upto);
    };

    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
        const double hi = levels[j], lo = levels[j + 1];
        const double mid = std::sqrt(hi * lo);
        const Crossing cl = left_crossing(segs, mid);
        const Crossing cr = right_crossing(segs, mid);
        const double Lmid = crossing_position(cr, mid) - crossing_position(cl, mid);
        const double B = (cr.pinned ? 0.0 : 1.0 / cr.slope) + (cl.pinned ? 0.0 : -1.0 / cl.slope);
        const double A = Lmid + B * std::log(mid);
        const double s_hi = A - B * std::log(hi);   // |{f > hi}|, limit from below
        const double s_lo = A - B * std::log(lo);
        emit_plateau(s_hi, hi);  // a gap means f has a plateau at value hi
        if (B > 0.0 && s_lo > cursor + 1e-15 * (1.0 + total)) {
            out.push_back({{cursor, s_lo}, 1.0 / B, -A / B});
            cursor = s_lo;
        }
    }
    // below the lowest knot value the whole support qualifies
    emit_plateau(total, levels.back());
    if (out.empty()) throw std::logic_error("rearrangement produced no segments");
    out.back().interval.hi = total;  // snap accumulated drift (<= 1e-14 relative)

    // canonical form: merge adjacent pieces of the same exponential law
    std::vector<ExpAffineSegment> merged;
    for (const auto& s : out) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const bool same = std::abs(last.slope - s.slope) <= 1e-12 * (1.0 + std::abs(s.slope)) &&
                              std::abs(last.offset - s.offset) <= 1e-12 * (1.0 + std::abs(s.offset));
            if (same) {
                last.interval.hi = s.interval.hi;
                continue;
            }
        }
        merged.push_back(s);
    }
    return PiecewiseExpAffineDensity(std::move(merged));
}

Density decreasing_rearrangement(const Density& d) {
    if (const auto* p = std::get_if<PiecewiseExpAffineDensity>(&d))
        return decreasing_rearrangement(*p);
    if (const auto* p = std::get_if<StepDensity>(&d)) return decreasing_rearrangement(*p);
    throw std::invalid_argument("rearrangement of grid densities is not supported");
}

}  // namespace lcentropy
