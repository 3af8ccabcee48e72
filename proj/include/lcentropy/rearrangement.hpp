#pragma once

#include "lcentropy/density.hpp"

namespace lcentropy {

/// Lebesgue measure of the superlevel set {f > lambda}, exact per piece.
/// Returns 0 for lambda >= sup f and the support length as lambda -> 0+.
double superlevel_measure(const PiecewiseExpAffineDensity& d, double lambda);
double superlevel_measure(const StepDensity& d, double lambda);
double superlevel_measure(const Density& d, double lambda);

/// The non-increasing density on (0, |supp f|) equimeasurable with f.
/// Nested steps map to pieces (0, |I_k|) with the same weights; a unimodal
/// exp-affine density maps to the piecewise exp-affine inverse of the
/// level-set length function.  Non-unimodal exp-affine inputs are rejected
/// rather than rearranged through a discretization.
StepDensity decreasing_rearrangement(const StepDensity& d);
PiecewiseExpAffineDensity decreasing_rearrangement(const PiecewiseExpAffineDensity& d);
Density decreasing_rearrangement(const Density& d);

}  // namespace lcentropy
