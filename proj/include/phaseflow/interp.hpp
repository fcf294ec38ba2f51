#pragma once

#include "phaseflow/types.hpp"

namespace phaseflow {

// 4-point Lagrange cubic on a uniform grid; zero outside [min, max].
double cubic_interp(const Grid1D& g, const double* y, double x);

// Tensor-product cubic over a gridded phase-space density; zero outside.
double bicubic_interp(const PhaseSpaceDensity2D& rho, double x, double p);

DensityFn interpolant(PhaseSpaceDensity2D rho);

} // namespace phaseflow
