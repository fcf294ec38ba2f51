#pragma once

#include "phaseflow/types.hpp"

namespace phaseflow {

struct OscillatorConfig {
    double omega = 1.0;
    double E0 = 0.5;

    void validate() const;
    double turning_point() const;  // sqrt(2 E0) / omega
};

// a such that the density exp(-a H) has <E> = E0. Each quadratic degree of
// freedom contributes 1/(2a), so a = 1/E0.
double fit_stationary_parameter(const OscillatorConfig& cfg);

// <E> of exp(-a H) by quadrature of its marginals on the given grids
double stationary_energy(const OscillatorConfig& cfg, double a, const Grid1D& xg, const Grid1D& pg);

// Normalized classical density 1/(pi sqrt(xt^2 - x^2)), cell-averaged with the
// arcsine antiderivative so the turning-point cells carry their exact mass.
// Fewer than 10 grid points inside the allowed region raises a resolution error.
ProbabilityField1D wkb_density(const OscillatorConfig& cfg, const Grid1D& xg);

// Normalized position marginal of exp(-a H), a fitted
ProbabilityField1D stationary_position_density(const OscillatorConfig& cfg, const Grid1D& xg);
DensityFn stationary_phase_density(const OscillatorConfig& cfg);

// Mass of the stationary density beyond the classical turning points,
// integrated numerically (the closed form is erfc(1) for every omega, E0).
double beyond_turning_fraction(const OscillatorConfig& cfg);

// (omega/pi)^(1/2) exp(-omega x^2)
ProbabilityField1D quantum_ground_state_density(double omega, const Grid1D& xg);

} // namespace phaseflow
