#pragma once

#include "phaseflow/types.hpp"

namespace phaseflow {

struct FlowSpec {
    enum class Kind { free, harmonic, inverted_harmonic, magnetic_kick };
    Kind kind = Kind::free;
    double omega = 0;  // harmonic / inverted
    double h0 = 0;     // magnetic kick field strength
    double T = 0;      // kick duration
    double v0 = 0;     // longitudinal drift frozen during the kick

    void validate() const;
};

// Back-traced initial phase-space point for a sample (x, p) at time t.
struct Backtrace {
    double x;
    double p;
};

Backtrace backtrace_free(double x, double p, double t, double mass = 1.0);
// harmonic: rotation; inverted: hyperbolic flow. omega*t > 50 raises a range error.
Backtrace backtrace_quadratic(double x, double p, double omega, bool inverted, double t);
// y-section of the completed magnetic kick (v_x frozen at v0, H = h0 T z-hat)
Backtrace backtrace_kick(double y, double v, double h0, double T, double v0, double t);

PhaseSpaceDensity2D free_propagate(const DensityFn& rho0, double t, const Grid1D& xg, const Grid1D& pg,
                                   double mass = 1.0);
// gridded initial density: bicubic interpolation, zero outside its grid
PhaseSpaceDensity2D free_propagate(const PhaseSpaceDensity2D& rho0, double t);

PhaseSpaceDensity2D quadratic_propagate(const DensityFn& rho0, double omega, bool inverted, double t,
                                        const Grid1D& xg, const Grid1D& pg);
PhaseSpaceDensity2D quadratic_propagate(const PhaseSpaceDensity2D& rho0, double omega, bool inverted,
                                        double t);

// Kicked back-trace of the interference lobe only. Requires t >= T; warns when |h0 T| > 0.1.
PhaseSpaceDensity2D magnetic_kick_propagate(const DensityFn& rho_int, double h0, double T, double v0,
                                            double t, const Grid1D& yg, const Grid1D& vg);

// Generic dispatch used by the scenario runner.
PhaseSpaceDensity2D propagate(const DensityFn& rho0, const FlowSpec& flow, double t, const Grid1D& xg,
                              const Grid1D& pg);

// Position marginal of an analytic density at time t by trapezoid over p.
std::vector<double> position_marginal(const DensityFn& rho_t, const Grid1D& xg, const Grid1D& pg);

} // namespace phaseflow
