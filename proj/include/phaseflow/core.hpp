#pragma once

#include "phaseflow/types.hpp"

namespace phaseflow {

struct WignerOptions {
    // relative edge amplitude above which f is considered not to decay
    double edge_tolerance = 1e-12;
    // fraction of |g|^2 allowed outside the requested p-range
    double range_tolerance = 1e-9;
    bool check_range = true;
};

struct WignerDiagnostics {
    double imag_residue = 0;  // max |Im| relative to max |rho|
    double edge_ratio = 0;    // max edge |f| relative to max |f|
    double outside_mass = 0;  // |g|^2 fraction outside the p-range
};

// rho(x,p) = (1/pi) Int dq exp(2ipq) f*(x+q) f(x-q), q sampled on the x
// spacing over half the grid extent with zero padding; evaluated at an
// arbitrary p-grid by a chirp-z transform per x row.
PhaseSpaceDensity2D wigner_transform(const ComplexField1D& f, const Grid1D& pgrid,
                                     const WignerOptions& opt = {},
                                     WignerDiagnostics* diag = nullptr);

struct Marginals {
    ProbabilityField1D P;
    ProbabilityField1D Q;
    double worst_negative = 0;  // most negative raw value relative to the max
    std::size_t clipped = 0;    // samples clamped to zero
};

// P(x) = Int dp rho, Q(p) = Int dx rho. Values within -1e-12 (relative) of
// zero are clamped; with strict set, anything more negative raises.
Marginals marginals(const PhaseSpaceDensity2D& rho, bool strict = true);

CurrentField1D probability_current(const PhaseSpaceDensity2D& rho, double mass = 1.0);

// standard deviations of normalized P and Q
double position_spread(const ProbabilityField1D& P);
double uncertainty_product(const ProbabilityField1D& P, const ProbabilityField1D& Q);
// Dx Dp of a sampled amplitude: P = |f|^2, Q = |g|^2 with g from momentum_amplitude.
// Periodic states (TDSE) can pass pad 1 and an infinite edge tolerance.
double amplitude_uncertainty(const ComplexField1D& f, std::size_t pad = 2, double edge_tolerance = 1e-12);

// |f| = sqrt(P), arg f = Int^x J/P, anchored to zero at the grid minimum.
ComplexField1D reconstruct_phase(const ProbabilityField1D& P, const CurrentField1D& J,
                                 double mass = 1.0, double threshold = 1e-14);

// g(p) = (2 pi)^(-1/2) Int dx exp(-ipx) f(x) on the FFT-conjugate p-grid
// of n*pad points (f zero-extended on the right by the pad factor).
ComplexField1D momentum_amplitude(const ComplexField1D& f, std::size_t pad = 1,
                                  double edge_tolerance = 1e-12);

// inverse of momentum_amplitude: returns f on n points starting at xmin
ComplexField1D position_amplitude(const ComplexField1D& g, double xmin, std::size_t n);

ProbabilityField1D density_of(const ComplexField1D& f);

// J = Im(f* f')/m by spectral differentiation
CurrentField1D current_of(const ComplexField1D& f, double mass = 1.0);

} // namespace phaseflow
