#pragma once

#include "phaseflow/types.hpp"

namespace phaseflow {

// Splitting packet: two momentum humps at +-m0 of width delta (momentum units).
struct RelSplitConfig {
    double m0 = 0.05;
    double delta = 0.01;

    void validate() const;
};

struct Dispersion {
    double e;  // sqrt(1 + k^2)
    double w;  // k / (1 + e)
};

Dispersion dispersion(double k);

enum class RelComponent { full, direct, interference };

// Total integral of the unnormalized density, pi Int (1 + w(p)^2) A(p)^2 dp.
double rel_normalization(const RelSplitConfig& cfg);

// One sample of the normalized density by adaptive Gauss-Kronrod over k.
// Raises an integration error if the tolerance (1e-8 relative) is missed.
double rel_density_at(const RelSplitConfig& cfg, double t, double y, double p,
                      RelComponent component = RelComponent::full, double* imag_residue = nullptr);

PhaseSpaceDensity2D rel_density(const RelSplitConfig& cfg, double t, const Grid1D& yg, const Grid1D& pg,
                                RelComponent component = RelComponent::full);

// Normalized closed forms of the interference term (same normalization as rel_density).
double interference_nonrel_at(const RelSplitConfig& cfg, double t, double y, double p);
PhaseSpaceDensity2D interference_term_nonrel(const RelSplitConfig& cfg, double t, const Grid1D& yg,
                                             const Grid1D& pg);

// m0^4 / delta^3; the ultrarelativistic form is accepted for t <= window/10
double ultrarel_validity_time(const RelSplitConfig& cfg);
double interference_ultrarel_at(const RelSplitConfig& cfg, double t, double y, double p);
PhaseSpaceDensity2D interference_term_ultrarel(const RelSplitConfig& cfg, double t, const Grid1D& yg,
                                               const Grid1D& pg);

} // namespace phaseflow
