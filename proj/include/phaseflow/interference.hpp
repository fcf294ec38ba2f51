#pragma once

#include "phaseflow/types.hpp"

#include <optional>
#include <string>

namespace phaseflow {

struct Kick {
    double h0 = 0;
    double T = 0;
};

struct TwoSlitConfig {
    double y0 = 1000;
    double delta = 100;
    double v0 = 1;
    double X = 1e5;
    double t = 1e5;
    std::optional<Kick> kick;

    void validate() const;
    double spread() const { return delta * delta * delta * delta + t * t; }  // D^4 + t^2
};

enum class Lobe { all, direct, interference };

// Normalized transverse amplitude (y-section) of two Gaussian slits at +-y0.
double two_slit_norm2(const TwoSlitConfig& cfg);
cplx two_slit_amplitude(const TwoSlitConfig& cfg, double y);
// exact free Schrodinger evolution of the same amplitude (quantum reference)
cplx two_slit_amplitude(const TwoSlitConfig& cfg, double y, double t);

// Normalized (y, p_y) section of the three-term initial density.
DensityFn two_slit_initial_density(const TwoSlitConfig& cfg, Lobe lobe = Lobe::all);

// Normalized y-section of the free-flow pattern at time cfg.t (1D closed form).
double two_slit_section(const TwoSlitConfig& cfg, double y);
// kicked y-section: interference term translated by the kick
double ab_section(const TwoSlitConfig& cfg, double y);

struct ScreenPattern {
    Grid1D ygrid;
    Grid1D zgrid;
    std::vector<double> values;  // y-major: (i, k) -> values[i * zgrid.n + k]
    double period = 0;
    double shift = 0;
    std::string damping_toward;  // "+y", "-y" or "none"

    double at(std::size_t i, std::size_t k) const { return values[i * zgrid.n + k]; }
    std::vector<double> row_z(double z) const;
};

double fringe_period(const TwoSlitConfig& cfg);
double ab_shift(const TwoSlitConfig& cfg);

// P(X, y, z, t) as printed (three-dimensional closed form, unnormalized)
ScreenPattern two_slit_pattern(const TwoSlitConfig& cfg, const Grid1D& yg, const Grid1D& zg);
ScreenPattern ab_pattern(const TwoSlitConfig& cfg, const Grid1D& yg, const Grid1D& zg);

struct FringeMetrics {
    double period = 0;
    double shift = 0;
    double visibility = 0;
};

// Period from mean spacing of the band-passed maxima, shift from the peak of
// the band-passed cross-correlation against a reference, visibility over
// the central three fringes. Fewer than three raw extrema raises.
FringeMetrics fringe_metrics(const Grid1D& yg, const std::vector<double>& values,
                             const std::vector<double>* reference = nullptr);
FringeMetrics fringe_metrics(const ScreenPattern& pattern, const ScreenPattern* reference = nullptr);

} // namespace phaseflow
