#pragma once

#include "phaseflow/types.hpp"

#include <vector>

namespace phaseflow {

struct Potential {
    enum class Kind { zero, step, narrow_delta, harmonic, inverted_harmonic, hard_wall };
    Kind kind = Kind::zero;
    double V0 = 0;     // step height on x >= 0
    double gap = 0;    // step cut at x = gap (0 keeps it semi-infinite)
    double edge = 0;   // erf ramp width of the step edges; 0 is a sharp step
    double W0 = 0;     // delta strength (area of the narrow Gaussian)
    double width = 0;  // delta Gaussian sigma; 0 means three grid spacings
    double omega = 0;  // V = +-omega^2 x^2 / 2

    void validate() const;
    // dx is the grid spacing (only used for the default delta width)
    double value(double x, double dx) const;
    double delta_sigma(double dx) const { return width > 0 ? width : 3 * dx; }
};

struct TdseConfig {
    Grid1D grid;
    double dt = 1e-3;
    std::size_t steps = 0;
    Potential potential;
    bool absorbing = false;
    double absorb_fraction = 0.1;  // outer fraction of the span on each side
    double absorb_rate = 10;       // peak damping rate inside the margin
    std::vector<std::size_t> snapshots;  // step counts to record; the final state is always kept

    void validate() const;
};

struct Snapshot {
    double t;
    ComplexField1D psi;
};

struct EvolveReport {
    double norm_initial = 0;
    double norm_final = 0;
    double norm_drift = 0;  // relative, over the whole run
};

// Strang split-step: half potential, full kinetic in momentum space, half
// potential. hard_wall needs a grid ending at x = 0 and is run on the odd
// extension. Without absorbers a norm drift above 1e-6 per 1000 steps raises a
// stability error; dt > dx^2/pi only warns.
std::vector<Snapshot> evolve(const ComplexField1D& psi0, const TdseConfig& cfg, EvolveReport* report = nullptr);

struct Profile {
    ProbabilityField1D P;
    bool underflow = false;  // every sample below 1e-300
};

// |psi|^2 restricted to x >= x_min
Profile transmitted_profile(const Snapshot& snap, double x_min);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    std::size_t points = 0;
};

// Least squares fit of ln P over [lo, hi]. Raises metric_unavailable when the
// window has fewer than 5 positive samples or, when required, ln P is visibly
// not linear.
SlopeFit log_slope_fit(const ProbabilityField1D& P, double lo, double hi, bool require_exponential = true);

// <H> with the kinetic part evaluated spectrally
double energy_expectation(const ComplexField1D& psi, const Potential& V);

struct GroundState {
    ComplexField1D psi;
    double energy = 0;
    std::size_t steps = 0;
};

// Imaginary-time split-step relaxation from a Gaussian guess, run with
// 100 dtau, 10 dtau and dtau in turn. Each stage stops when the L2 change per
// unit imaginary time falls below tol.
GroundState ground_state(const Grid1D& grid, const Potential& V, double dtau = 1e-4, double tol = 1e-10,
                         std::size_t max_steps = 400000);

} // namespace phaseflow
