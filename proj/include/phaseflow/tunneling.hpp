#pragma once

#include "phaseflow/errors.hpp"
#include "phaseflow/types.hpp"

namespace phaseflow {

struct BarrierSpec {
    enum class Kind { infinite_wall, step, delta };
    Kind kind = Kind::infinite_wall;
    double V0 = 0;   // step height
    double W0 = 0;   // delta strength
    double gap = 0;  // step cut at x = gap (0: semi-infinite)

    void validate() const;
};

// Regime gates: sqrt(2 V0) >= 5 p0 for the step closed forms, W0 >= 5 p0 for the delta.
void step_gate(const GaussianPacket& packet, double V0, GateMode mode);
void delta_gate(const GaussianPacket& packet, double W0, GateMode mode);

// ---- infinite wall at x = 0 ------------------------------------------------

// Requires x0 < 0 and |x0| >= 3 delta.
void validate_wall_packet(const GaussianPacket& packet);

// squared norm of h(x) - h(-x) over x <= 0 (half that over the whole line)
double wall_norm2(const GaussianPacket& packet);

// Three-term density: lobes at (x0, p0), (-x0, -p0) and the
// -2 cos[2(p0 x - p x0)] lobe at the origin, 1/pi included. Normalized over the
// whole plane, so the physical half x < 0 carries mass 1/2.
DensityFn wall_initial_density(const GaussianPacket& packet);

// Normalized image-packet difference on x <= 0; samples at x > 0 are zero.
cplx wall_amplitude(const GaussianPacket& packet, double x, double t);
ComplexField1D wall_amplitude(const GaussianPacket& packet, double t, const Grid1D& xg);

struct HalflineOptions {
    double dx = 0.0025;
    double span = 0;  // x in [-span, 0]; 0 picks the packet support automatically
    std::size_t pad = 2;
};

// g(p,t) = (2 pi)^(-1/2) Int_{-inf}^0 dx f(x,t) exp(-ipx) by zero extension and FFT.
// The grid must contain the packet support (range error otherwise).
ComplexField1D halfline_momentum_amplitude(const GaussianPacket& packet, double t,
                                           const HalflineOptions& opt = {});
ProbabilityField1D halfline_momentum_density(const GaussianPacket& packet, double t,
                                             const HalflineOptions& opt = {});

// Q(p,t) from the two classical lobes only, marginalized over x < 0 after free flow.
double traditional_momentum_density(const GaussianPacket& packet, double t, double p);
ProbabilityField1D traditional_momentum_density(const GaussianPacket& packet, double t, const Grid1D& pg);

struct LeakEstimate {
    double value;
    double log_value;
    bool underflow;
};

// exp(-2 V0 delta^2)
LeakEstimate wall_leak_estimate(const GaussianPacket& packet, double V0);

// ---- step barrier V0 on x > 0 -----------------------------------------------

// Peak-normalized exp(-D^2 (x0 + p0 t)^2/(D^4 + t^2)) exp(-2 x sqrt(2 V0)), x > 0.
double step_transmission_estimate(const GaussianPacket& packet, double V0, double x, double t,
                                  GateMode mode = GateMode::enforce);

struct StepDensityOptions {
    double contour_offset = 0;  // Im k of the path; 0 picks half the distance to the nearest branch point
    bool through_stationary_point = false;  // route the path through Im k_st instead
    double rel_tol = 1e-8;
};

struct StepDensitySample {
    double full;        // 16 Re{Int ...} along the contour
    double simplified;  // (16/sqrt(2V0)) e^{-2x sqrt(2V0)} Im[e^{-2ixp} Int A A*(k_p^-) k dk]
    double envelope;    // |16/sqrt(2V0) e^{-2x sqrt(2V0)} Int A A*(k_p^-) k dk|
    double contour_offset;
    // full, simplified and envelope are stored times exp(-log_scale); the
    // A(k) A*(k_p^-) product routinely exceeds the double range
    double log_scale;
};

// rho_2^0(x,p) by numerical contour integration. A branch-cut crossing along the
// path raises a contour error. The grid version returns the samples rescaled to
// one common log_scale (its max over the grid).
StepDensitySample step_initial_density(const GaussianPacket& packet, double V0, double x, double p,
                                       const StepDensityOptions& opt = {}, GateMode mode = GateMode::enforce);

struct StepDensityGrid {
    PhaseSpaceDensity2D full;
    PhaseSpaceDensity2D simplified;
    double log_scale = 0;
};
StepDensityGrid step_initial_density(const GaussianPacket& packet, double V0, const Grid1D& xg,
                                     const Grid1D& pg, const StepDensityOptions& opt = {},
                                     GateMode mode = GateMode::enforce);

// Stationary-phase time factor of P2(x,t); its t -> infinity limit is exp(-p0^2 D^2).
double step_transmitted_time_factor(const GaussianPacket& packet, double t);

struct TunnelKinematics {
    cplx k_st;
    double p_st;
    double v_tunn;  // identical to p_st
    double t_tunn;
    double x_tunn;
    double t_tunn_simplified;  // -D^2/(p0 x0)
    double p_st_prose;         // -p0 x0 / sqrt(V0), kept for reference
};

TunnelKinematics step_stationary_points(const GaussianPacket& packet, double V0, double t,
                                        GateMode mode = GateMode::enforce);

// ---- delta barrier W0 delta(x) ----------------------------------------------

struct ScatteringCoefficients {
    cplx R;
    cplx T;
};
ScatteringCoefficients delta_scattering_coefficients(double k, double W0);

// rho_0^>(x,p) and its free flow rho^>(x,p,t) = rho_0^>(x - pt, p)
double delta_rho0(const GaussianPacket& packet, double W0, double x, double p);
// closed-form transmitted P(x,t), exponent sign negative
double delta_probability(const GaussianPacket& packet, double W0, double x, double t);

struct DeltaTransmitted {
    PhaseSpaceDensity2D rho;
    ProbabilityField1D P;
};
DeltaTransmitted delta_transmitted_density(const GaussianPacket& packet, double W0, double t,
                                           const Grid1D& xg, const Grid1D& pg,
                                           GateMode mode = GateMode::enforce);

} // namespace phaseflow
