#include "phaseflow/propagators.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/interp.hpp"

#include <cmath>
#include <string>

namespace phaseflow {

void FlowSpec::validate() const
{
    switch (kind) {
    case Kind::free:
        break;
    case Kind::harmonic:
    case Kind::inverted_harmonic:
        if (!(omega > 0))
            fail(ErrorKind::config, "flow frequency must be positive");
        break;
    case Kind::magnetic_kick:
        if (!(T > 0) || !std::isfinite(h0))
            fail(ErrorKind::config, "kick needs T > 0 and finite h0");
        if (std::abs(h0 * T) > 0.1)
            warn("magnetic kick outside the weak-kick regime (|h0 T| > 0.1)");
        break;
    }
}

Backtrace backtrace_free(double x, double p, double t, double mass)
{
    return {x - p * t / mass, p};
}

Backtrace backtrace_quadratic(double x, double p, double omega, bool inverted, double t)
{
    const double wt = omega * t;
    if (std::abs(wt) > 50)
        fail(ErrorKind::range, "omega*t = " + std::to_string(wt) + " exceeds 50");
    if (inverted) {
        const double c = std::cosh(wt), s = std::sinh(wt);
        return {x * c - (p / omega) * s, p * c - omega * x * s};
    }
    const double c = std::cos(wt), s = std::sin(wt);
    return {x * c - (p / omega) * s, p * c + omega * x * s};
}

Backtrace backtrace_kick(double y, double v, double h0, double T, double v0, double t)
{
    // v x H with H = h0 T z-hat and v_x = v0 gives a transverse impulse -h0 T v0
    const double kick = h0 * T * v0;
    return {y - v * t + kick * (t + 0.5 * T), v - kick};
}

PhaseSpaceDensity2D free_propagate(const DensityFn& rho0, double t, const Grid1D& xg, const Grid1D& pg,
                                   double mass)
{
    if (t < 0)
        fail(ErrorKind::config, "propagation time must be nonnegative");
    return sample_density(
        [&](double x, double p) {
            const auto b = backtrace_free(x, p, t, mass);
            return rho0(b.x, b.p);
        },
        xg, pg);
}

PhaseSpaceDensity2D free_propagate(const PhaseSpaceDensity2D& rho0, double t)
{
    if (t < 0)
        fail(ErrorKind::config, "propagation time must be nonnegative");
    return sample_density(
        [&](double x, double p) {
            const auto b = backtrace_free(x, p, t);
            return bicubic_interp(rho0, b.x, b.p);
        },
        rho0.xgrid, rho0.pgrid);
}

PhaseSpaceDensity2D quadratic_propagate(const DensityFn& rho0, double omega, bool inverted, double t,
                                        const Grid1D& xg, const Grid1D& pg)
{
    if (!(omega > 0))
        fail(ErrorKind::config, "omega must be positive");
    backtrace_quadratic(0, 0, omega, inverted, t);  // range guard up front
    return sample_density(
        [&](double x, double p) {
            const auto b = backtrace_quadratic(x, p, omega, inverted, t);
            return rho0(b.x, b.p);
        },
        xg, pg);
}

PhaseSpaceDensity2D quadratic_propagate(const PhaseSpaceDensity2D& rho0, double omega, bool inverted,
                                        double t)
{
    return quadratic_propagate([&](double x, double p) { return bicubic_interp(rho0, x, p); }, omega,
                               inverted, t, rho0.xgrid, rho0.pgrid);
}

PhaseSpaceDensity2D magnetic_kick_propagate(const DensityFn& rho_int, double h0, double T, double v0,
                                            double t, const Grid1D& yg, const Grid1D& vg)
{
    if (std::abs(h0 * T) > 0.1)
        warn("magnetic kick outside the weak-kick regime (|h0 T| > 0.1)");
    if (t < T)
        fail(ErrorKind::regime, "kick is modeled as completed; need t >= T");
    return sample_density(
        [&](double y, double v) {
            const auto b = backtrace_kick(y, v, h0, T, v0, t);
            return rho_int(b.x, b.p);
        },
        yg, vg);
}

PhaseSpaceDensity2D propagate(const DensityFn& rho0, const FlowSpec& flow, double t, const Grid1D& xg,
                              const Grid1D& pg)
{
    flow.validate();
    switch (flow.kind) {
    case FlowSpec::Kind::free:
        return free_propagate(rho0, t, xg, pg);
    case FlowSpec::Kind::harmonic:
        return quadratic_propagate(rho0, flow.omega, false, t, xg, pg);
    case FlowSpec::Kind::inverted_harmonic:
        return quadratic_propagate(rho0, flow.omega, true, t, xg, pg);
    case FlowSpec::Kind::magnetic_kick:
        return magnetic_kick_propagate(rho0, flow.h0, flow.T, flow.v0, t, xg, pg);
    }
    fail(ErrorKind::config, "unknown flow");
}

std::vector<double> position_marginal(const DensityFn& rho_t, const Grid1D& xg, const Grid1D& pg)
{
    std::vector<double> P(xg.n);
    std::vector<double> row(pg.n);
    for (std::size_t i = 0; i < xg.n; ++i) {
        const double x = xg[i];
        for (std::size_t j = 0; j < pg.n; ++j)
            row[j] = rho_t(x, pg[j]);
        P[i] = trapezoid(row, pg.spacing());
    }
    return P;
}

} // namespace phaseflow
