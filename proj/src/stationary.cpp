#include "phaseflow/stationary.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/quadrature.hpp"

#include <cmath>
#include <string>

namespace phaseflow {

void OscillatorConfig::validate() const
{
    if (!(omega > 0) || !(E0 > 0))
        fail(ErrorKind::config, "oscillator needs omega > 0 and E0 > 0");
}

double OscillatorConfig::turning_point() const
{
    return std::sqrt(2 * E0) / omega;
}

double fit_stationary_parameter(const OscillatorConfig& cfg)
{
    cfg.validate();
    return 1.0 / cfg.E0;
}

double stationary_energy(const OscillatorConfig& cfg, double a, const Grid1D& xg, const Grid1D& pg)
{
    cfg.validate();
    const double w2 = cfg.omega * cfg.omega;
    std::vector<double> P(xg.n), Q(pg.n), xP(xg.n), pQ(pg.n);
    for (std::size_t i = 0; i < xg.n; ++i) {
        P[i] = std::exp(-0.5 * a * w2 * xg[i] * xg[i]);
        xP[i] = 0.5 * w2 * xg[i] * xg[i] * P[i];
    }
    for (std::size_t j = 0; j < pg.n; ++j) {
        Q[j] = std::exp(-0.5 * a * pg[j] * pg[j]);
        pQ[j] = 0.5 * pg[j] * pg[j] * Q[j];
    }
    const double hx = xg.spacing(), hp = pg.spacing();
    return trapezoid(xP, hx) / trapezoid(P, hx) + trapezoid(pQ, hp) / trapezoid(Q, hp);
}

ProbabilityField1D wkb_density(const OscillatorConfig& cfg, const Grid1D& xg)
{
    cfg.validate();
    const double xt = cfg.turning_point();
    if (xg.min > -xt || xg.max < xt)
        fail(ErrorKind::config, "grid must span the turning points +-" + std::to_string(xt));
    std::size_t inside = 0;
    for (std::size_t i = 0; i < xg.n; ++i)
        if (std::abs(xg[i]) < xt)
            ++inside;
    if (inside < 10)
        fail(ErrorKind::resolution, "only " + std::to_string(inside) +
                                        " grid points between the turning points (need 10)");
    auto cdf = [&](double x) {
        if (x <= -xt)
            return 0.0;
        if (x >= xt)
            return 1.0;
        return 0.5 + std::asin(x / xt) / pi;
    };
    const double h = xg.spacing();
    ProbabilityField1D out{xg, std::vector<double>(xg.n)};
    for (std::size_t i = 0; i < xg.n; ++i)
        out.samples[i] = (cdf(xg[i] + 0.5 * h) - cdf(xg[i] - 0.5 * h)) / h;
    return out;
}

ProbabilityField1D stationary_position_density(const OscillatorConfig& cfg, const Grid1D& xg)
{
    const double a = fit_stationary_parameter(cfg);
    const double c = 0.5 * a * cfg.omega * cfg.omega;
    ProbabilityField1D out{xg, std::vector<double>(xg.n)};
    for (std::size_t i = 0; i < xg.n; ++i)
        out.samples[i] = std::sqrt(c / pi) * std::exp(-c * xg[i] * xg[i]);
    return out;
}

DensityFn stationary_phase_density(const OscillatorConfig& cfg)
{
    const double a = fit_stationary_parameter(cfg);
    const double w = cfg.omega;
    return [a, w](double x, double p) {
        return a * w / (2 * pi) * std::exp(-a * (0.5 * p * p + 0.5 * w * w * x * x));
    };
}

double beyond_turning_fraction(const OscillatorConfig& cfg)
{
    const double a = fit_stationary_parameter(cfg);
    const double c = 0.5 * a * cfg.omega * cfg.omega;
    const double xt = cfg.turning_point();
    auto P = [&](double x) { return std::sqrt(c / pi) * std::exp(-c * x * x); };
    const double inside = integrate_gk<double>(P, -xt, xt, 1e-13).value;
    return 1.0 - inside;
}

ProbabilityField1D quantum_ground_state_density(double omega, const Grid1D& xg)
{
    if (!(omega > 0))
        fail(ErrorKind::config, "omega must be positive");
    ProbabilityField1D out{xg, std::vector<double>(xg.n)};
    for (std::size_t i = 0; i < xg.n; ++i)
        out.samples[i] = std::sqrt(omega / pi) * std::exp(-omega * xg[i] * xg[i]);
    return out;
}

} // namespace phaseflow
