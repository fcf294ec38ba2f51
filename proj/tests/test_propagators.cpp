#include "doctest.h"

#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/propagators.hpp"
#include "phaseflow/tdse.hpp"

#include <cmath>

using namespace phaseflow;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::config;
}

double mean_of(const ProbabilityField1D& P)
{
    const auto& g = P.grid;
    std::vector<double> xp(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        xp[i] = g[i] * P.samples[i];
    return trapezoid(xp, g.spacing()) / P.integral();
}

ProbabilityField1D field(const Grid1D& g, std::vector<double> v)
{
    return {g, std::move(v)};
}

} // namespace

TEST_CASE("free flow: t = 0 is the identity")
{
    const GaussianPacket h{1, -2, 0.7};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D xg(-6, 6, 61), pg(-6, 2, 41);
    const auto a = free_propagate(rho0, 0, xg, pg);
    const auto b = sample_density(rho0, xg, pg);
    CHECK(relative_linf(a.samples, b.samples) == 0);
}

TEST_CASE("free flow of the (x0=-100, p0=10, D=10) packet to t = 10")
{
    const GaussianPacket h{-100, 10, 10};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D xg(-80, 80, 1601), pg(9.5, 10.5, 201);
    const DensityFn rho_t = [&](double x, double p) { return rho0(x - 10 * p, p); };
    const auto P = field(xg, position_marginal(rho_t, xg, pg));
    CHECK(P.integral() == doctest::Approx(1).epsilon(1e-9));
    CHECK(std::abs(mean_of(P)) < 1e-9);
    // exp(-x^2/D_t^2) has standard deviation D_t / sqrt 2, D_t = D sqrt(1 + t^2/D^4)
    CHECK(position_spread(P) == doctest::Approx(10 * std::sqrt(1.01) / std::sqrt(2.0)).epsilon(1e-9));
    const auto rho = free_propagate(rho0, 10, xg, pg);
    const auto m = marginals(rho);
    CHECK(relative_linf(m.P.samples, P.samples) < 1e-12);
}

TEST_CASE("gridded free flow: composition and norm conservation")
{
    const GaussianPacket h{-3, 1, 1};
    const Grid1D xg(-15, 15, 301), pg(-4, 6, 201);
    const auto rho0 = sample_density([&](double x, double p) { return h.wigner(x, p); }, xg, pg);
    const auto once = free_propagate(rho0, 3);
    const auto twice = free_propagate(free_propagate(rho0, 1), 2);
    const auto exact = free_propagate([&](double x, double p) { return h.wigner(x, p); }, 3, xg, pg);
    CHECK(relative_linf(once.samples, exact.samples) < 1e-3);
    CHECK(relative_linf(twice.samples, once.samples) < 2e-3);
    CHECK(once.integral() == doctest::Approx(rho0.integral()).epsilon(1e-6));
    CHECK(twice.integral() == doctest::Approx(rho0.integral()).epsilon(1e-6));
}

TEST_CASE("harmonic flow: a full period is the identity")
{
    const GaussianPacket h{1.5, 0.5, 1};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D xg(-8, 8, 161), pg(-8, 8, 161);
    const double omega = 1.3;
    const auto a = quadratic_propagate(rho0, omega, false, 2 * pi / omega, xg, pg);
    const auto b = sample_density(rho0, xg, pg);
    CHECK(relative_linf(a.samples, b.samples) < 1e-6);

    SUBCASE("gridded density through one period")
    {
        const Grid1D fx(-8, 8, 321), fp(-8, 8, 321);
        const auto g0 = sample_density(rho0, fx, fp);
        const auto g1 = quadratic_propagate(g0, omega, false, 2 * pi / omega);
        CHECK(relative_linf(g1.samples, g0.samples) < 1e-6);
        CHECK(g1.integral() == doctest::Approx(g0.integral()).epsilon(1e-6));
    }
    SUBCASE("norm and uncertainty stay put at intermediate times")
    {
        for (double t : {0.3, 1.1, 2.0}) {
            const auto r = quadratic_propagate(rho0, omega, false, t, xg, pg);
            CHECK(r.integral() == doctest::Approx(1).epsilon(1e-6));
            const auto m = marginals(r);
            CHECK(uncertainty_product(m.P, m.Q) >= 0.5 - 1e-6);
        }
    }
}

TEST_CASE("inverted flow: Gaussian centre and width laws")
{
    const double x0 = -1, p0 = 0.5, D = 1, w = 0.5, t = 4;
    const GaussianPacket h{x0, p0, D};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D xg(-60, 60, 2401), pg(-40, 40, 1601);
    const auto rho = quadratic_propagate(rho0, w, true, t, xg, pg);
    const auto m = marginals(rho);
    const double c = std::cosh(w * t), s = std::sinh(w * t);
    const double xt = x0 * c + p0 / w * s;
    const double Dt = D * std::sqrt(c * c + s * s / (w * w * D * D * D * D));
    CHECK(mean_of(m.P) == doctest::Approx(xt).epsilon(1e-8));
    CHECK(position_spread(m.P) == doctest::Approx(Dt / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(rho.integral() == doctest::Approx(1).epsilon(1e-6));
    CHECK(uncertainty_product(m.P, m.Q) >= 0.5 - 1e-6);
}

TEST_CASE("inverted flow with a tiny frequency reduces to free flow")
{
    const GaussianPacket h{0.5, 1, 1};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D xg(-10, 14, 121), pg(-3, 5, 81);
    const auto a = quadratic_propagate(rho0, 1e-6, true, 3, xg, pg);
    const auto b = free_propagate(rho0, 3, xg, pg);
    CHECK(relative_linf(a.samples, b.samples) < 1e-5);
}

TEST_CASE("quadratic flow errors")
{
    const DensityFn rho0 = [](double x, double p) { return GaussianPacket{}.wigner(x, p); };
    const Grid1D g(-1, 1, 3);
    CHECK(kind_of([&] { quadratic_propagate(rho0, 1, true, 51, g, g); }) == ErrorKind::range);
    CHECK(kind_of([&] { free_propagate(rho0, -1, g, g); }) == ErrorKind::config);
    FlowSpec bad;
    bad.kind = FlowSpec::Kind::harmonic;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::config);
}

TEST_CASE("magnetic kick")
{
    const GaussianPacket h{0, 0, 1};
    const DensityFn rho0 = [&](double x, double p) { return h.wigner(x, p); };
    const Grid1D yg(-20, 20, 81), vg(-3, 3, 61);
    SUBCASE("h0 = 0 is free flow")
    {
        const auto a = magnetic_kick_propagate(rho0, 0, 2, 1, 5, yg, vg);
        const auto b = free_propagate(rho0, 5, yg, vg);
        CHECK(relative_linf(a.samples, b.samples) == 0);
    }
    SUBCASE("t < T is outside the completed-kick model")
    {
        CHECK(kind_of([&] { magnetic_kick_propagate(rho0, 0.01, 2, 1, 1, yg, vg); }) == ErrorKind::regime);
    }
    SUBCASE("a strong kick warns but still runs")
    {
        drain_warnings();
        magnetic_kick_propagate(rho0, 0.1, 2, 1, 5, yg, vg);
        CHECK(drain_warnings().size() == 1);
    }
    SUBCASE("a lobe at rest ends at -h0 T v0 T/2 and the norm is kept")
    {
        const double h0 = 0.02, T = 2, v0 = 1, t = 10;
        const auto r = magnetic_kick_propagate(rho0, h0, T, v0, t, Grid1D(-60, 60, 1201), Grid1D(-5, 5, 201));
        const auto m = marginals(r);
        CHECK(mean_of(m.P) == doctest::Approx(-h0 * T * v0 * T / 2).epsilon(1e-9));
        CHECK(r.integral() == doctest::Approx(1).epsilon(1e-6));
    }
}

TEST_CASE("harmonic classical marginal equals the TDSE density")
{
    const GaussianPacket h{2, -1, 0.8};
    const double omega = 1;
    const double t = 1.7;
    const Grid1D xg(-12, 12, 512);
    const auto psi0 = sample_amplitude([&](double x) { return h.amplitude(x); }, xg);
    TdseConfig cfg;
    cfg.grid = xg;
    cfg.dt = 1e-3;
    cfg.steps = static_cast<std::size_t>(std::lround(t / cfg.dt));
    cfg.potential.kind = Potential::Kind::harmonic;
    cfg.potential.omega = omega;
    const auto out = evolve(psi0, cfg);
    const auto Pq = density_of(out.back().psi);
    const auto Pc = position_marginal(
        [&](double x, double p) {
            const auto b = backtrace_quadratic(x, p, omega, false, t);
            return h.wigner(b.x, b.p);
        },
        xg, Grid1D(-10, 10, 801));
    CHECK(relative_l2(Pc, Pq.samples) < 1e-4);
}
