#include "doctest.h"

#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/propagators.hpp"
#include "phaseflow/stationary.hpp"
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

} // namespace

TEST_CASE("fitted parameter a")
{
    CHECK(fit_stationary_parameter({1, 0.5}) == doctest::Approx(2));
    CHECK(fit_stationary_parameter({2, 1}) == doctest::Approx(1));
    CHECK(fit_stationary_parameter({1.7, 0.8}) / fit_stationary_parameter({1.7, 1.6}) == doctest::Approx(2));
    CHECK(kind_of([] { OscillatorConfig{0, 1}.validate(); }) == ErrorKind::config);
    CHECK(kind_of([] { OscillatorConfig{1, -1}.validate(); }) == ErrorKind::config);

    SUBCASE("energy residual from quadrature")
    {
        for (OscillatorConfig c : {OscillatorConfig{1, 0.5}, OscillatorConfig{2, 1}, OscillatorConfig{0.6, 2.5}}) {
            const double a = fit_stationary_parameter(c);
            const double L = 12 / std::sqrt(a) / c.omega, Lp = 12 / std::sqrt(a);
            const double E = stationary_energy(c, a, Grid1D(-L, L, 1201), Grid1D(-Lp, Lp, 1201));
            CHECK(std::abs(E - c.E0) / c.E0 < 1e-10);
        }
    }
}

TEST_CASE("WKB density")
{
    const OscillatorConfig c{1, 0.5};
    CHECK(c.turning_point() == doctest::Approx(1));
    const Grid1D xg(-2, 2, 401);
    const auto P = wkb_density(c, xg);
    CHECK(P.integral() == doctest::Approx(1).epsilon(1e-6));
    for (std::size_t i = 0; i < xg.n; ++i) {
        CHECK(P.samples[i] >= 0);
        if (std::abs(xg[i]) > 1 + xg.spacing())
            CHECK(P.samples[i] == 0);
    }
    // grows toward the turning points
    CHECK(P.samples[xg.index_of(0.95)] > P.samples[xg.index_of(0.5)]);
    CHECK(P.samples[xg.index_of(0.5)] > P.samples[xg.index_of(0)]);
    CHECK(P.samples[xg.index_of(0)] == doctest::Approx(1 / pi).epsilon(1e-3));

    CHECK(kind_of([&] { wkb_density(c, Grid1D(-2, 2, 9)); }) == ErrorKind::resolution);
    CHECK(kind_of([&] { wkb_density(c, Grid1D(-0.5, 0.5, 101)); }) == ErrorKind::config);
}

TEST_CASE("stationary density equals the quantum ground state")
{
    const OscillatorConfig c{1, 0.5};
    const Grid1D xg(-6, 6, 601);
    const auto P = stationary_position_density(c, xg);
    const auto Q = quantum_ground_state_density(1, xg);
    CHECK(relative_l2(P.samples, Q.samples) < 1e-8);
    CHECK(P.integral() == doctest::Approx(1).epsilon(1e-10));
    CHECK(P.samples[xg.index_of(0)] == *std::max_element(P.samples.begin(), P.samples.end()));

    SUBCASE("independent TDSE ground state")
    {
        Potential V;
        V.kind = Potential::Kind::harmonic;
        V.omega = 1;
        const Grid1D tg(-12, 12, 512);
        const auto gs = ground_state(tg, V);
        const auto Pt = density_of(gs.psi);
        const auto Ps = stationary_position_density(c, tg);
        CHECK(relative_l2(Pt.samples, Ps.samples) < 1e-8);
        CHECK(gs.energy == doctest::Approx(0.5).epsilon(1e-8));
    }
    SUBCASE("tail beyond the turning points")
    {
        CHECK(beyond_turning_fraction(c) == doctest::Approx(std::erfc(1.0)).epsilon(1e-6));
        CHECK(std::abs(beyond_turning_fraction(c) - 0.1573) < 1e-4);
        // the same for any omega, E0
        CHECK(std::abs(beyond_turning_fraction({3.1, 0.2}) - std::erfc(1.0)) < 1e-6);
        // and from the grid density directly
        double tail = 0;
        const Grid1D fine(-8, 8, 16001);
        const auto Pf = stationary_position_density(c, fine);
        std::vector<double> w(fine.n);
        for (std::size_t i = 0; i < fine.n; ++i)
            w[i] = std::abs(fine[i]) > 1 ? Pf.samples[i] : (std::abs(fine[i]) == 1 ? 0.5 * Pf.samples[i] : 0);
        tail = trapezoid(w, fine.spacing());
        CHECK(tail == doctest::Approx(std::erfc(1.0)).epsilon(1e-6));
    }
}

TEST_CASE("exp(-aH) is stationary under the harmonic flow")
{
    const OscillatorConfig c{1.3, 0.9};
    const auto rho = stationary_phase_density(c);
    const Grid1D xg(-5, 5, 101), pg(-6, 6, 121);
    const auto r0 = sample_density(rho, xg, pg);
    for (double t : {0.4, 1.9, 7.3}) {
        const auto rt = quadratic_propagate(rho, c.omega, false, t, xg, pg);
        CHECK(relative_linf(rt.samples, r0.samples) < 1e-6);
    }
    SUBCASE("gridded back-trace")
    {
        const Grid1D fx(-6, 6, 241), fp(-7, 7, 281);
        const auto g0 = sample_density(rho, fx, fp);
        const auto g1 = quadratic_propagate(g0, c.omega, false, 0.9);
        const auto m0 = marginals(g0), m1 = marginals(g1);
        CHECK(relative_l2(m1.P.samples, m0.P.samples) < 1e-6);
    }
}
