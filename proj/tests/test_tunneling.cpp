#include "doctest.h"

#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/tunneling.hpp"

#include <cmath>
#include <random>

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

const GaussianPacket reference_packet{-100, 10, 10};

double variance(const ProbabilityField1D& Q)
{
    const double s = position_spread(Q);
    return s * s;
}

double value_at(const ProbabilityField1D& Q, double p)
{
    return Q.samples[Q.grid.index_of(p)];
}

} // namespace

TEST_CASE("wall: initial three-term density")
{
    const auto rho = wall_initial_density(reference_packet);
    CHECK(rho(0, 0) / rho(-100, 10) == doctest::Approx(-2).epsilon(1e-12));
    CHECK(kind_of([] { wall_initial_density({-20, 1, 10}); }) == ErrorKind::config);
    CHECK(kind_of([] { wall_initial_density({10, 1, 1}); }) == ErrorKind::config);

    SUBCASE("numerical transform of the odd combination matches")
    {
        const Grid1D xg(-200, 200, 4001), pg(-11, 11, 881);
        const double n = std::sqrt(2 * wall_norm2(reference_packet));
        const auto f = sample_amplitude(
            [&](double x) { return (reference_packet.amplitude(x) - reference_packet.amplitude(-x)) / n; }, xg);
        const auto num = wigner_transform(f, pg);
        double err = 0, peak = 0;
        for (std::size_t i = 0; i < xg.n; ++i)
            for (std::size_t j = 0; j < pg.n; ++j) {
                err = std::max(err, std::abs(num(i, j) - rho(xg[i], pg[j])));
                peak = std::max(peak, std::abs(rho(xg[i], pg[j])));
            }
        CHECK(err < 1e-8 * peak);
        const auto m = marginals(num, false);
        CHECK(m.P.samples[xg.index_of(0)] < 1e-9);
    }
}

TEST_CASE("wall: amplitude")
{
    const auto& h = reference_packet;
    for (double t : {0.0, 3.0, 10.0, 40.0})
        CHECK(std::abs(wall_amplitude(h, 0, t)) < 1e-12);
    for (double x : {-130.0, -100.0, -85.0})
        CHECK(std::abs(wall_amplitude(h, x, 0) - h.amplitude(x)) < 1e-12);

    SUBCASE("at t = 2 t0 the packet sits at x0 moving left")
    {
        const Grid1D xg(-300, 0, 6001);
        const auto f = wall_amplitude(h, 20, xg);
        const auto P = density_of(f);
        std::vector<double> xp(xg.n);
        for (std::size_t i = 0; i < xg.n; ++i)
            xp[i] = xg[i] * P.samples[i];
        CHECK(trapezoid(xp, xg.spacing()) == doctest::Approx(-100).epsilon(1e-6));
        const auto J = current_of(f);
        CHECK(trapezoid(J.samples, xg.spacing()) == doctest::Approx(-10).epsilon(1e-6));
    }
}

TEST_CASE("wall: momentum densities")
{
    const auto& h = reference_packet;
    const double t0 = 10;

    SUBCASE("t = 0: single hump at p0 of width 1/(D sqrt 2)")
    {
        const auto Q = halfline_momentum_density(h, 0);
        CHECK(Q.integral() == doctest::Approx(1).epsilon(1e-9));
        CHECK(position_spread(Q) == doctest::Approx(1 / (10 * std::sqrt(2.0))).epsilon(1e-6));
        const auto T = traditional_momentum_density(h, 0, Q.grid);
        CHECK(relative_linf(T.samples, Q.samples) < 1e-6);
    }
    SUBCASE("t = t0: widened with a p^-4 tail, traditional curve has none")
    {
        const auto g = halfline_momentum_amplitude(h, t0);
        const auto Q = halfline_momentum_density(h, t0);
        const auto T = traditional_momentum_density(h, t0, Q.grid);
        CHECK(variance(Q) > variance(T));
        const double q1 = value_at(Q, 60), q2 = value_at(Q, 180);
        CHECK(std::log(q2 / q1) / std::log(180.0 / 60.0) == doctest::Approx(-4).epsilon(0.05));
        CHECK(value_at(T, 60) < 1e-30);
        std::vector<double> d(Q.grid.n);
        for (std::size_t k = 0; k < d.size(); ++k)
            d[k] = std::abs(Q.samples[k] - T.samples[k]);
        CHECK(trapezoid(d, Q.grid.spacing()) > 0.05);
        (void)g;
    }
    SUBCASE("late times mirror t = 0")
    {
        HalflineOptions opt;
        opt.span = 700;  // one grid for both times
        const auto Q0 = halfline_momentum_density(h, 0, opt);
        const auto Q5 = halfline_momentum_density(h, 5 * t0, opt);
        std::vector<double> mirrored(Q0.grid.n);
        for (std::size_t k = 0; k < Q0.grid.n; ++k)
            mirrored[k] = value_at(Q5, -Q0.grid[k]);
        CHECK(relative_l2(mirrored, Q0.samples) < 1e-6);
    }
    SUBCASE("grid too short for the packet")
    {
        HalflineOptions opt;
        opt.span = 50;
        CHECK(kind_of([&] { halfline_momentum_amplitude(h, 0, opt); }) == ErrorKind::range);
    }
}

TEST_CASE("wall leak estimate")
{
    const auto l = wall_leak_estimate(reference_packet, 50);
    CHECK(l.log_value == -10000);
    CHECK(l.underflow);
    CHECK(l.value == 0);
    CHECK(wall_leak_estimate(reference_packet, 0).value == 1);
    // against exp(-2 x sqrt(2 V0)) at x_tunn = 1/sqrt(2 V0): exp(-2)
    CHECK((-2.0 - l.log_value) / std::log(10.0) > 100);
}

TEST_CASE("step: transmission estimate and kinematics")
{
    const auto& h = reference_packet;
    CHECK(kind_of([&] { step_transmission_estimate(h, 50, 0.1, 10); }) == ErrorKind::regime);
    drain_warnings();
    const double lo = step_transmission_estimate(h, 50, 0.1, 10, GateMode::warn);
    const double hi = step_transmission_estimate(h, 50, 0.3, 10, GateMode::warn);
    CHECK(drain_warnings().size() == 2);
    CHECK(std::log(hi / lo) / 0.2 == doctest::Approx(-20).epsilon(1e-12));
    CHECK(step_transmission_estimate(h, 50, 1e-9, 10, GateMode::warn) == doctest::Approx(1).epsilon(1e-6));
    for (double t : {5.0, 9.9, 10.1, 30.0})
        CHECK(step_transmitted_time_factor(h, t) < step_transmitted_time_factor(h, 10));
    // P(x,t)/P(0,t) is the same at every t
    for (double t : {2.0, 10.0, 25.0}) {
        const double r = step_transmission_estimate(h, 50, 0.4, t, GateMode::warn) /
                         step_transmission_estimate(h, 50, 1e-12, t, GateMode::warn);
        CHECK(r == doctest::Approx(std::exp(-8.0)).epsilon(1e-9));
    }

    SUBCASE("stationary points at t = 0")
    {
        const auto k = step_stationary_points(h, 50, 0, GateMode::warn);
        CHECK(k.k_st.real() == doctest::Approx(10));
        CHECK(k.k_st.imag() == doctest::Approx(1));
        // -p0 x0 / (sqrt(2 V0) D^2)
        CHECK(k.p_st == doctest::Approx(1000.0 / (10 * 100)).epsilon(1e-12));
        CHECK(k.v_tunn == k.p_st);
        CHECK(k.x_tunn == doctest::Approx(0.1));
        CHECK(k.t_tunn == doctest::Approx(0.1));
        CHECK(k.t_tunn_simplified == doctest::Approx(0.1));
        CHECK(k.p_st_prose == doctest::Approx(1000 / std::sqrt(50.0)));
        // simplified time is independent of V0 and matches the full one whenever t = 0
        const auto k2 = step_stationary_points(h, 200, 0, GateMode::warn);
        CHECK(k2.t_tunn_simplified == k.t_tunn_simplified);
        CHECK(k2.t_tunn == doctest::Approx(k2.t_tunn_simplified));
    }
}

TEST_CASE("step: initial density by contour integration")
{
    const auto& h = reference_packet;
    const double V0 = 5000;  // sqrt(2 V0) = 10 p0
    SUBCASE("simplified and full forms agree within 5 percent")
    {
        const Grid1D xg(0.005, 0.05, 4), pg(8, 12, 5);
        const auto d = step_initial_density(h, V0, xg, pg);
        double peak = 0;
        for (double v : d.full.samples)
            peak = std::max(peak, std::abs(v));
        double worst = 0;
        for (std::size_t i = 0; i < d.full.samples.size(); ++i)
            worst = std::max(worst, std::abs(d.full.samples[i] - d.simplified.samples[i]));
        CHECK(worst / peak < 0.05);
    }
    SUBCASE("the envelope grows without bound toward negative x")
    {
        const auto log_env = [&](double x) {
            const auto s = step_initial_density(h, V0, x, 10);
            return std::log(s.envelope) + s.log_scale;
        };
        const double e1 = log_env(-0.1), e2 = log_env(-0.5), e3 = log_env(-1.0);
        CHECK(e2 - e1 > std::log(1e10));
        CHECK(e3 - e2 > std::log(1e10));
    }
    SUBCASE("the free-flowed momentum integral tends to exp(-p0^2 D^2)")
    {
        const GaussianPacket small{-5, 0.5, 1};
        const double lim = std::exp(-0.25);
        const double e3 = step_transmitted_time_factor(small, 1e3) - lim;
        const double e5 = step_transmitted_time_factor(small, 1e5) - lim;
        CHECK(std::abs(e5) < 1e-4);
        CHECK(e3 / e5 == doctest::Approx(100).epsilon(0.05));  // O(1/t) approach
    }
    SUBCASE("gate")
    {
        CHECK(kind_of([&] { step_initial_density(h, 50, 0.01, 10); }) == ErrorKind::regime);
    }
}

TEST_CASE("delta barrier")
{
    SUBCASE("scattering coefficients")
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-50, 50);
        for (int i = 0; i < 100; ++i) {
            const double k = u(rng);
            const auto c = delta_scattering_coefficients(k, 3.7);
            CHECK(std::norm(c.R) + std::norm(c.T) == doctest::Approx(1).epsilon(1e-12));
        }
        const auto big = delta_scattering_coefficients(1e9, 2);
        CHECK(std::abs(big.T - 1.0) < 1e-8);
        CHECK(std::abs(big.R) < 1e-8);
        CHECK(std::norm(delta_scattering_coefficients(4, 4).T) == doctest::Approx(0.5));
    }

    const GaussianPacket h{-10, 2, 2};
    const double W0 = 50, t = 8;
    SUBCASE("closed form equals |d/dx psi_free|^2 / W0^2 (strong-barrier limit of T)")
    {
        for (double x : {1.0, 4.0, 6.0, 9.0}) {
            const double e = 1e-4;
            const cplx d = (h.amplitude(x + e, t) - h.amplitude(x - e, t)) / (2 * e);
            CHECK(delta_probability(h, W0, x, t) == doctest::Approx(std::norm(d) / (W0 * W0)).epsilon(1e-6));
        }
    }
    SUBCASE("ridge value, W0^-2 scaling, marginal consistency")
    {
        const double D4t2 = std::pow(h.delta, 4) + t * t;
        const double ridge = h.x0 + h.p0 * t;
        CHECK(delta_probability(h, W0, ridge, t) ==
              doctest::Approx(h.delta * h.p0 * h.p0 / (std::sqrt(pi) * W0 * W0 * std::sqrt(D4t2))).epsilon(1e-12));
        CHECK(delta_probability(h, 2 * W0, 3, t) / delta_probability(h, W0, 3, t) == doctest::Approx(0.25));
        const Grid1D xg(-20, 40, 601), pg(-4, 8, 1201);
        const auto d = delta_transmitted_density(h, W0, t, xg, pg);
        const auto m = marginals(d.rho, false);
        CHECK(relative_linf(m.P.samples, d.P.samples) < 1e-6);
    }
    SUBCASE("gate")
    {
        const Grid1D g(0, 1, 3);
        CHECK(kind_of([&] { delta_transmitted_density(h, 5, t, g, g); }) == ErrorKind::regime);
    }
}
