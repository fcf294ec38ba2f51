#include "doctest.h"

#include "corpus.hpp"
#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/interference.hpp"
#include "phaseflow/tunneling.hpp"

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

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("grid and packet validation")
{
    CHECK(kind_of([] { Grid1D(1, 0, 5).validate(); }) == ErrorKind::config);
    CHECK(kind_of([] { Grid1D(0, 1, 1).validate(); }) == ErrorKind::config);
    CHECK(kind_of([] { GaussianPacket{0, 0, -1}.validate(); }) == ErrorKind::config);
    CHECK(kind_of([] { NaturalUnits{1, 0, 1}.validate(); }) == ErrorKind::config);
    const Grid1D g(-1, 1, 5);
    CHECK(g.spacing() == doctest::Approx(0.5));
    CHECK(g.index_of(0.3) == 3);
}

TEST_CASE("Gaussian Wigner function: ground case peaks at the origin")
{
    const Grid1D xg(-10, 10, 401), pg(-6, 6, 241);
    const auto f = corpus::normalized(xg, [](double x) { return GaussianPacket{0, 0, 1}.amplitude(x); });
    const auto rho = wigner_transform(f, pg);
    double best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < xg.n; ++i)
        for (std::size_t j = 0; j < pg.n; ++j)
            if (rho(i, j) > best) {
                best = rho(i, j);
                bi = i;
                bj = j;
            }
    CHECK(xg[bi] == doctest::Approx(0).epsilon(1e-12));
    CHECK(pg[bj] == doctest::Approx(0).epsilon(1e-12));
    CHECK(best == doctest::Approx(1 / pi).epsilon(1e-9));
}

TEST_CASE("Wigner transform of the (x0=-100, p0=10, D=10) packet matches the analytic form")
{
    const GaussianPacket h{-100, 10, 10};
    const Grid1D xg(-200, 0, 2001), pg(9, 11, 81);
    const auto f = sample_amplitude([&](double x) { return h.amplitude(x); }, xg);
    WignerDiagnostics diag;
    const auto rho = wigner_transform(f, pg, {}, &diag);
    double err = 0;
    for (std::size_t i = 0; i < xg.n; ++i)
        for (std::size_t j = 0; j < pg.n; ++j) {
            const double x = xg[i], p = pg[j];
            const double exact = std::exp(-(x + 100) * (x + 100) / 100 - (p - 10) * (p - 10) * 100) / pi;
            err = std::max(err, std::abs(rho(i, j) - exact));
        }
    CHECK(err < 1e-8);
    CHECK(diag.imag_residue < 1e-10);

    SUBCASE("its momentum marginal has sigma_p = 1/(10 sqrt 2) and J = 10 P")
    {
        const auto m = marginals(rho);
        CHECK(position_spread(m.Q) == doctest::Approx(1 / (10 * std::sqrt(2.0))).epsilon(1e-8));
        const auto J = probability_current(rho);
        std::vector<double> tenP(m.P.samples.size());
        for (std::size_t i = 0; i < tenP.size(); ++i)
            tenP[i] = 10 * m.P.samples[i];
        CHECK(max_abs_diff(J.samples, tenP) < 1e-9);
    }
}

TEST_CASE("two-slit section: three lobes with cos(2 p y0) in the middle")
{
    TwoSlitConfig cfg;
    cfg.y0 = 5;
    cfg.delta = 1;
    cfg.X = cfg.t = 1;
    const Grid1D yg(-14, 14, 561), pg(-8, 8, 641);
    const auto f = corpus::normalized(yg, [&](double y) { return two_slit_amplitude(cfg, y); });
    const auto rho = wigner_transform(f, pg);
    const auto at = [&](double y, double p) { return rho(yg.index_of(y), pg.index_of(p)); };
    CHECK(at(5, 0) > 0);
    CHECK(at(-5, 0) > 0);
    CHECK(at(0, 0) > 0);
    const double pm = pg[pg.index_of(pi / (2 * cfg.y0))];
    CHECK(at(0, pm) < 0);  // cos(2 p y0) near -1
    CHECK(at(0, pm) / at(0, 0) == doctest::Approx(std::exp(-pm * pm) * std::cos(2 * pm * cfg.y0)).epsilon(1e-8));

    SUBCASE("numerical transform equals the three-term closed form")
    {
        const auto closed = two_slit_initial_density(cfg);
        double err = 0;
        for (std::size_t i = 0; i < yg.n; ++i)
            for (std::size_t j = 0; j < pg.n; ++j)
                err = std::max(err, std::abs(rho(i, j) - closed(yg[i], pg[j])));
        CHECK(err < 1e-10);
    }
    SUBCASE("momentum marginal carries cos^2(p y0) fringes")
    {
        const auto m = marginals(rho);
        const double q0 = m.Q.samples[pg.index_of(0)];
        const double q1 = m.Q.samples[pg.index_of(pm)];
        CHECK(q1 / q0 == doctest::Approx(std::exp(-pm * pm) * std::pow(std::cos(pm * cfg.y0), 2)).epsilon(1e-6));
        CHECK(uncertainty_product(m.P, m.Q) >= 0.5);
    }
}

TEST_CASE("corpus: marginal consistency, real output, uncertainty floor")
{
    for (const auto& e : corpus::amplitudes()) {
        CAPTURE(e.name);
        WignerDiagnostics diag;
        const auto rho = wigner_transform(e.f, e.pgrid, {}, &diag);
        CHECK(diag.imag_residue < 1e-10);
        const auto m = marginals(rho);
        const auto P = density_of(e.f);
        CHECK(relative_linf(m.P.samples, P.samples) < 1e-9);
        const double u = uncertainty_product(m.P, m.Q);
        CHECK(u >= 0.5 - 1e-9);
        if (e.gaussian)
            CHECK(u == doctest::Approx(0.5).epsilon(1e-6));
        // the same product from |f|^2 and |g|^2 directly
        CHECK(amplitude_uncertainty(e.f) == doctest::Approx(u).epsilon(1e-8));
    }
}

TEST_CASE("wigner_transform rejects non-decaying amplitudes and short p-ranges")
{
    const Grid1D xg(-3, 3, 101);
    const auto wide = sample_amplitude([](double x) { return GaussianPacket{0, 0, 2}.amplitude(x); }, xg);
    CHECK(kind_of([&] { wigner_transform(wide, Grid1D(-5, 5, 51)); }) == ErrorKind::aliasing);
    const Grid1D xg2(-12, 12, 401);
    const auto moving = sample_amplitude([](double x) { return GaussianPacket{0, 4, 1}.amplitude(x); }, xg2);
    CHECK(kind_of([&] { wigner_transform(moving, Grid1D(-2, 2, 41)); }) == ErrorKind::range);
}

TEST_CASE("marginal clipping")
{
    PhaseSpaceDensity2D rho(Grid1D(0, 1, 3), Grid1D(0, 1, 3));
    for (auto& v : rho.samples)
        v = 1;
    rho(0, 0) = rho(0, 1) = rho(0, 2) = -1e-14;
    auto m = marginals(rho);
    CHECK(m.clipped == 1);
    CHECK(m.P.samples[0] == 0);
    rho(0, 0) = rho(0, 1) = rho(0, 2) = -0.5;
    CHECK(kind_of([&] { marginals(rho); }) == ErrorKind::inconsistent);
    m = marginals(rho, false);
    CHECK(m.worst_negative > 0.1);
}

TEST_CASE("probability current")
{
    const Grid1D xg(-10, 10, 401), pg(-6, 6, 241);
    SUBCASE("p0 = 0 gives J = 0")
    {
        const auto f = corpus::normalized(xg, [](double x) { return GaussianPacket{1, 0, 1}.amplitude(x); });
        const auto J = probability_current(wigner_transform(f, pg));
        for (double j : J.samples)
            CHECK(std::abs(j) < 1e-12);
    }
    SUBCASE("uniform drift v0 gives J = v0 P")
    {
        const double v0 = 1.3;
        const auto f = corpus::normalized(xg, [&](double x) {
            return std::exp(-0.5 * x * x) * std::polar(1.0, v0 * x);
        });
        const auto rho = wigner_transform(f, pg);
        const auto J = probability_current(rho);
        const auto P = marginals(rho).P;
        for (std::size_t i = 0; i < xg.n; ++i)
            CHECK(J.samples[i] == doctest::Approx(v0 * P.samples[i]).epsilon(1e-9).scale(1e-12));
        const auto Jd = current_of(f);
        CHECK(max_abs_diff(J.samples, Jd.samples) < 1e-9);
    }
}

TEST_CASE("wall collision widens Q so the product exceeds 1/2")
{
    const GaussianPacket h{-100, 10, 10};
    const auto Q = halfline_momentum_density(h, 10.0);
    HalflineOptions opt;
    const double span = 100 + 12 * 10 * std::sqrt(1.01);
    const Grid1D xg(-span, 0, static_cast<std::size_t>(span / opt.dx) + 1);
    const auto P = density_of(wall_amplitude(h, 10.0, xg));
    CHECK(uncertainty_product(P, Q) > 0.5);
}

TEST_CASE("reconstruct_phase")
{
    const Grid1D xg(-10, 10, 801);
    const auto base = corpus::normalized(xg, [](double x) { return std::exp(-0.5 * x * x); });
    const auto P = density_of(base);

    SUBCASE("zero current gives the real square root")
    {
        CurrentField1D J{xg, std::vector<double>(xg.n, 0.0)};
        const auto f = reconstruct_phase(P, J);
        for (std::size_t i = 0; i < xg.n; ++i) {
            CHECK(f.samples[i].imag() == doctest::Approx(0).scale(1e-15));
            CHECK(f.samples[i].real() == doctest::Approx(std::sqrt(P.samples[i])).epsilon(1e-12));
        }
    }
    SUBCASE("J = v0 P gives exp(i v0 x) anchored at the grid minimum")
    {
        const double v0 = 0.7;
        CurrentField1D J{xg, P.samples};
        for (auto& j : J.samples)
            j *= v0;
        const auto f = reconstruct_phase(P, J);
        for (std::size_t i = 0; i < xg.n; i += 40) {
            const cplx expect = std::sqrt(P.samples[i]) * std::polar(1.0, v0 * (xg[i] - xg.min));
            CHECK(std::abs(f.samples[i] - expect) < 1e-10);
        }
    }
    SUBCASE("round trip through the Wigner transform for a chirped packet")
    {
        const auto f = corpus::normalized(xg, [](double x) {
            return std::exp(-0.5 * x * x) * std::polar(1.0, 0.3 * x * x + 0.5 * x);
        });
        const Grid1D pg(-12, 12, 481);
        const auto rho = wigner_transform(f, pg);
        const auto g = reconstruct_phase(density_of(f), current_of(f));
        const auto rho2 = wigner_transform(g, pg);
        CHECK(max_abs_diff(rho.samples, rho2.samples) < 1e-8);
    }
    SUBCASE("current where the density vanishes is a singularity")
    {
        ProbabilityField1D Z{xg, std::vector<double>(xg.n, 0.0)};
        Z.samples[400] = 1;
        CurrentField1D J{xg, std::vector<double>(xg.n, 0.0)};
        J.samples[10] = 1;
        CHECK(kind_of([&] { reconstruct_phase(Z, J); }) == ErrorKind::singularity);
    }
}

TEST_CASE("momentum amplitude")
{
    const Grid1D xg(-20, 20, 1024);
    SUBCASE("self-dual Gaussian and Parseval")
    {
        const auto f = corpus::normalized(xg, [](double x) { return GaussianPacket{0, 0, 1}.amplitude(x); });
        const auto g = momentum_amplitude(f, 2);
        for (std::size_t k = 0; k < g.grid.n; k += 97) {
            const double p = g.grid[k];
            CHECK(std::abs(std::abs(g.samples[k]) - std::pow(pi, -0.25) * std::exp(-0.5 * p * p)) < 1e-10);
        }
        CHECK(g.norm2() == doctest::Approx(f.norm2()).epsilon(1e-10));
        const auto back = position_amplitude(g, xg.min, xg.n);
        double err = 0;
        for (std::size_t i = 0; i < xg.n; ++i)
            err = std::max(err, std::abs(back.samples[i] - f.samples[i]));
        CHECK(err < 1e-10);
    }
    SUBCASE("odd image combination has mirrored humps at +-p0")
    {
        const GaussianPacket h{-6, 3, 1};
        const auto f = corpus::normalized(xg, [&](double x) { return h.amplitude(x) - h.amplitude(-x); });
        const auto g = momentum_amplitude(f, 2);
        const auto Q = density_of(g);
        const std::size_t kp = g.grid.index_of(3), km = g.grid.index_of(-3);
        CHECK(Q.samples[kp] == doctest::Approx(Q.samples[km]).epsilon(1e-9));
        CHECK(Q.samples[g.grid.index_of(0)] < 1e-3 * Q.samples[kp]);
    }
    CHECK(kind_of([&] {
              momentum_amplitude(sample_amplitude([](double) { return cplx(1, 0); }, xg));
          }) == ErrorKind::aliasing);
}

TEST_CASE("uncertainty of a zero distribution is undefined")
{
    ProbabilityField1D Z{Grid1D(0, 1, 5), std::vector<double>(5, 0.0)};
    CHECK(kind_of([&] { uncertainty_product(Z, Z); }) == ErrorKind::undefined);
}
