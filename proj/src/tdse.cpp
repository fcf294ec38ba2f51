#include "phaseflow/tdse.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phaseflow {

void Potential::validate() const
{
    switch (kind) {
    case Kind::zero:
    case Kind::hard_wall:
        break;
    case Kind::step:
        if (!(V0 > 0) || !(gap >= 0) || !(edge >= 0))
            fail(ErrorKind::config, "step potential needs V0 > 0, gap >= 0 and edge >= 0");
        break;
    case Kind::narrow_delta:
        if (!(W0 > 0) || !(width >= 0))
            fail(ErrorKind::config, "delta potential needs W0 > 0 and width >= 0");
        break;
    case Kind::harmonic:
    case Kind::inverted_harmonic:
        if (!(omega > 0))
            fail(ErrorKind::config, "quadratic potential needs omega > 0");
        break;
    }
}

double Potential::value(double x, double dx) const
{
    switch (kind) {
    case Kind::zero:
    case Kind::hard_wall:
        return 0;
    case Kind::step: {
        if (edge == 0)
            return (x >= 0 && (gap == 0 || x < gap)) ? V0 : 0;
        const double rise = 0.5 * std::erfc(-x / edge);
        const double fall = gap == 0 ? 0.0 : 0.5 * std::erfc(-(x - gap) / edge);
        return V0 * (rise - fall);
    }
    case Kind::narrow_delta: {
        const double s = delta_sigma(dx);
        return W0 * std::exp(-0.5 * x * x / (s * s)) / (s * std::sqrt(2 * pi));
    }
    case Kind::harmonic:
        return 0.5 * omega * omega * x * x;
    case Kind::inverted_harmonic:
        return -0.5 * omega * omega * x * x;
    }
    return 0;
}

void TdseConfig::validate() const
{
    grid.validate();
    potential.validate();
    if (!(dt > 0))
        fail(ErrorKind::config, "dt must be positive");
    if (absorbing && !(absorb_fraction >= 0.1 && absorb_fraction < 0.5))
        fail(ErrorKind::config, "absorbing margins must cover at least 10% of the span on each side");
    if (potential.kind == Potential::Kind::hard_wall && std::abs(grid.max) > 1e-9 * grid.spacing())
        fail(ErrorKind::config, "hard wall needs a grid ending at x = 0");
    for (auto s : snapshots)
        if (s > steps)
            fail(ErrorKind::config, "snapshot step beyond the run length");
}

namespace {

// wave numbers of an n-point periodic grid with spacing dx, FFT order
std::vector<double> wavenumbers(std::size_t n, double dx)
{
    std::vector<double> k(n);
    const double dk = 2 * pi / (static_cast<double>(n) * dx);
    for (std::size_t m = 0; m < n; ++m) {
        const long s = m <= n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
        k[m] = dk * static_cast<double>(s);
    }
    return k;
}

double norm_sq(const std::vector<cplx>& v, double dx)
{
    double s = 0;
    for (const auto& z : v)
        s += std::norm(z);
    return s * dx;
}

std::vector<double> absorb_profile(const Grid1D& g, double fraction)
{
    std::vector<double> s(g.n, 0.0);
    const double span = g.max - g.min, m = fraction * span;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g[i];
        const double d = std::min(x - g.min, g.max - x);
        if (d < m) {
            const double r = std::sin(0.5 * pi * (m - d) / m);
            s[i] = r * r;
        }
    }
    return s;
}

} // namespace

std::vector<Snapshot> evolve(const ComplexField1D& psi0, const TdseConfig& cfg, EvolveReport* report)
{
    cfg.validate();
    if (psi0.grid.n != cfg.grid.n || std::abs(psi0.grid.min - cfg.grid.min) > 1e-12 * (1 + std::abs(cfg.grid.min)) ||
        std::abs(psi0.grid.max - cfg.grid.max) > 1e-12 * (1 + std::abs(cfg.grid.max)))
        fail(ErrorKind::config, "initial field must live on the TDSE grid");
    const double dx = cfg.grid.spacing();
    // with no potential term the split step is exact, so the advisory is moot
    const bool exact = cfg.potential.kind == Potential::Kind::zero || cfg.potential.kind == Potential::Kind::hard_wall;
    if (!exact && cfg.dt > dx * dx / pi)
        warn("dt = " + std::to_string(cfg.dt) + " exceeds dx^2/pi = " + std::to_string(dx * dx / pi));

    const bool wall = cfg.potential.kind == Potential::Kind::hard_wall;
    const std::size_t n0 = cfg.grid.n;
    // odd extension onto [min, -min] for the wall
    const Grid1D g = wall ? Grid1D(cfg.grid.min, -cfg.grid.min, 2 * n0 - 1) : cfg.grid;
    const std::size_t n = g.n;

    FftBuffer buf(n);
    for (std::size_t i = 0; i < n0; ++i)
        buf[i] = psi0.samples[i];
    if (wall) {
        buf[n0 - 1] = 0;
        for (std::size_t i = n0; i < n; ++i)
            buf[i] = -psi0.samples[n - 1 - i];
    }

    const auto k = wavenumbers(n, dx);
    std::vector<cplx> kin(n), vhalf(n), vfull(n), vend(n);
    for (std::size_t m = 0; m < n; ++m)
        kin[m] = std::polar(1.0 / static_cast<double>(n), -0.5 * k[m] * k[m] * cfg.dt);
    const auto absorb = cfg.absorbing ? absorb_profile(g, cfg.absorb_fraction) : std::vector<double>(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double V = cfg.potential.value(g[i], dx);
        const double damp = std::exp(-cfg.absorb_rate * absorb[i] * cfg.dt);
        vhalf[i] = std::polar(1.0, -0.5 * V * cfg.dt);
        vend[i] = damp * vhalf[i];
        vfull[i] = vend[i] * vhalf[i];
    }

    auto snapshot = [&](std::size_t step) {
        std::vector<cplx> s(buf.data(), buf.data() + n0);
        if (wall)
            s[n0 - 1] = 0;
        return Snapshot{static_cast<double>(step) * cfg.dt, ComplexField1D(cfg.grid, std::move(s))};
    };

    std::vector<Snapshot> out;
    std::vector<cplx> state(buf.data(), buf.data() + n);
    const double norm0 = norm_sq(state, dx);
    auto wanted = cfg.snapshots;
    std::sort(wanted.begin(), wanted.end());
    std::size_t next = 0;
    while (next < wanted.size() && wanted[next] == 0) {
        out.push_back(snapshot(0));
        ++next;
    }

    bool half_pending = true;  // the leading half potential of the next step
    for (std::size_t step = 1; step <= cfg.steps; ++step) {
        if (half_pending)
            for (std::size_t i = 0; i < n; ++i)
                buf[i] *= vhalf[i];
        buf.forward();
        for (std::size_t m = 0; m < n; ++m)
            buf[m] *= kin[m];
        buf.backward();
        const bool record = step == cfg.steps || (next < wanted.size() && wanted[next] == step);
        if (record) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] *= vend[i];
            half_pending = true;
            while (next < wanted.size() && wanted[next] == step) {
                out.push_back(snapshot(step));
                ++next;
            }
            if (step == cfg.steps && (out.empty() || out.back().t != static_cast<double>(step) * cfg.dt))
                out.push_back(snapshot(step));
        } else {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] *= vfull[i];
            half_pending = false;
        }
    }
    if (cfg.steps == 0 && out.empty())
        out.push_back(snapshot(0));

    state.assign(buf.data(), buf.data() + n);
    const double norm1 = norm_sq(state, dx);
    const double drift = std::abs(norm1 - norm0) / norm0;
    if (report)
        *report = {norm0, norm1, drift};
    if (!cfg.absorbing && cfg.steps > 0 && drift > 1e-6 * std::max(1.0, cfg.steps / 1000.0))
        fail(ErrorKind::stability, "norm drift " + std::to_string(drift) + " over " + std::to_string(cfg.steps) +
                                       " steps exceeds 1e-6 per 1000 steps");
    return out;
}

Profile transmitted_profile(const Snapshot& snap, double x_min)
{
    const Grid1D& g = snap.psi.grid;
    std::size_t first = 0;
    while (first < g.n && g[first] < x_min)
        ++first;
    if (g.n - first < 2)
        fail(ErrorKind::range, "no grid points beyond x_min");
    Profile out;
    out.P.grid = Grid1D(g[first], g.max, g.n - first);
    out.P.samples.resize(g.n - first);
    bool all_small = true;
    for (std::size_t i = first; i < g.n; ++i) {
        const double v = std::norm(snap.psi.samples[i]);
        out.P.samples[i - first] = v;
        if (v >= 1e-300)
            all_small = false;
    }
    out.underflow = all_small;
    return out;
}

SlopeFit log_slope_fit(const ProbabilityField1D& P, double lo, double hi, bool require_exponential)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < P.grid.n; ++i) {
        const double x = P.grid[i];
        if (x >= lo && x <= hi && P.samples[i] > 0) {
            xs.push_back(x);
            ys.push_back(std::log(P.samples[i]));
        }
    }
    const std::size_t m = xs.size();
    if (m < 5)
        fail(ErrorKind::metric_unavailable, "log-slope window holds fewer than 5 positive samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.points = m;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        ssr += r * r;
    }
    f.r2 = syy > 0 ? 1 - ssr / syy : 0;
    // the total log drop across the window must dominate the residual
    const double drop = std::abs(f.slope) * (xs.back() - xs.front());
    if (require_exponential && (f.r2 < 0.999 || drop < 1.0))
        fail(ErrorKind::metric_unavailable, "profile is not exponential over the window (r2 = " +
                                                std::to_string(f.r2) + ", log drop " + std::to_string(drop) + ")");
    return f;
}

double energy_expectation(const ComplexField1D& psi, const Potential& V)
{
    const Grid1D& g = psi.grid;
    const std::size_t n = g.n;
    const double dx = g.spacing();
    FftBuffer buf(n);
    double pot = 0, norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = psi.samples[i];
        const double w = std::norm(psi.samples[i]);
        pot += w * V.value(g[i], dx);
        norm += w;
    }
    if (!(norm > 0))
        fail(ErrorKind::undefined, "energy of a zero field");
    buf.forward();
    const auto k = wavenumbers(n, dx);
    double kin = 0, knorm = 0;
    for (std::size_t m = 0; m < n; ++m) {
        const double w = std::norm(buf[m]);
        kin += 0.5 * k[m] * k[m] * w;
        knorm += w;
    }
    return kin / knorm + pot / norm;
}

GroundState ground_state(const Grid1D& grid, const Potential& V, double dtau, double tol, std::size_t max_steps)
{
    V.validate();
    if (V.kind == Potential::Kind::inverted_harmonic || V.kind == Potential::Kind::zero)
        fail(ErrorKind::config, "potential has no bound ground state");
    const std::size_t n = grid.n;
    const double dx = grid.spacing();
    const auto k = wavenumbers(n, dx);

    FftBuffer buf(n);
    const double c = 0.5 * (grid.min + grid.max), w = 0.25 * (grid.max - grid.min);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (grid[i] - c) / w;
        buf[i] = std::exp(-2 * x * x);
    }
    auto renorm = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            s += std::norm(buf[i]);
        const double f = 1 / std::sqrt(s * dx);
        for (std::size_t i = 0; i < n; ++i)
            buf[i] *= f;
    };
    renorm();

    // coarse steps first; the splitting bias is O(dtau^2), so only the last stage matters
    std::size_t step = 0;
    constexpr std::size_t block = 200;
    std::vector<cplx> prev(n);
    for (double stage : {100.0, 10.0, 1.0}) {
        const double h = stage * dtau;
        std::vector<double> kin(n), vh(n);
        for (std::size_t m = 0; m < n; ++m)
            kin[m] = std::exp(-0.5 * k[m] * k[m] * h) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            vh[i] = std::exp(-0.5 * V.value(grid[i], dx) * h);
        for (;;) {
            if (step >= max_steps)
                fail(ErrorKind::stability, "imaginary-time relaxation did not converge");
            std::copy(buf.data(), buf.data() + n, prev.begin());
            for (std::size_t b = 0; b < block; ++b, ++step) {
                for (std::size_t i = 0; i < n; ++i)
                    buf[i] *= vh[i];
                buf.forward();
                for (std::size_t m = 0; m < n; ++m)
                    buf[m] *= kin[m];
                buf.backward();
                for (std::size_t i = 0; i < n; ++i)
                    buf[i] *= vh[i];
            }
            renorm();
            double change = 0;
            for (std::size_t i = 0; i < n; ++i)
                change += std::norm(buf[i] - prev[i]);
            // change per unit imaginary time
            if (std::sqrt(change * dx) <= tol * static_cast<double>(block) * h)
                break;
        }
    }
    ComplexField1D psi(grid, std::vector<cplx>(buf.data(), buf.data() + n));
    const double e = energy_expectation(psi, V);
    return {std::move(psi), e, step};
}

} // namespace phaseflow
