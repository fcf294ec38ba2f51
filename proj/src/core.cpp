#include "phaseflow/core.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phaseflow {

namespace {

cplx unit_phase(long double phase)
{
    constexpr long double two_pi = 6.283185307179586476925286766559L;
    const long double r = std::fmod(phase, two_pi);
    const double d = static_cast<double>(r);
    return {std::cos(d), std::sin(d)};
}

double edge_ratio(const ComplexField1D& f)
{
    double peak = 0;
    for (const auto& v : f.samples)
        peak = std::max(peak, std::abs(v));
    if (peak == 0)
        fail(ErrorKind::undefined, "amplitude is identically zero");
    const double edge = std::max(std::abs(f.samples.front()), std::abs(f.samples.back()));
    return edge / peak;
}

} // namespace

PhaseSpaceDensity2D wigner_transform(const ComplexField1D& f, const Grid1D& pgrid,
                                     const WignerOptions& opt, WignerDiagnostics* diag)
{
    f.grid.validate();
    pgrid.validate();
    const std::size_t n = f.grid.n;
    const double dx = f.grid.spacing();

    const double er = edge_ratio(f);
    if (er > opt.edge_tolerance)
        fail(ErrorKind::aliasing, "amplitude does not decay at the grid edges (edge/max = " +
                                      std::to_string(er) + ")");

    double outside = 0;
    if (opt.check_range) {
        const ComplexField1D g = momentum_amplitude(f, 2, opt.edge_tolerance);
        const double nyquist = pi / (2 * dx);
        double total = 0, out_range = 0, out_band = 0;
        for (std::size_t k = 0; k < g.grid.n; ++k) {
            const double p = g.grid[k];
            const double w = std::norm(g.samples[k]);
            total += w;
            if (p < pgrid.min || p > pgrid.max)
                out_range += w;
            if (std::abs(p) > nyquist)
                out_band += w;
        }
        if (out_band > opt.range_tolerance * total)
            fail(ErrorKind::aliasing, "x spacing too coarse for the momentum content of f");
        outside = out_range / total;
        if (outside > opt.range_tolerance)
            fail(ErrorKind::range, "p-range does not contain the momentum support (outside fraction " +
                                       std::to_string(outside) + ")");
    }

    const long M = static_cast<long>((n - 1) / 2);
    const std::size_t K = static_cast<std::size_t>(2 * M + 1);
    const std::size_t np = pgrid.n;
    const std::size_t F = good_fft_size(K + np - 1);
    const long double theta = 2.0L * static_cast<long double>(pgrid.spacing()) * dx;

    FftBuffer chirp(F);
    for (std::size_t s = 0; s < np; ++s)
        chirp[s] = unit_phase(-theta * static_cast<long double>(s) * s / 2);
    for (std::size_t s = 1; s < K; ++s)
        chirp[F - s] = unit_phase(-theta * static_cast<long double>(s) * s / 2);
    chirp.forward();

    std::vector<cplx> pre(K), post(np);
    for (std::size_t mp = 0; mp < K; ++mp) {
        const long m = static_cast<long>(mp) - M;
        pre[mp] = unit_phase(2.0L * pgrid.min * m * dx + theta * static_cast<long double>(mp) * mp / 2);
    }
    for (std::size_t j = 0; j < np; ++j) {
        const long double jj = static_cast<long double>(j);
        post[j] = (dx / pi / static_cast<double>(F)) * unit_phase(-theta * jj * M + theta * jj * jj / 2);
    }

    PhaseSpaceDensity2D rho(f.grid, pgrid);
    FftBuffer work(F);
    double max_re = 0, max_im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(work.data(), work.data() + F, cplx(0, 0));
        const long li = static_cast<long>(i);
        for (std::size_t mp = 0; mp < K; ++mp) {
            const long m = static_cast<long>(mp) - M;
            const long a = li + m, b = li - m;
            if (a < 0 || b < 0 || a >= static_cast<long>(n) || b >= static_cast<long>(n))
                continue;
            work[mp] = std::conj(f.samples[a]) * f.samples[b] * pre[mp];
        }
        work.forward();
        for (std::size_t s = 0; s < F; ++s)
            work[s] *= chirp[s];
        work.backward();
        for (std::size_t j = 0; j < np; ++j) {
            const cplx v = post[j] * work[j];
            rho(i, j) = v.real();
            max_re = std::max(max_re, std::abs(v.real()));
            max_im = std::max(max_im, std::abs(v.imag()));
        }
    }
    if (diag) {
        diag->imag_residue = max_re > 0 ? max_im / max_re : 0;
        diag->edge_ratio = er;
        diag->outside_mass = outside;
    }
    return rho;
}

Marginals marginals(const PhaseSpaceDensity2D& rho, bool strict)
{
    const std::size_t nx = rho.xgrid.n, np = rho.pgrid.n;
    Marginals m;
    m.P.grid = rho.xgrid;
    m.Q.grid = rho.pgrid;
    m.P.samples.resize(nx);
    m.Q.samples.assign(np, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
        m.P.samples[i] = trapezoid(&rho.samples[i * np], np, rho.pgrid.spacing());
    const double hx = rho.xgrid.spacing();
    for (std::size_t i = 0; i < nx; ++i) {
        const double w = (i == 0 || i + 1 == nx) ? 0.5 * hx : hx;
        for (std::size_t j = 0; j < np; ++j)
            m.Q.samples[j] += w * rho(i, j);
    }

    constexpr double tol = 1e-12;
    auto clip = [&](std::vector<double>& v, const char* name) {
        double peak = 0;
        for (double s : v)
            peak = std::max(peak, std::abs(s));
        for (double& s : v) {
            if (s >= 0)
                continue;
            const double rel = peak > 0 ? -s / peak : 0;
            m.worst_negative = std::max(m.worst_negative, rel);
            if (rel > tol && strict)
                fail(ErrorKind::inconsistent, std::string(name) +
                                                  " marginal is negative beyond tolerance; not a valid Wigner image");
            s = 0;
            ++m.clipped;
        }
    };
    clip(m.P.samples, "position");
    clip(m.Q.samples, "momentum");
    return m;
}

CurrentField1D probability_current(const PhaseSpaceDensity2D& rho, double mass)
{
    if (!(mass > 0))
        fail(ErrorKind::config, "mass must be positive");
    const std::size_t nx = rho.xgrid.n, np = rho.pgrid.n;
    CurrentField1D J{rho.xgrid, std::vector<double>(nx)};
    std::vector<double> row(np);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < np; ++j)
            row[j] = rho.pgrid[j] * rho(i, j);
        J.samples[i] = trapezoid(row, rho.pgrid.spacing()) / mass;
    }
    return J;
}

double position_spread(const ProbabilityField1D& P)
{
    const double h = P.grid.spacing();
    const double norm = trapezoid(P.samples, h);
    if (!(norm > 0))
        fail(ErrorKind::undefined, "zero-norm distribution");
    std::vector<double> w(P.samples.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = P.grid[i] * P.samples[i];
    const double mean = trapezoid(w, h) / norm;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = P.grid[i] - mean;
        w[i] = d * d * P.samples[i];
    }
    return std::sqrt(trapezoid(w, h) / norm);
}

double uncertainty_product(const ProbabilityField1D& P, const ProbabilityField1D& Q)
{
    return position_spread(P) * position_spread(Q);
}

double amplitude_uncertainty(const ComplexField1D& f, std::size_t pad, double edge_tolerance)
{
    return uncertainty_product(density_of(f), density_of(momentum_amplitude(f, pad, edge_tolerance)));
}

ComplexField1D reconstruct_phase(const ProbabilityField1D& P, const CurrentField1D& J, double mass,
                                 double threshold)
{
    const std::size_t n = P.grid.n;
    if (J.samples.size() != n)
        fail(ErrorKind::config, "density and current sizes differ");
    double peak = 0;
    for (double v : P.samples)
        peak = std::max(peak, v);
    if (!(peak > 0))
        fail(ErrorKind::undefined, "zero density");
    const double thr = threshold * peak;

    std::vector<double> v(n, 0.0);
    std::vector<char> ok(n, 0);
    double vmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (P.samples[i] > thr) {
            v[i] = J.samples[i] / P.samples[i];
            ok[i] = 1;
            vmax = std::max(vmax, std::abs(v[i]));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!ok[i] && std::abs(J.samples[i]) > thr * (1 + vmax))
            fail(ErrorKind::singularity, "nonzero current where the density vanishes (x = " +
                                             std::to_string(P.grid[i]) + ")");

    // fill the below-threshold stretches by linear extrapolation of the velocity
    std::size_t first = n, last = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (ok[i]) {
            first = std::min(first, i);
            last = i;
        }
    if (first == n)
        fail(ErrorKind::undefined, "density below threshold everywhere");
    auto line = [&](std::size_t a, std::size_t b, std::size_t i) {
        if (a == b)
            return v[a];
        const double s = (static_cast<double>(i) - static_cast<double>(a)) /
                         (static_cast<double>(b) - static_cast<double>(a));
        return v[a] + s * (v[b] - v[a]);
    };
    const std::size_t f2 = (first + 1 <= last && ok[first + 1]) ? first + 1 : first;
    const std::size_t l2 = (last >= first + 1 && ok[last - 1]) ? last - 1 : last;
    for (std::size_t i = 0; i < first; ++i)
        v[i] = line(first, f2, i);
    for (std::size_t i = last + 1; i < n; ++i)
        v[i] = line(l2, last, i);
    for (std::size_t i = first; i <= last; ++i) {
        if (ok[i])
            continue;
        std::size_t b = i;
        while (!ok[b])
            ++b;
        v[i] = line(i - 1, b, i);
    }

    const double h = P.grid.spacing();
    std::vector<cplx> s(n);
    double phase = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0)
            phase += 0.5 * h * mass * (v[i - 1] + v[i]);
        s[i] = std::polar(std::sqrt(std::max(0.0, P.samples[i])), phase);
    }
    return ComplexField1D(P.grid, std::move(s));
}

ComplexField1D momentum_amplitude(const ComplexField1D& f, std::size_t pad, double edge_tolerance)
{
    if (pad < 1)
        fail(ErrorKind::config, "pad factor must be >= 1");
    if (edge_ratio(f) > edge_tolerance)
        fail(ErrorKind::aliasing, "insufficient grid span for the Fourier transform");
    const std::size_t n = f.grid.n;
    const std::size_t N = n * pad;
    const double dx = f.grid.spacing();
    const double dp = 2 * pi / (static_cast<double>(N) * dx);
    const std::size_t c = N / 2;

    FftBuffer buf(N);
    for (std::size_t j = 0; j < n; ++j)
        buf[j] = f.samples[j] * unit_phase(2.0L * 3.14159265358979323846264338327950288L *
                                           static_cast<long double>((c * j) % N) / N);
    buf.forward();

    const Grid1D pg(-static_cast<double>(c) * dp, static_cast<double>(N - 1 - c) * dp, N);
    std::vector<cplx> g(N);
    const double scale = dx / std::sqrt(2 * pi);
    for (std::size_t k = 0; k < N; ++k)
        g[k] = scale * buf[k] * unit_phase(-static_cast<long double>(pg[k]) * f.grid.min);
    return ComplexField1D(pg, std::move(g));
}

ComplexField1D position_amplitude(const ComplexField1D& g, double xmin, std::size_t n)
{
    const std::size_t N = g.grid.n;
    if (n > N)
        fail(ErrorKind::config, "cannot return more positions than momentum samples");
    const double dp = g.grid.spacing();
    const double dx = 2 * pi / (static_cast<double>(N) * dp);
    FftBuffer buf(N);
    for (std::size_t k = 0; k < N; ++k)
        buf[k] = g.samples[k] * unit_phase(static_cast<long double>(k) * dp * xmin);
    buf.backward();
    const double scale = dp / std::sqrt(2 * pi);
    const Grid1D xg(xmin, xmin + dx * static_cast<double>(n - 1), n);
    std::vector<cplx> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = scale * buf[j] *
               unit_phase(static_cast<long double>(g.grid.min) * xmin +
                          static_cast<long double>(g.grid.min) * dx * static_cast<long double>(j));
    return ComplexField1D(xg, std::move(f));
}

ProbabilityField1D density_of(const ComplexField1D& f)
{
    ProbabilityField1D P{f.grid, std::vector<double>(f.grid.n)};
    for (std::size_t i = 0; i < f.grid.n; ++i)
        P.samples[i] = std::norm(f.samples[i]);
    return P;
}

CurrentField1D current_of(const ComplexField1D& f, double mass)
{
    const std::size_t n = f.grid.n;
    const std::size_t N = good_fft_size(2 * n);
    const double dx = f.grid.spacing();
    FftBuffer buf(N);
    for (std::size_t j = 0; j < n; ++j)
        buf[j] = f.samples[j];
    buf.forward();
    for (std::size_t k = 0; k < N; ++k) {
        const long kk = k <= N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
        const double kv = 2 * pi * static_cast<double>(kk) / (static_cast<double>(N) * dx);
        buf[k] *= cplx(0, kv) / static_cast<double>(N);
    }
    if (N % 2 == 0)
        buf[N / 2] = 0;
    buf.backward();
    CurrentField1D J{f.grid, std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j)
        J.samples[j] = (std::conj(f.samples[j]) * buf[j]).imag() / mass;
    return J;
}

} // namespace phaseflow
