#include "phaseflow/types.hpp"

#include "phaseflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phaseflow {

void NaturalUnits::validate() const
{
    if (!(hbar > 0 && mass > 0 && light_speed > 0))
        fail(ErrorKind::config, "natural units must be strictly positive");
}

Grid1D::Grid1D(double lo, double hi, std::size_t count) : min(lo), max(hi), n(count)
{
    validate();
}

void Grid1D::validate() const
{
    if (!(std::isfinite(min) && std::isfinite(max)) || !(min < max))
        fail(ErrorKind::config, "grid requires min < max");
    if (n < 2)
        fail(ErrorKind::config, "grid requires n >= 2");
}

std::vector<double> Grid1D::points() const
{
    std::vector<double> x(n);
    const double h = spacing();
    for (std::size_t i = 0; i < n; ++i)
        x[i] = min + h * static_cast<double>(i);
    return x;
}

std::size_t Grid1D::index_of(double x) const
{
    const double s = std::round((x - min) / spacing());
    if (s <= 0)
        return 0;
    return std::min(n - 1, static_cast<std::size_t>(s));
}

void GaussianPacket::validate() const
{
    if (!(delta > 0) || !std::isfinite(x0) || !std::isfinite(p0))
        fail(ErrorKind::config, "packet width must be positive and parameters finite");
}

cplx GaussianPacket::amplitude(double x) const
{
    const double d = x - x0;
    const double norm = std::pow(pi * delta * delta, -0.25);
    return norm * std::exp(cplx(-d * d / (2 * delta * delta), p0 * d));
}

cplx GaussianPacket::amplitude(double x, double t) const
{
    const cplx w(delta * delta, t);
    const double d = x - x0 - p0 * t;
    const double norm = std::pow(pi * delta * delta, -0.25);
    return norm * (delta / std::sqrt(w)) *
           std::exp(-d * d / (2.0 * w) + cplx(0, p0 * (x - x0) - 0.5 * p0 * p0 * t));
}

cplx GaussianPacket::momentum_amplitude(double p) const
{
    const double d = p - p0;
    const double norm = std::pow(delta * delta / pi, 0.25);
    return norm * std::exp(cplx(-d * d * delta * delta / 2, -p * x0));
}

double GaussianPacket::wigner(double x, double p) const
{
    const double dx = x - x0, dp = p - p0;
    return std::exp(-dx * dx / (delta * delta) - dp * dp * delta * delta) / pi;
}

double GaussianPacket::density(double x, double t) const
{
    const double D2 = delta * delta;
    const double w2 = D2 + t * t / D2;
    const double d = x - x0 - p0 * t;
    return std::exp(-d * d / w2) / std::sqrt(pi * w2);
}

ComplexField1D::ComplexField1D(const Grid1D& g, std::vector<cplx> s) : grid(g), samples(std::move(s))
{
    if (samples.size() != grid.n)
        fail(ErrorKind::config, "field size does not match its grid");
}

double ComplexField1D::norm2() const
{
    std::vector<double> a(samples.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::norm(samples[i]);
    return trapezoid(a, grid.spacing());
}

void ComplexField1D::normalize()
{
    const double n = norm2();
    if (!(n > 0) || !std::isfinite(n))
        fail(ErrorKind::undefined, "cannot normalize a field with zero or non-finite norm");
    const double s = 1.0 / std::sqrt(n);
    for (auto& v : samples)
        v *= s;
}

double ProbabilityField1D::integral() const
{
    return trapezoid(samples, grid.spacing());
}

PhaseSpaceDensity2D::PhaseSpaceDensity2D(const Grid1D& xg, const Grid1D& pg)
    : xgrid(xg), pgrid(pg), samples(xg.n * pg.n, 0.0)
{
}

double PhaseSpaceDensity2D::integral() const
{
    std::vector<double> rows(xgrid.n);
    for (std::size_t i = 0; i < xgrid.n; ++i)
        rows[i] = trapezoid(&samples[i * pgrid.n], pgrid.n, pgrid.spacing());
    return trapezoid(rows, xgrid.spacing());
}

PhaseSpaceDensity2D sample_density(const DensityFn& rho, const Grid1D& xg, const Grid1D& pg)
{
    PhaseSpaceDensity2D out(xg, pg);
    for (std::size_t i = 0; i < xg.n; ++i) {
        const double x = xg[i];
        for (std::size_t j = 0; j < pg.n; ++j)
            out(i, j) = rho(x, pg[j]);
    }
    return out;
}

ComplexField1D sample_amplitude(const AmplitudeFn& f, const Grid1D& g)
{
    std::vector<cplx> s(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        s[i] = f(g[i]);
    return ComplexField1D(g, std::move(s));
}

double trapezoid(const double* y, std::size_t n, double h)
{
    if (n < 2)
        return 0.0;
    double s = 0.5 * (y[0] + y[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        s += y[i];
    return s * h;
}

double trapezoid(const std::vector<double>& y, double h)
{
    return trapezoid(y.data(), y.size(), h);
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& ref)
{
    if (a.size() != ref.size())
        fail(ErrorKind::config, "relative_l2 size mismatch");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ref[i]) * (a[i] - ref[i]);
        den += ref[i] * ref[i];
    }
    if (den == 0)
        fail(ErrorKind::undefined, "relative_l2 against a zero reference");
    return std::sqrt(num / den);
}

double relative_linf(const std::vector<double>& a, const std::vector<double>& ref)
{
    if (a.size() != ref.size())
        fail(ErrorKind::config, "relative_linf size mismatch");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - ref[i]));
        den = std::max(den, std::abs(ref[i]));
    }
    if (den == 0)
        fail(ErrorKind::undefined, "relative_linf against a zero reference");
    return num / den;
}

} // namespace phaseflow
