#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace phaseflow {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// hbar = m = c = 1 throughout; the struct exists so call sites can say so.
struct NaturalUnits {
    double hbar = 1.0;
    double mass = 1.0;
    double light_speed = 1.0;

    void validate() const;
};

// Uniform grid with both end points included.
struct Grid1D {
    double min = 0.0;
    double max = 1.0;
    std::size_t n = 2;

    Grid1D() = default;
    Grid1D(double lo, double hi, std::size_t count);

    void validate() const;
    double spacing() const { return (max - min) / static_cast<double>(n - 1); }
    double operator[](std::size_t i) const { return min + spacing() * static_cast<double>(i); }
    std::vector<double> points() const;
    // nearest index, clamped
    std::size_t index_of(double x) const;
};

// Normalized Gaussian packet, |h(x)|^2 = exp(-(x-x0)^2/D^2)/(sqrt(pi) D).
struct GaussianPacket {
    double x0 = 0.0;
    double p0 = 0.0;
    double delta = 1.0;

    void validate() const;
    cplx amplitude(double x) const;
    // exact free evolution
    cplx amplitude(double x, double t) const;
    cplx momentum_amplitude(double p) const;
    double wigner(double x, double p) const;
    double density(double x, double t = 0.0) const;
};

struct ComplexField1D {
    Grid1D grid;
    std::vector<cplx> samples;

    ComplexField1D() = default;
    ComplexField1D(const Grid1D& g, std::vector<cplx> s);
    double norm2() const;
    void normalize();
};

struct ProbabilityField1D {
    Grid1D grid;
    std::vector<double> samples;

    double integral() const;
};

struct CurrentField1D {
    Grid1D grid;
    std::vector<double> samples;
};

// samples are stored x-major: (i, j) -> samples[i * pgrid.n + j]
struct PhaseSpaceDensity2D {
    Grid1D xgrid;
    Grid1D pgrid;
    std::vector<double> samples;

    PhaseSpaceDensity2D() = default;
    PhaseSpaceDensity2D(const Grid1D& xg, const Grid1D& pg);

    double& operator()(std::size_t i, std::size_t j) { return samples[i * pgrid.n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return samples[i * pgrid.n + j]; }
    double integral() const;
};

using DensityFn = std::function<double(double x, double p)>;
using AmplitudeFn = std::function<cplx(double x)>;

PhaseSpaceDensity2D sample_density(const DensityFn& rho, const Grid1D& xg, const Grid1D& pg);
ComplexField1D sample_amplitude(const AmplitudeFn& f, const Grid1D& g);

// trapezoid rule on uniform spacing h
double trapezoid(const std::vector<double>& y, double h);
double trapezoid(const double* y, std::size_t n, double h);

double relative_l2(const std::vector<double>& a, const std::vector<double>& ref);
double relative_linf(const std::vector<double>& a, const std::vector<double>& ref);

} // namespace phaseflow
