#include "phaseflow/relativistic.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace phaseflow {

namespace {

constexpr double window_halfwidth = 8.0;  // in units of delta
constexpr double quad_tol = 1e-8;

double hump(double p, double centre, double delta)
{
    const double s = (p - centre) / delta;
    return std::exp(-0.5 * s * s);
}

// k-windows where the selected pair product is non-negligible, merged
std::vector<std::pair<double, double>> k_windows(const RelSplitConfig& cfg, RelComponent c)
{
    std::vector<double> centres;
    if (c != RelComponent::interference)
        centres.push_back(0.0);
    if (c != RelComponent::direct) {
        centres.push_back(-cfg.m0);
        centres.push_back(cfg.m0);
    }
    std::sort(centres.begin(), centres.end());
    const double h = window_halfwidth * cfg.delta;
    std::vector<std::pair<double, double>> out;
    for (double kc : centres) {
        if (!out.empty() && kc - h <= out.back().second)
            out.back().second = kc + h;
        else
            out.emplace_back(kc - h, kc + h);
    }
    return out;
}

} // namespace

void RelSplitConfig::validate() const
{
    if (!(m0 > 0) || !(delta > 0))
        fail(ErrorKind::config, "m0 and delta must be positive");
    if (m0 < 5 * delta)
        fail(ErrorKind::config, "humps overlap: need m0 >= 5 delta (m0=" + std::to_string(m0) +
                                    ", delta=" + std::to_string(delta) + ")");
}

Dispersion dispersion(double k)
{
    const double e = std::hypot(1.0, k);
    return {e, k / (1.0 + e)};
}

double rel_normalization(const RelSplitConfig& cfg)
{
    cfg.validate();
    const double d = cfg.delta, m0 = cfg.m0;
    auto f = [&](double p) {
        const double a = hump(p, m0, d) + hump(p, -m0, d);
        const double w = dispersion(p).w;
        return (1 + w * w) * a * a;
    };
    double total = 0;
    // same support as the interference windows: humps at +-m0
    for (auto [lo, hi] : k_windows(cfg, RelComponent::interference))
        total += integrate_gk<double>(f, lo, hi, quad_tol).value;
    return pi * total;
}

double rel_density_at(const RelSplitConfig& cfg, double t, double y, double p, RelComponent component,
                      double* imag_residue)
{
    const double d = cfg.delta, m0 = cfg.m0;
    auto integrand = [&](double k) -> cplx {
        const double a = p - k, b = p + k;
        const auto da = dispersion(a), db = dispersion(b);
        double pair = 0;
        const double ap = hump(a, m0, d), am = hump(a, -m0, d);
        const double bp = hump(b, m0, d), bm = hump(b, -m0, d);
        switch (component) {
        case RelComponent::full:
            pair = (ap + am) * (bp + bm);
            break;
        case RelComponent::direct:
            pair = ap * bp + am * bm;
            break;
        case RelComponent::interference:
            pair = ap * bm + am * bp;
            break;
        }
        const double kern = 1 + da.w * db.w;
        const double phase = 2 * k * y - (db.e - da.e) * t;
        return kern * pair * std::polar(1.0, phase);
    };
    cplx total{};
    for (auto [lo, hi] : k_windows(cfg, component))
        total += integrate_gk<cplx>(integrand, lo, hi, quad_tol).value;
    static thread_local std::pair<double, double> cache{-1, -1};
    static thread_local double cached_norm = 0;
    if (cache.first != m0 || cache.second != d) {
        cached_norm = rel_normalization(cfg);
        cache = {m0, d};
    }
    if (imag_residue)
        *imag_residue = total.imag() / cached_norm;
    return total.real() / cached_norm;
}

PhaseSpaceDensity2D rel_density(const RelSplitConfig& cfg, double t, const Grid1D& yg, const Grid1D& pg,
                                RelComponent component)
{
    cfg.validate();
    PhaseSpaceDensity2D rho(yg, pg);
    double worst_imag = 0, peak = 0;
    for (std::size_t i = 0; i < yg.n; ++i)
        for (std::size_t j = 0; j < pg.n; ++j) {
            double im = 0;
            const double v = rel_density_at(cfg, t, yg[i], pg[j], component, &im);
            rho(i, j) = v;
            worst_imag = std::max(worst_imag, std::abs(im));
            peak = std::max(peak, std::abs(v));
        }
    if (peak > 0 && worst_imag > 1e-8 * peak)
        fail(ErrorKind::integration,
             "relativistic density imaginary residue " + std::to_string(worst_imag / peak) + " of peak");
    return rho;
}

double interference_nonrel_at(const RelSplitConfig& cfg, double t, double y, double p)
{
    const double d = cfg.delta;
    const double s = y - p * t;
    return std::exp(-p * p / (d * d) - d * d * s * s) * std::cos(2 * cfg.m0 * s) / pi;
}

PhaseSpaceDensity2D interference_term_nonrel(const RelSplitConfig& cfg, double t, const Grid1D& yg,
                                             const Grid1D& pg)
{
    cfg.validate();
    if (cfg.m0 > 0.2)
        fail(ErrorKind::regime, "non-relativistic interference term needs m0 <= 0.2");
    return sample_density([&](double y, double p) { return interference_nonrel_at(cfg, t, y, p); }, yg, pg);
}

double ultrarel_validity_time(const RelSplitConfig& cfg)
{
    return std::pow(cfg.m0, 4) / std::pow(cfg.delta, 3);
}

namespace {
void ultrarel_gate(const RelSplitConfig& cfg, double t)
{
    cfg.validate();
    if (cfg.m0 < 5)
        fail(ErrorKind::regime, "ultrarelativistic interference term needs m0 >= 5");
    const double window = ultrarel_validity_time(cfg);
    if (std::abs(t) > window / 10)
        fail(ErrorKind::regime, "t = " + std::to_string(t) + " outside the frozen-envelope window (t <= " +
                                    std::to_string(window / 10) + ")");
}
} // namespace

double interference_ultrarel_at(const RelSplitConfig& cfg, double t, double y, double p)
{
    ultrarel_gate(cfg, t);
    const double d = cfg.delta, m0 = cfg.m0;
    return std::exp(-p * p / (d * d) - d * d * y * y) * std::cos(2 * m0 * (y - p * t / m0)) / (pi * m0);
}

PhaseSpaceDensity2D interference_term_ultrarel(const RelSplitConfig& cfg, double t, const Grid1D& yg,
                                               const Grid1D& pg)
{
    ultrarel_gate(cfg, t);
    return sample_density([&](double y, double p) { return interference_ultrarel_at(cfg, t, y, p); }, yg, pg);
}

} // namespace phaseflow
