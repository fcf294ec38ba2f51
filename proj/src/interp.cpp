#include "phaseflow/interp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace phaseflow {

namespace {

// stencil start index and the four Lagrange weights for position s (in cells)
bool stencil(const Grid1D& g, double x, std::size_t& i0, double w[4])
{
    const double h = g.spacing();
    const double s = (x - g.min) / h;
    if (s < -1e-12 || s > static_cast<double>(g.n - 1) + 1e-12)
        return false;
    if (g.n < 4) {
        // linear fallback for tiny grids
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, std::floor(s))), g.n - 2);
        const double u = s - static_cast<double>(i);
        i0 = i;
        w[0] = 1 - u;
        w[1] = u;
        w[2] = w[3] = 0;
        return true;
    }
    long base = static_cast<long>(std::floor(s)) - 1;
    base = std::clamp(base, 0L, static_cast<long>(g.n) - 4);
    i0 = static_cast<std::size_t>(base);
    const double u = s - static_cast<double>(base);
    // nodes at 0,1,2,3
    w[0] = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    w[1] = u * (u - 2) * (u - 3) / 2.0;
    w[2] = -u * (u - 1) * (u - 3) / 2.0;
    w[3] = u * (u - 1) * (u - 2) / 6.0;
    return true;
}

} // namespace

double cubic_interp(const Grid1D& g, const double* y, double x)
{
    std::size_t i0;
    double w[4];
    if (!stencil(g, x, i0, w))
        return 0.0;
    double s = 0;
    const std::size_t m = std::min<std::size_t>(4, g.n - i0);
    for (std::size_t k = 0; k < m; ++k)
        s += w[k] * y[i0 + k];
    return s;
}

double bicubic_interp(const PhaseSpaceDensity2D& rho, double x, double p)
{
    std::size_t ix, ip;
    double wx[4], wp[4];
    if (!stencil(rho.xgrid, x, ix, wx) || !stencil(rho.pgrid, p, ip, wp))
        return 0.0;
    const std::size_t mx = std::min<std::size_t>(4, rho.xgrid.n - ix);
    const std::size_t mp = std::min<std::size_t>(4, rho.pgrid.n - ip);
    double s = 0;
    for (std::size_t a = 0; a < mx; ++a) {
        double row = 0;
        for (std::size_t b = 0; b < mp; ++b)
            row += wp[b] * rho(ix + a, ip + b);
        s += wx[a] * row;
    }
    return s;
}

DensityFn interpolant(PhaseSpaceDensity2D rho)
{
    auto shared = std::make_shared<const PhaseSpaceDensity2D>(std::move(rho));
    return [shared](double x, double p) { return bicubic_interp(*shared, x, p); };
}

} // namespace phaseflow
