#include "phaseflow/tunneling.hpp"

#include "phaseflow/core.hpp"
#include "phaseflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace phaseflow {

void BarrierSpec::validate() const
{
    switch (kind) {
    case Kind::infinite_wall:
        break;
    case Kind::step:
        if (!(V0 > 0))
            fail(ErrorKind::config, "step height V0 must be positive");
        if (!(gap >= 0))
            fail(ErrorKind::config, "gap must be nonnegative");
        break;
    case Kind::delta:
        if (!(W0 > 0))
            fail(ErrorKind::config, "delta strength W0 must be positive");
        break;
    }
}

void step_gate(const GaussianPacket& packet, double V0, GateMode mode)
{
    const double a = std::sqrt(2 * V0);
    gate(a >= 5 * std::abs(packet.p0), mode,
         "step regime gate sqrt(2 V0) >= 5 p0 violated (sqrt(2V0)=" + std::to_string(a) +
             ", p0=" + std::to_string(packet.p0) + ")");
}

void delta_gate(const GaussianPacket& packet, double W0, GateMode mode)
{
    gate(W0 >= 5 * std::abs(packet.p0), mode,
         "delta regime gate W0 >= 5 p0 violated (W0=" + std::to_string(W0) + ", p0=" +
             std::to_string(packet.p0) + ")");
}

// ---- wall --------------------------------------------------------------------

void validate_wall_packet(const GaussianPacket& packet)
{
    packet.validate();
    if (!(packet.x0 < 0))
        fail(ErrorKind::config, "wall packet must start at x0 < 0");
    if (std::abs(packet.x0) < 3 * packet.delta)
        fail(ErrorKind::config, "packet overlaps the wall: need |x0| >= 3 delta");
}

double wall_norm2(const GaussianPacket& packet)
{
    const double d = packet.delta;
    const double overlap = std::exp(-packet.x0 * packet.x0 / (d * d) - packet.p0 * packet.p0 * d * d);
    return 1 - overlap;
}

DensityFn wall_initial_density(const GaussianPacket& packet)
{
    validate_wall_packet(packet);
    // the odd extension carries norm 2 wall_norm2 over the whole line
    const double n2 = 1.0 / (2 * wall_norm2(packet));
    const double x0 = packet.x0, p0 = packet.p0, d = packet.delta, d2 = d * d;
    return [=](double x, double p) {
        const double direct = std::exp(-(x - x0) * (x - x0) / d2 - (p - p0) * (p - p0) * d2);
        const double image = std::exp(-(x + x0) * (x + x0) / d2 - (p + p0) * (p + p0) * d2);
        const double cross =
            2 * std::exp(-x * x / d2 - p * p * d2) * std::cos(2 * (p0 * x - p * x0));
        return n2 * (direct + image - cross) / pi;
    };
}

cplx wall_amplitude(const GaussianPacket& packet, double x, double t)
{
    if (x > 0)
        return 0;
    return (packet.amplitude(x, t) - packet.amplitude(-x, t)) / std::sqrt(wall_norm2(packet));
}

ComplexField1D wall_amplitude(const GaussianPacket& packet, double t, const Grid1D& xg)
{
    validate_wall_packet(packet);
    if (t < 0)
        fail(ErrorKind::config, "time must be nonnegative");
    return sample_amplitude([&](double x) { return wall_amplitude(packet, x, t); }, xg);
}

ComplexField1D halfline_momentum_amplitude(const GaussianPacket& packet, double t, const HalflineOptions& opt)
{
    validate_wall_packet(packet);
    if (!(opt.dx > 0))
        fail(ErrorKind::config, "half-line dx must be positive");
    const double d = packet.delta;
    const double width = std::sqrt(d * d + t * t / (d * d));
    const double reach = std::max(std::abs(packet.x0), std::abs(packet.x0 + packet.p0 * t));
    const double span = opt.span > 0 ? opt.span : reach + 12 * width;
    const auto n = static_cast<std::size_t>(std::ceil(span / opt.dx)) + 1;
    const Grid1D xg(-static_cast<double>(n - 1) * opt.dx, 0.0, n);
    const ComplexField1D f = wall_amplitude(packet, t, xg);
    double peak = 0;
    for (const auto& v : f.samples)
        peak = std::max(peak, std::abs(v));
    if (std::abs(f.samples.front()) > 1e-12 * peak)
        fail(ErrorKind::range, "half-line grid does not contain the packet support");
    // f(0) = 0 exactly, so zero extension adds no edge discontinuity
    return momentum_amplitude(f, opt.pad, std::numeric_limits<double>::infinity());
}

ProbabilityField1D halfline_momentum_density(const GaussianPacket& packet, double t, const HalflineOptions& opt)
{
    const ComplexField1D g = halfline_momentum_amplitude(packet, t, opt);
    ProbabilityField1D Q{g.grid, std::vector<double>(g.grid.n)};
    for (std::size_t k = 0; k < g.grid.n; ++k)
        Q.samples[k] = std::norm(g.samples[k]);
    return Q;
}

double traditional_momentum_density(const GaussianPacket& packet, double t, double p)
{
    const double x0 = packet.x0, p0 = packet.p0, d = packet.delta;
    const double half_gauss = 0.5 * d * std::sqrt(pi);
    const double a = std::exp(-(p - p0) * (p - p0) * d * d) * std::erfc((p * t + x0) / d);
    const double b = std::exp(-(p + p0) * (p + p0) * d * d) * std::erfc((p * t - x0) / d);
    return half_gauss * (a + b) / (pi * wall_norm2(packet));
}

ProbabilityField1D traditional_momentum_density(const GaussianPacket& packet, double t, const Grid1D& pg)
{
    validate_wall_packet(packet);
    ProbabilityField1D Q{pg, std::vector<double>(pg.n)};
    for (std::size_t k = 0; k < pg.n; ++k)
        Q.samples[k] = traditional_momentum_density(packet, t, pg[k]);
    return Q;
}

LeakEstimate wall_leak_estimate(const GaussianPacket& packet, double V0)
{
    if (!std::isfinite(V0) || V0 < 0)
        fail(ErrorKind::config, "leak estimate needs finite V0 >= 0");
    const double lg = -2 * V0 * packet.delta * packet.delta;
    const double v = std::exp(lg);
    return {v, lg, v == 0.0 && lg < 0};
}

// ---- step --------------------------------------------------------------------

double step_transmission_estimate(const GaussianPacket& packet, double V0, double x, double t, GateMode mode)
{
    packet.validate();
    if (!(V0 > 0))
        fail(ErrorKind::config, "step height V0 must be positive");
    if (!(x > 0))
        fail(ErrorKind::config, "transmission estimate is defined for x > 0");
    step_gate(packet, V0, mode);
    return step_transmitted_time_factor(packet, t) * std::exp(-2 * x * std::sqrt(2 * V0));
}

double step_transmitted_time_factor(const GaussianPacket& packet, double t)
{
    const double d2 = packet.delta * packet.delta;
    const double s = packet.x0 + packet.p0 * t;
    return std::exp(-d2 * s * s / (d2 * d2 + t * t));
}

namespace {

struct StepKernel {
    double a, x0, p0, d2;

    // principal-root product: analytic off [-a, a], maps the upper half-plane to itself
    cplx K(cplx z) const { return std::sqrt(z - a) * std::sqrt(z + a); }
    // logs of A(k) and A*(z) = conj(A(conj z)); products are exponentiated once
    cplx log_A(cplx k) const { return -0.5 * (k - p0) * (k - p0) * d2 - cplx(0, 1) * k * x0; }
    cplx log_A_star(cplx z) const { return std::conj(log_A(std::conj(z))); }

    // k_p^- with K(k_p^-) = 2p - K(k), i.e. Im K(k_p^-) < 0 for k in the upper half-plane
    cplx kp(cplx k, double p, cplx* Kk = nullptr, double* residual = nullptr) const
    {
        const cplx Kv = K(k);
        const cplx w = 2 * p - Kv;
        const cplx z = std::sqrt(w * w + a * a);
        const double rp = std::abs(K(z) - w), rm = std::abs(K(-z) - w);
        if (Kk)
            *Kk = Kv;
        if (residual)
            *residual = std::min(rp, rm) / (1 + std::abs(w));
        return rp <= rm ? z : -z;
    }
};

// Minimum positive imaginary part of the k_p^- branch points (k^2 = 4p^2 +- 4ipa).
double branch_point_im(double p, double a)
{
    double best = std::numeric_limits<double>::infinity();
    for (double s : {1.0, -1.0}) {
        const cplx r = std::sqrt(cplx(4 * p * p, s * 4 * p * a));
        for (cplx z : {r, -r})
            if (z.imag() > 0)
                best = std::min(best, z.imag());
    }
    return best;
}

} // namespace

StepDensitySample step_initial_density(const GaussianPacket& packet, double V0, double x, double p,
                                       const StepDensityOptions& opt, GateMode mode)
{
    packet.validate();
    if (!(V0 > 0))
        fail(ErrorKind::config, "step height V0 must be positive");
    step_gate(packet, V0, mode);
    const double a = std::sqrt(2 * V0);
    const double d = packet.delta;
    const StepKernel ker{a, packet.x0, packet.p0, d * d};

    double c = opt.contour_offset;
    const bool fixed_path = c > 0 || opt.through_stationary_point;
    if (opt.through_stationary_point)
        c = -packet.x0 / (d * d);
    if (!(c > 0)) {
        // half way to the nearest branch point, but no higher than the saddle
        // of |A(k)| at Im k = -x0/D^2: above it the integrand grows like exp(D^2 c^2 / 2)
        const double bp = branch_point_im(p, a);
        c = std::isfinite(bp) && bp > 1e-12 ? 0.5 * bp : 0.5 / d;
        if (packet.x0 < 0)
            c = std::min(c, -packet.x0 / (d * d));
    }
    const double ulo = packet.p0 - 12 / d, uhi = packet.p0 + 12 / d;

    // Branch monitor: k_p^- must stay continuous along the path. The cuts of
    // k_p^- hang from its branch points down to the real axis, so an automatic
    // offset is lowered until the path passes beneath them inside the window.
    auto crossing = [&](double offset, std::string& where) {
        constexpr int scan = 4000;
        cplx prev{};
        double prev_step = 0;
        for (int i = 0; i <= scan; ++i) {
            const cplx k(ulo + (uhi - ulo) * i / scan, offset);
            double res = 0;
            const cplx q = ker.kp(k, p, nullptr, &res);
            if (res > 1e-6) {
                where = "k_p^- off its sheet at Re k = " + std::to_string(k.real());
                return true;
            }
            if (i > 0) {
                const double step = std::abs(q - prev);
                if (i > 1 && step > 50 * prev_step + 1e-3 * (1 + std::abs(q))) {
                    where = "k_p^- jumps at Re k = " + std::to_string(k.real());
                    return true;
                }
                prev_step = step;
            }
            prev = q;
        }
        return false;
    };
    std::string where;
    int tries = 0;
    while (crossing(c, where)) {
        if (fixed_path || ++tries > 40)
            fail(ErrorKind::contour, "path Im k = " + std::to_string(c) + " crosses a branch cut (" + where + ")");
        c *= 0.5;
    }

    // common scale: the largest |A(k) A*(k_p^-) e^{-2xa}| along the path
    auto log_pair = [&](cplx k) { return ker.log_A(k) + ker.log_A_star(ker.kp(k, p)); };
    double scale = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i)
        scale = std::max(scale, log_pair(cplx(ulo + (uhi - ulo) * i / 400, c)).real());
    scale -= 2 * x * a;

    auto full_integrand = [&](double u) -> cplx {
        const cplx k(u, c);
        cplx Kk;
        const cplx q = ker.kp(k, p, &Kk);
        const cplx Kq = 2 * p - Kk;
        const cplx frac = k * (2 * p - Kk) / ((k + Kk) * (k + Kq));
        return frac * std::exp(ker.log_A(k) + ker.log_A_star(q) + cplx(0, 2) * x * (Kk - p) - scale);
    };
    auto simple_integrand = [&](double u) -> cplx {
        const cplx k(u, c);
        return k * std::exp(log_pair(k) - 2 * x * a - scale);
    };
    const cplx I_full = integrate_gk<cplx>(full_integrand, ulo, uhi, opt.rel_tol).value;
    const cplx I_simple = integrate_gk<cplx>(simple_integrand, ulo, uhi, opt.rel_tol).value;
    const double pref = 16 / a;
    StepDensitySample out;
    out.full = 16 * I_full.real();
    out.simplified = pref * (std::polar(1.0, -2 * x * p) * I_simple).imag();
    out.envelope = pref * std::abs(I_simple);
    out.contour_offset = c;
    out.log_scale = scale;
    return out;
}

StepDensityGrid step_initial_density(const GaussianPacket& packet, double V0, const Grid1D& xg,
                                     const Grid1D& pg, const StepDensityOptions& opt, GateMode mode)
{
    StepDensityGrid g{PhaseSpaceDensity2D(xg, pg), PhaseSpaceDensity2D(xg, pg)};
    std::vector<double> scales(xg.n * pg.n);
    g.log_scale = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xg.n; ++i)
        for (std::size_t j = 0; j < pg.n; ++j) {
            const auto s = step_initial_density(packet, V0, xg[i], pg[j], opt, mode);
            g.full(i, j) = s.full;
            g.simplified(i, j) = s.simplified;
            scales[i * pg.n + j] = s.log_scale;
            g.log_scale = std::max(g.log_scale, s.log_scale);
        }
    for (std::size_t n = 0; n < scales.size(); ++n) {
        const double r = std::exp(scales[n] - g.log_scale);
        g.full.samples[n] *= r;
        g.simplified.samples[n] *= r;
    }
    return g;
}

TunnelKinematics step_stationary_points(const GaussianPacket& packet, double V0, double t, GateMode mode)
{
    packet.validate();
    if (!(V0 > 0))
        fail(ErrorKind::config, "step height V0 must be positive");
    step_gate(packet, V0, mode);
    const double x0 = packet.x0, p0 = packet.p0, d2 = packet.delta * packet.delta;
    const double a = std::sqrt(2 * V0);
    const double D4t2 = d2 * d2 + t * t;
    TunnelKinematics k{};
    k.k_st = cplx(p0 * d2, -x0) / cplx(d2, t);
    k.p_st = d2 * (-p0 * d2 * d2 + t * x0) * (x0 + t * p0) / (a * D4t2 * D4t2);
    k.v_tunn = k.p_st;
    k.x_tunn = 1 / a;
    k.t_tunn = k.x_tunn / k.v_tunn;
    k.t_tunn_simplified = -d2 / (p0 * x0);
    k.p_st_prose = -p0 * x0 / std::sqrt(V0);
    return k;
}

// ---- delta -------------------------------------------------------------------

ScatteringCoefficients delta_scattering_coefficients(double k, double W0)
{
    const cplx den(k, W0);
    return {cplx(0, -W0) / den, k / den};
}

double delta_rho0(const GaussianPacket& packet, double W0, double x, double p)
{
    const double d2 = packet.delta * packet.delta;
    const double dx = x - packet.x0, dp = p - packet.p0;
    return std::exp(-d2 * dp * dp - dx * dx / d2) * (2 * dx * dx + 2 * d2 * d2 * p * p - d2) /
           (2 * pi * W0 * W0 * d2 * d2);
}

double delta_probability(const GaussianPacket& packet, double W0, double x, double t)
{
    const double d2 = packet.delta * packet.delta;
    const double D = d2 * d2 + t * t;
    const double dx = x - packet.x0;
    const double s = dx - packet.p0 * t;
    return d2 * (dx * dx + d2 * d2 * packet.p0 * packet.p0) / (std::sqrt(pi * d2) * W0 * W0 * std::pow(D, 1.5)) *
           std::exp(-d2 * s * s / D);
}

DeltaTransmitted delta_transmitted_density(const GaussianPacket& packet, double W0, double t, const Grid1D& xg,
                                           const Grid1D& pg, GateMode mode)
{
    packet.validate();
    if (!(W0 > 0))
        fail(ErrorKind::config, "delta strength W0 must be positive");
    delta_gate(packet, W0, mode);
    DeltaTransmitted out;
    out.rho = sample_density([&](double x, double p) { return delta_rho0(packet, W0, x - p * t, p); }, xg, pg);
    out.P = {xg, std::vector<double>(xg.n)};
    for (std::size_t i = 0; i < xg.n; ++i)
        out.P.samples[i] = delta_probability(packet, W0, xg[i], t);
    return out;
}

} // namespace phaseflow
