#include "phaseflow/interference.hpp"

#include "phaseflow/errors.hpp"
#include "phaseflow/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phaseflow {

void TwoSlitConfig::validate() const
{
    if (!(y0 > 0) || !(delta > 0))
        fail(ErrorKind::config, "two-slit requires y0 > 0 and delta > 0");
    if (y0 < 3 * delta)
        fail(ErrorKind::config, "slits overlap: y0 must be >= 3*delta (got y0=" + std::to_string(y0) +
                                    ", delta=" + std::to_string(delta) + ")");
    if (!(X > 0) || !(t > 0))
        fail(ErrorKind::config, "two-slit requires X > 0 and t > 0");
    if (kick && !(kick->T > 0))
        fail(ErrorKind::config, "kick duration T must be positive");
}

double two_slit_norm2(const TwoSlitConfig& cfg)
{
    return 2 * cfg.delta * std::sqrt(pi) * (1 + std::exp(-cfg.y0 * cfg.y0 / (cfg.delta * cfg.delta)));
}

cplx two_slit_amplitude(const TwoSlitConfig& cfg, double y)
{
    const double d2 = 2 * cfg.delta * cfg.delta;
    const double a = y - cfg.y0, b = y + cfg.y0;
    return (std::exp(-a * a / d2) + std::exp(-b * b / d2)) / std::sqrt(two_slit_norm2(cfg));
}

cplx two_slit_amplitude(const TwoSlitConfig& cfg, double y, double t)
{
    const cplx w(cfg.delta * cfg.delta, t);
    const cplx pref = cfg.delta / std::sqrt(w);
    const double a = y - cfg.y0, b = y + cfg.y0;
    return pref * (std::exp(-a * a / (2.0 * w)) + std::exp(-b * b / (2.0 * w))) /
           std::sqrt(two_slit_norm2(cfg));
}

DensityFn two_slit_initial_density(const TwoSlitConfig& cfg, Lobe lobe)
{
    cfg.validate();
    const double D = cfg.delta, y0 = cfg.y0;
    const double scale = D / (std::sqrt(pi) * two_slit_norm2(cfg));
    return [=](double y, double p) {
        const double mom = std::exp(-p * p * D * D);
        double s = 0;
        if (lobe != Lobe::interference) {
            const double a = y - y0, b = y + y0;
            s += std::exp(-a * a / (D * D)) + std::exp(-b * b / (D * D));
        }
        if (lobe != Lobe::direct)
            s += 2 * std::cos(2 * p * y0) * std::exp(-y * y / (D * D));
        return scale * s * mom;
    };
}

namespace {

double section_terms(const TwoSlitConfig& cfg, double y, double y_int)
{
    const double D2 = cfg.delta * cfg.delta;
    const double S = cfg.spread();
    const double a = y - cfg.y0, b = y + cfg.y0;
    const double direct = std::exp(-D2 * a * a / S) + std::exp(-D2 * b * b / S);
    const double inter = 2 * std::cos(2 * cfg.t * y_int * cfg.y0 / S) *
                         std::exp(-D2 * (y_int * y_int + cfg.y0 * cfg.y0) / S);
    const double pref = cfg.delta / (std::sqrt(pi) * two_slit_norm2(cfg)) * std::sqrt(pi * D2 / S);
    return pref * (direct + inter);
}

} // namespace

double two_slit_section(const TwoSlitConfig& cfg, double y)
{
    return section_terms(cfg, y, y);
}

double ab_section(const TwoSlitConfig& cfg, double y)
{
    if (!cfg.kick)
        return two_slit_section(cfg, y);
    const double k = cfg.kick->h0 * cfg.kick->T * cfg.v0;
    return section_terms(cfg, y, y + 0.5 * k * cfg.kick->T);
}

std::vector<double> ScreenPattern::row_z(double z) const
{
    const std::size_t k = zgrid.index_of(z);
    std::vector<double> r(ygrid.n);
    for (std::size_t i = 0; i < ygrid.n; ++i)
        r[i] = at(i, k);
    return r;
}

double fringe_period(const TwoSlitConfig& cfg)
{
    return pi * cfg.spread() / (cfg.t * cfg.y0);
}

double ab_shift(const TwoSlitConfig& cfg)
{
    if (!cfg.kick)
        return 0;
    return -cfg.kick->h0 * cfg.kick->T * cfg.kick->T * cfg.X / (2 * cfg.t);
}

namespace {

ScreenPattern evaluate_pattern(const TwoSlitConfig& cfg, const Grid1D& yg, const Grid1D& zg, double h0,
                               double T)
{
    cfg.validate();
    const double D2 = cfg.delta * cfg.delta;
    const double S = cfg.spread();
    const double dx = cfg.X - cfg.t * cfg.v0;
    ScreenPattern out;
    out.ygrid = yg;
    out.zgrid = zg;
    out.values.resize(yg.n * zg.n);
    const double pref = std::pow(S, -1.5);
    for (std::size_t i = 0; i < yg.n; ++i) {
        const double y = yg[i];
        const double ch = std::cosh(2 * D2 * y * cfg.y0 / S);
        const double cs = std::cos((2 * cfg.t * y + h0 * T * T * cfg.X) * cfg.y0 / S) *
                          std::exp(-D2 * T * T * h0 * cfg.v0 * y / S);
        for (std::size_t k = 0; k < zg.n; ++k) {
            const double z = zg[k];
            const double env = std::exp(-D2 * (dx * dx + y * y + cfg.y0 * cfg.y0 + z * z) / S);
            out.values[i * zg.n + k] = std::max(0.0, pref * (ch + cs) * env);
        }
    }
    out.period = fringe_period(cfg);
    const double hv = h0 * cfg.v0;
    out.damping_toward = hv > 0 ? "+y" : (hv < 0 ? "-y" : "none");
    return out;
}

} // namespace

ScreenPattern two_slit_pattern(const TwoSlitConfig& cfg, const Grid1D& yg, const Grid1D& zg)
{
    return evaluate_pattern(cfg, yg, zg, 0, 0);
}

ScreenPattern ab_pattern(const TwoSlitConfig& cfg, const Grid1D& yg, const Grid1D& zg)
{
    if (!cfg.kick)
        fail(ErrorKind::config, "ab_pattern needs a kick");
    if (std::abs(cfg.kick->h0 * cfg.kick->T) > 0.1)
        warn("magnetic kick outside the weak-kick regime (|h0 T| > 0.1)");
    auto out = evaluate_pattern(cfg, yg, zg, cfg.kick->h0, cfg.kick->T);
    out.shift = ab_shift(cfg);
    return out;
}

namespace {

std::size_t count_extrema(const std::vector<double>& v)
{
    std::size_t c = 0;
    double prev = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        if (d == 0)
            continue;
        if (prev != 0 && (d > 0) != (prev > 0))
            ++c;
        prev = d;
    }
    return c;
}

double parabolic_offset(double a, double b, double c)
{
    const double den = a - 2 * b + c;
    return den == 0 ? 0.0 : 0.5 * (a - c) / den;
}

struct Band {
    std::size_t N = 0;
    double kf = 0;  // fringe frequency in FFT bins
};

Band find_band(const std::vector<double>& v)
{
    const std::size_t n = v.size();
    Band b;
    b.N = good_fft_size(2 * n);
    FftBuffer buf(b.N);
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = v[i];
    buf.forward();
    const std::size_t half = b.N / 2;
    std::size_t k = 1;
    while (k + 1 < half && std::abs(buf[k + 1]) < std::abs(buf[k]))
        ++k;
    std::size_t best = 0;
    double bestv = 0;
    for (std::size_t j = k + 1; j < half; ++j)
        if (std::abs(buf[j]) > bestv) {
            bestv = std::abs(buf[j]);
            best = j;
        }
    if (best == 0)
        fail(ErrorKind::metric_unavailable, "no fringe frequency above the envelope");
    b.kf = static_cast<double>(best);
    return b;
}

std::vector<double> bandpass(const std::vector<double>& v, const Band& band)
{
    const std::size_t n = v.size();
    FftBuffer buf(band.N);
    for (std::size_t i = 0; i < n; ++i)
        buf[i] = v[i];
    buf.forward();
    for (std::size_t k = 0; k < band.N; ++k) {
        const double kk = static_cast<double>(k <= band.N / 2 ? k : band.N - k);
        const double r = kk / band.kf;
        double w = 0;
        if (r >= 0.6 && r <= 1.4)
            w = 1;
        else if (r > 0.4 && r < 0.6)
            w = 0.5 - 0.5 * std::cos(pi * (r - 0.4) / 0.2);
        else if (r > 1.4 && r < 1.6)
            w = 0.5 + 0.5 * std::cos(pi * (r - 1.4) / 0.2);
        buf[k] *= w / static_cast<double>(band.N);
    }
    buf.backward();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = buf[i].real();
    return out;
}

} // namespace

FringeMetrics fringe_metrics(const Grid1D& yg, const std::vector<double>& values,
                             const std::vector<double>* reference)
{
    const std::size_t n = values.size();
    if (n != yg.n)
        fail(ErrorKind::config, "pattern row does not match its grid");
    if (n < 5 || count_extrema(values) < 3)
        fail(ErrorKind::metric_unavailable, "fewer than three extrema along y");
    const double h = yg.spacing();

    const Band band = find_band(reference ? *reference : values);
    const auto sf = bandpass(values, band);

    FringeMetrics m;
    double peak = 0;
    for (double s : sf)
        peak = std::max(peak, std::abs(s));
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (sf[i] > sf[i - 1] && sf[i] >= sf[i + 1] && sf[i] > 0.2 * peak)
            maxima.push_back(yg[i] + h * parabolic_offset(sf[i - 1], sf[i], sf[i + 1]));
    if (maxima.size() < 2)
        fail(ErrorKind::metric_unavailable, "fewer than two fringe maxima");
    m.period = (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);

    if (reference) {
        if (reference->size() != n)
            fail(ErrorKind::config, "reference row size differs");
        const auto rf = bandpass(*reference, band);
        const std::size_t N = good_fft_size(2 * n);
        FftBuffer a(N), b(N);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rf[i];
            b[i] = sf[i];
        }
        a.forward();
        b.forward();
        for (std::size_t k = 0; k < N; ++k)
            b[k] *= std::conj(a[k]);
        b.backward();
        // c(tau) = sum_y r(y) s(y + tau); lag index wraps for negative tau
        std::size_t best = 0;
        double bestv = -1e300;
        for (std::size_t k = 0; k < N; ++k)
            if (b[k].real() > bestv) {
                bestv = b[k].real();
                best = k;
            }
        const double c0 = b[(best + N - 1) % N].real(), c2 = b[(best + 1) % N].real();
        const double lag = (best <= N / 2 ? static_cast<double>(best) : static_cast<double>(best) - N) +
                           parabolic_offset(c0, bestv, c2);
        m.shift = lag * h;
    }

    // visibility over the central three fringes around the brightest sample
    const std::size_t ic = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    const double yc = yg[ic];
    double vmax = -1e300, vmin = 1e300;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(yg[i] - yc) <= 1.5 * m.period) {
            vmax = std::max(vmax, values[i]);
            vmin = std::min(vmin, values[i]);
        }
    m.visibility = (vmax + vmin) > 0 ? (vmax - vmin) / (vmax + vmin) : 0;
    return m;
}

FringeMetrics fringe_metrics(const ScreenPattern& pattern, const ScreenPattern* reference)
{
    const auto row = pattern.row_z(0.0);
    if (!reference)
        return fringe_metrics(pattern.ygrid, row);
    const auto ref = reference->row_z(0.0);
    return fringe_metrics(pattern.ygrid, row, &ref);
}

} // namespace phaseflow
