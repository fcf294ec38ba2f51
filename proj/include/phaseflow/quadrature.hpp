#pragma once

#include "phaseflow/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

namespace phaseflow {

template <class T>
struct QuadResult {
    T value{};
    double error = 0;
    double l1 = 0;  // integral of |f|
    std::size_t panels = 0;
};

// Globally adaptive 21-point Gauss-Kronrod (nodes from Boost.Math). The
// stopping rule is error <= rel_tol * max(|I|, L1), i.e. relative to the
// integral of |f|, so cancelling oscillatory integrands terminate. Errors
// below 1e-290 count as converged (the integrand has underflowed).
template <class T, class F>
QuadResult<T> integrate_gk(F&& f, double a, double b, double rel_tol = 1e-8, std::size_t max_panels = 4000)
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    static const auto& xk = GK::abscissa();
    static const auto& wk = GK::weights();
    static const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();

    struct Panel {
        double a, b;
        T value;
        double err, l1;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto eval = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        T k = f(c) * wk[0];
        T g{};
        double l1 = std::abs(f(c)) * wk[0];
        // boost lists the centre first; the Gauss nodes sit at odd indices
        for (std::size_t i = 1; i < xk.size(); ++i) {
            const T fp = f(c + h * xk[i]);
            const T fm = f(c - h * xk[i]);
            k += (fp + fm) * wk[i];
            l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
            if (i % 2 == 1)
                g += (fp + fm) * wg[i / 2];
        }
        Panel p{lo, hi, k * h, 0, l1 * std::abs(h)};
        p.err = std::abs((k - g) * h);
        return p;
    };

    std::priority_queue<Panel> q;
    Panel first = eval(a, b);
    T total = first.value;
    double err = first.err, l1 = first.l1;
    q.push(first);
    std::size_t panels = 1;
    while (err > std::max(rel_tol * std::max(std::abs(total), l1), 1e-290)) {
        if (panels >= max_panels)
            fail(ErrorKind::integration, "adaptive quadrature did not converge (error " + std::to_string(err) +
                                             ", scale " + std::to_string(std::max(std::abs(total), l1)) + ")");
        Panel worst = q.top();
        q.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = eval(worst.a, mid), r = eval(mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        l1 += l.l1 + r.l1 - worst.l1;
        q.push(l);
        q.push(r);
        ++panels;
    }
    return {total, err, l1, panels};
}

} // namespace phaseflow
