#ifndef LEVYHK_LOGSPACE_HPP
#define LEVYHK_LOGSPACE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "levyhk/quadrature.hpp"

namespace levyhk::quad {

// Integral of exp(E(v)) dv over (lo, hi) in v = log u, where E is an
// overflow-safe log-integrand (returns -inf where the integrand vanishes).
// Infinite endpoints are folded to [0,1) by v = v0 +/- tau/(1-tau); the GK
// nodes are interior so tau = 1 is never evaluated. `anchors` are finite
// reference points (kinks, characteristic scales) used to seed segments.
template <class E>
double integrate_logspace(const E& e, double lo, double hi,
                          std::vector<double> anchors, const Options& opt = {}) {
    auto g = [&e](double v) {
        const double x = e(v);
        return x > -700.0 ? std::exp(x) : 0.0;
    };
    std::vector<double> pts;
    if (std::isfinite(lo)) pts.push_back(lo);
    for (double a : anchors)
        if (a > lo && a < hi && std::isfinite(a)) pts.push_back(a);
    if (std::isfinite(hi)) pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) pts.push_back(0.0);

    // Integrand is non-negative, so per-piece relative control is global.
    double total = 0.0;
    std::vector<double> seg;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Result r = integrate(g, pts[i], pts[i + 1], opt);
        seg.push_back(r.value);
        total += r.value;
    }
    double tail_lo = 0.0, tail_hi = 0.0;
    if (lo == -inf) {
        const double v0 = pts.front();
        auto f = [&](double tau) {
            const double s = 1.0 - tau;
            // a convergent integrand vanishes as v -> -inf; non-finite
            // values deep in the fold are overflow artifacts of the density
            // callable (genuine divergence is screened before integrating)
            const double gv = g(v0 - tau / s);
            return std::isfinite(gv) ? gv / (s * s) : 0.0;
        };
        tail_lo = integrate(f, 0.0, 1.0, opt).value;
        total += tail_lo;
    }
    if (hi == inf) {
        const double v1 = pts.back();
        auto f = [&](double tau) {
            const double s = 1.0 - tau;
            const double gv = g(v1 + tau / s);
            return std::isfinite(gv) ? gv / (s * s) : 0.0;
        };
        tail_hi = integrate(f, 0.0, 1.0, opt).value;
        total += tail_hi;
    }
    return total;
}

}  // namespace levyhk::quad

#endif
