#ifndef LEVYHK_QUADRATURE_HPP
#define LEVYHK_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "levyhk/common.hpp"

namespace levyhk::quad {

// Gauss-Kronrod 15(7) nodes and weights on [-1,1] (QUADPACK qk15).
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
PanelResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = h * gk15_x[j];
        double fv;
        if (j == 7) {
            fv = f(c);
            resk += gk15_wk[7] * fv;
            resg += gk15_wg[3] * fv;
        } else {
            fv = f(c - dx) + f(c + dx);
            resk += gk15_wk[j] * fv;
            if (j % 2 == 1) resg += gk15_wg[j / 2] * fv;
        }
    }
    PanelResult r;
    r.value = resk * h;
    r.error = std::abs((resk - resg) * h);
    return r;
}

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_panels = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = true;
};

// Globally adaptive bisection driven by the largest panel error.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    Result out;
    if (a == b) return out;
    std::priority_queue<Panel> heap;
    PanelResult first = gk15(f, a, b);
    heap.push({a, b, first.value, first.error});
    double total = first.value, toterr = first.error;
    int n = 1;
    while (toterr > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && n < opt.max_panels) {
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (m == p.a || m == p.b) {  // interval exhausted at double precision
            heap.push({p.a, p.b, p.value, 0.0});
            toterr -= p.error;
            continue;
        }
        PanelResult l = gk15(f, p.a, m), r = gk15(f, m, p.b);
        total += l.value + r.value - p.value;
        toterr += l.error + r.error - p.error;
        heap.push({p.a, m, l.value, l.error});
        heap.push({m, p.b, r.value, r.error});
        ++n;
    }
    out.value = total;
    out.error = toterr;
    out.panels = n;
    out.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::max(std::abs(total), 1e-300));
    return out;
}

template <class F>
double integrate_or_throw(const F& f, double a, double b, const Options& opt = {}) {
    Result r = integrate(f, a, b, opt);
    if (!r.converged)
        throw QuadratureFailure("adaptive refinement could not meet tolerance on [" +
                                std::to_string(a) + "," + std::to_string(b) + "]");
    return r.value;
}

// Iterated Aitken delta-squared extrapolation of a sequence of partial sums.
inline double aitken_limit(std::vector<double> s) {
    while (s.size() >= 3) {
        std::vector<double> t;
        t.reserve(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            const double d1 = s[i + 1] - s[i];
            const double d2 = s[i + 2] - s[i + 1];
            const double den = d2 - d1;
            if (std::abs(den) < 1e-300 * (std::abs(d1) + std::abs(d2)) || den == 0.0) {
                t.push_back(s[i + 2]);
            } else {
                t.push_back(s[i + 2] - d2 * d2 / den);
            }
        }
        if (t.size() < 3) return t.back();
        // Stop once the transformed sequence has settled.
        if (std::abs(t.back() - s.back()) <=
            1e-15 * std::max(1e-300, std::abs(t.back())))
            return t.back();
        s = std::move(t);
    }
    return s.back();
}

// Sum of integrals over consecutive panels [x_k, x_{k+1}) whose contributions
// eventually alternate in sign (oscillatory tails). `next_edge(k)` returns the
// k-th panel edge; panels are consumed until the accelerated limit stabilises.
template <class F, class Edges>
double oscillatory_sum(const F& f, const Edges& next_edge, double rel_tol,
                       int max_terms = 400) {
    std::vector<double> partial;
    partial.reserve(64);
    double sum = 0.0;
    double scale = 0.0;
    double prev_est = nan;
    for (int k = 0; k < max_terms; ++k) {
        const double a = next_edge(k), b = next_edge(k + 1);
        Options opt;
        opt.rel_tol = 0.1 * rel_tol;
        opt.abs_tol = 0.0;
        opt.max_panels = 60;
        const double term = integrate(f, a, b, opt).value;
        sum += term;
        partial.push_back(sum);
        scale = std::max(scale, std::abs(sum));
        if (partial.size() >= 6) {
            const double est = aitken_limit(partial);
            if (!std::isnan(prev_est) &&
                std::abs(est - prev_est) <= rel_tol * std::max(scale, std::abs(est)))
                return est;
            prev_est = est;
        }
        if (std::abs(term) <= 1e-2 * rel_tol * std::max(scale, 1e-300) && k > 4)
            return sum;
    }
    return std::isnan(prev_est) ? sum : prev_est;
}

}  // namespace levyhk::quad

#endif
