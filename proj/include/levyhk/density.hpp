#ifndef LEVYHK_DENSITY_HPP
#define LEVYHK_DENSITY_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "levyhk/characteristics.hpp"
#include "levyhk/radial_table.hpp"

namespace levyhk {

struct InversionSettings {
    double tail_epsilon = 1e-10;  // truncation criterion on e^{-t Psi*}
    int panel_budget = 50000;
    double rel_tol = 1e-9;
    int points_per_decade = 64;  // exponent tabulation density along rays
    int angular = 0;             // 0 = auto (polar path for anisotropic models)
};

struct DensityGrid {
    double t = 0.0;
    std::vector<Vector> points;
    std::vector<double> values;
    Vector center;
};

// Fourier inversion engine for p(t,x) = (2pi)^-d int e^{-i<x,z>} e^{-t Psi(z)} dz.
// The exponent is tabulated per ray (pchip in log coordinates, exact for pure
// power laws) and interpolated inside the inversion integrand. Isotropic
// models use the radial Bessel-kernel path with panels between kernel zeros
// and series acceleration; the rest go through polar tensor quadrature.
// All formulations fold conjugate symmetry analytically, so the imaginary
// residual of the inversion is identically zero by construction.
class DensityEngine {
public:
    DensityEngine(const Characteristics& ch, double t, InversionSettings st = {})
        : ch_(&ch), t_(t), st_(st) {
        if (!(t > 0.0)) throw InvalidParameter("t must be positive");
        if (!(st_.tail_epsilon > 0.0 && st_.tail_epsilon <= 1e-6))
            throw InvalidParameter("tail_epsilon must lie in (0, 1e-6]");
        if (!(st_.rel_tol >= 1e-12)) throw InvalidParameter("rel_tol must be >= 1e-12");
        const auto& m = ch.model();
        dim_ = m.dim;
        // Truncate where t Re Psi > L, using Re Psi >= h(1/|z|)/(8(1+2d)).
        const double L = std::max(45.0, -std::log(st_.tail_epsilon) + 5.0);
        try {
            radius_ = 1.0 / ch.invert_h(L * 8.0 * (1.0 + 2.0 * dim_) / t);
        } catch (const BracketFailure&) {
            throw Error("not-integrable",
                        "e^{-t Re Psi} has no summable truncation radius at t=" +
                            std::to_string(t));
        }
        if (radius_ > 1e9)
            throw Error("not-integrable",
                        "truncation radius beyond budget (" + std::to_string(radius_) +
                            "); density not resolvable at this t");
        iso_path_ = m.isotropic_jumps();
        hinv_ = ch.invert_h(1.0 / t);
        if (iso_path_) {
            rays_.push_back(build_ray(unit(0)));
        } else {
            const int M = st_.angular > 0 ? st_.angular : (dim_ == 1 ? 2 : (dim_ == 2 ? 64 : 128));
            ray_dirs_ = sphere_directions(dim_, M);
            for (const auto& u : ray_dirs_) rays_.push_back(build_ray(u));
        }
    }

    double t() const { return t_; }
    double truncation_radius() const { return radius_; }
    double h_inv_1t() const { return hinv_; }
    double imaginary_residual() const { return 0.0; }

    double at(const Vector& x) const {
        check_dim(x);
        if (iso_path_) {
            // symmetric isotropic jumps: drift only shifts the density.
            Vector y(dim_);
            for (int j = 0; j < dim_; ++j) y[j] = x[j] - t_ * ch_->model().drift[j];
            return radial_bessel(norm2(y));
        }
        if (dim_ == 1) return line_inversion(x[0], 0);
        return polar_inversion(x, std::vector<int>(dim_, 0));
    }

    double derivative_at(const Vector& x, const std::vector<int>& beta) const {
        check_dim(x);
        if (static_cast<int>(beta.size()) != dim_)
            throw InvalidParameter("multi-index size must equal dim");
        int k = 0;
        for (int b : beta) {
            if (b < 0) throw InvalidParameter("multi-index must be non-negative");
            k += b;
        }
        if (k > 4) throw InvalidParameter("|beta| <= 4 supported");
        if (k == 0) return at(x);
        if (dim_ == 1) return line_inversion(x[0], k);
        ensure_polar_rays();
        return polar_inversion(x, beta);
    }

    struct Sup {
        double value = 0.0;
        Vector argmax;
        bool on_boundary = false;
    };

    // Coarse scan over |x - center| <= 4 h^-1(1/t) along rays, then ternary
    // refinement along the best ray.
    Sup sup(const Vector& center) const {
        check_dim(center);
        const double span = 4.0 * hinv_;
        const auto rays = dim_ == 1 ? sphere_directions(1, 2)
                                    : sphere_directions(dim_, dim_ == 2 ? 16 : 32);
        Sup best;
        best.argmax = center;
        best.value = at(center);
        Vector x(dim_);
        const Vector* best_ray = nullptr;
        double best_s = 0.0;
        for (const auto& u : rays) {
            for (int i = 1; i <= 20; ++i) {
                const double s = span * i / 20.0;
                for (int j = 0; j < dim_; ++j) x[j] = center[j] + s * u[j];
                const double v = at(x);
                if (v > best.value) {
                    best.value = v;
                    best.argmax = x;
                    best_ray = &u;
                    best_s = s;
                }
            }
        }
        if (best_ray) {
            double a = std::max(0.0, best_s - span / 20.0), b = std::min(span, best_s + span / 20.0);
            for (int it = 0; it < 25; ++it) {
                const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                const double v1 = eval_along(center, *best_ray, m1);
                const double v2 = eval_along(center, *best_ray, m2);
                if (v1 < v2) a = m1; else b = m2;
            }
            const double s = 0.5 * (a + b);
            for (int j = 0; j < dim_; ++j) best.argmax[j] = center[j] + s * (*best_ray)[j];
            best.value = eval_along(center, *best_ray, s);
            best.on_boundary = s > span * 0.999;
        }
        return best;
    }

    DensityGrid grid(const std::vector<Vector>& points, const Vector& center) const {
        DensityGrid g;
        g.t = t_;
        g.center = center;
        g.points = points;
        Vector x(dim_);
        for (const auto& p : points) {
            for (int j = 0; j < dim_; ++j) x[j] = p[j] + center[j];
            g.values.push_back(at(x));
        }
        return g;
    }

private:
    struct Ray {
        RadialTable log_re;
        RadialTable im_jump;  // jump contribution only; drift folded analytically
        bool has_im = false;
        double drift_slope = 0.0;  // <u, b>
    };

    Vector unit(int axis) const {
        Vector u(dim_, 0.0);
        u[axis] = 1.0;
        return u;
    }

    void check_dim(const Vector& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw InvalidParameter("point dimension mismatch");
    }

    Ray build_ray(const Vector& u) const {
        Ray ray;
        ray.drift_slope = dot(u, ch_->model().drift);
        ray.has_im = !(ch_->model().symmetric || ch_->model().isotropic_jumps());
        const double s_hi = radius_ * 1.3 + 10.0;
        const double l0 = std::log(1e-8), l1 = std::log(s_hi);
        const int n =
            static_cast<int>(std::ceil((l1 - l0) / std::log(10.0) * st_.points_per_decade)) + 1;
        std::vector<double> g, lre, imv;
        Vector z(dim_);
        for (int i = 0; i < n; ++i) {
            const double ls = l0 + (l1 - l0) * i / (n - 1);
            const double s = std::exp(ls);
            for (int j = 0; j < dim_; ++j) z[j] = s * u[j];
            const ComplexExponent e = ch_->psi(z);
            g.push_back(ls);
            lre.push_back(std::log(std::max(e.re, 1e-300)));
            if (ray.has_im) imv.push_back(e.im + s * ray.drift_slope);  // jump part only
        }
        ray.log_re = RadialTable(g, lre, RadialTable::Direction::Free);
        if (ray.has_im) ray.im_jump = RadialTable(std::move(g), std::move(imv),
                                                  RadialTable::Direction::Free);
        return ray;
    }

    double re_at(const Ray& r, double s) const { return std::exp(r.log_re(std::log(s))); }

    // Kernel zeros polished by bisection: the asymptotic seeds are only ~1e-3
    // accurate for the first Bessel zeros, which would bias the head/tail
    // split of the radial path.
    double kernel_zero(int k) const {
        if (dim_ != 2) return angular_kernel_zero(dim_, k);
        const int idx = k - 1;
        while (static_cast<int>(zeros_.size()) <= idx) {
            const int j = static_cast<int>(zeros_.size()) + 1;
            double lo = angular_kernel_zero(2, j) - 0.4, hi = lo + 0.8;
            auto f = [&](double u) { return angular_cos_kernel(2, u); };
            double flo = f(lo);
            for (int it = 0; it < 8 && f(hi) * flo > 0.0; ++it) {
                lo -= 0.2; hi += 0.2; flo = f(lo);
            }
            for (int it = 0; it < 70; ++it) {
                const double m = 0.5 * (lo + hi);
                if (m == lo || m == hi) break;
                (f(m) * flo > 0.0 ? lo : hi) = m;
            }
            zeros_.push_back(0.5 * (lo + hi));
        }
        return zeros_[idx];
    }

    double im_at(const Ray& r, double s) const {
        double v = -s * r.drift_slope;
        if (r.has_im) v += r.im_jump(std::log(s));
        return v;
    }

    // p(t,|y|) for symmetric isotropic models:
    // (2pi)^-d omega_d int_0^inf e^{-t psi(s)} Phi_d(s r) s^{d-1} ds.
    double radial_bessel(double r) const {
        const Ray& ray = rays_[0];
        const double norm = std::pow(2.0 * pi, -dim_) * sphere_surface(dim_);
        quad::Options opt;
        opt.abs_tol = 0.0;
        opt.rel_tol = 0.1 * st_.rel_tol;
        opt.max_panels = st_.panel_budget;
        const double z1 = kernel_zero(1);
        const double head_hi =
            r > 0.0 ? std::min(std::log(z1 / r), std::log(radius_) + 0.7)
                    : std::log(radius_) + 0.7;
        auto e_head = [&](double v) {
            const double s = std::exp(v);
            const double k = r > 0.0 ? angular_cos_kernel(dim_, s * r) : 1.0;
            if (k <= 0.0) return -inf;
            return dim_ * v - t_ * re_at(ray, s) + std::log(k);
        };
        double total = quad::integrate_logspace(e_head, -inf, head_hi,
                                                {std::log(hinv_), head_hi}, opt);
        if (r > 0.0 && z1 / r < radius_ * 2.0) {
            auto f = [&](double s) {
                return std::pow(s, dim_ - 1) * std::exp(-t_ * re_at(ray, s)) *
                       angular_cos_kernel(dim_, s * r);
            };
            auto edge = [&](int j) { return kernel_zero(1 + j) / r; };
            total += quad::oscillatory_sum(f, edge, 0.1 * st_.rel_tol, 4000);
        }
        return norm * total;
    }

    // d=1 general path: (1/pi) int_0^R s^k e^{-t Re} cos(s x + t Im + k pi/2) ds.
    double line_inversion(double x, int k) const {
        return single_ray_cos(rays_[0], x, k, 1, 0) / pi;
    }

    // Isotropic models build one ray; derivatives in d > 1 go through the
    // polar path, which reuses that exponent table per direction (only the
    // drift projection differs).
    void ensure_polar_rays() const {
        if (!ray_dirs_.empty()) return;
        const int M = st_.angular > 0 ? st_.angular : (dim_ == 2 ? 64 : 128);
        ray_dirs_ = sphere_directions(dim_, M);
        std::vector<Ray> r;
        for (const auto& u : ray_dirs_) {
            Ray copy = rays_[0];
            copy.drift_slope = dot(u, ch_->model().drift);
            r.push_back(std::move(copy));
        }
        rays_ = std::move(r);
    }

    // One oscillatory half-line integral int_0^R s^{d-1+k} e^{-t Re} cos(...).
    double single_ray_cos(const Ray& ray, double xproj, int k, int d_eff, int extra_pow) const {
        const double R = radius_ * 1.2;
        const double phase_span =
            std::abs(xproj) * R + t_ * std::abs(im_at(ray, R)) + 1.0;
        const int segments =
            std::min(4096, std::max(64, static_cast<int>(phase_span / (2.0 * pi) / 4.0)));
        quad::Options opt;
        opt.abs_tol = 1e-14;
        opt.rel_tol = st_.rel_tol;
        opt.max_panels = std::max(200, st_.panel_budget / segments);
        auto f = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double amp = std::pow(s, d_eff - 1 + k + extra_pow) *
                               std::exp(-t_ * re_at(ray, s));
            return amp * std::cos(s * xproj + t_ * im_at(ray, s) + k * pi / 2.0);
        };
        double total = 0.0;
        for (int i = 0; i < segments; ++i) {
            const double a = R * i / segments, b = R * (i + 1) / segments;
            total += quad::integrate(f, a, b, opt).value;
        }
        return total;
    }

    // Polar tensor quadrature for anisotropic models (and derivatives in d>1):
    // (2pi)^-d sum_u w_u int_0^R s^{d-1} (s u)^beta e^{-t Re_u} cos(phase+|beta|pi/2).
    double polar_inversion(const Vector& x, const std::vector<int>& beta) const {
        int k = 0;
        for (int b : beta) k += b;
        const double xn = norm2(x);
        if (xn * radius_ > 2.0 * pi * rays_.size())
            throw Error("oscillation-budget-exceeded",
                        "|x| R exceeds the angular resolution of the polar path");
        const double w = sphere_surface(dim_) / static_cast<double>(rays_.size());
        double total = 0.0;
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            const auto& u = ray_dirs_[i];
            double ang = 1.0;
            for (int j = 0; j < dim_; ++j)
                for (int b = 0; b < beta[j]; ++b) ang *= u[j];
            if (ang == 0.0) continue;
            total += w * ang * single_ray_cos(rays_[i], dot(x, u), k, dim_, 0);
        }
        return std::pow(2.0 * pi, -dim_) * total;
    }

    double eval_along(const Vector& c, const Vector& u, double s) const {
        Vector x(dim_);
        for (int j = 0; j < dim_; ++j) x[j] = c[j] + s * u[j];
        return at(x);
    }

    const Characteristics* ch_;
    double t_;
    InversionSettings st_;
    int dim_ = 1;
    double radius_ = 0.0;
    double hinv_ = 0.0;
    bool iso_path_ = true;
    mutable std::vector<double> zeros_;
    mutable std::vector<Vector> ray_dirs_;
    mutable std::vector<Ray> rays_;
};

inline double density_at(const LevyModel& m, double t, const Vector& x,
                         InversionSettings st = {}) {
    Characteristics ch(m);
    return DensityEngine(ch, t, st).at(x);
}

}  // namespace levyhk

#endif
