#ifndef LEVYHK_CHARACTERISTICS_HPP
#define LEVYHK_CHARACTERISTICS_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "levyhk/logspace.hpp"
#include "levyhk/model.hpp"
#include "levyhk/radial_table.hpp"
#include "levyhk/special.hpp"

namespace levyhk {

struct ComplexExponent {
    double re = 0.0;  // <z,Az> + int (1 - cos<z,x>) n(x) dx, always >= 0
    double im = 0.0;  // -<z,b> - int (sin<z,x> - <z,x> 1_{|x|<1}) n(x) dx
};

namespace detail {

// log(1 - Phi_k(w)) from log w, cancellation-free for small arguments via the
// hypergeometric series 1 - Phi_k(w) = sum_{m>=1} (-1)^{m+1} (w^2/4)^m / (m! (k/2)_m).
inline double log_one_minus_kernel(int k, double logw) {
    if (logw < -20.0) return 2.0 * logw - std::log(2.0 * k);
    const double w = std::exp(logw);
    if (w >= 1.0) return std::log(1.0 - angular_cos_kernel(k, w));
    double term = w * w / (2.0 * k);
    double sum = term, sign = -1.0;
    for (int m = 1; m < 40; ++m) {
        term *= w * w / (4.0 * (m + 1) * (0.5 * k + m));
        sum += sign * term;
        if (term < 1e-18 * sum) break;
        sign = -sign;
    }
    return std::log(sum);
}

// log(w - sin w) from log w, for w <= ~0.1.
inline double log_lin_minus_sin(double logw) {
    if (logw < -12.0) return 3.0 * logw - std::log(6.0);
    const double w = std::exp(logw);
    double term = w * w * w / 6.0;
    double sum = term, sign = -1.0;
    for (int m = 1; m < 20; ++m) {
        term *= w * w / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        sum += sign * term;
        if (term < 1e-18 * sum) break;
        sign = -sign;
    }
    return std::log(sum);
}

}  // namespace detail

// Evaluator for h, K, Psi, Psi*, their inverses, b_r and the directional
// quadratic form. Tables are built lazily and then treated as immutable;
// every public evaluation is otherwise pure.
class Characteristics {
public:
    explicit Characteristics(LevyModel model, quad::Options opt = {})
        : model_(std::move(model)), opt_(opt) {
        model_.validate_shape();
        ledge_ = model_.profile.support_log_edge();
        if (!model_.profile.is_zero()) model_.profile.check_monotone();
        dim_ = model_.dim;
        anorm_ = model_.gauss_norm();
        iso_ = model_.isotropic_jumps();
        dirs_ = model_.directions();
        wdir_ = sphere_surface(dim_) / static_cast<double>(dirs_.size());
        if (iso_) {
            Vector e1(dim_, 0.0);
            e1[0] = 1.0;
            zdirs_ = {e1};
            guard_zdirs_ = zdirs_;
        } else {
            zdirs_ = sphere_directions(dim_, dim_ == 1 ? 2 : (dim_ == 2 ? 32 : 128));
            guard_zdirs_ = sphere_directions(dim_, dim_ == 1 ? 2 : (dim_ == 2 ? 8 : 16));
        }
    }

    const LevyModel& model() const { return model_; }
    const quad::Options& options() const { return opt_; }

    // h(r) = r^{-2}||A|| + int (1 ^ |x|^2/r^2) n(x) dx
    double h(double r) const {
        require_positive(r, "r");
        double out = anorm_ / (r * r);
        if (model_.profile.is_zero()) return out;
        const double lr = std::log(r);
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            auto e = [&](double v) {
                return log_weight(i, v) + v + std::min(0.0, 2.0 * (v - lr));
            };
            out += wdir_ * quad::integrate_logspace(e, -inf, inf, breaks({lr}), opt_);
        }
        return out;
    }

    // K(r) = r^{-2}||A|| + r^{-2} int_{|x|<r} |x|^2 n(x) dx
    double K(double r) const {
        require_positive(r, "r");
        double out = anorm_ / (r * r);
        if (model_.profile.is_zero()) return out;
        const double lr = std::log(r);
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            auto e = [&](double v) { return log_weight(i, v) + v + 2.0 * (v - lr); };
            out += wdir_ * quad::integrate_logspace(e, -inf, lr, breaks({lr - 1.0, lr}), opt_);
        }
        return out;
    }

    // n({|x| >= r})
    double tail_mass(double r) const {
        require_positive(r, "r");
        if (model_.profile.is_zero()) return 0.0;
        const double lr = std::log(r);
        double out = 0.0;
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            auto e = [&](double v) { return log_weight(i, v) + v; };
            out += wdir_ * quad::integrate_logspace(e, lr, inf, breaks({lr}), opt_);
        }
        return out;
    }

    // Unique r with h(r) = u (h is strictly decreasing). Bracketed via the
    // tabulated power-law tails, then refined by bisection on direct h.
    double invert_h(double u) const {
        require_positive(u, "u");
        build_h_cache();
        const double lu = std::log(u);
        const auto& g = h_cache_->log_grid();
        const auto& val = h_cache_->values();
        double lo = 0.0, hi = 0.0;
        bool found = false;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            if (val[i] >= lu && lu >= val[i + 1]) {
                lo = g[i];
                hi = g[i + 1];
                found = true;
                break;
            }
        }
        if (!found) {
            // extrapolate along the fitted boundary power law, then widen.
            double guess;
            if (lu > val.front()) {
                const double s = h_cache_->tail_exponent_low();
                guess = s < -1e-12 ? g.front() + (lu - val.front()) / s : g.front() - 10.0;
            } else {
                const double s = h_cache_->tail_exponent_high();
                guess = s < -1e-12 ? g.back() + (lu - val.back()) / s : g.back() + 10.0;
            }
            guess = std::min(300.0, std::max(-300.0, guess));
            double half = 1.0;
            lo = guess - half;
            hi = guess + half;
            int tries = 0;
            while (h(std::exp(lo)) < u) {
                lo -= half *= 2.0;
                if (lo < -320.0 || ++tries > 60)
                    throw BracketFailure("invert_h: u above the resolvable range of h");
            }
            tries = 0;
            while (h(std::exp(hi)) > u) {
                hi += half *= 2.0;
                if (hi > 320.0 || ++tries > 60)
                    throw BracketFailure("invert_h: u below h over the resolvable range");
            }
        } else {
            // the table is interpolated; re-anchor the bracket on direct h.
            const double cell = hi - lo;
            while (h(std::exp(lo)) < u) lo -= cell;
            while (h(std::exp(hi)) > u) hi += cell;
        }
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (lo + hi);
            if (m == lo || m == hi) break;
            (h(std::exp(m)) >= u ? lo : hi) = m;
        }
        return std::exp(0.5 * (lo + hi));
    }

    ComplexExponent psi(const Vector& z) const {
        if (static_cast<int>(z.size()) != dim_)
            throw InvalidParameter("psi: argument dimension mismatch");
        ComplexExponent out;
        out.re = quad_form(model_.A, z);
        out.im = -dot(z, model_.drift);
        const double nz = norm2(z);
        if (nz == 0.0) return {0.0, 0.0};
        if (!model_.profile.is_zero()) {
            if (iso_) {
                out.re += sphere_surface(dim_) * cos_integral(dim_, nz, 0);
            } else {
                for (std::size_t i = 0; i < dirs_.size(); ++i) {
                    const double s = std::abs(dot(z, dirs_[i]));
                    if (s > 0.0) out.re += wdir_ * cos_integral(1, s, i);
                }
            }
            if (!(model_.symmetric || iso_)) {
                for (std::size_t i = 0; i < dirs_.size(); ++i) {
                    const double sig = dot(z, dirs_[i]);
                    if (sig != 0.0)
                        out.im -= wdir_ * (sig > 0 ? 1.0 : -1.0) * sin_integral(std::abs(sig), i);
                }
            }
        }
        out.re = std::max(out.re, 0.0);
        return out;
    }

    // sup_{|z| <= r} Re Psi(z): direction-sampled boundary maximum, with a
    // cached interior scan guarding against non-monotone radial behaviour.
    double psi_star(double r) const {
        require_positive(r, "r");
        double best = boundary_remax(r, zdirs_);
        build_runmax_cache();
        const double lr = std::log(r);
        for (std::size_t i = 0; i < cache_logr_.size() && cache_logr_[i] < lr; ++i) {
            if (cache_raw_[i] > best * (1.0 + 1e-9)) {
                const double a = i > 0 ? cache_logr_[i - 1] : cache_logr_[i] - 0.15;
                const double b = std::min(lr, cache_logr_[i] + 0.15);
                best = std::max(best, ternary_max(a, b));
            }
        }
        return best;
    }

    // Generalized right-continuous inverse sup{r : Psi*(r) = s}. On a plateau
    // of Psi* the rightmost point is returned and *plateau is set.
    double invert_psi_star(double s, bool* plateau = nullptr) const {
        require_positive(s, "s");
        build_runmax_cache();
        double rm = 0.0;
        double lo = cache_logr_.front() - 0.15, hi = 0.0;
        bool found = false;
        for (std::size_t i = 0; i < cache_logr_.size(); ++i) {
            rm = std::max(rm, cache_raw_[i]);
            if (rm > s) {
                hi = cache_logr_[i];
                found = true;
                break;
            }
            lo = cache_logr_[i];
        }
        if (!found) {
            hi = cache_logr_.back();
            double step = 2.0;
            while (psi_star(std::exp(hi)) <= s) {
                lo = hi;
                hi += step *= 2.0;
                if (hi > 320.0)
                    throw BracketFailure("invert_psi_star: level not attained by Psi*");
            }
        }
        {
            double step = hi - lo;
            int tries = 0;
            while (psi_star(std::exp(lo)) > s) {
                lo -= step *= 2.0;
                if (lo < -320.0 || ++tries > 60)
                    throw BracketFailure("invert_psi_star: level below Psi* range");
            }
        }
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (lo + hi);
            if (m == lo || m == hi) break;
            (psi_star(std::exp(m)) > s ? hi : lo) = m;
        }
        const double r = std::exp(lo);
        if (plateau) {
            const double up = psi_star(r * 1.00001), dn = psi_star(r * 0.99999);
            *plateau = std::abs(up - dn) <= 1e-9 * std::max(std::abs(up), 1e-300);
        }
        return r;
    }

    // b_r = b + int z (1_{|z|<r} - 1_{|z|<1}) n(z) dz
    Vector drift_br(double r) const {
        require_positive(r, "r");
        Vector b = model_.drift;
        if (model_.symmetric || iso_ || model_.profile.is_zero() || r == 1.0) return b;
        const double a = std::min(0.0, std::log(r)), c = std::max(0.0, std::log(r));
        const double sgn = r > 1.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            auto e = [&](double v) { return log_weight(i, v) + 2.0 * v; };
            const double mass = quad::integrate_logspace(e, a, c, breaks({a, c}), opt_);
            for (int j = 0; j < dim_; ++j) b[j] += sgn * wdir_ * mass * dirs_[i][j];
        }
        return b;
    }

    // <x,Ax> + int_{|<x,z>|<1} |<x,z>|^2 n(z) dz
    double directional_K(const Vector& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw InvalidParameter("directional_K: argument dimension mismatch");
        if (norm2(x) == 0.0) throw InvalidParameter("directional_K requires x != 0");
        double out = quad_form(model_.A, x);
        if (model_.profile.is_zero()) return out;
        const auto kdirs =
            iso_ ? sphere_directions(dim_, dim_ == 1 ? 2 : (dim_ == 2 ? 64 : 256)) : dirs_;
        const double wk = sphere_surface(dim_) / static_cast<double>(kdirs.size());
        for (std::size_t i = 0; i < kdirs.size(); ++i) {
            const double sig = std::abs(dot(x, kdirs[i]));
            if (sig <= 0.0) continue;
            auto e = [&](double v) {
                double lv = model_.profile.log_density(v) + (dim_ - 1) * v;
                if (!iso_) lv += safe_log(model_.aniso_at(kdirs[i], v));
                return lv + 2.0 * (v + std::log(sig)) + v;
            };
            out += wk * quad::integrate_logspace(
                e, -inf, -std::log(sig),
                breaks({-std::log(sig) - 1.0, -std::log(sig)}), opt_);
        }
        return out;
    }

    struct TableRow {
        double r, h, K, psi_star;
    };

    std::vector<TableRow> characteristic_table(double r_lo, double r_hi,
                                               int per_decade = 32) const {
        if (!(r_lo > 0.0 && r_hi > r_lo && per_decade > 0))
            throw InvalidParameter("characteristic_table: need 0 < r_lo < r_hi");
        std::vector<TableRow> rows;
        const double l0 = std::log10(r_lo), l1 = std::log10(r_hi);
        const int n = static_cast<int>(std::ceil((l1 - l0) * per_decade)) + 1;
        for (int i = 0; i < n; ++i) {
            const double r = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
            rows.push_back({r, h(r), K(r), psi_star(r)});
        }
        return rows;
    }

private:
    static void require_positive(double x, const char* name) {
        if (!(x > 0.0)) throw InvalidParameter(std::string(name) + " must be positive");
    }

    // log of the radial weight nu0(u) a(u e_i) u^{d-1} at u = e^v along dirs_[i].
    double log_weight(std::size_t i, double v) const {
        double lv = model_.profile.log_density(v) + (dim_ - 1) * v;
        if (!iso_) lv += safe_log(model_.aniso_at(dirs_[i], v));
        return lv;
    }

    // int_0^inf (1 - Phi_k(s u)) nu0(u) a u^{d-1} du, split at the first
    // kernel zero: series head + tail mass - accelerated oscillatory part.
    double cos_integral(int k, double s, std::size_t i) const {
        const double ls = std::log(s);
        const double lz1 = std::log(angular_kernel_zero(k, 1)) - ls;
        auto eh = [&](double v) {
            return log_weight(i, v) + v + detail::log_one_minus_kernel(k, ls + v);
        };
        const double head =
            quad::integrate_logspace(eh, -inf, lz1, breaks({lz1 - 2.0, lz1}), opt_);
        auto et = [&](double v) { return log_weight(i, v) + v; };
        const double tail = quad::integrate_logspace(et, lz1, inf, breaks({lz1}), opt_);
        auto f = [&](double u) {
            const double lv = log_weight(i, std::log(u));
            return lv > -700.0 ? angular_cos_kernel(k, s * u) * std::exp(lv) : 0.0;
        };
        auto edge = [&](int j) { return angular_kernel_zero(k, 1 + j) / s; };
        const double osc = quad::oscillatory_sum(f, edge, opt_.rel_tol);
        return head + tail - osc;
    }

    // int_0^inf (sin(s u) - s u 1_{u<1}) nu0(u) a u^{d-1} du  (s > 0), as
    // series head on (0, U) + signed compensator piece + oscillatory tail,
    // with U = 0.1/s keeping the head cancellation-free.
    double sin_integral(double s, std::size_t i) const {
        const double U = 0.1 / s;
        const double lU = std::log(U);
        auto eh = [&](double v) {
            return log_weight(i, v) + v + detail::log_lin_minus_sin(std::log(s) + v);
        };
        double out = -quad::integrate_logspace(eh, -inf, lU, breaks({lU - 1.0, lU}), opt_);
        if (U != 1.0) {
            auto em = [&](double v) { return log_weight(i, v) + 2.0 * v; };
            const double a = std::min(lU, 0.0), b = std::max(lU, 0.0);
            const double mid = quad::integrate_logspace(em, a, b, breaks({a, b}), opt_);
            out += s * (U > 1.0 ? mid : -mid);
        }
        const int j0 = static_cast<int>(std::floor(U * s / pi)) + 1;
        auto f = [&](double u) {
            const double lv = log_weight(i, std::log(u));
            return lv > -700.0 ? std::sin(s * u) * std::exp(lv) : 0.0;
        };
        auto edge = [&](int j) { return j == 0 ? U : (j0 + j - 1) * pi / s; };
        out += quad::oscillatory_sum(f, edge, opt_.rel_tol);
        return out;
    }

    double boundary_remax(double r, const std::vector<Vector>& zds) const {
        double best = 0.0;
        Vector z(dim_);
        for (const auto& u : zds) {
            for (int j = 0; j < dim_; ++j) z[j] = r * u[j];
            best = std::max(best, psi(z).re);
        }
        return best;
    }

    double ternary_max(double a, double b) const {
        for (int it = 0; it < 40; ++it) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (boundary_remax(std::exp(m1), zdirs_) < boundary_remax(std::exp(m2), zdirs_))
                a = m1;
            else
                b = m2;
        }
        return boundary_remax(std::exp(0.5 * (a + b)), zdirs_);
    }

    void build_h_cache() const {
        if (h_cache_) return;
        if (!(h(1.0) > 0.0))
            throw BracketFailure("invert_h: h is identically zero (no jumps, no Gaussian part)");
        std::vector<double> g, val;
        const int per_decade = 32;
        for (int i = -6 * per_decade; i <= 6 * per_decade; ++i) {
            const double lr = i * std::log(10.0) / per_decade;
            g.push_back(lr);
            val.push_back(safe_log(h(std::exp(lr))));
        }
        h_cache_.emplace(std::move(g), std::move(val), RadialTable::Direction::Free);
    }

    void build_runmax_cache() const {
        if (!cache_logr_.empty()) return;
        const int per_decade = 16;
        for (int i = -8 * per_decade; i <= 8 * per_decade; ++i) {
            const double lr = i * std::log(10.0) / per_decade;
            cache_logr_.push_back(lr);
            cache_raw_.push_back(boundary_remax(std::exp(lr), guard_zdirs_));
        }
    }

    // Breakpoint list with the profile support edge appended when finite.
    std::vector<double> breaks(std::initializer_list<double> b) const {
        std::vector<double> out(b);
        if (std::isfinite(ledge_)) out.push_back(ledge_);
        return out;
    }

    LevyModel model_;
    quad::Options opt_;
    double ledge_ = inf;
    int dim_ = 1;
    double anorm_ = 0.0;
    bool iso_ = true;
    std::vector<Vector> dirs_;        // measure decomposition directions
    std::vector<Vector> zdirs_;       // argument directions for Psi*
    std::vector<Vector> guard_zdirs_; // coarse set for the interior guard table
    double wdir_ = 0.0;
    mutable std::optional<RadialTable> h_cache_;
    mutable std::vector<double> cache_logr_, cache_raw_;
};

// Free-function forms of the operations above for one-shot use.
inline double compute_h(const LevyModel& m, double r) { return Characteristics(m).h(r); }
inline double compute_K(const LevyModel& m, double r) { return Characteristics(m).K(r); }
inline double invert_h(const LevyModel& m, double u) { return Characteristics(m).invert_h(u); }
inline ComplexExponent compute_psi(const LevyModel& m, const Vector& z) {
    return Characteristics(m).psi(z);
}
inline double compute_psi_star(const LevyModel& m, double r) {
    return Characteristics(m).psi_star(r);
}
inline double invert_psi_star(const LevyModel& m, double s) {
    return Characteristics(m).invert_psi_star(s);
}
inline Vector compute_drift_br(const LevyModel& m, double r) {
    return Characteristics(m).drift_br(r);
}
inline double directional_K(const LevyModel& m, const Vector& x) {
    return Characteristics(m).directional_K(x);
}

}  // namespace levyhk

#endif
