#ifndef LEVYHK_BOUND_HPP
#define LEVYHK_BOUND_HPP

#include <cmath>
#include <optional>
#include <string>

#include "levyhk/characteristics.hpp"
#include "levyhk/conditions.hpp"

namespace levyhk {

enum class CenteringMode { HInverse, PlainDrift, DriftPlusSmallJumps };

inline const char* centering_name(CenteringMode m) {
    switch (m) {
        case CenteringMode::HInverse: return "h-inverse";
        case CenteringMode::PlainDrift: return "plain-drift";
        case CenteringMode::DriftPlusSmallJumps: return "drift-plus-small-jumps";
    }
    return "?";
}

// Context for the bound function rho_t(x) = min([h^-1(1/t)]^-d, t K(|x|)/|x|^d),
// its plateau/tail variant phi_t, the crossover radius r0 and the centering
// vector. Immutable after construction except for the cached r0.
class BoundFunctionContext {
public:
    BoundFunctionContext(const Characteristics& ch, double t,
                         CenteringMode mode = CenteringMode::HInverse,
                         std::optional<ScalingEstimate> scaling = std::nullopt)
        : ch_(&ch), t_(t), mode_(mode), scaling_(std::move(scaling)) {
        if (!(t > 0.0)) throw InvalidParameter("t must be positive");
        // The bound function is driven by the jump part alone (h0, K0); a
        // Gaussian component enters the density estimates elsewhere but not
        // rho_t, phi_t, r0 or the centering radius.
        if (spectral_norm(ch.model().A) > 0.0 && !ch.model().profile.is_zero()) {
            LevyModel jumps = ch.model();
            for (auto& row : jumps.A)
                for (auto& v : row) v = 0.0;
            ch0_.emplace(jumps, ch.options());
        }
        hinv_ = ch0().invert_h(1.0 / t);
        // h itself carries the quadrature tolerance, so the residual of the
        // inversion is bounded by that tolerance rather than machine epsilon.
        if (!close_rel(ch0().h(hinv_) * t, 1.0, 1e-6))
            throw Error("bracket-failure", "h(h^-1(1/t)) t != 1; inversion failed");
    }

    const Characteristics& chars() const { return *ch_; }
    // Jump-only characteristics (h0, K0); identical to chars() when A = 0.
    const Characteristics& ch0() const { return ch0_ ? *ch0_ : *ch_; }
    double t() const { return t_; }
    double h_inv_1t() const { return hinv_; }
    CenteringMode centering_mode() const { return mode_; }

    double eval_rho(double r) const {
        const int d = ch_->model().dim;
        const double plateau = std::pow(hinv_, -d);
        if (r <= 0.0) return plateau;
        return std::min(plateau, t_ * ch0().K(r) * std::pow(r, -d));
    }

    double eval_rho(const Vector& x) const { return eval_rho(norm2(x)); }

    // Unique r0 with t K(r0) r0^-d = [h^-1(1/t)]^-d, bracketed by
    // [h^-1(3/t), h^-1(1/t)] and bisected to 1e-12 relative.
    double solve_r0() const {
        if (!std::isnan(r0_)) return r0_;
        const int d = ch_->model().dim;
        const double level = std::pow(hinv_, -d);
        auto g = [&](double r) { return t_ * ch0().K(r) * std::pow(r, -d) - level; };
        double lo = ch0().invert_h(3.0 / t_), hi = hinv_;
        if (g(lo) < 0.0 || g(hi) > 0.0)
            throw BracketFailure("r0 bracket [h^-1(3/t), h^-1(1/t)] has no sign change");
        while ((hi - lo) > 1e-12 * hi) {
            const double m = 0.5 * (lo + hi);
            if (m == lo || m == hi) break;
            (g(m) >= 0.0 ? lo : hi) = m;
        }
        r0_ = 0.5 * (lo + hi);
        return r0_;
    }

    // int rho_t dx, split exactly at r0: a plateau disc plus the tail
    // omega_d t int_{r0}^inf K(u)/u du = omega_d t h(r0)/2 (Fubini identity).
    double integrate_rho() const {
        const int d = ch_->model().dim;
        const double wd = sphere_surface(d);
        const double r0 = solve_r0();
        return wd * (std::pow(r0, d) * std::pow(hinv_, -d) / d +
                     0.5 * t_ * ch0().h(r0));
    }

    double eval_phi(double r) const {
        if (!scaling_)
            throw Error("scaling-unavailable",
                        "phi_t requires a lower-at-zero scaling estimate for h");
        const int d = ch_->model().dim;
        if (r <= hinv_) return std::pow(hinv_, -d);
        return t_ * ch0().K(r) * std::pow(r, -d);
    }

    double eval_phi(const Vector& x) const { return eval_phi(norm2(x)); }

    // Centering vector: t b_{h^-1(1/t)} (default), t b (plain), or
    // t (b + int_{|z|<1} z n dz) (small-jump mode), with mode preconditions.
    Vector drift_center() const {
        const auto& model = ch_->model();
        Vector c(model.dim, 0.0);
        switch (mode_) {
            case CenteringMode::HInverse: {
                const Vector br = ch_->drift_br(hinv_);
                for (int j = 0; j < model.dim; ++j) c[j] = t_ * br[j];
                return c;
            }
            case CenteringMode::PlainDrift: {
                if (!(model.symmetric || model.isotropic_jumps() || cancellation_ok() ||
                      (scaling_ && scaling_->exponent > 1.0)))
                    throw Error("mode-precondition-failed",
                                "plain-drift: cancellation check failed and no scaling "
                                "exponent > 1 is available");
                for (int j = 0; j < model.dim; ++j) c[j] = t_ * model.drift[j];
                return c;
            }
            case CenteringMode::DriftPlusSmallJumps: {
                const ScalingEstimate wusc = estimate_scaling(
                    *ch_, ScalingRegime::UpperAtZero, 1e-4, 1.0);
                if (!(wusc.exponent < 1.0 && wusc.residual <= detail::cond_noise))
                    throw Error("mode-precondition-failed",
                                "drift-plus-small-jumps: upper-at-zero scaling with "
                                "exponent < 1 not certified (exponent " +
                                    std::to_string(wusc.exponent) + ")");
                const Vector m = small_jump_mean();
                for (int j = 0; j < model.dim; ++j) c[j] = t_ * (model.drift[j] + m[j]);
                return c;
            }
        }
        return c;
    }

    // int_{|z|<1} z n(z) dz (zero for symmetric jump parts).
    Vector small_jump_mean() const {
        const auto& model = ch_->model();
        Vector m(model.dim, 0.0);
        if (model.symmetric || model.isotropic_jumps() || model.profile.is_zero()) return m;
        const auto dirs = model.directions();
        const double w = sphere_surface(model.dim) / static_cast<double>(dirs.size());
        for (const auto& u : dirs) {
            auto e = [&](double v) {
                return model.profile.log_density(v) + (model.dim - 1) * v +
                       safe_log(model.aniso_at(u, v)) + 2.0 * v;
            };
            const double mass = quad::integrate_logspace(e, -inf, 0.0, {0.0}, ch_->options());
            for (int j = 0; j < model.dim; ++j) m[j] += w * mass * u[j];
        }
        return m;
    }

    // Grid certification of the cancellation/stability pair behind the
    // plain-drift mode: sup_r |b_r - b| bounded towards r -> 0 and
    // inf_r r h(r) bounded away from 0.
    bool cancellation_ok() const {
        const auto& model = ch_->model();
        double dev_small = 0.0, dev_rest = 0.0, rh_small = inf, rh_rest = inf;
        for (int i = 0; i < 32; ++i) {
            const double r = hinv_ * std::pow(10.0, -3.0 + 5.0 * i / 31.0);
            const Vector br = ch_->drift_br(r);
            double dev = 0.0;
            for (int j = 0; j < model.dim; ++j) dev += sqr(br[j] - model.drift[j]);
            dev = std::sqrt(dev);
            const double rh = r * ch0().h(r);
            if (i < 8) {  // smallest decade: the r -> 0 trend lives here
                dev_small = std::max(dev_small, dev);
                rh_small = std::min(rh_small, rh);
            } else {
                dev_rest = std::max(dev_rest, dev);
                rh_rest = std::min(rh_rest, rh);
            }
        }
        const bool dev_bounded =
            dev_small <= 4.0 * std::max(dev_rest, 1e-12) || dev_small <= 1e-10;
        const bool rh_stable = rh_small >= 0.25 * rh_rest && rh_small > 0.0;
        return dev_bounded && rh_stable;
    }

private:
    const Characteristics* ch_;
    double t_;
    double hinv_ = 0.0;
    CenteringMode mode_;
    std::optional<ScalingEstimate> scaling_;
    std::optional<Characteristics> ch0_;
    mutable double r0_ = nan;
};

}  // namespace levyhk

#endif
