#ifndef LEVYHK_PROFILE_HPP
#define LEVYHK_PROFILE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "levyhk/common.hpp"

namespace levyhk {

// Radial jump intensity nu0(r), non-increasing on (0,inf), possibly +inf at 0.
// Evaluation is exposed in log coordinates so that integrators can work with
// exponents directly and never overflow on power-law singularities.
class UnimodalProfile {
public:
    enum class Kind { None, Stable, StableMixture, Tempered, Truncated, LogHeavy, Table, Custom };

    static UnimodalProfile none(int dim) { return UnimodalProfile(Kind::None, dim); }

    static UnimodalProfile stable(double alpha, int dim) {
        check_alpha(alpha);
        UnimodalProfile p(Kind::Stable, dim);
        p.alpha_ = alpha;
        return p;
    }

    static UnimodalProfile stable_mixture(double alpha, double beta, int dim) {
        check_alpha(alpha);
        if (!(beta > 0.0 && beta < alpha))
            throw InvalidParameter("stable-mixture requires 0 < beta < alpha < 2");
        UnimodalProfile p(Kind::StableMixture, dim);
        p.alpha_ = alpha;
        p.beta_ = beta;
        return p;
    }

    static UnimodalProfile tempered(double alpha, double lambda, int dim) {
        check_alpha(alpha);
        if (!(lambda > 0.0)) throw InvalidParameter("tempered requires lambda > 0");
        UnimodalProfile p(Kind::Tempered, dim);
        p.alpha_ = alpha;
        p.lambda_ = lambda;
        return p;
    }

    static UnimodalProfile truncated(double alpha, double radius, int dim) {
        check_alpha(alpha);
        if (!(radius > 0.0)) throw InvalidParameter("truncated requires R > 0");
        UnimodalProfile p(Kind::Truncated, dim);
        p.alpha_ = alpha;
        p.radius_ = radius;
        return p;
    }

    static UnimodalProfile log_heavy(double alpha, int dim) {
        check_alpha(alpha);
        UnimodalProfile p(Kind::LogHeavy, dim);
        p.alpha_ = alpha;
        return p;
    }

    // Log-log linear interpolation; extrapolation by the power law fitted on
    // the boundary decade, which preserves monotonicity and scaling detection.
    static UnimodalProfile table(std::vector<std::pair<double, double>> pairs, int dim) {
        if (pairs.size() < 2) throw InvalidParameter("table profile needs at least 2 nodes");
        std::sort(pairs.begin(), pairs.end());
        UnimodalProfile p(Kind::Table, dim);
        for (auto& [r, v] : pairs) {
            if (!(r > 0.0 && v > 0.0))
                throw InvalidParameter("table profile nodes must be positive");
            p.tab_logr_.push_back(std::log(r));
            p.tab_logv_.push_back(std::log(v));
        }
        for (std::size_t i = 1; i < p.tab_logv_.size(); ++i)
            if (p.tab_logv_[i] > p.tab_logv_[i - 1] + 1e-12)
                throw Error("non-monotone-table", "table profile must be non-increasing");
        return p;
    }

    static UnimodalProfile custom(std::function<double(double)> f, int dim) {
        UnimodalProfile p(Kind::Custom, dim);
        p.custom_ = std::move(f);
        return p;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double lambda() const { return lambda_; }
    double radius() const { return radius_; }

    bool is_zero() const { return kind_ == Kind::None; }

    // log of the support edge (the profile vanishes beyond it); +inf when the
    // support is unbounded or the edge is not known analytically. Quadratures
    // use it as a breakpoint so the jump-off is never buried inside a panel.
    double support_log_edge() const {
        return kind_ == Kind::Truncated ? std::log(radius_) : inf;
    }

    double operator()(double r) const {
        const double lv = log_density(std::log(r));
        return lv == inf ? inf : std::exp(lv);
    }

    // log nu0(e^{logr}); -inf where nu0 vanishes, +inf only possible at r=0.
    double log_density(double logr) const {
        switch (kind_) {
            case Kind::None:
                return -inf;
            case Kind::Stable:
                return -(dim_ + alpha_) * logr;
            case Kind::StableMixture: {
                const double a = -(dim_ + alpha_) * logr;
                const double b = -(dim_ + beta_) * logr;
                const double m = std::max(a, b);
                return m + std::log1p(std::exp(std::min(a, b) - m));
            }
            case Kind::Tempered: {
                if (logr > 700.0) return -inf;
                return -(dim_ + alpha_) * logr - lambda_ * std::exp(logr);
            }
            case Kind::Truncated:
                return logr < std::log(radius_) ? -(dim_ + alpha_) * logr : -inf;
            case Kind::LogHeavy: {
                const double e = 0.5 * alpha_ * logr;
                // log(log(1+r^{alpha/2})): for tiny r, log1p(x) ~ x.
                const double loglog = e < -30.0 ? e : std::log(std::log1p(std::exp(e)));
                return -dim_ * logr - 2.0 * loglog;
            }
            case Kind::Table:
                return table_log_value(logr);
            case Kind::Custom: {
                const double r = std::exp(std::min(logr, 700.0));
                const double v = custom_(r);
                if (v < 0.0) throw InvalidParameter("custom profile returned negative value");
                return v == 0.0 ? -inf : std::log(v);
            }
        }
        return -inf;
    }

    std::string kind_name() const {
        switch (kind_) {
            case Kind::None: return "none";
            case Kind::Stable: return "stable";
            case Kind::StableMixture: return "stable-mixture";
            case Kind::Tempered: return "tempered";
            case Kind::Truncated: return "truncated";
            case Kind::LogHeavy: return "log-heavy";
            case Kind::Table: return "table";
            case Kind::Custom: return "custom";
        }
        return "?";
    }

    // Monotonicity probe used at construction and in validation.
    void check_monotone(double r_lo = 1e-6, double r_hi = 1e6, int n = 100) const {
        if (is_zero()) return;
        double prev = inf;
        for (int i = 0; i < n; ++i) {
            const double lr = std::log(r_lo) +
                              (std::log(r_hi) - std::log(r_lo)) * i / (n - 1);
            const double v = log_density(lr);
            if (v > prev + 1e-9)
                throw Error("non-monotone-table", "profile is not non-increasing near r=" +
                                                      std::to_string(std::exp(lr)));
            prev = v;
        }
    }

private:
    UnimodalProfile(Kind k, int dim) : kind_(k), dim_(dim) {
        if (dim < 1) throw InvalidParameter("dimension must be positive");
    }

    static void check_alpha(double a) {
        if (!(a > 0.0 && a < 2.0)) throw InvalidParameter("alpha must lie in (0,2)");
    }

    double table_log_value(double logr) const {
        const auto& x = tab_logr_;
        const auto& y = tab_logv_;
        const std::size_t n = x.size();
        auto slope_on = [&](std::size_t i, std::size_t j) {
            return (y[j] - y[i]) / (x[j] - x[i]);
        };
        if (logr <= x.front()) {
            // power law fitted on the first decade (or first segment).
            std::size_t j = 1;
            while (j + 1 < n && x[j] - x.front() < std::log(10.0)) ++j;
            return y.front() + slope_on(0, j) * (logr - x.front());
        }
        if (logr >= x.back()) {
            std::size_t i = n - 2;
            while (i > 0 && x.back() - x[i] < std::log(10.0)) --i;
            return y.back() + slope_on(i, n - 1) * (logr - x.back());
        }
        const auto it = std::upper_bound(x.begin(), x.end(), logr);
        const std::size_t j = it - x.begin();
        const double t = (logr - x[j - 1]) / (x[j] - x[j - 1]);
        return y[j - 1] + t * (y[j] - y[j - 1]);
    }

    Kind kind_;
    int dim_;
    double alpha_ = 0.0, beta_ = 0.0, lambda_ = 0.0, radius_ = 0.0;
    std::vector<double> tab_logr_, tab_logv_;
    std::function<double(double)> custom_;
};

}  // namespace levyhk

#endif
