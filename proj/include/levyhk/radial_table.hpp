#ifndef LEVYHK_RADIAL_TABLE_HPP
#define LEVYHK_RADIAL_TABLE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "levyhk/common.hpp"

namespace levyhk {

// Shape-preserving cubic Hermite slopes (Fritsch-Carlson).
inline std::vector<double> pchip_slopes(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 2) return m;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] == 0.0 || delta[i] == 0.0 || (delta[i - 1] > 0) != (delta[i] > 0)) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return m;
}

// Monotone tabulation of a radial function on a log grid. Values are stored
// as given; interpolation is pchip in the (log r, value) plane, and beyond the
// grid a power law fitted on the boundary decade is used (callers tabulate
// log-values when they want log-log interpolation).
class RadialTable {
public:
    enum class Direction { Increasing, Decreasing, Free };

    RadialTable() = default;

    RadialTable(std::vector<double> log_r, std::vector<double> values, Direction dir)
        : logr_(std::move(log_r)), val_(std::move(values)), dir_(dir) {
        if (logr_.size() != val_.size() || logr_.size() < 2)
            throw InvalidParameter("radial table needs matching grids with >= 2 nodes");
        for (std::size_t i = 1; i < logr_.size(); ++i) {
            if (!(logr_[i] > logr_[i - 1]))
                throw InvalidParameter("radial table grid must be strictly increasing");
            const bool ok = dir_ == Direction::Free ||
                            (dir_ == Direction::Increasing ? val_[i] >= val_[i - 1] - 1e-12
                                                           : val_[i] <= val_[i - 1] + 1e-12);
            if (!ok) throw InvalidParameter("radial table violates its monotone direction");
        }
        slope_ = pchip_slopes(logr_, val_);
        // boundary power laws (slopes in the log-r coordinate).
        tail_lo_ = fit_boundary_slope(true);
        tail_hi_ = fit_boundary_slope(false);
    }

    double front_logr() const { return logr_.front(); }
    double back_logr() const { return logr_.back(); }
    std::size_t size() const { return logr_.size(); }
    const std::vector<double>& log_grid() const { return logr_; }
    const std::vector<double>& values() const { return val_; }
    double tail_exponent_low() const { return tail_lo_; }
    double tail_exponent_high() const { return tail_hi_; }

    double operator()(double logr) const {
        if (logr <= logr_.front())
            return val_.front() + tail_lo_ * (logr - logr_.front());
        if (logr >= logr_.back())
            return val_.back() + tail_hi_ * (logr - logr_.back());
        const auto it = std::upper_bound(logr_.begin(), logr_.end(), logr);
        const std::size_t j = it - logr_.begin();
        const double h = logr_[j] - logr_[j - 1];
        const double t = (logr - logr_[j - 1]) / h;
        const double y0 = val_[j - 1], y1 = val_[j];
        const double m0 = slope_[j - 1] * h, m1 = slope_[j] * h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
    }

private:
    double fit_boundary_slope(bool low) const {
        const double dec = std::log(10.0);
        if (low) {
            std::size_t j = 1;
            while (j + 1 < logr_.size() && logr_[j] - logr_.front() < dec) ++j;
            return (val_[j] - val_.front()) / (logr_[j] - logr_.front());
        }
        std::size_t i = logr_.size() - 2;
        while (i > 0 && logr_.back() - logr_[i] < dec) --i;
        return (val_.back() - val_[i]) / (logr_.back() - logr_[i]);
    }

    std::vector<double> logr_, val_, slope_;
    Direction dir_ = Direction::Decreasing;
    double tail_lo_ = 0.0, tail_hi_ = 0.0;
};

}  // namespace levyhk

#endif
