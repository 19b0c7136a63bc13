#ifndef LEVYHK_SAMPLER_HPP
#define LEVYHK_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "levyhk/model.hpp"
#include "levyhk/radial_table.hpp"

namespace levyhk {

enum class SmallJumpMode { GaussianSubstitute, DropWithCompensation };

struct SamplerSettings {
    double jump_cutoff = 0.1;  // epsilon
    SmallJumpMode small_jump_mode = SmallJumpMode::GaussianSubstitute;
    long n_samples = 10000;
    std::uint64_t seed = 1;
    int histogram_bins = 200;
};

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based per-sample stream: the state is derived from (seed, index)
// only, so draws are independent of scheduling order.
struct Stream {
    std::uint64_t s;
    Stream(std::uint64_t seed, std::uint64_t index)
        : s(seed ^ (0xD1B54A32D192ED03ULL * (index + 1))) {
        splitmix64(s);
        splitmix64(s);
    }
    double uniform() {  // in (0,1)
        return (static_cast<double>(splitmix64(s) >> 11) + 0.5) * 0x1.0p-53;
    }
    double normal() {
        const double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
    long poisson(double lambda) {
        long k = 0;
        while (lambda > 0.0) {
            const double chunk = std::min(lambda, 50.0);
            lambda -= chunk;
            const double limit = std::exp(-chunk);
            double p = uniform();
            while (p > limit) {
                ++k;
                p *= uniform();
            }
        }
        return k;
    }
};

}  // namespace rng

// Lower-triangular Cholesky factor with a semidefinite floor at zero.
inline Matrix cholesky_psd(const Matrix& c) {
    const int d = static_cast<int>(c.size());
    Matrix l = zero_matrix(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = c[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                l[i][i] = std::sqrt(std::max(0.0, s));
            } else {
                l[i][j] = l[j][j] > 0.0 ? s / l[j][j] : 0.0;
            }
        }
    }
    return l;
}

// Increment sampler: Y_t = t b + Gaussian(2tA [+ t sigma_eps^2]) +
// sum of jumps with |z| > eps - t int_{eps<|z|<1} z n(z) dz. Large-jump radii
// come from an inverse-CDF table of the envelope comp_upper * nu0; anisotropy
// is resolved by thinning with probability a(x)/comp_upper.
class Sampler {
public:
    Sampler(const LevyModel& model, double t, SamplerSettings st = {})
        : model_(model), t_(t), st_(st) {
        if (!(t > 0.0)) throw InvalidParameter("t must be positive");
        if (!(st_.jump_cutoff > 0.0)) throw InvalidParameter("jump_cutoff must be positive");
        if (st_.n_samples < 1) throw InvalidParameter("n_samples must be >= 1");
        model_.validate_shape();
        const int d = model_.dim;
        if (!model_.profile.is_zero()) {
            build_radial_table();
            rate_ = t_ * model_.comp_upper * envelope_tail_;
            if (rate_ * static_cast<double>(st_.n_samples) > 5e8)
                throw Error("jump-budget-exceeded",
                            "expected jump count " + std::to_string(rate_) +
                                " per sample over " + std::to_string(st_.n_samples) +
                                " samples exceeds the budget; raise jump_cutoff");
            correction_ = compensation_vector();
            substitute_ = small_jump_covariance();
        } else {
            substitute_ = zero_matrix(d);
            correction_ = Vector(d, 0.0);
        }
        Matrix cov = zero_matrix(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                cov[i][j] = 2.0 * t_ * model_.A[i][j];
                if (st_.small_jump_mode == SmallJumpMode::GaussianSubstitute)
                    cov[i][j] += t_ * substitute_[i][j];
            }
        chol_ = cholesky_psd(cov);
    }

    double jump_rate() const { return rate_; }
    const Vector& compensation() const { return correction_; }
    const Matrix& substitute_covariance() const { return substitute_; }

    // Deterministic draw for a given sample index.
    Vector draw(std::uint64_t index) const {
        const int d = model_.dim;
        rng::Stream g(st_.seed, index);
        Vector y(d, 0.0);
        // Gaussian block (fixed draw count first, for stream stability).
        Vector z(d);
        for (int i = 0; i < d; ++i) z[i] = g.normal();
        for (int i = 0; i < d; ++i) {
            y[i] = t_ * model_.drift[i] - t_ * correction_[i];
            for (int j = 0; j <= i; ++j) y[i] += chol_[i][j] * z[j];
        }
        if (rate_ > 0.0) {
            const long count = g.poisson(rate_);
            Vector x(d);
            for (long k = 0; k < count; ++k) {
                const double logr = quantile_(g.uniform());
                const double r = std::exp(logr);
                random_direction(g, x);
                for (int i = 0; i < d; ++i) x[i] *= r;
                if (model_.anisotropy) {
                    const double accept = model_.anisotropy(x) / model_.comp_upper;
                    if (g.uniform() >= accept) continue;  // thinned
                }
                for (int i = 0; i < d; ++i) y[i] += x[i];
            }
        }
        return y;
    }

    std::vector<Vector> sample() const {
        std::vector<Vector> out;
        out.reserve(st_.n_samples);
        for (long i = 0; i < st_.n_samples; ++i)
            out.push_back(draw(static_cast<std::uint64_t>(i)));
        return out;
    }

private:
    // omega_d int over (lo, hi) of r^{d-1+p} nu0(r) dr in log radius.
    double radial_moment(double p, double vlo, double vhi) const {
        const int d = model_.dim;
        auto e = [&](double v) { return model_.profile.log_density(v) + (d + p) * v; };
        return sphere_surface(d) * quad::integrate_logspace(e, vlo, vhi, {0.0});
    }

    void build_radial_table() {
        const double eps = st_.jump_cutoff;
        // Find the radius capturing all but ~1e-15 of the envelope tail mass.
        const double head = radial_moment(0.0, std::log(eps), inf);
        if (!(head > 0.0))
            throw InvalidParameter("no jump mass beyond jump_cutoff");
        envelope_tail_ = head;
        double r_hi = std::max(10.0 * eps, 10.0);
        while (r_hi < 1e12 &&
               radial_moment(0.0, std::log(r_hi), inf) > 1e-15 * head)
            r_hi *= 10.0;
        const double v0 = std::log(eps), v1 = std::log(r_hi);
        const int n = std::max(
            16, static_cast<int>(std::ceil((v1 - v0) / std::log(10.0) * 48)) + 1);
        std::vector<double> cdf, logr;
        cdf.push_back(0.0);
        logr.push_back(v0);
        double cum = 0.0;
        const int d = model_.dim;
        auto g = [&](double v) {
            const double e = model_.profile.log_density(v) + d * v;
            return e > -700.0 ? std::exp(e) : 0.0;
        };
        for (int i = 1; i < n; ++i) {
            const double a = v0 + (v1 - v0) * (i - 1) / (n - 1);
            const double b = v0 + (v1 - v0) * i / (n - 1);
            cum += sphere_surface(d) * quad::integrate(g, a, b).value;
            if (cum > cdf.back() + 1e-15 * head) {  // skip flat (zero-mass) spans
                double node = b;
                if (model_.profile.log_density(b) == -inf) {
                    // support ends inside this segment: snap the node to the
                    // edge so no quantile maps outside the support.
                    double lo = a, hi = b;
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (model_.profile.log_density(mid) == -inf ? hi : lo) = mid;
                    }
                    node = 0.5 * (lo + hi);
                }
                cdf.push_back(cum);
                logr.push_back(node);
            }
        }
        if (cdf.size() < 2)
            throw InvalidParameter("jump mass degenerate beyond jump_cutoff");
        const double total = cdf.back();
        for (double& c : cdf) c /= total;
        cdf.back() = 1.0;
        // quantile table: pchip of log r against the cdf value.
        quantile_ = RadialTable(std::move(cdf), std::move(logr),
                                RadialTable::Direction::Increasing);
    }

    // t-free part of t int_{eps<|z|<1} z n(z) dz (sign handles eps > 1).
    Vector compensation_vector() const {
        const int d = model_.dim;
        Vector c(d, 0.0);
        if (model_.symmetric || model_.isotropic_jumps()) return c;
        const double eps = st_.jump_cutoff;
        if (eps == 1.0) return c;
        const double lo = std::min(std::log(eps), 0.0), hi = std::max(std::log(eps), 0.0);
        const double sign = eps < 1.0 ? 1.0 : -1.0;
        const auto dirs = model_.directions();
        const double w = sphere_surface(d) / static_cast<double>(dirs.size());
        for (const auto& u : dirs) {
            auto e = [&](double v) {
                return model_.profile.log_density(v) + (d + 1) * v +
                       safe_log(model_.aniso_at(u, v));
            };
            const double m = quad::integrate_logspace(e, lo, hi, {0.0});
            for (int i = 0; i < d; ++i) c[i] += sign * w * m * u[i];
        }
        return c;
    }

    // sigma(eps)^2 = int_{|z|<eps} z z^T n(z) dz.
    Matrix small_jump_covariance() const {
        const int d = model_.dim;
        Matrix s = zero_matrix(d);
        const double leps = std::log(st_.jump_cutoff);
        if (model_.isotropic_jumps()) {
            const double m2 = radial_moment(2.0, -inf, leps);
            for (int i = 0; i < d; ++i) s[i][i] = m2 / d;
            return s;
        }
        const auto dirs = model_.directions();
        const double w = sphere_surface(d) / static_cast<double>(dirs.size());
        for (const auto& u : dirs) {
            // exponent: z^2 weight, surface factor r^{d-1}, log Jacobian r
            auto e = [&](double v) {
                return model_.profile.log_density(v) + (d + 2) * v +
                       safe_log(model_.aniso_at(u, v));
            };
            const double m = quad::integrate_logspace(e, -inf, leps, {leps - 1.0});
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) s[i][j] += w * m * u[i] * u[j];
        }
        return s;
    }

    void random_direction(rng::Stream& g, Vector& u) const {
        const int d = model_.dim;
        if (d == 1) {
            u[0] = g.uniform() < 0.5 ? -1.0 : 1.0;
            return;
        }
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (int i = 0; i < d; ++i) {
                u[i] = g.normal();
                n2 += u[i] * u[i];
            }
        } while (n2 == 0.0);
        const double n = std::sqrt(n2);
        for (int i = 0; i < d; ++i) u[i] /= n;
    }

    LevyModel model_;
    double t_;
    SamplerSettings st_;
    double rate_ = 0.0;
    double envelope_tail_ = 0.0;
    RadialTable quantile_;
    Vector correction_;
    Matrix substitute_;
    Matrix chol_;
};

inline std::vector<Vector> sample_increments(const LevyModel& model, double t,
                                             const SamplerSettings& st) {
    return Sampler(model, t, st).sample();
}

struct EmpiricalDensity {
    std::vector<double> bin_edges;  // n+1 edges
    std::vector<double> bin_mass;   // fraction of samples per bin
    std::vector<double> standard_error;
    long n_used = 0;
};

// Histogram of the first coordinate (marginal for d > 1) with binomial
// standard errors per bin.
inline EmpiricalDensity empirical_density(const std::vector<Vector>& samples,
                                          const std::vector<double>& edges) {
    if (edges.size() < 2) throw Error("empty-grid", "need at least one bin");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw InvalidParameter("bin edges must be strictly increasing");
    if (samples.empty()) throw InvalidParameter("non-empty samples required");
    EmpiricalDensity e;
    e.bin_edges = edges;
    e.bin_mass.assign(edges.size() - 1, 0.0);
    e.standard_error.assign(edges.size() - 1, 0.0);
    const double n = static_cast<double>(samples.size());
    e.n_used = static_cast<long>(samples.size());
    for (const auto& x : samples) {
        const double v = x[0];
        if (v < edges.front() || v >= edges.back()) continue;
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        e.bin_mass[it - edges.begin() - 1] += 1.0;
    }
    for (std::size_t i = 0; i < e.bin_mass.size(); ++i) {
        const double m = e.bin_mass[i] / n;
        e.bin_mass[i] = m;
        e.standard_error[i] = std::sqrt(std::max(0.0, m * (1.0 - m) / n));
    }
    return e;
}

inline std::vector<double> uniform_edges(double lo, double hi, int bins) {
    std::vector<double> e(bins + 1);
    for (int i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * i / bins;
    return e;
}

}  // namespace levyhk

#endif
