#ifndef LEVYHK_MODEL_HPP
#define LEVYHK_MODEL_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levyhk/logspace.hpp"
#include "levyhk/profile.hpp"
#include "levyhk/special.hpp"

namespace levyhk {

using Matrix = std::vector<std::vector<double>>;
using Vector = std::vector<double>;

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -inf; }

inline Matrix zero_matrix(int d) { return Matrix(d, Vector(d, 0.0)); }

inline Matrix scalar_matrix(int d, double a) {
    Matrix m = zero_matrix(d);
    for (int i = 0; i < d; ++i) m[i][i] = a;
    return m;
}

// Spectral norm of a symmetric non-negative-definite matrix (power iteration;
// d <= 3 in practice so convergence is immediate).
inline double spectral_norm(const Matrix& a) {
    const int d = static_cast<int>(a.size());
    if (d == 0) return 0.0;
    if (d == 1) return std::abs(a[0][0]);
    Vector v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double lam = 0.0;
    for (int it = 0; it < 200; ++it) {
        Vector w(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) w[i] += a[i][j] * v[j];
        const double n = norm2(w);
        if (n == 0.0) return 0.0;
        for (int i = 0; i < d; ++i) w[i] /= n;
        const double prev = lam;
        lam = n;
        v = w;
        if (it > 4 && std::abs(lam - prev) <= 1e-14 * lam) break;
    }
    return lam;
}

inline double quad_form(const Matrix& a, const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * a[i][j] * x[j];
    return s;
}

// Full generating triplet with the jump density n(x) = a(x) * nu0(|x|).
// a == nullptr means the isotropic case a(x) = 1.
struct LevyModel {
    int dim = 1;
    Matrix A;                          // symmetric non-negative definite
    UnimodalProfile profile;           // comparison profile nu0
    double comp_lower = 1.0;           // a(x) >= comp_lower for the comparability claim
    double comp_upper = 1.0;           // a(x) <= comp_upper
    std::function<double(const Vector&)> anisotropy;  // optional a(x)
    Vector drift;                      // b
    bool symmetric = true;
    std::string name = "model";

    static LevyModel isotropic(UnimodalProfile p, Matrix a = {}, Vector b = {},
                               std::string name = "model") {
        LevyModel m{p.dim(), a.empty() ? zero_matrix(p.dim()) : std::move(a),
                    std::move(p), 1.0, 1.0, nullptr,
                    b.empty() ? Vector(p.dim(), 0.0) : std::move(b), true,
                    std::move(name)};
        m.validate_shape();
        return m;
    }

    void validate_shape() const {
        if (dim < 1) throw InvalidParameter("dim must be positive");
        if (static_cast<int>(A.size()) != dim)
            throw InvalidParameter("A must be dim x dim");
        for (const auto& row : A)
            if (static_cast<int>(row.size()) != dim)
                throw InvalidParameter("A must be dim x dim");
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                if (std::abs(A[i][j] - A[j][i]) > 1e-12)
                    throw InvalidParameter("A must be symmetric");
        if (static_cast<int>(drift.size()) != dim)
            throw InvalidParameter("drift must have length dim");
        if (!(comp_lower > 0.0) || !(comp_upper >= comp_lower))
            throw InvalidParameter("need 0 < comp_lower <= comp_upper");
        if (anisotropy && dim > 3)
            throw InvalidParameter("anisotropic models support d <= 3 only");
    }

    bool isotropic_jumps() const { return !anisotropy; }

    double gauss_norm() const { return spectral_norm(A); }

    // n(x); x != 0.
    double jump_density(const Vector& x) const {
        const double r = norm2(x);
        const double a = anisotropy ? anisotropy(x) : 1.0;
        return a * std::exp(profile.log_density(std::log(r)));
    }

    double aniso_at(const Vector& dir, double logr) const {
        if (!anisotropy) return 1.0;
        const double r = std::exp(std::min(logr, 700.0));
        Vector x(dim);
        for (int i = 0; i < dim; ++i) x[i] = dir[i] * r;
        return anisotropy(x);
    }

    // Direction set used to resolve anisotropy (exact for d = 1).
    std::vector<Vector> directions() const {
        if (isotropic_jumps()) return {Vector(static_cast<std::size_t>(dim), 0.0)};
        const int m = dim == 1 ? 2 : (dim == 2 ? 32 : 128);
        return sphere_directions(dim, m);
    }
};

// Symmetric minorant (nu_s, a1, a2) used by the jump-type lower bound:
// a1 * nu_s <= N and Re Psi <= a2 * Re Psi_s beyond the threshold.
struct SymmetricMinorant {
    UnimodalProfile profile_s;
    double a1 = 1.0;
    double a2 = 1.0;
    double threshold = 0.0;  // 1/T3
};

struct ValidationReport {
    double levy_integral = 0.0;       // int (1 ^ |z|^2) n(z) dz
    bool levy_integral_finite = true;
    double mass_total = inf;          // nu0(R^d), +inf unless compound Poisson
    bool h_zero_infinite = true;      // h(0+) = infinity verdict
    std::vector<std::string> warnings;
};

namespace detail {

// Detects whether exp(E(v)) dv diverges towards v -> -inf (slope of E does
// not go negative) by probing E on a coarse ladder.
inline bool diverges_at_zero(const std::function<double(double)>& e) {
    double prev = e(-6.0);
    for (double v = -12.0; v >= -60.0; v -= 6.0) {
        const double cur = e(v);
        if (cur == -inf) return false;
        if (cur < prev - 1.0) return false;  // decaying
        if (cur > prev + 1.0) return true;   // growing: divergent
        prev = cur;
    }
    return prev > -700.0;  // flat and non-negligible: logarithmic divergence
}

inline bool diverges_at_infinity(const std::function<double(double)>& e) {
    double prev = e(6.0);
    for (double v = 12.0; v <= 60.0; v += 6.0) {
        const double cur = e(v);
        if (cur == -inf) return false;
        if (cur < prev - 1.0) return false;
        if (cur > prev + 1.0) return true;
        prev = cur;
    }
    return prev > -700.0;
}

}  // namespace detail

// Numeric validation of the Levy-measure integrability conditions.
inline ValidationReport validate_levy_measure(const LevyModel& model) {
    model.validate_shape();
    ValidationReport rep;
    const int d = model.dim;
    if (model.profile.is_zero()) {
        rep.levy_integral = 0.0;
        rep.mass_total = 0.0;
        rep.h_zero_infinite = model.gauss_norm() > 0.0;
        if (!rep.h_zero_infinite)
            rep.warnings.push_back("compound-poisson-warning: no Gaussian part and no jumps");
        return rep;
    }
    model.profile.check_monotone();
    const double wd = sphere_surface(d);
    const auto dirs = model.directions();
    const double wdir = wd / static_cast<double>(dirs.size());

    double integral = 0.0;
    bool finite = true;
    for (const auto& u : dirs) {
        // exponents: weight (|x|^2 resp. 1), surface factor r^{d-1}, and
        // the log-substitution Jacobian r.
        auto e_small = [&](double v) {
            return model.profile.log_density(v) + (d + 2) * v +
                   safe_log(model.aniso_at(u, v));
        };
        auto e_tail = [&](double v) {
            return model.profile.log_density(v) + d * v +
                   safe_log(model.aniso_at(u, v));
        };
        if (detail::diverges_at_zero(e_small) || detail::diverges_at_infinity(e_tail)) {
            finite = false;
            break;
        }
        integral += wdir * (quad::integrate_logspace(e_small, -inf, 0.0, {0.0}) +
                            quad::integrate_logspace(e_tail, 0.0, inf, {0.0}));
    }
    rep.levy_integral = finite ? integral : inf;
    rep.levy_integral_finite = finite;
    if (!finite)
        throw Error("divergent-levy-integral",
                    "int (1 ^ |z|^2) n(z) dz diverges; not a Levy measure");

    // Total mass: infinite iff the small-radius mass integral diverges.
    auto e_mass0 = [&](double v) { return model.profile.log_density(v) + d * v; };
    const bool mass_infinite = detail::diverges_at_zero(e_mass0);
    if (mass_infinite) {
        rep.mass_total = inf;
    } else {
        double mass = 0.0;
        for (const auto& u : dirs) {
            auto e = [&](double v) {
                return model.profile.log_density(v) + d * v + safe_log(model.aniso_at(u, v));
            };
            mass += wdir * quad::integrate_logspace(e, -inf, inf, {0.0});
        }
        rep.mass_total = mass;
    }
    rep.h_zero_infinite = mass_infinite || model.gauss_norm() > 0.0;
    if (!rep.h_zero_infinite)
        rep.warnings.push_back("compound-poisson-warning: finite total mass " +
                               std::to_string(rep.mass_total));
    if (model.anisotropy) {
        // Spot-check the comparability envelope and claimed symmetry.
        const auto dirs3 = sphere_directions(d, d == 1 ? 2 : 16);
        for (const auto& u : dirs3) {
            for (double r : {0.01, 0.1, 1.0, 10.0, 100.0}) {
                Vector x(d), mx(d);
                for (int i = 0; i < d; ++i) { x[i] = u[i] * r; mx[i] = -x[i]; }
                const double a = model.anisotropy(x);
                if (a < model.comp_lower - 1e-12 || a > model.comp_upper + 1e-12)
                    rep.warnings.push_back("comparability-violated at |x|=" + std::to_string(r));
                if (model.symmetric && std::abs(a - model.anisotropy(mx)) > 1e-10)
                    rep.warnings.push_back("symmetry-flag-violated at |x|=" + std::to_string(r));
            }
        }
    }
    return rep;
}

}  // namespace levyhk

#endif
