#ifndef LEVYHK_SPECIAL_HPP
#define LEVYHK_SPECIAL_HPP

#include <cmath>
#include <vector>

#include "levyhk/common.hpp"

namespace levyhk {

// Angular average of cos<x,z> over the unit sphere: for |z|=u,
//   (1/omega_d) int_{S^{d-1}} cos(u <e,w>) dw = Gamma(d/2) (2/u)^{d/2-1} J_{d/2-1}(u).
inline double angular_cos_kernel(int d, double u) {
    u = std::abs(u);
    switch (d) {
        case 1:
            return std::cos(u);
        case 2:
            return std::cyl_bessel_j(0.0, u);
        case 3:
            return u < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
        default: {
            const double nu = 0.5 * d - 1.0;
            if (u < 1e-8) return 1.0 - u * u / (2.0 * d);
            return std::tgamma(0.5 * d) * std::pow(2.0 / u, nu) * std::cyl_bessel_j(nu, u);
        }
    }
}

// k-th positive zero of the kernel above (k = 1,2,...), via McMahon's
// expansion for the zeros of J_{d/2-1}; exact for d in {1,3}. Only used to
// place oscillation panel edges, so the O(1/k^3) error is immaterial.
inline double angular_kernel_zero(int d, int k) {
    const double nu = 0.5 * d - 1.0;
    const double mu = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * pi;
    return beta - (mu - 1.0) / (8.0 * beta);
}

// Quasi-uniform direction sets used for anisotropic sampling; each direction
// carries equal weight omega_d / M.
inline std::vector<std::vector<double>> sphere_directions(int d, int m) {
    std::vector<std::vector<double>> dirs;
    if (d == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    if (d == 2) {
        dirs.reserve(m);
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * pi * (i + 0.5) / m;
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
        return dirs;
    }
    if (d == 3) {
        // Fibonacci sphere.
        dirs.reserve(m);
        const double ga = pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < m; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / m;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = ga * i;
            dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        return dirs;
    }
    throw InvalidParameter("direction sampling supports d <= 3");
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace levyhk

#endif
