#ifndef LEVYHK_COMMON_HPP
#define LEVYHK_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace levyhk {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double pi = std::numbers::pi;

// Errors carry a stable identifier so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string id, const std::string& what)
        : std::runtime_error(id + ": " + what), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error("invalid-parameter", what) {}
};

class QuadratureFailure : public Error {
public:
    explicit QuadratureFailure(const std::string& what) : Error("quadrature-failure", what) {}
};

class BracketFailure : public Error {
public:
    explicit BracketFailure(const std::string& what) : Error("bracket-failure", what) {}
};

// Surface measure of the unit sphere in R^d.
inline double sphere_surface(int d) {
    if (d < 1) throw InvalidParameter("dimension must be positive");
    return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double sqr(double x) { return x * x; }

}  // namespace levyhk

#endif
