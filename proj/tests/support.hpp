#ifndef EIGENCURVE_TESTS_SUPPORT_HPP
#define EIGENCURVE_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "eigencurve/fields.hpp"
#include "eigencurve/geometry.hpp"

namespace testsupport {

inline eigencurve::DomainSpec unit_domain(int n1 = 32, int n2 = 32) {
    eigencurve::DomainSpec d;
    d.x0 = 0.0;
    d.xs = 0.5;
    d.xL = 1.0;
    d.radial_power = 0;
    d.n1 = n1;
    d.n2 = n2;
    return d;
}

/// Richardson-extrapolated trapezoid quadrature of f against r^k; the
/// independent oracle for weighted integrals.
inline double quad_oracle(const std::function<double(double)>& f, double a, double b, int k,
                          int base_cells = 4096) {
    auto trap = [&](int m) {
        const double h = (b - a) / m;
        double s = 0.5 * (f(a) * std::pow(a, k) + f(b) * std::pow(b, k));
        for (int i = 1; i < m; ++i) {
            const double x = a + i * h;
            s += f(x) * std::pow(x, k);
        }
        return s * h;
    };
    const double t1 = trap(base_cells), t2 = trap(2 * base_cells);
    return (4.0 * t2 - t1) / 3.0;
}

/// Root of sqrt(s)*tan(sqrt(s)*L) = gamma in (0, (pi/2L)^2): principal
/// eigenvalue of -u'' with Robin(gamma) at one end and Neumann at the other.
inline double robin_neumann_sigma1(double L, double gamma) {
    auto g = [&](double s) { return std::sqrt(s) * std::tan(std::sqrt(s) * L) - gamma; };
    double lo = 1e-14;
    double hi = (M_PI / (2.0 * L)) * (M_PI / (2.0 * L)) * (1.0 - 1e-12);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Deterministic bounded random samples in [lo, hi].
inline std::vector<double> random_samples(std::mt19937_64& rng, std::size_t n, double lo,
                                          double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

/// Observed convergence order from errors at h and h/2.
inline double observed_order(double e1, double e2) { return std::log2(std::abs(e1 / e2)); }

} // namespace testsupport

#endif
