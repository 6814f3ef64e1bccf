#include "eihlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eihlab::quadrature {

namespace {

constexpr int kMaxNewton = 100;

} // namespace

Rule gauss_hermite(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    // Roots of the physicists' H_n via Newton on the orthonormal recurrence,
    // then rescaled to the N(0,1) weight.
    Rule phys;
    phys.nodes.assign(n, 0.0);
    phys.weights.assign(n, 0.0);
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const auto nd = static_cast<double>(n);
    double z = 0.0;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * nd + 1.0) - 1.85575 * std::pow(2.0 * nd + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(nd, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * phys.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * phys.nodes[1];
        } else {
            z = 2.0 * z - phys.nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const auto jd = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * nd) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        phys.nodes[i] = z;
        phys.nodes[n - 1 - i] = -z;
        phys.weights[i] = 2.0 / (pp * pp);
        phys.weights[n - 1 - i] = phys.weights[i];
    }
    // int e^{-x^2} f(x) dx  ->  E f(xi):  x = xi / sqrt(2), weight / sqrt(pi).
    Rule out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.nodes[i] = std::numbers::sqrt2 * phys.nodes[i];
        out.weights[i] = phys.weights[i] / std::sqrt(std::numbers::pi);
    }
    return out;
}

Rule gauss_legendre(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    Rule out;
    out.nodes.assign(n, 0.0);
    out.weights.assign(n, 0.0);
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const auto jd = static_cast<double>(j);
                p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
            }
            pp = nd * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        out.nodes[i] = -z;
        out.nodes[n - 1 - i] = z;
        out.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        out.weights[n - 1 - i] = out.weights[i];
    }
    return out;
}

double halfspace_expectation(const Vec2& u, const Vec2& v, double c, std::size_t hermite_nodes,
                             std::size_t legendre_nodes) {
    const double norm_v = std::hypot(v[0], v[1]);
    if (norm_v == 0.0) throw std::invalid_argument("halfspace_expectation: v must be nonzero");
    // Rotate: eta_1 = v.xi/|v|, eta_2 along the unit normal. u.xi = a eta_1 + b eta_2.
    const Vec2 along{v[0] / norm_v, v[1] / norm_v};
    const Vec2 across{-along[1], along[0]};
    const double a = u[0] * along[0] + u[1] * along[1];
    const double b = u[0] * across[0] + u[1] * across[1];
    const double cut = c / norm_v;

    const Rule hermite = gauss_hermite(hermite_nodes);
    double across_factor = 0.0;
    for (std::size_t k = 0; k < hermite.nodes.size(); ++k) {
        across_factor += hermite.weights[k] * std::exp(b * hermite.nodes[k]);
    }

    // e^{a x} phi(x) on [cut, inf) peaks at x = a and is below e^{-200} of
    // its peak outside a -/+ 20.
    const double lower = std::max(cut, a - 20.0);
    const double upper = std::max(cut, a) + 20.0;
    const Rule legendre = gauss_legendre(legendre_nodes);
    const int panels = 16;
    const double width = (upper - lower) / panels;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double along_factor = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = lower + width * p;
        const double mid = lo + 0.5 * width;
        double panel = 0.0;
        for (std::size_t k = 0; k < legendre.nodes.size(); ++k) {
            const double x = mid + 0.5 * width * legendre.nodes[k];
            panel += legendre.weights[k] * std::exp(a * x - 0.5 * x * x);
        }
        along_factor += 0.5 * width * panel;
    }
    return across_factor * along_factor * inv_sqrt_2pi;
}

} // namespace eihlab::quadrature
