#pragma once

#include <cstddef>
#include <vector>

#include "eihlab/market_model.hpp"

namespace eihlab::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule for the probabilists' weight: sum w_k f(x_k)
/// approximates E f(xi), xi ~ N(0,1).
Rule gauss_hermite(std::size_t n);

/// Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(std::size_t n);

/// Numerical E(e^{u.xi} 1{v.xi >= c}) for xi ~ N(0, I_2). The integral is
/// taken in coordinates aligned with v: Gauss-Hermite across v, where the
/// integrand is smooth, and composite Gauss-Legendre along v over the
/// half-line cut by the indicator (a tensor Gauss-Hermite rule cannot resolve
/// the discontinuity to 1e-8).
double halfspace_expectation(const Vec2& u, const Vec2& v, double c, std::size_t hermite_nodes = 64,
                             std::size_t legendre_nodes = 64);

} // namespace eihlab::quadrature
