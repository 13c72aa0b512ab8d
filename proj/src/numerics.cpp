#include "dtco/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace dtco {

double hermite(int order, double x) {
    if (order < 0 || order > kMaxHermiteOrder) {
        throw std::out_of_range(
            fmt::format("hermite: order {} outside [0, {}]", order, kMaxHermiteOrder));
    }
    double prev = 1.0;
    if (order == 0) return prev;
    double cur = 2.0 * x;
    for (int y = 1; y < order; ++y) {
        const double next = 2.0 * x * cur - 2.0 * y * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void QuadratureSpec::validate() const {
    if (!(half_width_factor > 0.0) || !std::isfinite(half_width_factor)) {
        throw std::invalid_argument(
            fmt::format("quadrature half-width factor must be > 0 (got {})", half_width_factor));
    }
    if (points_per_axis < 11) {
        throw std::invalid_argument(
            fmt::format("quadrature needs at least 11 points per axis (got {})", points_per_axis));
    }
}

QuadratureGrid trapezoid_grid(double start, double stop, int points) {
    if (points < 2 || !(stop > start)) {
        throw std::invalid_argument("trapezoid_grid: need points >= 2 and stop > start");
    }
    QuadratureGrid g;
    g.nodes.resize(points);
    g.weights.assign(points, (stop - start) / (points - 1));
    for (int i = 0; i < points; ++i) {
        g.nodes[i] = start + (stop - start) * i / (points - 1);
    }
    g.weights.front() *= 0.5;
    g.weights.back() *= 0.5;
    return g;
}

QuadratureGrid gauss_hermite_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_rule: need n >= 1");
    // Newton iteration on the orthonormal Hermite functions; roots come in
    // +/- pairs so only the positive half is searched.
    QuadratureGrid g;
    g.nodes.assign(n, 0.0);
    g.weights.assign(n, 0.0);
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * g.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * g.nodes[1];
        } else {
            z = 2.0 * z - g.nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        g.nodes[i] = z;
        g.nodes[n - 1 - i] = -z;
        g.weights[i] = 2.0 / (pp * pp);
        g.weights[n - 1 - i] = g.weights[i];
    }
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
    // Ascending order.
    std::reverse(g.nodes.begin(), g.nodes.end());
    std::reverse(g.weights.begin(), g.weights.end());
    return g;
}

QuadratureGrid make_grid(const QuadratureSpec& spec, double length_scale) {
    spec.validate();
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
        throw std::invalid_argument("make_grid: length scale must be finite and > 0");
    }
    if (spec.rule == QuadratureRule::Trapezoid) {
        const double half = spec.half_width_factor * length_scale;
        return trapezoid_grid(-half, half, spec.points_per_axis);
    }
    // Absorb the exp(-x^2) weight so the grid integrates plain f(x).
    QuadratureGrid g = gauss_hermite_rule(spec.points_per_axis);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u = g.nodes[i];
        g.weights[i] *= std::exp(u * u) * length_scale;
        g.nodes[i] = u * length_scale;
    }
    return g;
}

QuadratureError::QuadratureError(std::vector<double> node)
    : std::runtime_error(fmt::format("non-finite integrand at node ({})", fmt::join(node, ", "))),
      node_(std::move(node)) {}

} // namespace dtco
