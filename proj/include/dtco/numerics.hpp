// Hermite polynomials and fixed-grid quadrature on a truncated box.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtco {

/// Highest Hermite order accepted; beyond it the unnormalized recurrence
/// overflows on realistic boxes.
inline constexpr int kMaxHermiteOrder = 64;

/// Physicists' Hermite polynomial H_order(x) by the three-term recurrence
/// H_{y+1} = 2x H_y - 2y H_{y-1}. Throws std::out_of_range for orders
/// outside [0, kMaxHermiteOrder].
double hermite(int order, double x);

enum class QuadratureRule { Trapezoid, GaussHermite };

/// Trapezoid: points_per_axis uniform nodes on [-c L, c L] with
/// c = half_width_factor. GaussHermite: nodes of the weight exp(-x^2/L^2),
/// half_width_factor unused. L is supplied when the grid is built.
struct QuadratureSpec {
    double half_width_factor = 8.0;
    int points_per_axis = 201;
    QuadratureRule rule = QuadratureRule::Trapezoid;

    /// Throws std::invalid_argument unless c > 0 and points_per_axis >= 11.
    void validate() const;
};

/// Nodes and weights of a one-dimensional rule; products of it serve the
/// 2D and 4D integrals.
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

QuadratureGrid make_grid(const QuadratureSpec& spec, double length_scale = 1.0);

/// Uniform inclusive grid start, ..., stop with trapezoid weights.
QuadratureGrid trapezoid_grid(double start, double stop, int points);

/// Gauss-Hermite nodes/weights for int exp(-x^2) f(x) dx.
QuadratureGrid gauss_hermite_rule(int points);

/// Raised when an integrand returns a non-finite value.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(std::vector<double> node);
    const std::vector<double>& node() const { return node_; }

private:
    std::vector<double> node_;
};

namespace detail {
inline bool finite_value(double v) { return v - v == 0.0; }
inline bool finite_value(const std::complex<double>& v) {
    return finite_value(v.real()) && finite_value(v.imag());
}
} // namespace detail

template <class F>
auto integrate_1d(F&& f, const QuadratureGrid& g) {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const R v = f(g.nodes[i]);
        if (!detail::finite_value(v)) throw QuadratureError({g.nodes[i]});
        sum += g.weights[i] * v;
    }
    return sum;
}

template <class F>
auto integrate_2d(F&& f, const QuadratureGrid& g) {
    using R = decltype(f(0.0, 0.0));
    R sum{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        R row{};
        for (std::size_t j = 0; j < g.size(); ++j) {
            const R v = f(g.nodes[i], g.nodes[j]);
            if (!detail::finite_value(v)) throw QuadratureError({g.nodes[i], g.nodes[j]});
            row += g.weights[j] * v;
        }
        sum += g.weights[i] * row;
    }
    return sum;
}

/// Nested 2D product rules; cost grows as points^4.
template <class F>
auto integrate_4d(F&& f, const QuadratureGrid& g) {
    return integrate_2d(
        [&](double a, double b) {
            return integrate_2d(
                [&](double c, double d) {
                    const auto v = f(a, b, c, d);
                    if (!detail::finite_value(v)) throw QuadratureError({a, b, c, d});
                    return v;
                },
                g);
        },
        g);
}

template <class F>
auto integrate_1d(F&& f, const QuadratureSpec& spec, double length_scale = 1.0) {
    return integrate_1d(std::forward<F>(f), make_grid(spec, length_scale));
}

template <class F>
auto integrate_2d(F&& f, const QuadratureSpec& spec, double length_scale = 1.0) {
    return integrate_2d(std::forward<F>(f), make_grid(spec, length_scale));
}

template <class F>
auto integrate_4d(F&& f, const QuadratureSpec& spec, double length_scale = 1.0) {
    return integrate_4d(std::forward<F>(f), make_grid(spec, length_scale));
}

} // namespace dtco
