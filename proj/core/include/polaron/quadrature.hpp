#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include "polaron/errors.hpp"

namespace polaron {

// Adaptive Gauss-Kronrod (G7, K15) on finite intervals. Bisects until the
// embedded error estimate meets max(rel_tol * |I|, abs_tol) on every panel.

namespace detail {

// K15 abscissae/weights on [-1, 1]; odd-indexed nodes form the G7 rule.
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

inline constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

template <typename F, typename Value>
void kronrod_panel(const F& f, double a, double b, Value& integral, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Value gauss{};
    Value kronrod{};
    for (int j = 0; j < 15; ++j) {
        const Value fx = f(mid + half * kKronrodNodes[j]);
        kronrod += kKronrodWeights[j] * fx;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fx;
    }
    integral = half * kronrod;
    error = magnitude(half * (kronrod - gauss));
}

template <typename F, typename Value>
Value integrate_recursive(const F& f, double a, double b, double rel_tol, double abs_tol,
                          double whole_scale, int depth) {
    Value integral{};
    double error = 0.0;
    kronrod_panel<F, Value>(f, a, b, integral, error);
    const double tol = std::max(abs_tol, rel_tol * std::max(whole_scale, magnitude(integral)));
    if (error <= tol || depth >= 48) return integral;
    const double mid = 0.5 * (a + b);
    return integrate_recursive<F, Value>(f, a, mid, rel_tol, abs_tol, whole_scale, depth + 1) +
           integrate_recursive<F, Value>(f, mid, b, rel_tol, abs_tol, whole_scale, depth + 1);
}

}  // namespace detail

template <typename F>
auto integrate(const F& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0) {
    using Value = decltype(f(a));
    if (!(std::isfinite(a) && std::isfinite(b))) throw ConfigError("integration limits must be finite");
    if (a == b) return Value{};
    Value rough{};
    double err = 0.0;
    detail::kronrod_panel<F, Value>(f, a, b, rough, err);
    // Seed the relative scale with a first pass, then refine panel by panel.
    const double scale = detail::magnitude(rough);
    return detail::integrate_recursive<F, Value>(f, a, b, rel_tol, abs_tol, scale, 0);
}

}  // namespace polaron
