#include "polaron/expint.hpp"

#include <cmath>
#include <limits>

#include "polaron/errors.hpp"

namespace polaron {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

using complexd = std::complex<double>;

// E1(z) = -gamma - log z - sum_{k>=1} (-z)^k / (k k!). Accurate at small |z|
// and, since E1 grows like e^{-Re z} there, all the way out to |z| ~ 30 near
// the cut where the continued fraction degrades.
complexd e1_series(complexd z) {
    complexd sum = 0.0;
    complexd term = 1.0;
    for (int k = 1; k < 160; ++k) {
        term *= -z / static_cast<double>(k);
        const complexd contribution = term / static_cast<double>(k);
        sum += contribution;
        if (std::abs(contribution) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return -kEulerGamma - std::log(z) - sum;
}

// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))), modified Lentz.
complexd e1_continued_fraction(complexd z) {
    const double tiny = 1e-290;
    complexd b = z + 1.0;
    complexd c = 1.0 / tiny;
    complexd d = 1.0 / b;
    complexd h = d;
    for (int j = 1; j < 400; ++j) {
        const complexd a = -static_cast<double>(j) * static_cast<double>(j);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const complexd delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-z);
}

}  // namespace

double exponential_integral_ei(double x) {
    if (!(x > 0.0)) throw ConfigError("Ei(x) implemented for x > 0");
    if (x < 40.0) {
        // Ei(x) = gamma + ln x + sum x^k/(k k!), all terms positive.
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k < 120; ++k) {
            term *= x / k;
            const double contribution = term / k;
            sum += contribution;
            if (contribution < 1e-17 * sum) break;
        }
        return kEulerGamma + std::log(x) + sum;
    }
    // Asymptotic e^x/x (1 + 1/x + 2!/x^2 + ...), truncated at the smallest term.
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(x) / x * sum;
}

complexd exponential_integral_e1(complexd z) {
    if (z == complexd(0.0, 0.0))
        throw ConfigError("E1(z) has a logarithmic singularity at z = 0");
    if (z.imag() == 0.0 && z.real() < 0.0)
        return complexd(-exponential_integral_ei(-z.real()), 0.0);
    if (std::abs(z) <= 4.0 || (std::abs(std::arg(z)) >= 2.4 && std::abs(z) <= 30.0))
        return e1_series(z);
    if (z.real() > 700.0) return 0.0;  // e^{-z} underflows
    return e1_continued_fraction(z);
}

}  // namespace polaron
