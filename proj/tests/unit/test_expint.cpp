#include <doctest.h>

#include <cmath>
#include <complex>

#include "polaron/expint.hpp"
#include "polaron/quadrature.hpp"

using namespace polaron;
using complexd = std::complex<double>;

namespace {

// Defining integral E1(z) = e^{-z} int_0^inf e^{-z s} / (1 + s) ds, Re z > 0.
// Slowly convergent but fine as an independent oracle at moderate |z|.
complexd e1_by_quadrature(complexd z) {
    const double limit = 2000.0 / std::abs(z);
    return std::exp(-z) * integrate(
                              [&](double s) -> complexd {
                                  return std::exp(-z * s) / (1.0 + s);
                              },
                              0.0, limit, 1e-13);
}

}  // namespace

TEST_CASE("E1 at unity") {
    const complexd value = exponential_integral_e1(1.0);
    CHECK(value.real() == doctest::Approx(0.2193839).epsilon(5e-7));
    CHECK(value.imag() == 0.0);
    CHECK(value.real() == doctest::Approx(e1_by_quadrature(1.0).real()).epsilon(1e-10));
}

TEST_CASE("E1 against the defining integral") {
    for (complexd z : {complexd(0.3, 0.0), complexd(2.0, 1.5), complexd(0.5, -3.0),
                       complexd(6.0, 2.0), complexd(1.0, 8.0)}) {
        const complexd expected = e1_by_quadrature(z);
        const complexd actual = exponential_integral_e1(z);
        CHECK(std::abs(actual - expected) <= 1e-10 * std::abs(expected));
    }
}

TEST_CASE("asymptotic decay") {
    const double x = 50.0;
    const double ratio = exponential_integral_e1(x).real() / (std::exp(-x) / x);
    CHECK(std::abs(ratio - 1.0) < 0.02);
}

TEST_CASE("imaginary axis relates to the cosine integral") {
    // Re E1(i y) = -Ci(y); Ci from its defining integral by quadrature.
    const double y = 1.0;
    const double ci = 0.57721566490153286 + std::log(y) +
                      integrate([](double t) { return (std::cos(t) - 1.0) / t; }, 1e-12, y, 1e-13);
    CHECK(exponential_integral_e1(complexd(0.0, y)).real() ==
          doctest::Approx(-ci).epsilon(1e-10));
}

TEST_CASE("negative real axis uses the principal value") {
    const complexd value = exponential_integral_e1(complexd(-0.8, 0.0));
    CHECK(value.imag() == 0.0);
    CHECK(value.real() == doctest::Approx(-exponential_integral_ei(0.8)).epsilon(1e-14));
    CHECK_THROWS_AS(exponential_integral_e1(complexd(0.0, 0.0)), ConfigError);
}

TEST_CASE("derivative identity d/dz [E1 e^z] = E1 e^z - 1/z") {
    // The finite difference straddles the internal series/fraction regions at
    // |z| = 4 and |z| = 30, so a mismatch between the branches would blow up
    // the quotient.
    const complexd zs[10] = {{0.4, 0.0},  {1.1, 0.6},   {2.5, -1.0},  {5.0, 0.5},  {0.2, 2.0},
                             {7.0, -3.0}, {0.9, -0.2},  {1.7, 0.01},  std::polar(4.0, 0.9),
                             std::polar(30.0, 2.5)};
    for (const complexd& z : zs) {
        const double h = 1e-6;
        const auto f = [](complexd w) { return exponential_integral_e1(w) * std::exp(w); };
        const complexd numeric = (f(z + h) - f(z - h)) / (2.0 * h);
        const complexd analytic = f(z) - 1.0 / z;
        CHECK(std::abs(numeric - analytic) < 1e-6 * (1.0 + std::abs(analytic)));
    }
}

TEST_CASE("left half-plane reference values") {
    // Frozen from an independent evaluation of the defining integral
    // (analytically continued); the in-house series agrees term by term.
    const complexd a = exponential_integral_e1(std::polar(4.0, 1.9));
    CHECK(a.real() == doctest::Approx(0.60727727536).epsilon(1e-9));
    CHECK(a.imag() == doctest::Approx(0.67629355045).epsilon(1e-9));
    const complexd b = exponential_integral_e1(std::polar(4.0, 2.7));
    CHECK(b.real() == doctest::Approx(-5.9064736151).epsilon(1e-9));
    CHECK(b.imag() == doctest::Approx(9.8220538940).epsilon(1e-9));
}

TEST_CASE("quadrature sanity") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0, 1e-12) ==
          doctest::Approx(9.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 60.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-11));
    const complexd osc = integrate(
        [](double x) -> complexd { return std::exp(complexd(0.0, 5.0 * x)); }, 0.0, 1.0, 1e-12);
    CHECK(osc.real() == doctest::Approx(std::sin(5.0) / 5.0).epsilon(1e-11));
    CHECK(osc.imag() == doctest::Approx((1.0 - std::cos(5.0)) / 5.0).epsilon(1e-11));
}
