#pragma once

#include <complex>

namespace polaron {

/// Principal-branch exponential integral E1(z) = int_z^inf dt e^{-t}/t,
/// cut along the negative real axis. On the cut itself the real principal
/// value -Ei(-Re z) is returned (zero imaginary part). Relative accuracy
/// ~1e-12 away from the cut; z = 0 is rejected.
std::complex<double> exponential_integral_e1(std::complex<double> z);

/// Real exponential integral Ei(x) for x > 0.
double exponential_integral_ei(double x);

}  // namespace polaron
