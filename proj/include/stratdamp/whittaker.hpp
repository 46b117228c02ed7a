#pragma once

#include "stratdamp/types.hpp"

// Whittaker functions with kappa = 0, evaluated on the principal branch.
//   M_{0,g}(z) = z^{1/2+g} E_g(z),  E_g(z) = sum_j (z^2/16)^j / (j! (1+g)_j)
//   W_{0,g}(z) = sqrt(z/pi) K_g(z/2)
namespace stratdamp {

inline constexpr double kSeriesRadius = 40.0;
inline constexpr int kSeriesMaxTerms = 200;
inline constexpr double kSmallGammaSwitch = 0.05;

Complex complex_gamma(Complex z);
Complex complex_log_gamma(Complex z);
Complex digamma_at_half_integer(int twice_arg);  // psi(n/2) for n >= 1

// Entire even factor E_g(z) of M_{0,g}.
Complex whittaker_E(Complex gamma, Complex zeta);
// d/dz E_g(z).
Complex whittaker_E_derivative(Complex gamma, Complex zeta);

Complex whittaker_M(Complex gamma, Complex zeta);
// M_{0,g} on an explicit branch: zeta = exp(log_zeta).
Complex whittaker_M_log(Complex gamma, Complex log_zeta);
Complex whittaker_M_derivative(Complex gamma, Complex zeta);

Complex whittaker_W(Complex gamma, Complex zeta);
// W_{0,g} on an explicit branch through the connection formula with M_{0,+-g}.
// Requires gamma != 0.
Complex whittaker_W_log(Complex gamma, Complex log_zeta);
// Digamma-weighted series for W_{0,0}.
Complex whittaker_W00_series(Complex zeta);
// sqrt(z/pi) * integral_0^inf exp(-z cosh t / 2) cosh(g t) dt; valid for Re z > 0.
Complex whittaker_W_integral(Complex gamma, Complex zeta);

// Q_g(z) = (z^{2g} - 1) / (2 g log z) = integral_0^1 z^{2 g s} ds.
Complex q_gamma(Complex gamma, Complex zeta);
// (z^{2g} - z^{-2g}) / (2g) - 2 log z, the O(g^2) remainder of the log split.
Complex log_split_remainder(Complex gamma, Complex zeta);

// M_{0,g}(z e^{+-i pi}) = +-i e^{+-g pi i} M_{0,g}(z).
Complex continue_M(Complex gamma, Complex zeta, Side side);
// W_{0,g}(z e^{+-i pi}) = Gamma(1/2+g)/Gamma(1+2g) M_{0,g}(z) +- i e^{-+g pi i} W_{0,g}(z).
Complex continue_W(Complex gamma, Complex zeta, Side side);

// Wronskian W{M_{0,g}, W_{0,g}} in the argument z.
Complex whittaker_MW_wronskian(Complex gamma);

}  // namespace stratdamp
