// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_SERIES_HPP
#define SHINTANI_SERIES_HPP

#include "core.hpp"

namespace shintani {

// Multiple Dirichlet series sum_{m >= 0} e(my) / (A(x+m))^s over the box
// [0,M)^r, with Abel-type acceleration of each coordinate tail.  Requires
// strictly positive A and Re(sum s_nu) > r + 0.1.
EvalResult dirichlet_L(const SpectralPoint& s, const ShintaniDatum& datum,
                       const SeriesConfig& cfg = {});

// Bilateral one-variable series
//   (sgn a)/2 * sum_{m in Z} e(my) / |a(x+m)|_chi^s,
// the degree-1 normalized L-function for Re s > 1.1.  x may sit anywhere in
// R \ Z; the quasiperiodic phase is applied internally.
EvalResult bilateral_r1(cplx s, double a, double x, double y, int chi,
                        const SeriesConfig& cfg = {});

// Proven upper bound for the absolute tail of the plain box truncation,
// monotone decreasing in M.  +inf when the comparison series diverges
// (sum of Re s_nu <= r).
double tail_bound(const ShintaniDatum& datum, std::span<const double> re_s,
                  long M);

namespace detail {

// Accelerated sum_{m>=0} z^m prod_nu (alpha_nu + beta_nu m)^{-s_nu} with a
// rigorous remainder bound (all beta_nu > 0, |z| = 1, z != 1).
struct PowerProductSum {
  cplx value;
  double rem;
};
PowerProductSum power_product_sum(std::span<const cplx> s,
                                  std::span<const double> alpha,
                                  std::span<const double> beta, cplx z,
                                  double tol, long max_M);

} // namespace detail

} // namespace shintani

#endif
