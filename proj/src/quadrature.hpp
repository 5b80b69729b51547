// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_QUADRATURE_HPP
#define SHINTANI_QUADRATURE_HPP

#include "core.hpp"

namespace shintani {

// Positive-orthant integral representation
//   L(s,A,x,y) = 2^r / prod gamma_C(s_nu) * int_{(0,inf)^r} F(tA,x,y) t^s dt/t
// for invertible A (any sign pattern) and Re s_nu >= 0.05.  Log-axis
// trapezoid with analytic closure of the t -> 0 tails; the orthant is split
// along interior zero rays of sign-mixed columns so each piece has
// sign-definite kernel arguments (r = 2; r = 3 mixed-column data fall back
// to the unsplit grid and rely on the reported err).
EvalResult integral_L(const SpectralPoint& s, const ShintaniDatum& datum,
                      const QuadConfig& cfg = {});

// Hankel-loop representation valid for arbitrary s away from positive
// integers: each t_nu runs from +inf along arg 0, circles the origin once
// counterclockwise, and returns along arg 2pi.  Branch of t^s follows the
// path.  Prefactor prod e(-s_nu/2) gamma_C(1-s_nu) / (2i).
EvalResult contour_L(const SpectralPoint& s, const ShintaniDatum& datum,
                     const QuadConfig& cfg = {});

// Both sides of the Fourier-transform identity
//   int_{R^r} F(tA,x,y) e(tk) dt = i^r/|det A| e(-yx) F(kA*, y, 1-x).
// The left side is integrated in the A-transformed coordinates, where the
// transform factors into r one-dimensional line integrals; err covers the
// left side only.
struct FourierResult {
  EvalResult lhs;
  cplx rhs;
};
FourierResult fourier_F(const ShintaniDatum& datum, std::span<const double> k,
                        const QuadConfig& cfg = {});

namespace quad_detail {
// Exposed for tests: one orthant piece evaluated at step h and h/2.
struct PairResult {
  cplx fine, coarse;
};
PairResult orthant_pair(const SpectralPoint& s, const ShintaniDatum& datum,
                        const QuadConfig& cfg);
} // namespace quad_detail

} // namespace shintani

#endif
