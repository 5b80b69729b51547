// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_LFUNCTION_HPP
#define SHINTANI_LFUNCTION_HPP

#include <optional>

#include "core.hpp"
#include "series.hpp"
#include "quadrature.hpp"
#include "taylor.hpp"

namespace shintani {

enum class Variant { ORDINARY, NORMALIZED, COMPLETED, R, R_COMPLETED };

enum class ForcedMethod { AUTO, DIRICHLET, INTEGRAL, CONTOUR, REFLECTION, TAYLOR };

struct EvalOptions {
  SeriesConfig series;
  QuadConfig quad;
  ForcedMethod method = ForcedMethod::AUTO;
  // Scale applied to quad.h on the reflected side of the functional
  // equation, so the two sides never share a grid.
  double reflect_h_scale = 0.8;
};

// Ordinary Shintani L-function L(s, A, x, y).  Torus coordinates may sit
// anywhere off Z; the quasiperiodic phase is applied internally.
EvalResult L_ordinary(const SpectralPoint& s, const ShintaniDatum& datum,
                      const EvalOptions& opt = {});

// Normalized L_chi = 2^{-r} sum_sigma sigma^{1-chi} L(s, sigma A, x, y),
// with routing: RIGHT/STRIP direct, LEFT by reflection through the
// functional equation, integer lattice points through the Taylor module.
EvalResult L_normalized(const SpectralPoint& s, const ShintaniDatum& datum,
                        const ParityType& chi, const EvalOptions& opt = {});

// Completed form |det A|^{1/2} Gamma_chi(s) L_chi.
EvalResult L_completed(const SpectralPoint& s, const ShintaniDatum& datum,
                       const ParityType& chi, const EvalOptions& opt = {});

// Dual family R_chi = e(xy) L_chi and its completion e(xy) * L-hat_chi.
EvalResult R_value(const SpectralPoint& s, const ShintaniDatum& datum,
                   const ParityType& chi, const EvalOptions& opt = {});
EvalResult R_completed(const SpectralPoint& s, const ShintaniDatum& datum,
                       const ParityType& chi, const EvalOptions& opt = {});

// Evaluate by reflection: L_chi(s) from the right-hand side of
//   Lhat_chi(s,A,x,y) = i_chi e(-xy) Lhat_chi(1-s, A*, y, 1-x).
EvalResult continue_L(const SpectralPoint& s, const ShintaniDatum& datum,
                      const ParityType& chi, const EvalOptions& opt = {});

// | Lhat_chi(s,A,x,y) - i_chi e(-xy) Lhat_chi(1-s,A*,y,1-x) |, the two
// sides evaluated on independent grids.
double fe_residual(const SpectralPoint& s, const ShintaniDatum& datum,
                   const ParityType& chi, const EvalOptions& opt = {},
                   cplx* lhs_out = nullptr, cplx* rhs_out = nullptr);

// Residuals of the differential relations, checked with 5-point central
// differences (h_fd = 1e-3):
//   d/dx_nu L_chi(s)   = - sum_mu a_{mu nu} s_mu L_{chi+1_mu}(s + 1_mu)
//   d/dy_nu R_chi(s)   = 2 pi i sum_mu a*_{mu nu} R_{chi+1_mu}(s - 1_mu)
enum class DerivativeKind { X_ON_L, Y_ON_R };
double derivative_residual(const SpectralPoint& s, const ShintaniDatum& datum,
                           const ParityType& chi, int direction,
                           DerivativeKind kind, const EvalOptions& opt = {});

// Generic dispatch used by the C API and the CLI.
EvalResult evaluate(Variant variant, const SpectralPoint& s,
                    const ShintaniDatum& datum, const ParityType& chi,
                    const EvalOptions& opt = {});

} // namespace shintani

#endif
