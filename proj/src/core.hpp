// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_CORE_HPP
#define SHINTANI_CORE_HPP

#include <span>
#include <vector>

#include "common.hpp"

namespace shintani {

// ---------------------------------------------------------------------------
// Elementary kernels

// e(z) = exp(2*pi*i*z).  Real arguments are reduced mod 1 first.
cplx e_of(double z);
cplx e_of(cplx z);

// Complex gamma (Lanczos, reflection for Re z < 0.5).
cplx cgamma(cplx z);

// gamma_R(s) = pi^{-s/2} Gamma(s/2), gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
// Both report poles instead of evaluating them.
cplx gamma_R(cplx s);
cplx gamma_C(cplx s);
bool gamma_R_is_pole(cplx s);
bool gamma_C_is_pole(cplx s);

// phi(t, x, y) = e(itx) / (1 - e(y + it)).  Defined for complex t; on the
// real axis it decays exponentially in both directions.
cplx phi(double t, double x, double y);
cplx phi_c(cplx t, double x, double y);

// Minimum distance from a real coordinate to the nearest integer.
double dist_to_int(double v);

// Distance from 0 to the segment {1 - e(y) q : q > 0}; lower bound for the
// modulus of phi's denominator at real arguments.
double phi_denom_clearance(double y);

// ---------------------------------------------------------------------------
// Domain types

struct ParityType {
  std::vector<int> chi; // bits
  explicit ParityType(std::vector<int> bits);
  int r() const { return static_cast<int>(chi.size()); }
  int weight() const; // sum of bits
  cplx i_chi() const; // i^{sum chi}, exact
  ParityType flipped(int mu) const; // chi + 1_mu in (Z/2)^r
  bool operator==(const ParityType& o) const { return chi == o.chi; }
};

struct SignVector {
  std::vector<int> sigma; // entries +-1
  explicit SignVector(std::vector<int> sg);
  static SignVector from_mask(int r, unsigned mask); // bit set => -1
  // prod sigma_nu^{bits_nu} for a 0/1 exponent vector.
  int power(const std::vector<int>& bits) const;
};

// The matrix A with cached determinant and inverse transpose, plus the torus
// vectors x, y.  Construction validates everything the evaluators rely on.
class ShintaniDatum {
public:
  ShintaniDatum(int r, std::span<const double> A_rowmajor,
                std::span<const double> x, std::span<const double> y);

  int r() const { return r_; }
  double a(int nu, int mu) const { return A_[nu * r_ + mu]; }
  double astar(int nu, int mu) const { return Astar_[nu * r_ + mu]; }
  const std::vector<double>& A() const { return A_; }
  const std::vector<double>& Astar() const { return Astar_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  double det() const { return det_; }
  bool positive() const;    // every entry of A strictly positive
  bool nonnegative() const; // every entry of A >= 0

  // Row-rescaled datum (sigma_nu * a_{nu mu}); torus data unchanged.
  ShintaniDatum row_signed(const SignVector& sg) const;
  // Dual datum (A*, y, 1-x) appearing on the reflected side.
  ShintaniDatum dual() const;
  // Same matrix, different torus point.
  ShintaniDatum with_torus(std::span<const double> x,
                           std::span<const double> y) const;

private:
  int r_;
  std::vector<double> A_, Astar_, x_, y_;
  double det_;
};

// u = t A for a row vector t: u_nu = sum_mu t_mu a_{mu nu}.
std::vector<double> row_times_matrix(std::span<const double> t,
                                     const ShintaniDatum& d);

// F(tA, x, y) = prod_nu phi((tA)_nu, x_nu, y_nu).
cplx F_prod(std::span<const double> t, const ShintaniDatum& d);
// G(tA, x, y) = e(xy) F(tA, x, y).
cplx G_prod(std::span<const double> t, const ShintaniDatum& d);

// Gamma factor of a parity type: prod_nu gamma_R(s_nu + chi_nu).  Reports the
// offending index on a pole.
cplx gamma_chi(std::span<const cplx> s, const ParityType& chi);
bool gamma_chi_is_pole(std::span<const cplx> s, const ParityType& chi,
                       int* offending = nullptr);

// ---------------------------------------------------------------------------
// Spectral point classification

enum class Region { RIGHT, LEFT, STRIP, LATTICE, OUTSIDE };

struct SpectralPoint {
  std::vector<cplx> s;
  explicit SpectralPoint(std::vector<cplx> sv) : s(std::move(sv)) {}
  int r() const { return static_cast<int>(s.size()); }
  Region region(double delta = 0.05) const;
  // Valid only in the LATTICE region: the integer vector.
  std::vector<long> lattice() const;
};

// ---------------------------------------------------------------------------
// Results and torus reduction

enum class Method { series, integral, contour, reflection, taylor };
const char* method_name(Method m);

struct EvalResult {
  cplx value{0.0, 0.0};
  double err = 0.0;
  Method method = Method::series;
};

struct TorusReduction {
  std::vector<double> x0, y0; // in (0,1)^r
  std::vector<long> kx, ky;
  cplx phase; // e(-kx . y); L(s,A,x,y) = phase * L(s,A,x0,y0)
};

TorusReduction reduce_torus(std::span<const double> x,
                            std::span<const double> y);

// ---------------------------------------------------------------------------
// Configuration

struct SeriesConfig {
  double tol = 1e-12;
  long max_box = 0; // 0 = per-r default: 1e6 (r=1), 4000 (r=2), 300 (r=3)
  long box_for(int r) const;
  void validate() const;
};

struct QuadConfig {
  double h = 1.0 / 16.0;   // trapezoid step on the log axis
  double cutoff = 1e-18;   // node drop threshold relative to the running peak
  int max_nodes_per_dim = 4096;
  double contour_radius = 0.0; // 0 = AUTO (pole-clearance rule)
  void validate() const;
};

} // namespace shintani

#endif
