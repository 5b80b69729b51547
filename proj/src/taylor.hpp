// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_TAYLOR_HPP
#define SHINTANI_TAYLOR_HPP

#include <map>

#include "core.hpp"

namespace shintani {

struct MultiIndex {
  std::vector<int> k;
  explicit MultiIndex(std::vector<int> kk);
  int r() const { return static_cast<int>(k.size()); }
  int degree() const; // |k|
  double factorial() const; // prod k_nu!
};

// Complex coefficients of a multivariate power series truncated at total
// degree K.  Absent indices are zero.
class TruncatedSeries {
public:
  TruncatedSeries(int r, int K);
  int r() const { return r_; }
  int K() const { return K_; }
  cplx coeff(const std::vector<int>& k) const;
  void set(const std::vector<int>& k, cplx v);
  void add(const std::vector<int>& k, cplx v);
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  const std::map<std::vector<int>, cplx>& coeffs() const { return c_; }

private:
  int r_, K_;
  std::map<std::vector<int>, cplx> c_;
};

// Taylor coefficients c_0..c_K of phi(u, x, y) around u = 0, from the
// triangular recurrence obtained by multiplying through by the denominator:
//   c_n (1 - e(y)) = (-2 pi x)^n / n! + e(y) sum_{j<n} (-2 pi)^{n-j}/(n-j)! c_j.
std::vector<cplx> phi_coeffs(double x, double y, int K);

// F(tA,x,y) as a truncated series in t; extraction of
//   B_k = k! / (-2 pi)^{|k|} [t^k] F(tA,x,y).
TruncatedSeries compose_F_series(const ShintaniDatum& datum, int K);
cplx bernoulli_B(const MultiIndex& k, const ShintaniDatum& datum);

// L_chi(-k) = B_k if k = 1 - chi (mod 2), else exactly 0.
EvalResult special_value_neg(const MultiIndex& k, const ShintaniDatum& datum,
                             const ParityType& chi);

// For k >= 1 with k = chi (mod 2):
//   L_chi(k) = |det A|^{-1} e(-xy) B_{k-1}(A*, y, 1-x) (2 pi i)^{|k|} /
//              (2^r prod (k_nu - 1)!).
EvalResult special_value_pos(const MultiIndex& k, const ShintaniDatum& datum,
                             const ParityType& chi);

} // namespace shintani

#endif
