// SPDX-License-Identifier: Apache-2.0
#include "taylor.hpp"

#include <algorithm>
#include <cmath>

namespace shintani {

namespace {
constexpr int kMaxK = 16;
constexpr int kMaxR = 6;
} // namespace

MultiIndex::MultiIndex(std::vector<int> kk) : k(std::move(kk)) {
  for (int v : k)
    if (v < 0) fail(Status::invalid_argument, "multi-index entries must be >= 0");
}

int MultiIndex::degree() const {
  int d = 0;
  for (int v : k) d += v;
  return d;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : k)
    for (int j = 2; j <= v; ++j) f *= j;
  return f;
}

TruncatedSeries::TruncatedSeries(int r, int K) : r_(r), K_(K) {
  if (r < 1 || r > kMaxR || K < 0 || K > kMaxK)
    fail(Status::cap_exceeded, "series cap: K <= 16, r <= 6");
}

cplx TruncatedSeries::coeff(const std::vector<int>& k) const {
  auto it = c_.find(k);
  return it == c_.end() ? cplx(0.0, 0.0) : it->second;
}

void TruncatedSeries::set(const std::vector<int>& k, cplx v) { c_[k] = v; }

void TruncatedSeries::add(const std::vector<int>& k, cplx v) {
  auto [it, fresh] = c_.emplace(k, v);
  if (!fresh) it->second += v;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (r_ != o.r_ || K_ != o.K_)
    fail(Status::invalid_argument, "series shape mismatch");
  TruncatedSeries out(r_, K_);
  std::vector<int> idx(r_);
  for (const auto& [ka, va] : c_) {
    int da = 0;
    for (int v : ka) da += v;
    for (const auto& [kb, vb] : o.c_) {
      int db = 0;
      for (int v : kb) db += v;
      if (da + db > K_) continue;
      for (int i = 0; i < r_; ++i) idx[i] = ka[i] + kb[i];
      out.add(idx, va * vb);
    }
  }
  return out;
}

std::vector<cplx> phi_coeffs(double x, double y, int K) {
  if (dist_to_int(y) < 1e-9)
    fail(Status::domain_error, "y within 1e-9 of an integer");
  if (K < 0 || K > kMaxK) fail(Status::cap_exceeded, "K <= 16");
  cplx ey = e_of(y);
  cplx one_minus = 1.0 - ey;
  std::vector<cplx> c(K + 1);
  // powers (-2 pi)^n / n! and (-2 pi x)^n / n!
  std::vector<double> pw(K + 1, 1.0), pwx(K + 1, 1.0);
  for (int n = 1; n <= K; ++n) {
    pw[n] = pw[n - 1] * (-kTwoPi) / n;
    pwx[n] = pwx[n - 1] * (-kTwoPi * x) / n;
  }
  c[0] = 1.0 / one_minus;
  for (int n = 1; n <= K; ++n) {
    cplx rhs = pwx[n];
    for (int j = 0; j < n; ++j) rhs += ey * pw[n - j] * c[j];
    c[n] = rhs / one_minus;
  }
  return c;
}

TruncatedSeries compose_F_series(const ShintaniDatum& datum, int K) {
  const int r = datum.r();
  if (r > kMaxR || K > kMaxK)
    fail(Status::cap_exceeded, "series cap: K <= 16, r <= 6");

  // powers of the linear form L_nu(t) = sum_mu a_{mu nu} t_mu, built
  // iteratively: form^n = form^{n-1} * form.
  auto linear_form = [&](int nu) {
    TruncatedSeries f(r, K);
    std::vector<int> idx(r, 0);
    for (int mu = 0; mu < r; ++mu) {
      idx[mu] = 1;
      f.set(idx, datum.a(mu, nu));
      idx[mu] = 0;
    }
    return f;
  };

  TruncatedSeries total(r, K);
  total.set(std::vector<int>(r, 0), 1.0);
  for (int nu = 0; nu < r; ++nu) {
    std::vector<cplx> c = phi_coeffs(datum.x()[nu], datum.y()[nu], K);
    TruncatedSeries factor(r, K);
    factor.set(std::vector<int>(r, 0), c[0]);
    TruncatedSeries form = linear_form(nu);
    TruncatedSeries pw = form;
    for (int n = 1; n <= K; ++n) {
      for (const auto& [k, v] : pw.coeffs()) {
        std::vector<int> kk = k;
        factor.add(kk, c[n] * v);
      }
      if (n < K) pw = pw * form;
    }
    total = total * factor;
  }
  return total;
}

cplx bernoulli_B(const MultiIndex& k, const ShintaniDatum& datum) {
  if (k.r() != datum.r()) fail(Status::invalid_argument, "dimension mismatch");
  int K = k.degree();
  TruncatedSeries F = compose_F_series(datum, K);
  // B_k = [t^k] F * k! / (-2 pi)^{|k|}
  double scale = k.factorial() / std::pow(-kTwoPi, K);
  return F.coeff(k.k) * scale;
}

EvalResult special_value_neg(const MultiIndex& k, const ShintaniDatum& datum,
                             const ParityType& chi) {
  if (k.r() != datum.r() || chi.r() != datum.r())
    fail(Status::invalid_argument, "dimension mismatch");
  for (int nu = 0; nu < k.r(); ++nu)
    if ((k.k[nu] & 1) == (chi.chi[nu] & 1)) // k = 1 - chi fails at nu
      return {cplx(0.0, 0.0), 0.0, Method::taylor};
  cplx b = bernoulli_B(k, datum);
  return {b, 1e-14 * std::abs(b) * (1 + k.degree()), Method::taylor};
}

EvalResult special_value_pos(const MultiIndex& k, const ShintaniDatum& datum,
                             const ParityType& chi) {
  if (k.r() != datum.r() || chi.r() != datum.r())
    fail(Status::invalid_argument, "dimension mismatch");
  const int r = datum.r();
  std::vector<int> km1(r);
  for (int nu = 0; nu < r; ++nu) {
    if (k.k[nu] < 1)
      fail(Status::invalid_argument, "positive formula needs k_nu >= 1");
    if ((k.k[nu] & 1) != (chi.chi[nu] & 1))
      fail(Status::parity_mismatch, "k = chi (mod 2) required");
    km1[nu] = k.k[nu] - 1;
  }
  ShintaniDatum dual = datum.dual();
  cplx b = bernoulli_B(MultiIndex(km1), dual);
  double xy = 0.0;
  for (int nu = 0; nu < r; ++nu) xy += datum.x()[nu] * datum.y()[nu];
  cplx twopii = cplx(0.0, kTwoPi);
  cplx val = b * e_of(-xy) / std::abs(datum.det());
  val *= std::pow(twopii, k.degree());
  val /= std::pow(2.0, r) * MultiIndex(km1).factorial();
  return {val, 1e-13 * std::abs(val) * (1 + k.degree()), Method::taylor};
}

} // namespace shintani
