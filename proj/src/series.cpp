// SPDX-License-Identifier: Apache-2.0
#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace shintani {
namespace detail {

namespace {

constexpr int kOrder = 6; // Abel summation depth

// Forward difference table row: Delta^q f(M) for q = 0..p from samples
// f(M), ..., f(M+p).
std::vector<cplx> forward_differences(std::vector<cplx> f) {
  std::vector<cplx> out;
  out.reserve(f.size());
  out.push_back(f[0]);
  for (size_t q = 1; q < f.size(); ++q) {
    for (size_t i = 0; i + q < f.size(); ++i) f[i] = f[i + 1] - f[i];
    out.push_back(f[0]);
  }
  return out;
}

// Boundary-corrected tail: sum_{m>=M} z^m f(m) =
//   sum_{q<p} (z/(1-z))^q z^M/(1-z) Delta^q f(M)  +  remainder,
// |remainder| <= |1-z|^{-p} sum_{m>=M} |Delta^p f(m)|.
cplx abel_boundary(cplx z, long M, std::span<const cplx> deltas, int p) {
  cplx zM = std::pow(z, static_cast<double>(M));
  cplx w = z / (1.0 - z);
  cplx acc = 0.0, wq = 1.0;
  for (int q = 0; q < p; ++q) {
    acc += wq * deltas[q];
    wq *= w;
  }
  return acc * zM / (1.0 - z);
}

} // namespace

PowerProductSum power_product_sum(std::span<const cplx> s,
                                  std::span<const double> alpha,
                                  std::span<const double> beta, cplx z,
                                  double tol, long max_M) {
  const int n = static_cast<int>(s.size());
  const int p = kOrder;
  const double one_minus_z = std::abs(1.0 - z);
  if (one_minus_z < 1e-8)
    fail(Status::domain_error, "phase e(y) too close to 1");

  // Factors with beta = 0 are constants in m; only the active forms drive
  // the Cauchy radius and the envelopes.
  double sigma_T = 0.0, im_sum = 0.0, P = 0.0, N = 0.0;
  double amin = 1e300, amax = 0.0, bmin = 1e300, bmax = 0.0;
  int n_active = 0;
  for (int i = 0; i < n; ++i) {
    if (beta[i] < 0.0 || !(alpha[i] > 0.0))
      fail(Status::non_positive_matrix, "nonpositive linear form");
    if (beta[i] == 0.0) continue;
    ++n_active;
    sigma_T += s[i].real();
    im_sum += std::abs(s[i].imag());
    if (s[i].real() >= 0.0) P += s[i].real();
    else N += -s[i].real();
    amin = std::min(amin, alpha[i]);
    amax = std::max(amax, alpha[i]);
    bmin = std::min(bmin, beta[i]);
    bmax = std::max(bmax, beta[i]);
  }

  auto f = [&](double v) {
    cplx acc = 1.0;
    for (int i = 0; i < n; ++i)
      acc *= cpow_pos(alpha[i] + beta[i] * v, -s[i]);
    return acc;
  };

  // Rigorous remainder via a Cauchy estimate on |zeta - v| = R(v),
  // R(v) = min over active forms of (alpha_i + beta_i v) / (2 beta_i).
  double C0 = 1.0;
  double K = std::exp(0.5 * kPi * im_sum);
  for (int i = 0; i < n; ++i) {
    if (beta[i] == 0.0) {
      C0 *= std::pow(alpha[i], -s[i].real());
      continue;
    }
    K *= s[i].real() >= 0.0 ? std::pow(2.0, s[i].real())
                            : std::pow(1.5, -s[i].real());
  }
  double pfact = 1.0;
  for (int q = 2; q <= p; ++q) pfact *= q;

  auto remainder_bound = [&](long M) {
    if (n_active == 0) return 0.0; // geometric series, boundary term exact
    double ell = amin + bmin * static_cast<double>(M); // lower envelope at M
    double kap = (amax + bmax * static_cast<double>(M)) / ell;
    double decay = P - N;
    if (decay + p <= 1.0) return 1e300;
    double c = C0 * pfact * K * std::pow(kap, N) * std::pow(2.0 * bmax, p);
    double head = c * std::pow(ell, -(decay + p));
    double integral = c * std::pow(ell, 1.0 - decay - p) / (bmin * (decay + p - 1.0));
    return (head + integral) / std::pow(one_minus_z, p);
  };

  long M = 32;
  while (M < max_M && remainder_bound(M) > 0.5 * tol) M *= 2;
  M = std::min(M, max_M);
  double rem = remainder_bound(M);
  if (rem > tol && M >= max_M)
    fail(Status::truncation_failure,
         "series tail bound cannot reach tol within max_box");

  KahanSum acc;
  cplx zm = 1.0;
  for (long m = 0; m < M; ++m) {
    acc.add(zm * f(static_cast<double>(m)));
    zm *= z;
  }
  std::vector<cplx> samples(p + 1);
  for (int q = 0; q <= p; ++q) samples[q] = f(static_cast<double>(M + q));
  std::vector<cplx> deltas = forward_differences(samples);
  cplx tail = abel_boundary(z, M, deltas, p);
  return {acc.value() + tail, rem};
}

namespace {

// Accelerated sum over one coordinate where f is an arbitrary callable
// (outer levels of the nested box sum).  The remainder is estimated from the
// computed p-th difference with the same shape as the rigorous bound.
struct GenericSum {
  cplx value;
  double rem_est;
};

GenericSum generic_accel_sum(const std::function<cplx(long)>& f, cplx z,
                             double sigma_T, double ell_slope, double ell_off,
                             long M, int p) {
  const double one_minus_z = std::abs(1.0 - z);
  KahanSum acc;
  cplx zm = 1.0;
  for (long m = 0; m < M; ++m) {
    acc.add(zm * f(m));
    zm *= z;
  }
  std::vector<cplx> samples(p + 1);
  for (int q = 0; q <= p; ++q) samples[q] = f(M + q);
  std::vector<cplx> deltas = forward_differences(samples);
  cplx tail = abel_boundary(z, M, deltas, p);
  double ell = ell_off + ell_slope * static_cast<double>(M);
  double geom = 1.0 + ell / (std::max(ell_slope, 1e-30) * (sigma_T + p - 1.0));
  double rem = 2.0 * std::abs(deltas[p]) * geom / std::pow(one_minus_z, p);
  return {acc.value() + tail, rem};
}

} // namespace
} // namespace detail

EvalResult dirichlet_L(const SpectralPoint& s, const ShintaniDatum& datum,
                       const SeriesConfig& cfg) {
  cfg.validate();
  const int r = datum.r();
  if (s.r() != r) fail(Status::invalid_argument, "dimension mismatch");
  for (double v : datum.A())
    if (v < 0.0)
      fail(Status::non_positive_matrix,
           "series route requires entrywise nonnegative A");
  double sigma_T = 0.0;
  for (cplx v : s.s) sigma_T += v.real();
  if (!(sigma_T > r + 0.1))
    fail(Status::region_error, "Re(sum s) must exceed r + 0.1");
  if (r > 3) fail(Status::cap_exceeded, "series box sum capped at r <= 3");

  const long max_M = cfg.box_for(r);

  if (r == 1) {
    double a = datum.a(0, 0), x = datum.x()[0];
    auto ps = detail::power_product_sum(
        s.s, std::array<double, 1>{a * x}, std::array<double, 1>{a},
        e_of(datum.y()[0]), cfg.tol, max_M);
    double rounding = 64.0 * 1e-16 * std::abs(ps.value);
    return {ps.value, ps.rem + rounding, Method::series};
  }

  // Nested box sum: outermost coordinate last.  Each level accelerates its
  // own coordinate tail; inner remainders are folded into the error.
  const int p = detail::kOrder;
  double inner_err = 0.0;

  // Evaluate sum over coordinates 0..level with coordinates level+1..r-1
  // fixed at the values in m_fixed.
  std::function<cplx(int, std::vector<long>&, long)> eval =
      [&](int level, std::vector<long>& m_fixed, long M) -> cplx {
    if (level == 0) {
      // Innermost: rigorous power-product acceleration in m_0.
      std::vector<double> alpha(r), beta(r);
      for (int nu = 0; nu < r; ++nu) {
        double off = 0.0;
        for (int mu = 0; mu < r; ++mu) {
          double coord = datum.x()[mu] + (mu == 0 ? 0.0 : m_fixed[mu]);
          if (mu != 0) off += datum.a(nu, mu) * coord;
          else off += datum.a(nu, mu) * datum.x()[mu];
        }
        alpha[nu] = off;
        beta[nu] = datum.a(nu, 0);
      }
      auto ps = detail::power_product_sum(s.s, alpha, beta, e_of(datum.y()[0]),
                                          cfg.tol / (8.0 * std::sqrt(double(M))),
                                          max_M);
      inner_err += ps.rem / static_cast<double>(M);
      return ps.value;
    }
    auto f = [&](long m) -> cplx {
      m_fixed[level] = m;
      return eval(level - 1, m_fixed, M);
    };
    double amin = 1e300, bmin = 1e300;
    for (int nu = 0; nu < r; ++nu) {
      double off = 0.0;
      for (int mu = 0; mu < r; ++mu) off += datum.a(nu, mu) * datum.x()[mu];
      amin = std::min(amin, off);
      if (datum.a(nu, level) > 0.0) bmin = std::min(bmin, datum.a(nu, level));
    }
    auto gs = detail::generic_accel_sum(f, e_of(datum.y()[level]), sigma_T,
                                        bmin, amin, M, p);
    if (level == r - 1) inner_err += gs.rem_est;
    else inner_err += gs.rem_est / static_cast<double>(M);
    return gs.value;
  };

  long M = 64;
  std::vector<long> fix(r, 0);
  inner_err = 0.0;
  cplx v1 = eval(r - 1, fix, M);
  cplx v2 = 0.0;
  double e2 = 0.0;
  while (true) {
    long M2 = std::min(2 * M, max_M);
    inner_err = 0.0;
    v2 = eval(r - 1, fix, M2);
    e2 = inner_err;
    if (std::abs(v2 - v1) + e2 <= cfg.tol || M2 >= max_M) {
      if (std::abs(v2 - v1) + e2 > cfg.tol)
        fail(Status::truncation_failure,
             "box sum did not reach tol within max_box");
      break;
    }
    M = M2;
    v1 = v2;
  }
  double rounding = 1e-15 * std::abs(v2) * std::sqrt(double(M));
  return {v2, std::abs(v2 - v1) + e2 + rounding, Method::series};
}

EvalResult bilateral_r1(cplx s, double a, double x, double y, int chi,
                        const SeriesConfig& cfg) {
  cfg.validate();
  if (a == 0.0) fail(Status::singular_matrix, "a must be nonzero");
  if (!(s.real() > 1.1)) fail(Status::region_error, "Re s must exceed 1.1");
  if (chi != 0 && chi != 1) fail(Status::invalid_argument, "chi bit");
  // x anywhere off Z: reduce to (0,1) with the quasiperiodic phase e(-kx y).
  TorusReduction red = reduce_torus(std::array<double, 1>{x},
                                    std::array<double, 1>{y});
  double x0 = red.x0[0], y0 = red.y0[0];
  double absa = std::abs(a);
  int sgn = a > 0 ? 1 : -1;
  long max_M = cfg.box_for(1);

  // m >= 0 half: sgn(a)^chi |a|^{-s} sum e(m y)(x+m)^{-s}.
  auto pos = detail::power_product_sum(
      std::span<const cplx>(&s, 1), std::array<double, 1>{x0},
      std::array<double, 1>{1.0}, e_of(y0), cfg.tol / 2, max_M);
  // m <= -1 half: (-sgn(a))^chi e(-y) |a|^{-s} sum e(-n y)(n + 1 - x)^{-s}.
  auto neg = detail::power_product_sum(
      std::span<const cplx>(&s, 1), std::array<double, 1>{1.0 - x0},
      std::array<double, 1>{1.0}, e_of(-y0), cfg.tol / 2, max_M);

  cplx scale = cpow_pos(absa, -s);
  cplx chi_pos = chi ? cplx(sgn, 0) : cplx(1, 0);
  cplx chi_neg = chi ? cplx(-sgn, 0) : cplx(1, 0);
  cplx val = 0.5 * static_cast<double>(sgn) * scale *
             (chi_pos * pos.value + chi_neg * e_of(-y0) * neg.value);
  val *= red.phase;
  double err = 0.5 * std::abs(scale) * (pos.rem + neg.rem) +
               32.0 * 1e-16 * std::abs(val);
  return {val, err, Method::series};
}

double tail_bound(const ShintaniDatum& datum, std::span<const double> re_s,
                  long M) {
  const int r = datum.r();
  if (static_cast<int>(re_s.size()) != r)
    fail(Status::invalid_argument, "dimension mismatch");
  if (!datum.positive())
    fail(Status::non_positive_matrix, "tail bound requires positive A");
  double sigma_T = 0.0;
  for (double v : re_s) sigma_T += v;
  if (!(sigma_T > r)) return 1e300;

  double amin = 1e300;
  for (double v : datum.A()) amin = std::min(amin, v);
  double xsum = 0.0;
  for (double v : datum.x()) xsum += v;

  // ell_nu(m) >= amin (xsum + |m|_1); count of |m|_1 = n is C(n+r-1, r-1).
  double q = static_cast<double>(r) - 1.0 - sigma_T; // < -1
  double Mr = static_cast<double>(M + r);
  double kappa = Mr / (static_cast<double>(M) + xsum);
  double fact = 1.0;
  for (int i = 2; i < r; ++i) fact *= i;
  double head = std::pow(Mr, q);
  double integral = std::pow(Mr, q + 1.0) / (-1.0 - q);
  return std::pow(amin, -sigma_T) * std::pow(kappa, sigma_T) / fact *
         (head + integral);
}

} // namespace shintani
