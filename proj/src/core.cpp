// SPDX-License-Identifier: Apache-2.0
#include "core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace shintani {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::domain_error: return "domain_error";
    case Status::region_error: return "region_error";
    case Status::non_positive_matrix: return "non_positive_matrix";
    case Status::singular_matrix: return "singular_matrix";
    case Status::gamma_pole: return "gamma_pole";
    case Status::prefactor_pole: return "prefactor_pole";
    case Status::pole_clearance: return "pole_clearance";
    case Status::truncation_failure: return "truncation_failure";
    case Status::quadrature_failure: return "quadrature_failure";
    case Status::parity_mismatch: return "parity_mismatch";
    case Status::cap_exceeded: return "cap_exceeded";
    case Status::unsupported: return "unsupported";
    case Status::internal_error: return "internal_error";
  }
  return "unknown";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::integral: return "integral";
    case Method::contour: return "contour";
    case Method::reflection: return "reflection";
    case Method::taylor: return "taylor";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// e(z), phi

cplx e_of(double z) {
  double f = z - std::round(z); // exact for |z| < 2^52
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

cplx e_of(cplx z) { return std::exp(-kTwoPi * z.imag()) * e_of(z.real()); }

double dist_to_int(double v) { return std::abs(v - std::round(v)); }

static constexpr double kTorusGuard = 1e-9;

static void require_torus(double y) {
  if (dist_to_int(y) < kTorusGuard)
    fail(Status::domain_error, "torus coordinate within 1e-9 of an integer");
}

double phi_denom_clearance(double y) {
  double c = std::cos(kTwoPi * y);
  if (c <= 0.0) return 1.0;
  return std::abs(std::sin(kTwoPi * y));
}

cplx phi(double t, double x, double y) {
  require_torus(y);
  cplx ey = e_of(y);
  if (t >= 0.0) {
    double q = std::exp(-kTwoPi * t);
    return std::exp(-kTwoPi * t * x) / (1.0 - ey * q);
  }
  // Multiply numerator and denominator by e^{2 pi t}; stable for t < 0.
  double p = std::exp(kTwoPi * t);
  return std::exp(kTwoPi * t * (1.0 - x)) / (p - ey);
}

cplx phi_c(cplx t, double x, double y) {
  cplx ey = e_of(y);
  if (t.real() >= 0.0) {
    cplx q = std::exp(-kTwoPi * t);
    return std::exp(-kTwoPi * t * x) / (1.0 - ey * q);
  }
  cplx p = std::exp(kTwoPi * t);
  return std::exp(kTwoPi * t * (1.0 - x)) / (p - ey);
}

// ---------------------------------------------------------------------------
// Gamma family

// Lanczos approximation, g = 7, 9 coefficients (Godfrey).  Verified to
// ~2e-13 relative accuracy against 40-digit references on |Re|,|Im| <= 50.
static const double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

cplx cgamma(cplx z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z)).
    cplx s = std::sin(kPi * z);
    if (std::abs(s) == 0.0) fail(Status::gamma_pole, "gamma pole");
    return kPi / (s * cgamma(1.0 - z));
  }
  cplx zz = z - 1.0;
  cplx a = kLanczos[0];
  cplx t = zz + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (zz + static_cast<double>(i));
  return std::sqrt(2.0 * kPi) * std::pow(t, zz + 0.5) * std::exp(-t) * a;
}

static bool near_nonpos_int(cplx z, double tol = 1e-9) {
  if (std::abs(z.imag()) > tol) return false;
  double rr = std::round(z.real());
  return rr <= 0.5 && std::abs(z.real() - rr) < tol;
}

bool gamma_R_is_pole(cplx s) { return near_nonpos_int(s / 2.0); }
bool gamma_C_is_pole(cplx s) { return near_nonpos_int(s); }

cplx gamma_R(cplx s) {
  if (gamma_R_is_pole(s)) fail(Status::gamma_pole, "gamma_R pole");
  return std::exp(-(s / 2.0) * std::log(kPi)) * cgamma(s / 2.0);
}

cplx gamma_C(cplx s) {
  if (gamma_C_is_pole(s)) fail(Status::gamma_pole, "gamma_C pole");
  return 2.0 * std::exp(-s * std::log(kTwoPi)) * cgamma(s);
}

// ---------------------------------------------------------------------------
// Parity, sign vectors

ParityType::ParityType(std::vector<int> bits) : chi(std::move(bits)) {
  for (int b : chi)
    if (b != 0 && b != 1) fail(Status::invalid_argument, "parity bit not 0/1");
}

int ParityType::weight() const {
  int w = 0;
  for (int b : chi) w += b;
  return w;
}

cplx ParityType::i_chi() const {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[weight() % 4];
}

ParityType ParityType::flipped(int mu) const {
  std::vector<int> b = chi;
  b[mu] ^= 1;
  return ParityType(b);
}

SignVector::SignVector(std::vector<int> sg) : sigma(std::move(sg)) {
  for (int v : sigma)
    if (v != 1 && v != -1) fail(Status::invalid_argument, "sign entry not +-1");
}

SignVector SignVector::from_mask(int r, unsigned mask) {
  std::vector<int> sg(r, 1);
  for (int i = 0; i < r; ++i)
    if (mask & (1u << i)) sg[i] = -1;
  return SignVector(sg);
}

int SignVector::power(const std::vector<int>& bits) const {
  int p = 1;
  for (size_t i = 0; i < sigma.size(); ++i)
    if (bits[i]) p *= sigma[i];
  return p;
}

// ---------------------------------------------------------------------------
// Datum

// Dense LU with partial pivoting; returns det and writes inv into out.
static double invert(int n, const std::vector<double>& M,
                     std::vector<double>& out) {
  std::vector<double> a = M;
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
    if (std::abs(a[piv * n + col]) < 1e-14)
      fail(Status::singular_matrix, "matrix A is singular");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
      det = -det;
    }
    det *= a[col * n + col];
    double d = 1.0 / a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] *= d;
      inv[col * n + j] *= d;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      double f = a[row * n + col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[row * n + j] -= f * a[col * n + j];
        inv[row * n + j] -= f * inv[col * n + j];
      }
    }
  }
  out = inv;
  return det;
}

ShintaniDatum::ShintaniDatum(int r, std::span<const double> A_rowmajor,
                             std::span<const double> x,
                             std::span<const double> y)
    : r_(r) {
  if (r < 1 || r > 8) fail(Status::invalid_argument, "degree r out of range");
  if (static_cast<int>(A_rowmajor.size()) != r * r ||
      static_cast<int>(x.size()) != r || static_cast<int>(y.size()) != r)
    fail(Status::invalid_argument, "dimension mismatch");
  A_.assign(A_rowmajor.begin(), A_rowmajor.end());
  x_.assign(x.begin(), x.end());
  y_.assign(y.begin(), y.end());
  for (double v : x_) require_torus(v);
  for (double v : y_) require_torus(v);
  std::vector<double> inv;
  det_ = invert(r_, A_, inv);
  // A* = (A^t)^{-1} = (A^{-1})^t.
  Astar_.assign(r_ * r_, 0.0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) Astar_[i * r_ + j] = inv[j * r_ + i];
  // A (A*)^t = I to 1e-12 entrywise.
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < r_; ++k) acc += a(i, k) * astar(j, k);
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > 1e-12)
        fail(Status::singular_matrix, "A Astar^t deviates from identity");
    }
}

bool ShintaniDatum::positive() const {
  return std::all_of(A_.begin(), A_.end(), [](double v) { return v > 0.0; });
}

bool ShintaniDatum::nonnegative() const {
  return std::all_of(A_.begin(), A_.end(), [](double v) { return v >= 0.0; });
}

ShintaniDatum ShintaniDatum::row_signed(const SignVector& sg) const {
  std::vector<double> B(A_);
  for (int nu = 0; nu < r_; ++nu)
    for (int mu = 0; mu < r_; ++mu) B[nu * r_ + mu] *= sg.sigma[nu];
  return ShintaniDatum(r_, B, x_, y_);
}

ShintaniDatum ShintaniDatum::dual() const {
  std::vector<double> xn = y_, yn(r_);
  for (int i = 0; i < r_; ++i) yn[i] = 1.0 - x_[i];
  return ShintaniDatum(r_, Astar_, xn, yn);
}

ShintaniDatum ShintaniDatum::with_torus(std::span<const double> x,
                                        std::span<const double> y) const {
  return ShintaniDatum(r_, A_, x, y);
}

std::vector<double> row_times_matrix(std::span<const double> t,
                                     const ShintaniDatum& d) {
  int r = d.r();
  std::vector<double> u(r, 0.0);
  for (int nu = 0; nu < r; ++nu) {
    double acc = 0.0;
    for (int mu = 0; mu < r; ++mu) acc += t[mu] * d.a(mu, nu);
    u[nu] = acc;
  }
  return u;
}

cplx F_prod(std::span<const double> t, const ShintaniDatum& d) {
  std::vector<double> u = row_times_matrix(t, d);
  cplx val = 1.0;
  for (int nu = 0; nu < d.r(); ++nu) val *= phi(u[nu], d.x()[nu], d.y()[nu]);
  return val;
}

cplx G_prod(std::span<const double> t, const ShintaniDatum& d) {
  double xy = 0.0;
  for (int nu = 0; nu < d.r(); ++nu) xy += d.x()[nu] * d.y()[nu];
  return e_of(xy) * F_prod(t, d);
}

cplx gamma_chi(std::span<const cplx> s, const ParityType& chi) {
  cplx g = 1.0;
  for (size_t nu = 0; nu < s.size(); ++nu)
    g *= gamma_R(s[nu] + static_cast<double>(chi.chi[nu]));
  return g;
}

bool gamma_chi_is_pole(std::span<const cplx> s, const ParityType& chi,
                       int* offending) {
  for (size_t nu = 0; nu < s.size(); ++nu)
    if (gamma_R_is_pole(s[nu] + static_cast<double>(chi.chi[nu]))) {
      if (offending) *offending = static_cast<int>(nu);
      return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Region classification

Region SpectralPoint::region(double delta) const {
  bool lattice = true;
  for (cplx v : s) {
    if (std::abs(v.imag()) > 1e-12 ||
        std::abs(v.real() - std::round(v.real())) > 1e-12) {
      lattice = false;
      break;
    }
  }
  if (lattice) return Region::LATTICE;
  bool right = true, left = true;
  for (cplx v : s) {
    if (!(v.real() > delta)) right = false;
    if (!(1.0 - v.real() > delta)) left = false;
  }
  if (right && left) return Region::STRIP;
  if (right) return Region::RIGHT;
  if (left) return Region::LEFT;
  return Region::OUTSIDE;
}

std::vector<long> SpectralPoint::lattice() const {
  std::vector<long> k(s.size());
  for (size_t i = 0; i < s.size(); ++i) k[i] = std::lround(s[i].real());
  return k;
}

// ---------------------------------------------------------------------------
// Torus reduction

TorusReduction reduce_torus(std::span<const double> x,
                            std::span<const double> y) {
  int r = static_cast<int>(x.size());
  TorusReduction t;
  t.x0.resize(r);
  t.y0.resize(r);
  t.kx.resize(r);
  t.ky.resize(r);
  for (int i = 0; i < r; ++i) {
    require_torus(x[i]);
    require_torus(y[i]);
    t.kx[i] = static_cast<long>(std::floor(x[i]));
    t.ky[i] = static_cast<long>(std::floor(y[i]));
    t.x0[i] = x[i] - static_cast<double>(t.kx[i]);
    t.y0[i] = y[i] - static_cast<double>(t.ky[i]);
  }
  // e(-kx . y) = e(-kx . y0) since kx . ky is an integer.
  double arg = 0.0;
  for (int i = 0; i < r; ++i) arg -= static_cast<double>(t.kx[i]) * t.y0[i];
  t.phase = e_of(arg);
  return t;
}

// ---------------------------------------------------------------------------
// Config validation

long SeriesConfig::box_for(int r) const {
  if (max_box > 0) return max_box;
  switch (r) {
    case 1: return 1000000;
    case 2: return 4000;
    default: return 300;
  }
}

void SeriesConfig::validate() const {
  if (!(tol >= 1e-15)) fail(Status::invalid_argument, "tol below 1e-15");
  if (max_box != 0 && max_box < 8)
    fail(Status::invalid_argument, "max_box below 8");
}

void QuadConfig::validate() const {
  if (!(h > 0.0 && h <= 0.25))
    fail(Status::invalid_argument, "quadrature step must be in (0, 1/4]");
  if (!(cutoff > 0.0 && cutoff <= 1e-12))
    fail(Status::invalid_argument, "cutoff must be in (0, 1e-12]");
  if (max_nodes_per_dim < 64)
    fail(Status::invalid_argument, "max_nodes_per_dim too small");
  if (contour_radius < 0.0)
    fail(Status::invalid_argument, "contour_radius must be >= 0 (0 = auto)");
}

} // namespace shintani
