// SPDX-License-Identifier: Apache-2.0
#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace shintani {
namespace {

constexpr double kDelta = 0.05;   // Re s margin at the sigma = 0 boundary
constexpr double kFreezeTol = 1e-13;

// Kernel factor with precomputed phase; w real fast path avoids the torus
// guard of core::phi in the node loops.
struct PhiFactor {
  double x;
  cplx ey;
  cplx eval(double w) const {
    if (w >= 0.0) {
      double q = std::exp(-kTwoPi * w);
      cplx den = 1.0 - ey * q;
      return std::exp(-kTwoPi * w * x) / den;
    }
    double p = std::exp(kTwoPi * w);
    return std::exp(kTwoPi * w * (1.0 - x)) / (p - ey);
  }
  cplx eval(cplx w) const {
    if (w.real() >= 0.0) return std::exp(-kTwoPi * w * x) / (1.0 - ey * std::exp(-kTwoPi * w));
    return std::exp(kTwoPi * w * (1.0 - x)) / (std::exp(kTwoPi * w) - ey);
  }
};

std::vector<PhiFactor> make_factors(const ShintaniDatum& d) {
  std::vector<PhiFactor> f;
  f.reserve(d.r());
  for (int mu = 0; mu < d.r(); ++mu)
    f.push_back({d.x()[mu], e_of(d.y()[mu])});
  return f;
}

double min_denom_clearance(const ShintaniDatum& d) {
  double m = 1.0;
  for (double yv : d.y()) m = std::min(m, phi_denom_clearance(yv));
  return m;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Axis decay rate for t_i -> +inf given the kernel-argument matrix B
// (forms (tB)_mu = sum_i t_i B[i*r+mu]).
double axis_decay(const std::vector<double>& B, int r, int i,
                  std::span<const double> x) {
  double lam = 0.0;
  for (int mu = 0; mu < r; ++mu) {
    double b = B[i * r + mu];
    lam += kTwoPi * (b >= 0.0 ? b * x[mu] : -b * (1.0 - x[mu]));
  }
  return lam;
}

// ---------------------------------------------------------------------------
// Plain (separable) orthant scheme.  Valid structure for any invertible A;
// spectrally accurate when no kernel argument changes sign inside the
// orthant (r = 1, or all columns of A sign-definite).

struct PlainResult {
  cplx fine{0, 0}, coarse{0, 0};
};

PlainResult plain_orthant(const SpectralPoint& sp, const ShintaniDatum& datum,
                          const QuadConfig& cfg) {
  const int r = datum.r();
  const double h = cfg.h, hf = cfg.h / 2.0;
  const auto& s = sp.s;
  auto factors = make_factors(datum);
  const std::vector<double>& B = datum.A();

  double c1 = kTwoPi * (1.0 + 1.0 / min_denom_clearance(datum)) *
              max_abs(datum.A()) * r;
  double smax = 0.0;
  for (cplx v : s) smax += std::max(v.real(), 0.0);

  struct Axis {
    double a;
    int n; // fine node count
    std::vector<double> u, t;
    std::vector<cplx> ws;
  };
  std::vector<Axis> ax(r);

  auto build_axis = [&](int i, double b_extra) {
    double sig = s[i].real();
    double a = std::log(kFreezeTol * (sig + 1.0) / c1) / (sig + 1.0);
    a = std::floor(a / h) * h;
    double lam = axis_decay(B, r, i, datum.x());
    double b = std::log((50.0 + 8.0 * smax) / lam) + 1.0 + b_extra;
    b = std::ceil(b / h) * h;
    int n = static_cast<int>(std::lround((b - a) / hf)) + 1;
    if (n > cfg.max_nodes_per_dim)
      fail(Status::quadrature_failure, "node cap reached before cutoff");
    ax[i].a = a;
    ax[i].n = n;
    ax[i].u.resize(n);
    ax[i].t.resize(n);
    ax[i].ws.resize(n);
    for (int j = 0; j < n; ++j) {
      double u = a + j * hf;
      ax[i].u[j] = u;
      ax[i].t[j] = std::exp(u);
      ax[i].ws[j] = std::exp(s[i] * u);
    }
  };

  std::vector<double> extra(r, 0.0);
  for (int round = 0;; ++round) {
    for (int i = 0; i < r; ++i) build_axis(i, extra[i]);

    // tensor sum over a subset of active axes (inactive t = 0), fine and
    // coarse (even-index) accumulators, with peak/slab tracking on the full
    // subset.
    double peak = 0.0;
    std::vector<double> slab(r, 0.0);
    auto tensor = [&](unsigned inactive_mask, bool track) {
      KahanSum fine, coarse;
      std::vector<int> act;
      for (int i = 0; i < r; ++i)
        if (!(inactive_mask & (1u << i))) act.push_back(i);
      int na = static_cast<int>(act.size());
      std::vector<int> idx(na, 0);
      std::vector<double> t(r, 0.0);
      if (na == 0) {
        cplx F = 1.0;
        for (int mu = 0; mu < r; ++mu) {
          double w = 0.0;
          F *= factors[mu].eval(w);
        }
        return std::pair<cplx, cplx>(F, F);
      }
      for (;;) {
        cplx w = 1.0;
        bool even = true;
        for (int k = 0; k < na; ++k) {
          int i = act[k], j = idx[k];
          t[i] = ax[i].t[j];
          w *= ax[i].ws[j];
          if (j & 1) even = false;
        }
        cplx F = 1.0;
        for (int mu = 0; mu < r; ++mu) {
          double arg = 0.0;
          for (int i = 0; i < r; ++i) arg += t[i] * B[i * r + mu];
          F *= factors[mu].eval(arg);
        }
        cplx term = F * w;
        fine.add(term);
        if (even) coarse.add(term);
        if (track) {
          double m = std::abs(term);
          peak = std::max(peak, m);
          for (int k = 0; k < na; ++k)
            if (idx[k] == ax[act[k]].n - 1)
              slab[act[k]] = std::max(slab[act[k]], m);
        }
        int k = 0;
        while (k < na && ++idx[k] == ax[act[k]].n) idx[k++] = 0;
        if (k == na) break;
      }
      return std::pair<cplx, cplx>(fine.value(), coarse.value());
    };

    cplx totf = 0.0, totc = 0.0;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      cplx gf = 1.0, gc = 1.0;
      for (int i = 0; i < r; ++i)
        if (mask & (1u << i)) {
          cplx ea = std::exp(s[i] * ax[i].a);
          gf *= hf * ea / expm1c(s[i] * hf);
          gc *= h * ea / expm1c(s[i] * h);
        }
      auto [pf, pc] = tensor(mask, mask == 0);
      int nact = r - __builtin_popcount(mask);
      totf += gf * pf * std::pow(hf, nact);
      totc += gc * pc * std::pow(h, nact);
    }

    bool ok = true;
    for (int i = 0; i < r; ++i)
      if (slab[i] > cfg.cutoff * peak && round < 4) {
        extra[i] += 1.0;
        ok = false;
      }
    if (ok) return {totf, totc};
  }
}

// ---------------------------------------------------------------------------
// Sectored scheme (r = 2).  The orthant is split along the interior zero
// rays of sign-mixed columns; within a cone spanned by the rows of W every
// kernel argument (vWA)_mu is sign-definite, restoring a uniform
// analyticity strip for the log-axis trapezoid.

struct Sector {
  std::array<double, 4> W; // rows are edge directions
  double J;
};

std::vector<Sector> decompose_orthant(const ShintaniDatum& d) {
  const int r = d.r();
  if (r != 2) return {};
  double scale = max_abs(d.A());
  std::vector<std::array<double, 2>> dirs;
  for (int mu = 0; mu < 2; ++mu) {
    double a0 = d.a(0, mu), a1 = d.a(1, mu);
    if (std::min(std::abs(a0), std::abs(a1)) < 1e-12 * scale) continue;
    if (a0 * a1 >= 0.0) continue;
    std::array<double, 2> dir = {a1, -a0};
    if (dir[0] < 0.0) {
      dir[0] = -dir[0];
      dir[1] = -dir[1];
    }
    double m = std::max(dir[0], dir[1]);
    dir[0] /= m;
    dir[1] /= m;
    dirs.push_back(dir);
  }
  if (dirs.empty()) return {};
  std::sort(dirs.begin(), dirs.end(), [](const auto& p, const auto& q) {
    return std::atan2(p[1], p[0]) < std::atan2(q[1], q[0]);
  });
  std::vector<std::array<double, 2>> edges;
  edges.push_back({1.0, 0.0});
  for (const auto& dd : dirs) {
    const auto& last = edges.back();
    if (std::abs(std::atan2(dd[1], dd[0]) - std::atan2(last[1], last[0])) >
        1e-9)
      edges.push_back(dd);
  }
  edges.push_back({0.0, 1.0});
  std::vector<Sector> out;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    Sector sec;
    sec.W = {edges[k][0], edges[k][1], edges[k + 1][0], edges[k + 1][1]};
    sec.J = std::abs(sec.W[0] * sec.W[3] - sec.W[1] * sec.W[2]);
    out.push_back(sec);
  }
  return out;
}

// One cone, fine/coarse pair.
PlainResult sector_eval(const Sector& sec, const SpectralPoint& sp,
                        const ShintaniDatum& datum, const QuadConfig& cfg) {
  const auto& s = sp.s;
  const double h = cfg.h, hf = cfg.h / 2.0;
  auto factors = make_factors(datum);

  // B = W A (kernel-argument forms), snapped so the defining ray columns are
  // exactly zero and sign-definiteness is structural.
  std::array<double, 4> W = sec.W;
  std::array<double, 4> B{};
  for (int i = 0; i < 2; ++i)
    for (int mu = 0; mu < 2; ++mu) {
      double acc = 0.0;
      for (int nu = 0; nu < 2; ++nu) acc += W[i * 2 + nu] * datum.a(nu, mu);
      B[i * 2 + mu] = acc;
    }
  double bscale = std::max(std::max(std::abs(B[0]), std::abs(B[1])),
                           std::max(std::abs(B[2]), std::abs(B[3])));
  for (double& v : B)
    if (std::abs(v) < 1e-12 * bscale) v = 0.0;

  // Exact exponents per axis: power factors proportional to a single v_i.
  std::array<std::vector<int>, 2> E;
  for (int nu = 0; nu < 2; ++nu) {
    if (W[1 * 2 + nu] == 0.0 && W[0 * 2 + nu] > 0.0) E[0].push_back(nu);
    if (W[0 * 2 + nu] == 0.0 && W[1 * 2 + nu] > 0.0) E[1].push_back(nu);
  }
  std::array<cplx, 2> eexp = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
  std::array<cplx, 2> wconst = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
  for (int i = 0; i < 2; ++i)
    for (int nu : E[i]) {
      eexp[i] += s[nu] - 1.0;
      wconst[i] *= cpow_pos(W[i * 2 + nu], s[nu] - 1.0);
    }
  double sigma_T = s[0].real() + s[1].real();

  double c1 = kTwoPi * (1.0 + 1.0 / min_denom_clearance(datum)) *
              std::max(bscale, 1.0) * 2.0;
  double a_depth = 0.0;
  for (int i = 0; i < 2; ++i) {
    double re = std::max(eexp[i].real(), kDelta);
    a_depth = std::min(a_depth, std::log(kFreezeTol * (re + 1.0) / c1) / (re + 1.0));
  }
  a_depth = std::min(a_depth, std::log(kFreezeTol / c1) / (sigma_T + 2.0));
  const double a = std::floor(a_depth / h) * h;

  double smax = std::max(s[0].real(), 0.0) + std::max(s[1].real(), 0.0);
  std::array<int, 2> n{};
  std::array<std::vector<double>, 2> V;
  std::array<std::vector<cplx>, 2> MW; // e^{u} measure weight
  for (int i = 0; i < 2; ++i) {
    std::vector<double> Bv(B.begin(), B.end());
    double lam = axis_decay(Bv, 2, i, datum.x());
    double b = std::log((50.0 + 8.0 * smax) / lam) + 1.5;
    b = std::ceil(b / h) * h;
    n[i] = static_cast<int>(std::lround((b - a) / hf)) + 1;
    if (n[i] > cfg.max_nodes_per_dim)
      fail(Status::quadrature_failure, "node cap reached before cutoff");
    V[i].resize(n[i]);
    MW[i].resize(n[i]);
    for (int j = 0; j < n[i]; ++j) {
      double u = a + j * hf;
      V[i][j] = std::exp(u);
      MW[i][j] = std::exp(u); // real, kept complex for uniformity
    }
  }

  auto power = [&](double t, int nu) { return cpow_pos(t, s[nu] - 1.0); };

  // Main tensor block (both axes active).
  KahanSum fin, coa;
  for (int j1 = 0; j1 < n[1]; ++j1) {
    double v1 = V[1][j1];
    bool even1 = !(j1 & 1);
    KahanSum rowf, rowc;
    for (int j0 = 0; j0 < n[0]; ++j0) {
      double v0 = V[0][j0];
      double t0 = v0 * W[0] + v1 * W[2];
      double t1 = v0 * W[1] + v1 * W[3];
      double w0 = v0 * B[0] + v1 * B[2];
      double w1 = v0 * B[1] + v1 * B[3];
      cplx term = factors[0].eval(w0) * factors[1].eval(w1) * power(t0, 0) *
                  power(t1, 1) * (v0 * v1);
      rowf.add(term);
      if (even1 && !(j0 & 1)) rowc.add(term);
    }
    fin.add(rowf.value());
    if (even1) coa.add(rowc.value());
  }
  cplx totf = fin.value() * hf * hf;
  cplx totc = coa.value() * h * h;

  // Single-axis analytic tails.
  for (int low = 0; low < 2; ++low) {
    int hi = 1 - low;
    cplx gf = wconst[low] * hf * std::exp(eexp[low] * a) / expm1c(eexp[low] * hf);
    cplx gc = wconst[low] * h * std::exp(eexp[low] * a) / expm1c(eexp[low] * h);
    KahanSum pf, pc;
    for (int j = 0; j < n[hi]; ++j) {
      double v = V[hi][j];
      double t0 = v * W[hi * 2 + 0];
      double t1 = v * W[hi * 2 + 1];
      double w0 = v * B[hi * 2 + 0];
      double w1 = v * B[hi * 2 + 1];
      cplx term = factors[0].eval(w0) * factors[1].eval(w1) * v;
      for (int nu = 0; nu < 2; ++nu) {
        bool absorbed = std::find(E[low].begin(), E[low].end(), nu) != E[low].end();
        if (!absorbed) term *= power(nu == 0 ? t0 : t1, nu);
      }
      pf.add(term);
      if (!(j & 1)) pc.add(term);
    }
    totf += gf * pf.value() * hf;
    totc += gc * pc.value() * h;
  }

  // Corner: frozen kernel (value + gradient) times the self-similar lattice
  // sum of the pure power part over {v_i < e^a}.
  cplx F0 = factors[0].eval(0.0) * factors[1].eval(0.0);
  std::array<cplx, 2> pl;
  for (int mu = 0; mu < 2; ++mu) {
    cplx ey = e_of(datum.y()[mu]);
    pl[mu] = -kTwoPi * (datum.x()[mu] + ey / (1.0 - ey));
  }
  std::array<cplx, 2> grad;
  for (int i = 0; i < 2; ++i)
    grad[i] = F0 * (pl[0] * B[i * 2 + 0] + pl[1] * B[i * 2 + 1]);

  auto corner = [&](double step) -> cplx {
    auto q = [&](double v0, double v1, int waxis) -> cplx {
      double t0 = v0 * W[0] + v1 * W[2];
      double t1 = v0 * W[1] + v1 * W[3];
      cplx val = power(t0, 0) * power(t1, 1) * (v0 * v1);
      if (waxis == 0) val *= v0;
      if (waxis == 1) val *= v1;
      return val;
    };
    auto face_sum = [&](int waxis) -> cplx {
      KahanSum acc;
      double mx = 0.0;
      // face (j0 = 0, j1 <= 0) then (j0 <= -1, j1 = 0)
      for (int face = 0; face < 2; ++face) {
        long j = face == 0 ? 0 : -1;
        cplx last = 0.0;
        for (long iter = 0; iter < 200000; ++iter, --j) {
          double vlow = std::exp(a + static_cast<double>(j) * step);
          cplx val = face == 0 ? q(std::exp(a), vlow, waxis)
                               : q(vlow, std::exp(a), waxis);
          acc.add(val);
          double m = std::abs(val);
          mx = std::max(mx, m);
          if (m < 1e-22 * mx) {
            if (std::abs(last) > 0.0) {
              cplx rr = val / last;
              if (std::abs(rr) < 0.999) acc.add(val * rr / (1.0 - rr));
            }
            break;
          }
          last = val;
        }
      }
      return acc.value();
    };
    cplx sig = s[0] + s[1];
    cplx rho0 = std::exp(-step * sig);
    cplx rho1 = std::exp(-step * (sig + 1.0));
    cplx c = F0 * rho0 / (1.0 - rho0) * face_sum(-1);
    c += grad[0] * rho1 / (1.0 - rho1) * face_sum(0);
    c += grad[1] * rho1 / (1.0 - rho1) * face_sum(1);
    return c * step * step;
  };
  totf += corner(hf);
  totc += corner(h);

  return {sec.J * totf, sec.J * totc};
}

} // namespace

namespace quad_detail {

PairResult orthant_pair(const SpectralPoint& sp, const ShintaniDatum& datum,
                        const QuadConfig& cfg) {
  auto sectors = decompose_orthant(datum);
  if (sectors.empty()) {
    PlainResult p = plain_orthant(sp, datum, cfg);
    return {p.fine, p.coarse};
  }
  cplx f = 0.0, c = 0.0;
  for (const Sector& sec : sectors) {
    PlainResult p = sector_eval(sec, sp, datum, cfg);
    f += p.fine;
    c += p.coarse;
  }
  return {f, c};
}

} // namespace quad_detail

EvalResult integral_L(const SpectralPoint& sp, const ShintaniDatum& datum,
                      const QuadConfig& cfg) {
  cfg.validate();
  const int r = datum.r();
  if (sp.r() != r) fail(Status::invalid_argument, "dimension mismatch");
  if (r > 3) fail(Status::cap_exceeded, "tensor quadrature capped at r <= 3");
  for (cplx v : sp.s)
    if (!(v.real() >= kDelta))
      fail(Status::region_error, "integral route requires Re s_nu >= 0.05");

  auto pr = quad_detail::orthant_pair(sp, datum, cfg);
  cplx pref = std::pow(2.0, r);
  for (cplx v : sp.s) pref /= gamma_C(v);
  cplx value = pref * pr.fine;
  double err = std::abs(pref) * std::abs(pr.fine - pr.coarse) +
               1e-14 * std::abs(value);
  return {value, err, Method::integral};
}

// ---------------------------------------------------------------------------
// Hankel-loop evaluator

namespace {

// 12-point Gauss-Legendre on [-1, 1].
constexpr int kGL = 12;
constexpr double kGLx[kGL] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGLw[kGL] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

struct LoopNode {
  cplx z;      // position on the loop
  cplx w;      // t^{s} dt/t weight, branch arg in [0, 2pi]
  bool real;   // on the merged rays (z real positive)
};

// Per-dimension node list for the loop with given panel width.
std::vector<LoopNode> loop_nodes(cplx s_nu, double rho, double b,
                                 double panel, int max_nodes) {
  std::vector<LoopNode> nodes;
  cplx es1 = expm1c(cplx(0.0, kTwoPi) * s_nu); // e(s) - 1
  double lo = std::log(rho);
  int np = std::max(1, static_cast<int>(std::ceil((b - lo) / panel)));
  double w_ray = (b - lo) / np;
  for (int p = 0; p < np; ++p) {
    double c0 = lo + p * w_ray, c1 = c0 + w_ray;
    for (int g = 0; g < kGL; ++g) {
      double u = 0.5 * (c0 + c1) + 0.5 * w_ray * kGLx[g];
      double glw = 0.5 * w_ray * kGLw[g];
      nodes.push_back({cplx(std::exp(u), 0.0),
                       es1 * std::exp(s_nu * u) * glw, true});
    }
  }
  int nc = std::max(4, static_cast<int>(std::ceil(kTwoPi / panel)));
  double w_th = kTwoPi / nc;
  double lr = std::log(rho);
  for (int p = 0; p < nc; ++p) {
    double c0 = p * w_th, c1 = c0 + w_th;
    for (int g = 0; g < kGL; ++g) {
      double th = 0.5 * (c0 + c1) + 0.5 * w_th * kGLx[g];
      double glw = 0.5 * w_th * kGLw[g];
      nodes.push_back({rho * cplx(std::cos(th), std::sin(th)),
                       cplx(0.0, 1.0) * std::exp(s_nu * cplx(lr, th)) * glw,
                       false});
    }
  }
  if (static_cast<int>(nodes.size()) > max_nodes)
    fail(Status::quadrature_failure, "contour node cap exceeded");
  return nodes;
}

cplx loop_tensor(const std::vector<std::vector<LoopNode>>& dims,
                 const ShintaniDatum& datum) {
  const int r = datum.r();
  auto factors = make_factors(datum);
  std::vector<int> idx(r, 0);
  KahanSum acc;
  for (;;) {
    cplx w = 1.0;
    bool allreal = true;
    for (int i = 0; i < r; ++i) {
      w *= dims[i][idx[i]].w;
      allreal = allreal && dims[i][idx[i]].real;
    }
    cplx F = 1.0;
    if (allreal) {
      for (int mu = 0; mu < r; ++mu) {
        double arg = 0.0;
        for (int i = 0; i < r; ++i)
          arg += dims[i][idx[i]].z.real() * datum.a(i, mu);
        F *= factors[mu].eval(arg);
      }
    } else {
      for (int mu = 0; mu < r; ++mu) {
        cplx arg = 0.0;
        for (int i = 0; i < r; ++i) arg += dims[i][idx[i]].z * datum.a(i, mu);
        F *= factors[mu].eval(arg);
      }
    }
    acc.add(F * w);
    int k = 0;
    while (k < r && ++idx[k] == static_cast<int>(dims[k].size())) idx[k++] = 0;
    if (k == r) break;
  }
  return acc.value();
}

} // namespace

EvalResult contour_L(const SpectralPoint& sp, const ShintaniDatum& datum,
                     const QuadConfig& cfg) {
  cfg.validate();
  const int r = datum.r();
  if (sp.r() != r) fail(Status::invalid_argument, "dimension mismatch");
  if (r > 3) fail(Status::cap_exceeded, "tensor quadrature capped at r <= 3");
  for (cplx v : sp.s) {
    double rr = std::round(v.real());
    if (rr >= 0.5 && std::abs(v.real() - rr) < 1e-8 &&
        std::abs(v.imag()) < 1e-8)
      fail(Status::prefactor_pole,
           "contour prefactor pole at positive integer s");
  }

  double dmin = 1.0;
  for (double yv : datum.y()) dmin = std::min({dmin, dist_to_int(yv)});
  double rho = cfg.contour_radius;
  double rho_auto = 0.5 * dmin / (r * max_abs(datum.A()));
  if (rho == 0.0) rho = rho_auto;
  if (!(rho > 1e-12) || rho * r * max_abs(datum.A()) > 0.9 * dmin)
    fail(Status::pole_clearance, "contour radius cannot clear kernel poles");

  double smax = 0.0;
  for (cplx v : sp.s) smax += std::max(v.real(), 0.0);

  std::vector<std::vector<LoopNode>> fine(r), coarse(r);
  for (int i = 0; i < r; ++i) {
    double lam = axis_decay(datum.A(), r, i, datum.x());
    double b = std::log((55.0 + 8.0 * smax) / lam) + 1.5;
    double panel = 8.0 * cfg.h;
    coarse[i] = loop_nodes(sp.s[i], rho, b, panel, cfg.max_nodes_per_dim);
    fine[i] = loop_nodes(sp.s[i], rho, b, panel / 2.0, cfg.max_nodes_per_dim);
  }
  cplx vf = loop_tensor(fine, datum);
  cplx vc = loop_tensor(coarse, datum);

  cplx pref = 1.0;
  for (cplx v : sp.s)
    pref *= e_of(-v / 2.0) * gamma_C(1.0 - v) / cplx(0.0, 2.0);
  cplx value = pref * vf;
  double err = std::abs(pref) * std::abs(vf - vc) + 1e-14 * std::abs(value);
  return {value, err, Method::contour};
}

// ---------------------------------------------------------------------------
// Fourier transform of F

namespace {

// One-dimensional line integral int_R phi(u,x,y) e(u q) du by trapezoid on
// [-T, T] plus geometric closure of both tails (the infinite-trapezoid sum
// of the expansion phi = sum_m e(my) e^{-2 pi (x+m) u}).
struct Line1D {
  cplx fine, coarse;
};

Line1D fourier_line(double x, double y, double q, const QuadConfig& cfg) {
  double d = dist_to_int(y);
  double inv_eta = std::abs(q) + 22.0 / (kTwoPi * d) + 8.0;
  int N = static_cast<int>(std::ceil(inv_eta));
  double eta = 1.0 / N; // coarse step; fine = eta/2
  long J = static_cast<long>(std::ceil(7.5 * N)); // coarse index range
  if (4 * J + 1 > cfg.max_nodes_per_dim)
    fail(Status::quadrature_failure, "oscillation too fast for the line grid");

  PhiFactor f{x, e_of(y)};
  auto sum_grid = [&](double step, long jmax) {
    KahanSum acc;
    for (long j = -jmax; j <= jmax; ++j) {
      double u = j * step;
      acc.add(f.eval(u) * e_of(u * q));
    }
    return acc.value() * step;
  };
  auto tails = [&](double step, long jmax) {
    // right tail: sum_{j > jmax} step * phi * e(uq)
    cplx tot = 0.0;
    for (int m = 0; m < 5; ++m) {
      cplx c = kTwoPi * (x + m) - cplx(0.0, kTwoPi * q);
      cplx w = std::exp(-c * step);
      cplx wJ = std::exp(-c * (static_cast<double>(jmax + 1) * step));
      tot += e_of(static_cast<double>(m) * y) * step * wJ / (1.0 - w);
    }
    // left tail via phi(-u,x,y) = -e(-y) phi(u,1-x,1-y)
    cplx lt = 0.0;
    for (int m = 0; m < 5; ++m) {
      cplx c = kTwoPi * (1.0 - x + m) + cplx(0.0, kTwoPi * q);
      cplx w = std::exp(-c * step);
      cplx wJ = std::exp(-c * (static_cast<double>(jmax + 1) * step));
      lt += e_of(static_cast<double>(m) * (1.0 - y)) * step * wJ / (1.0 - w);
    }
    tot += -e_of(-y) * lt;
    return tot;
  };
  Line1D out;
  out.coarse = sum_grid(eta, J) + tails(eta, J);
  out.fine = sum_grid(eta / 2.0, 2 * J) + tails(eta / 2.0, 2 * J);
  return out;
}

} // namespace

FourierResult fourier_F(const ShintaniDatum& datum, std::span<const double> k,
                        const QuadConfig& cfg) {
  cfg.validate();
  const int r = datum.r();
  if (static_cast<int>(k.size()) != r)
    fail(Status::invalid_argument, "dimension mismatch");
  for (double kv : k)
    if (std::abs(kv) > 10.0)
      fail(Status::quadrature_failure, "|k| exceeds the oscillation cap");

  // h = k A* (row times matrix).
  std::vector<double> q(r, 0.0);
  for (int mu = 0; mu < r; ++mu) {
    double acc = 0.0;
    for (int nu = 0; nu < r; ++nu) acc += k[nu] * datum.astar(nu, mu);
    q[mu] = acc;
  }

  cplx lf = 1.0, lc = 1.0;
  double relerr = 0.0;
  for (int mu = 0; mu < r; ++mu) {
    Line1D li = fourier_line(datum.x()[mu], datum.y()[mu], q[mu], cfg);
    lf *= li.fine;
    lc *= li.coarse;
    relerr += std::abs(li.fine - li.coarse) /
              std::max(std::abs(li.fine), 1e-300);
  }
  double dA = std::abs(datum.det());
  cplx lhs = lf / dA;
  double err = std::abs(lhs) * relerr + 1e-15 * std::abs(lhs);

  // rhs = i^r / |det A| e(-yx) F(kA*, y, 1-x)
  cplx rhs = std::pow(cplx(0.0, 1.0), r) / dA;
  double yx = 0.0;
  for (int nu = 0; nu < r; ++nu) yx += datum.y()[nu] * datum.x()[nu];
  rhs *= e_of(-yx);
  for (int mu = 0; mu < r; ++mu) {
    PhiFactor f{datum.y()[mu], e_of(1.0 - datum.x()[mu])};
    rhs *= f.eval(q[mu]);
  }
  return {{lhs, err, Method::integral}, rhs};
}

} // namespace shintani
