// SPDX-License-Identifier: Apache-2.0
#include "lfunction.hpp"

#include <cmath>

namespace shintani {
namespace {

constexpr double kDelta = 0.05;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

SpectralPoint shifted(const SpectralPoint& s, int mu, double d) {
  std::vector<cplx> v = s.s;
  v[mu] += d;
  return SpectralPoint(v);
}

SpectralPoint one_minus(const SpectralPoint& s) {
  std::vector<cplx> v(s.s.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = 1.0 - s.s[i];
  return SpectralPoint(v);
}

bool all_right(const SpectralPoint& s) {
  for (cplx v : s.s)
    if (!(v.real() >= kDelta)) return false;
  return true;
}

// sigma-orthant assembly 2^{-r} sum_sigma sigma^{1-chi} L(s, sigma A, x, y)
// with a pluggable evaluator for the ordinary values.
template <typename Eval>
EvalResult sigma_assembly(const ShintaniDatum& datum, const ParityType& chi,
                          Eval&& ordinary) {
  const int r = datum.r();
  std::vector<int> one_minus_chi(r);
  for (int i = 0; i < r; ++i) one_minus_chi[i] = 1 - chi.chi[i];
  cplx acc = 0.0;
  double err = 0.0;
  Method m = Method::integral;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    SignVector sg = SignVector::from_mask(r, mask);
    EvalResult part = ordinary(datum.row_signed(sg));
    double sign = sg.power(one_minus_chi);
    acc += sign * part.value;
    err += part.err;
    m = part.method;
  }
  double scale = std::pow(2.0, -r);
  return {acc * scale, err * scale, m};
}

EvalResult direct_normalized(const SpectralPoint& s, const ShintaniDatum& datum,
                             const ParityType& chi, const QuadConfig& quad) {
  return sigma_assembly(datum, chi, [&](const ShintaniDatum& d) {
    return integral_L(s, d, quad);
  });
}

EvalResult contour_normalized(const SpectralPoint& s,
                              const ShintaniDatum& datum,
                              const ParityType& chi, const QuadConfig& quad) {
  return sigma_assembly(datum, chi, [&](const ShintaniDatum& d) {
    return contour_L(s, d, quad);
  });
}

struct Reduced {
  ShintaniDatum datum;
  cplx phase;
};

Reduced reduce(const ShintaniDatum& datum) {
  TorusReduction t = reduce_torus(datum.x(), datum.y());
  return {datum.with_torus(t.x0, t.y0), t.phase};
}

// Lattice routing shared by L_normalized and continue_L.  Assumes the
// reduced datum.  Returns nullopt when the point is a positive lattice point
// with k != chi (mod 2), which is served by the direct quadrature route.
std::optional<EvalResult> lattice_value(const SpectralPoint& s,
                                        const ShintaniDatum& datum,
                                        const ParityType& chi) {
  std::vector<long> k = s.lattice();
  bool all_nonpos = true, all_pos = true;
  for (long v : k) {
    if (v > 0) all_nonpos = false;
    if (v < 1) all_pos = false;
  }
  if (all_nonpos) {
    std::vector<int> kk(k.size());
    for (size_t i = 0; i < k.size(); ++i) kk[i] = static_cast<int>(-k[i]);
    return special_value_neg(MultiIndex(kk), datum, chi);
  }
  if (all_pos) {
    bool parity = true;
    for (size_t i = 0; i < k.size(); ++i)
      if ((k[i] & 1) != (chi.chi[i] & 1)) parity = false;
    if (parity) {
      std::vector<int> kk(k.begin(), k.end());
      return special_value_pos(MultiIndex(kk), datum, chi);
    }
    return std::nullopt; // evaluable by quadrature
  }
  fail(Status::region_error,
       "mixed-sign integer lattice point is unsupported");
}

EvalResult normalized_reduced(const SpectralPoint& s,
                              const ShintaniDatum& datum,
                              const ParityType& chi, const EvalOptions& opt);

// Reflection on the reduced datum.
EvalResult continue_reduced(const SpectralPoint& s, const ShintaniDatum& datum,
                            const ParityType& chi, const EvalOptions& opt) {
  if (s.region() == Region::LATTICE) {
    auto lv = lattice_value(s, datum, chi);
    if (lv) return *lv;
  }
  int offending = -1;
  if (gamma_chi_is_pole(s.s, chi, &offending))
    fail(Status::gamma_pole,
         "Gamma_chi pole at component " + std::to_string(offending));
  SpectralPoint sref = one_minus(s);
  if (!all_right(sref))
    fail(Status::region_error, "reflected point outside the direct region");
  QuadConfig q2 = opt.quad;
  q2.h *= opt.reflect_h_scale;
  EvalResult rhs = normalized_reduced(sref, datum.dual(), chi,
                                      [&] {
                                        EvalOptions o = opt;
                                        o.quad = q2;
                                        o.method = ForcedMethod::AUTO;
                                        return o;
                                      }());
  cplx gr = gamma_chi(sref.s, chi) / gamma_chi(s.s, chi);
  cplx pref = chi.i_chi() * e_of(-dot(datum.x(), datum.y())) * gr /
              std::abs(datum.det());
  return {pref * rhs.value, std::abs(pref) * rhs.err, Method::reflection};
}

EvalResult normalized_reduced(const SpectralPoint& s,
                              const ShintaniDatum& datum,
                              const ParityType& chi, const EvalOptions& opt) {
  switch (opt.method) {
    case ForcedMethod::DIRICHLET: {
      if (datum.r() == 1)
        return bilateral_r1(s.s[0], datum.a(0, 0), datum.x()[0], datum.y()[0],
                            chi.chi[0], opt.series);
      fail(Status::unsupported,
           "series evaluation of L_chi is limited to r = 1");
    }
    case ForcedMethod::INTEGRAL:
      return direct_normalized(s, datum, chi, opt.quad);
    case ForcedMethod::CONTOUR:
      return contour_normalized(s, datum, chi, opt.quad);
    case ForcedMethod::REFLECTION:
      return continue_reduced(s, datum, chi, opt);
    case ForcedMethod::TAYLOR: {
      if (s.region() != Region::LATTICE)
        fail(Status::region_error, "taylor route needs an integer point");
      auto lv = lattice_value(s, datum, chi);
      if (!lv)
        fail(Status::parity_mismatch,
             "no closed form at this lattice point; use quadrature");
      return *lv;
    }
    case ForcedMethod::AUTO:
      break;
  }
  switch (s.region()) {
    case Region::LATTICE: {
      auto lv = lattice_value(s, datum, chi);
      if (lv) return *lv;
      return direct_normalized(s, datum, chi, opt.quad);
    }
    case Region::RIGHT:
    case Region::STRIP:
      return direct_normalized(s, datum, chi, opt.quad);
    case Region::LEFT:
      return continue_reduced(s, datum, chi, opt);
    case Region::OUTSIDE:
      fail(Status::region_error,
           "s outside the supported evaluation regions");
  }
  fail(Status::internal_error, "unreachable");
}

} // namespace

EvalResult L_normalized(const SpectralPoint& s, const ShintaniDatum& datum,
                        const ParityType& chi, const EvalOptions& opt) {
  if (s.r() != datum.r() || chi.r() != datum.r())
    fail(Status::invalid_argument, "dimension mismatch");
  Reduced red = reduce(datum);
  EvalResult out = normalized_reduced(s, red.datum, chi, opt);
  out.value *= red.phase;
  return out;
}

EvalResult continue_L(const SpectralPoint& s, const ShintaniDatum& datum,
                      const ParityType& chi, const EvalOptions& opt) {
  if (s.r() != datum.r() || chi.r() != datum.r())
    fail(Status::invalid_argument, "dimension mismatch");
  Reduced red = reduce(datum);
  EvalResult out = continue_reduced(s, red.datum, chi, opt);
  out.value *= red.phase;
  return out;
}

EvalResult L_completed(const SpectralPoint& s, const ShintaniDatum& datum,
                       const ParityType& chi, const EvalOptions& opt) {
  int offending = -1;
  if (gamma_chi_is_pole(s.s, chi, &offending))
    fail(Status::gamma_pole,
         "Gamma_chi pole at component " + std::to_string(offending));
  EvalResult base = L_normalized(s, datum, chi, opt);
  cplx pref = std::sqrt(std::abs(datum.det())) * gamma_chi(s.s, chi);
  return {pref * base.value,
          std::abs(pref) * base.err + 1e-13 * std::abs(pref * base.value),
          base.method};
}

EvalResult R_value(const SpectralPoint& s, const ShintaniDatum& datum,
                   const ParityType& chi, const EvalOptions& opt) {
  EvalResult base = L_normalized(s, datum, chi, opt);
  cplx ph = e_of(dot(datum.x(), datum.y()));
  return {ph * base.value, base.err, base.method};
}

EvalResult R_completed(const SpectralPoint& s, const ShintaniDatum& datum,
                       const ParityType& chi, const EvalOptions& opt) {
  EvalResult base = L_completed(s, datum, chi, opt);
  cplx ph = e_of(dot(datum.x(), datum.y()));
  return {ph * base.value, base.err, base.method};
}

EvalResult L_ordinary(const SpectralPoint& s, const ShintaniDatum& datum,
                      const EvalOptions& opt) {
  if (s.r() != datum.r()) fail(Status::invalid_argument, "dimension mismatch");
  Reduced red = reduce(datum);
  const ShintaniDatum& d = red.datum;
  EvalResult out;
  switch (opt.method) {
    case ForcedMethod::DIRICHLET:
      out = dirichlet_L(s, d, opt.series);
      break;
    case ForcedMethod::INTEGRAL:
      out = integral_L(s, d, opt.quad);
      break;
    case ForcedMethod::CONTOUR:
      out = contour_L(s, d, opt.quad);
      break;
    case ForcedMethod::TAYLOR: {
      if (s.region() != Region::LATTICE)
        fail(Status::region_error, "taylor route needs an integer point");
      std::vector<long> k = s.lattice();
      for (long v : k)
        if (v > 0)
          fail(Status::region_error, "taylor route needs s <= 0 for L");
      std::vector<int> kk(k.size());
      for (size_t i = 0; i < k.size(); ++i) kk[i] = static_cast<int>(-k[i]);
      cplx b = bernoulli_B(MultiIndex(kk), d);
      out = {b, 1e-14 * std::abs(b), Method::taylor};
      break;
    }
    case ForcedMethod::REFLECTION:
      fail(Status::unsupported, "reflection applies to the normalized family");
    case ForcedMethod::AUTO: {
      double sig_sum = 0.0;
      for (cplx v : s.s) sig_sum += v.real();
      if (all_right(s)) {
        out = integral_L(s, d, opt.quad);
      } else if (d.nonnegative() && sig_sum > d.r() + 0.1) {
        out = dirichlet_L(s, d, opt.series);
      } else if (s.region() == Region::LATTICE) {
        std::vector<long> k = s.lattice();
        bool nonpos = true;
        for (long v : k) nonpos = nonpos && v <= 0;
        if (!nonpos)
          fail(Status::region_error, "mixed lattice point unsupported");
        std::vector<int> kk(k.size());
        for (size_t i = 0; i < k.size(); ++i) kk[i] = static_cast<int>(-k[i]);
        cplx b = bernoulli_B(MultiIndex(kk), d);
        out = {b, 1e-14 * std::abs(b), Method::taylor};
      } else {
        out = contour_L(s, d, opt.quad);
      }
      break;
    }
  }
  out.value *= red.phase;
  return out;
}

double fe_residual(const SpectralPoint& s, const ShintaniDatum& datum,
                   const ParityType& chi, const EvalOptions& opt, cplx* lhs_out,
                   cplx* rhs_out) {
  SpectralPoint sref = one_minus(s);
  if (!all_right(s) || !all_right(sref))
    fail(Status::region_error,
         "fe_residual needs s in the open strip 0.05 <= Re s_nu <= 0.95");
  EvalOptions lopt = opt;
  lopt.method = ForcedMethod::INTEGRAL;
  EvalResult lhs = L_completed(s, datum, chi, lopt);

  EvalOptions ropt = opt;
  ropt.method = ForcedMethod::INTEGRAL;
  ropt.quad.h *= opt.reflect_h_scale;
  // Dual data at the original (possibly extended) torus point.
  const int r = datum.r();
  std::vector<double> xd(datum.y().begin(), datum.y().end());
  std::vector<double> yd(r);
  for (int i = 0; i < r; ++i) yd[i] = 1.0 - datum.x()[i];
  ShintaniDatum dual(r, datum.Astar(), xd, yd);
  EvalResult rhs = L_completed(sref, dual, chi, ropt);
  cplx pref = chi.i_chi() * e_of(-dot(datum.x(), datum.y()));
  cplx rv = pref * rhs.value;
  if (lhs_out) *lhs_out = lhs.value;
  if (rhs_out) *rhs_out = rv;
  return std::abs(lhs.value - rv);
}

double derivative_residual(const SpectralPoint& s, const ShintaniDatum& datum,
                           const ParityType& chi, int direction,
                           DerivativeKind kind, const EvalOptions& opt) {
  const int r = datum.r();
  if (direction < 0 || direction >= r)
    fail(Status::invalid_argument, "direction out of range");
  const double h_fd = 1e-3;
  static const double stencil[4] = {-2.0, -1.0, 1.0, 2.0};
  static const double weight[4] = {1.0, -8.0, 8.0, -1.0};

  auto value_at = [&](double offset) -> cplx {
    std::vector<double> x(datum.x()), y(datum.y());
    if (kind == DerivativeKind::X_ON_L) x[direction] += offset;
    else y[direction] += offset;
    ShintaniDatum d = datum.with_torus(x, y);
    if (kind == DerivativeKind::X_ON_L)
      return L_normalized(s, d, chi, opt).value;
    return R_value(s, d, chi, opt).value;
  };

  cplx fd = 0.0;
  for (int i = 0; i < 4; ++i) fd += weight[i] * value_at(stencil[i] * h_fd);
  fd /= 12.0 * h_fd;

  cplx rhs = 0.0;
  if (kind == DerivativeKind::X_ON_L) {
    for (int mu = 0; mu < r; ++mu) {
      EvalResult part =
          L_normalized(shifted(s, mu, 1.0), datum, chi.flipped(mu), opt);
      rhs += -datum.a(mu, direction) * s.s[mu] * part.value;
    }
  } else {
    for (int mu = 0; mu < r; ++mu) {
      EvalResult part =
          R_value(shifted(s, mu, -1.0), datum, chi.flipped(mu), opt);
      rhs += cplx(0.0, kTwoPi) * datum.astar(mu, direction) * part.value;
    }
  }
  return std::abs(fd - rhs);
}

EvalResult evaluate(Variant variant, const SpectralPoint& s,
                    const ShintaniDatum& datum, const ParityType& chi,
                    const EvalOptions& opt) {
  switch (variant) {
    case Variant::ORDINARY: return L_ordinary(s, datum, opt);
    case Variant::NORMALIZED: return L_normalized(s, datum, chi, opt);
    case Variant::COMPLETED: return L_completed(s, datum, chi, opt);
    case Variant::R: return R_value(s, datum, chi, opt);
    case Variant::R_COMPLETED: return R_completed(s, datum, chi, opt);
  }
  fail(Status::internal_error, "unreachable");
}

} // namespace shintani
