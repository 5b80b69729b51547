// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "core.hpp"
#include "oracles.hpp"

using namespace shintani;

namespace {
ShintaniDatum datum1(double a, double x, double y) {
  return ShintaniDatum(1, std::array<double, 1>{a}, std::array<double, 1>{x},
                       std::array<double, 1>{y});
}
} // namespace

TEST_CASE("e_of at rational points") {
  CHECK(std::abs(e_of(0.0) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(e_of(0.5) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(e_of(0.25) - cplx(0, 1)) < 1e-15);
  // unit modulus for real arguments
  for (double z : {0.1, 3.7, -12.34, 1e8 + 0.3})
    CHECK(std::abs(std::abs(e_of(z)) - 1.0) < 1e-15);
}

TEST_CASE("phi at simple points") {
  CHECK(std::abs(phi(0.0, 0.3, 0.5) - cplx(0.5, 0)) < 1e-15);
  // x = y = 1/2 collapses to 1/(2 cosh(pi t))
  for (double t : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    cplx want(1.0 / (2.0 * std::cosh(kPi * t)), 0.0);
    CHECK(std::abs(phi(t, 0.5, 0.5) - want) < 1e-15 * std::abs(want) + 1e-17);
  }
}

TEST_CASE("phi matches the geometric expansion for t > 0") {
  cplx got = phi(0.5, 0.3, 0.25);
  cplx want = oracles::phi_geometric(0.5, 0.3, 0.25, 60);
  CHECK(std::abs(got - want) <= 1e-14);
}

TEST_CASE("phi geometric tail bound") {
  // |phi - sum_{m<=M}| <= e^{-2 pi t (x+M+1)} / (1 - e^{-2 pi t})
  for (double t : {0.25, 0.5, 1.0})
    for (int M : {0, 2, 5}) {
      double x = 0.3, y = 0.7;
      double bound = std::exp(-kTwoPi * t * (x + M + 1)) /
                     (1.0 - std::exp(-kTwoPi * t));
      CHECK(std::abs(phi(t, x, y) - oracles::phi_geometric(t, x, y, M)) <=
            bound * (1 + 1e-12) + 1e-16);
    }
}

TEST_CASE("phi reflection identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.1, 0.9);
  for (int i = 0; i < 50; ++i) {
    double t = (U(rng) - 0.5) * 8.0, x = U(rng), y = U(rng);
    cplx lhs = phi(-t, x, y);
    cplx rhs = -e_of(-y) * phi(t, 1.0 - x, 1.0 - y);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("phi rejects near-integer y") {
  CHECK_THROWS_AS(phi(0.3, 0.5, 1e-12), EvalError);
}

TEST_CASE("F_prod basics") {
  // t = 0: product of 1/(1前 - e(y_nu))
  std::array<double, 4> A = {1.0, 0.7, 0.3, 1.5};
  std::array<double, 2> x = {0.3, 0.6}, y = {0.25, 0.7}, t0 = {0.0, 0.0};
  ShintaniDatum d(2, A, x, y);
  cplx want = 1.0 / (1.0 - e_of(0.25)) / (1.0 - e_of(0.7));
  CHECK(std::abs(F_prod(t0, d) - want) < 1e-15 * std::abs(want));

  // r=1 hyperbolic point: 1/(2 cosh pi)
  ShintaniDatum d1 = datum1(1.0, 0.5, 0.5);
  cplx got = F_prod(std::array<double, 1>{1.0}, d1);
  CHECK(std::abs(got - cplx(1.0 / (2.0 * std::cosh(kPi)), 0)) < 1e-16);

  // identity A factorizes
  std::array<double, 4> I2 = {1, 0, 0, 1};
  ShintaniDatum di(2, I2, x, y);
  std::array<double, 2> t = {0.8, -1.3};
  cplx f = F_prod(t, di);
  cplx g = phi(0.8, x[0], y[0]) * phi(-1.3, x[1], y[1]);
  CHECK(std::abs(f - g) < 1e-15 * std::abs(g));
}

TEST_CASE("F_prod diagonal scaling invariant") {
  std::array<double, 4> D = {1.7, 0.0, 0.0, 0.6};
  std::array<double, 2> x = {0.21, 0.77}, y = {0.4, 0.15};
  ShintaniDatum d(2, D, x, y);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    std::array<double, 2> t = {U(rng), U(rng)};
    cplx f = F_prod(t, d);
    cplx g = phi(t[0] * 1.7, x[0], y[0]) * phi(t[1] * 0.6, x[1], y[1]);
    CHECK(std::abs(f - g) <= 1e-15 * std::abs(g));
  }
}

TEST_CASE("G_prod is the phased kernel") {
  std::array<double, 1> A = {1.0}, x = {0.5}, y = {0.5};
  ShintaniDatum d(1, A, x, y);
  std::array<double, 1> t = {0.7};
  // xy = 1/4 so G = i F
  CHECK(std::abs(G_prod(t, d) - cplx(0, 1) * F_prod(t, d)) < 1e-16);

  std::array<double, 4> A2 = {1.2, -0.3, 0.4, 0.9};
  std::array<double, 2> x2 = {0.3, 0.8}, y2 = {0.6, 0.2};
  ShintaniDatum d2(2, A2, x2, y2);
  std::array<double, 2> t2 = {0.4, -0.2};
  cplx want = e_of(0.3 * 0.6 + 0.8 * 0.2) * F_prod(t2, d2);
  CHECK(std::abs(G_prod(t2, d2) - want) < 1e-15 * std::abs(want));
}

TEST_CASE("gamma special values") {
  CHECK(std::abs(gamma_R(cplx(1, 0)) - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(gamma_C(cplx(1, 0)) - cplx(1.0 / kPi, 0)) < 1e-14);
  CHECK(std::abs(cgamma(cplx(5, 0)) - cplx(24, 0)) < 1e-12);
  CHECK(std::abs(cgamma(cplx(0.5, 0)) - cplx(std::sqrt(kPi), 0)) < 1e-14);
}

TEST_CASE("gamma against frozen references") {
  // 40-digit references (mpmath).
  struct Ref { cplx z, g; };
  const Ref refs[] = {
      {{0.3, 0.2}, {1.98035817282344254, -1.41457600837330331}},
      {{-2.5, 1.5}, {0.00341213956423914903, -0.024053490434664736}},
      {{10, 10}, {1423.85194178918307, -3496.08197330794459}},
      {{-10.3, -20.7}, {-6.89026226691716269e-29, 2.6554676167209062e-29}},
      {{0.5, 40}, {9.52955104943115883e-28, 8.73756820183844179e-28}},
      {{25, -3}, {-5.08344747538739158e+23, 9.19308703084086576e+22}},
      {{-0.5, 0}, {-3.54490770181103205, 0}},
  };
  for (const auto& ref : refs)
    CHECK(std::abs(cgamma(ref.z) - ref.g) <= 1e-12 * std::abs(ref.g));
  const Ref refR[] = {
      {{0.3, 0.2}, {3.20434831413465721, -2.91198232197358226}},
      {{2, 0}, {0.318309886183790672, 0}},
      {{3, 0}, {0.159154943091895336, 0}},
      {{-1.3, 0.7}, {-3.60251218022700595, 3.18821401284840891}},
      {{0.5, -2}, {-0.322573515457587738, 0.22819168658441472}},
  };
  for (const auto& ref : refR)
    CHECK(std::abs(gamma_R(ref.z) - ref.g) <= 1e-12 * std::abs(ref.g));
  const Ref refC[] = {
      {{0.3, 0.2}, {1.54381918430935623, -2.3412231227370028}},
      {{-1.3, 0.7}, {14.3756799783246905, -3.42606242386918996}},
      {{0.5, -2}, {-0.0371330873081583683, -0.0780440818014982003}},
  };
  for (const auto& ref : refC)
    CHECK(std::abs(gamma_C(ref.z) - ref.g) <= 1e-12 * std::abs(ref.g));
}

TEST_CASE("gamma_C reflection product") {
  // gamma_C(s) gamma_C(1-s) = 4i / (e(s/2) - e(-s/2))
  cplx s(0.3, 0.2);
  cplx lhs = gamma_C(s) * gamma_C(1.0 - s);
  cplx rhs = cplx(0, 4) / (e_of(s / 2.0) - e_of(-s / 2.0));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("gamma poles are reported") {
  CHECK_THROWS_AS(gamma_R(cplx(0, 0)), EvalError);
  CHECK_THROWS_AS(gamma_R(cplx(-2, 0)), EvalError);
  CHECK_THROWS_AS(gamma_C(cplx(-1, 0)), EvalError);
  CHECK(gamma_R_is_pole(cplx(-4, 0)));
  CHECK(!gamma_R_is_pole(cplx(-3, 0)));
  CHECK(gamma_C_is_pole(cplx(-3, 0)));
}

TEST_CASE("gamma_chi product structure") {
  std::vector<cplx> s = {cplx(0.7, 0.1), cplx(1.3, -0.4)};
  ParityType chi0(std::vector<int>{0, 0}), chi1(std::vector<int>{1, 1});
  cplx g0 = gamma_chi(s, chi0);
  cplx g1 = gamma_chi(s, chi1);
  CHECK(std::abs(g0 - gamma_R(s[0]) * gamma_R(s[1])) < 1e-13 * std::abs(g0));
  CHECK(std::abs(g1 - gamma_R(s[0] + 1.0) * gamma_R(s[1] + 1.0)) <
        1e-13 * std::abs(g1));
}

TEST_CASE("parity type") {
  ParityType zero(std::vector<int>{0, 0, 0});
  CHECK(zero.i_chi() == cplx(1, 0));
  ParityType mixed(std::vector<int>{1, 0, 1});
  CHECK(mixed.i_chi() == cplx(-1, 0));
  cplx i4 = std::pow(mixed.i_chi(), 4);
  CHECK(std::abs(i4 - cplx(1, 0)) < 1e-15);
  CHECK(mixed.flipped(1).chi == std::vector<int>{1, 1, 1});
  CHECK(mixed.flipped(0).flipped(0) == mixed);
}

TEST_CASE("sign vector power") {
  SignVector sg(std::vector<int>{1, -1, -1});
  CHECK(sg.power({0, 0, 0}) == 1);
  CHECK(sg.power({0, 1, 0}) == -1);
  CHECK(sg.power({0, 1, 1}) == 1);
  // multiplicative in sigma
  SignVector sh(std::vector<int>{-1, -1, 1});
  std::vector<int> bits = {1, 0, 1};
  SignVector prod(std::vector<int>{-1, 1, -1});
  CHECK(sg.power(bits) * sh.power(bits) == prod.power(bits));
}

TEST_CASE("datum invariants") {
  std::array<double, 4> A = {1.3, -0.4, 0.8, 0.9};
  std::array<double, 2> x = {0.3, 0.6}, y = {0.25, 0.8};
  ShintaniDatum d(2, A, x, y);
  // A Astar^t = I
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 2; ++k) acc += d.a(i, k) * d.astar(j, k);
      CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  CHECK(d.det() == doctest::Approx(1.3 * 0.9 + 0.4 * 0.8));

  std::array<double, 4> sing = {1.0, 2.0, 0.5, 1.0};
  CHECK_THROWS_AS(ShintaniDatum(2, sing, x, y), EvalError);
  std::array<double, 2> bad = {0.3, 1.0 + 1e-12};
  CHECK_THROWS_AS(ShintaniDatum(2, A, bad, y), EvalError);
}

TEST_CASE("reduce_torus") {
  // already reduced
  std::array<double, 1> x = {0.4}, y = {0.3};
  auto t = reduce_torus(x, y);
  CHECK(t.kx[0] == 0);
  CHECK(std::abs(t.phase - cplx(1, 0)) < 1e-15);

  // x = 1.5, y = 0.25: phase e(-0.25) = -i
  auto t2 = reduce_torus(std::array<double, 1>{1.5}, std::array<double, 1>{0.25});
  CHECK(t2.x0[0] == doctest::Approx(0.5));
  CHECK(t2.kx[0] == 1);
  CHECK(std::abs(t2.phase - cplx(0, -1)) < 1e-15);

  // y shift leaves the phase alone
  auto t3 = reduce_torus(std::array<double, 1>{0.5}, std::array<double, 1>{2.25});
  CHECK(t3.y0[0] == doctest::Approx(0.25));
  CHECK(t3.ky[0] == 2);
  CHECK(std::abs(t3.phase - cplx(1, 0)) < 1e-15);

  // idempotent
  auto t4 = reduce_torus(t2.x0, t2.y0);
  CHECK(t4.kx[0] == 0);
  CHECK(t4.ky[0] == 0);
  CHECK(std::abs(t4.phase - cplx(1, 0)) < 1e-15);

  CHECK_THROWS_AS(reduce_torus(std::array<double, 1>{2.0 + 1e-11}, y),
                  EvalError);
}

TEST_CASE("region classification") {
  SpectralPoint strip({cplx(0.5, 0.3), cplx(0.3, -1)});
  CHECK(strip.region() == Region::STRIP);
  SpectralPoint r2({cplx(2.5, 0.3), cplx(1.2, 0)});
  CHECK(r2.region() == Region::RIGHT);
  SpectralPoint l({cplx(-0.5, 0.3), cplx(0.2, 0)});
  CHECK(l.region() == Region::LEFT);
  SpectralPoint lat({cplx(-2, 0), cplx(0, 0)});
  CHECK(lat.region() == Region::LATTICE);
  CHECK(lat.lattice() == std::vector<long>{-2, 0});
  SpectralPoint out({cplx(-1.5, 0), cplx(3, 0.2)});
  CHECK(out.region() == Region::OUTSIDE);
}
