// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "taylor.hpp"
#include "oracles.hpp"

using namespace shintani;

namespace {
ShintaniDatum datum1(double a, double x, double y) {
  return ShintaniDatum(1, std::array<double, 1>{a}, std::array<double, 1>{x},
                       std::array<double, 1>{y});
}
} // namespace

TEST_CASE("phi_coeffs constant term") {
  auto c = phi_coeffs(0.3, 0.5, 4);
  CHECK(std::abs(c[0] - cplx(0.5, 0)) < 1e-15);
}

TEST_CASE("phi_coeffs even kernel at the symmetric point") {
  // phi(u,1/2,1/2) = 1/(2 cosh(pi u)) is even
  auto c = phi_coeffs(0.5, 0.5, 9);
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  for (int n = 1; n <= 9; n += 2) CHECK(std::abs(c[n]) < 1e-12 * (1 + scale));
  // c2 from a finite-difference oracle on the kernel itself
  auto f = [](double u) { return 1.0 / (2.0 * std::cosh(kPi * u)); };
  double d2 = oracles::fd_derivative(f, 2, 1e-3);
  CHECK(std::abs(c[2] - d2 / 2.0) < 1e-7);
  // and the closed sech value: c2 = -pi^2/4
  CHECK(std::abs(c[2] - cplx(-kPi * kPi / 4.0, 0)) < 1e-12);
}

TEST_CASE("phi_coeffs reproduces the kernel near 0") {
  auto c = phi_coeffs(0.3, 0.25, 10);
  for (double u : {0.01, 0.03, -0.02}) {
    cplx acc = 0.0;
    double up = 1.0;
    for (int n = 0; n <= 10; ++n) {
      acc += c[n] * up;
      up *= u;
    }
    cplx next = c[10] * std::pow(u, 10); // same-order magnitude proxy
    CHECK(std::abs(phi(u, 0.3, 0.25) - acc) <=
          20.0 * std::abs(next) + 1e-15);
  }
}

TEST_CASE("phi_coeffs rejects integer y") {
  CHECK_THROWS_AS(phi_coeffs(0.3, 1.0 - 1e-12, 4), EvalError);
}

TEST_CASE("truncated series multiplication commutes and truncates") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  TruncatedSeries a(2, 4), b(2, 4);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      a.set({i, j}, cplx(U(rng), U(rng)));
      b.set({i, j}, cplx(U(rng), U(rng)));
    }
  TruncatedSeries ab = a * b, ba = b * a;
  for (const auto& [k, v] : ab.coeffs()) {
    CHECK(std::abs(v - ba.coeff(k)) <= 1e-15 * (1.0 + std::abs(v)));
    CHECK(k[0] + k[1] <= 4);
  }
}

TEST_CASE("B_0 is the constant term") {
  std::array<double, 4> A = {1.2, 0.4, -0.3, 0.8};
  std::array<double, 2> x = {0.3, 0.6}, y = {0.25, 0.7};
  ShintaniDatum d(2, A, x, y);
  cplx b0 = bernoulli_B(MultiIndex({0, 0}), d);
  cplx want = 1.0 / ((1.0 - e_of(0.25)) * (1.0 - e_of(0.7)));
  CHECK(std::abs(b0 - want) <= 1e-14 * std::abs(want));
}

TEST_CASE("B_2 at the beta point") {
  // B_2(1, 1/2, 1/2) = -1/8 = 2^{-2} beta(-2) with beta(-2) = -1/2.
  cplx b2 = bernoulli_B(MultiIndex({2}), datum1(1, 0.5, 0.5));
  CHECK(std::abs(b2 - cplx(-0.125, 0)) < 1e-13);
}

TEST_CASE("B_k scaling in the matrix") {
  std::array<double, 4> A = {1.1, -0.4, 0.6, 0.9};
  std::array<double, 2> x = {0.35, 0.55}, y = {0.6, 0.15};
  ShintaniDatum d(2, A, x, y);
  double c = 1.7;
  std::array<double, 4> cA = A;
  for (auto& v : cA) v *= c;
  ShintaniDatum dc(2, cA, x, y);
  for (std::vector<int> k : {std::vector<int>{1, 0}, {1, 1}, {2, 1}}) {
    MultiIndex mk(k);
    cplx base = bernoulli_B(mk, d);
    cplx scaled = bernoulli_B(mk, dc);
    cplx want = std::pow(c, mk.degree()) * base;
    CHECK(std::abs(scaled - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("F series approximates F for small t") {
  std::array<double, 4> A = {1.2, 0.4, -0.3, 0.8};
  std::array<double, 2> x = {0.3, 0.6}, y = {0.25, 0.7};
  ShintaniDatum d(2, A, x, y);
  int K = 8;
  TruncatedSeries F = compose_F_series(d, K);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> U(-0.05, 0.05);
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, 2> t = {U(rng), U(rng)};
    cplx acc = 0.0;
    double next = 0.0;
    for (const auto& [k, v] : F.coeffs()) {
      cplx term = v * std::pow(t[0], k[0]) * std::pow(t[1], k[1]);
      if (k[0] + k[1] == K) next += std::abs(term);
      acc += term;
    }
    cplx exact = F_prod(t, d);
    CHECK(std::abs(exact - acc) <= 2.0 * next + 1e-14);
  }
}

TEST_CASE("special value at negative integers, beta data") {
  auto d = datum1(1, 0.5, 0.5);
  ParityType chi1(std::vector<int>{1});
  auto v0 = special_value_neg(MultiIndex({0}), d, chi1);
  CHECK(std::abs(v0.value - cplx(0.5, 0)) < 1e-14); // beta(0) = 1/2
  CHECK(v0.method == Method::taylor);
  auto v2 = special_value_neg(MultiIndex({2}), d, chi1);
  CHECK(std::abs(v2.value - cplx(-0.125, 0)) < 1e-13); // 2^{-2} beta(-2)
  // parity mismatch vanishes exactly
  auto z = special_value_neg(MultiIndex({1}), d, chi1);
  CHECK(z.value == cplx(0.0, 0.0));
  CHECK(z.err == 0.0);
}

TEST_CASE("special value at positive integers, beta data") {
  auto d = datum1(1, 0.5, 0.5);
  ParityType chi1(std::vector<int>{1});
  auto v1 = special_value_pos(MultiIndex({1}), d, chi1);
  CHECK(std::abs(v1.value - cplx(kPi / 2.0, 0)) < 1e-13); // 2 beta(1)
  CHECK_THROWS_AS(special_value_pos(MultiIndex({2}), d, chi1), EvalError);
}

TEST_CASE("special value positive factorizes at r=2") {
  std::array<double, 4> I2 = {1, 0, 0, 1};
  std::array<double, 2> xy = {0.5, 0.5};
  ShintaniDatum d(2, I2, xy, xy);
  ParityType chi(std::vector<int>{1, 1});
  auto v = special_value_pos(MultiIndex({1, 1}), d, chi);
  double want = kPi * kPi / 4.0;
  CHECK(std::abs(v.value - want) <= 1e-12 * want);
}

TEST_CASE("caps are enforced") {
  auto d = datum1(1, 0.5, 0.5);
  CHECK_THROWS_AS(bernoulli_B(MultiIndex({17}), d), EvalError);
}
