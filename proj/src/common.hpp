// SPDX-License-Identifier: Apache-2.0
#ifndef SHINTANI_COMMON_HPP
#define SHINTANI_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace shintani {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

enum class Status {
  ok = 0,
  invalid_argument,
  domain_error,        // torus coordinate within 1e-9 of an integer
  region_error,        // s outside the region the evaluator supports
  non_positive_matrix, // series route requires strictly positive A
  singular_matrix,
  gamma_pole,
  prefactor_pole,      // contour prefactor pole at positive integer s
  pole_clearance,      // contour radius cannot clear the kernel poles
  truncation_failure,  // series tail bound cannot reach tol within max_box
  quadrature_failure,  // node cap reached before cutoff
  parity_mismatch,
  cap_exceeded,        // taylor combinatorial cap
  unsupported,
  internal_error,
};

const char* status_name(Status s);

class EvalError : public std::runtime_error {
public:
  EvalError(Status code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) {
  throw EvalError(code, what);
}

// Neumaier-compensated accumulator; deterministic for a fixed visit order.
struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  void add(cplx v) {
    cplx t = sum + v;
    double cr = std::abs(sum.real()) >= std::abs(v.real())
                    ? (sum.real() - t.real()) + v.real()
                    : (v.real() - t.real()) + sum.real();
    double ci = std::abs(sum.imag()) >= std::abs(v.imag())
                    ? (sum.imag() - t.imag()) + v.imag()
                    : (v.imag() - t.imag()) + sum.imag();
    comp += cplx(cr, ci);
    sum = t;
  }
  cplx value() const { return sum + comp; }
};

// exp(z) - 1 with small-argument care.
inline cplx expm1c(cplx z) {
  if (std::abs(z) < 0.25) {
    // z(1 + z/2(1 + z/3(1 + z/4(1 + z/5(1 + z/6)))))
    cplx t = 1.0 + z / 6.0;
    t = 1.0 + z / 5.0 * t;
    t = 1.0 + z / 4.0 * t;
    t = 1.0 + z / 3.0 * t;
    t = 1.0 + z / 2.0 * t;
    return z * t;
  }
  return std::exp(z) - 1.0;
}

// w^z for w > 0, principal (real) logarithm.
inline cplx cpow_pos(double w, cplx z) { return std::exp(z * std::log(w)); }

} // namespace shintani

#endif
