#pragma once

#include "fblrelay/errors.hpp"

namespace fblrelay {

// Tolerance/budget knobs for the series and continued-fraction evaluations.
struct Accuracy {
  double rel_tol = 1e-12;  // must satisfy 0 < rel_tol < 1e-6
  int max_terms = 200;     // must be >= 50

  void validate() const;
};

// Gaussian tail probability Q(x) = P(N(0,1) > x). Strictly decreasing,
// Q(0) = 1/2, Q(x) + Q(-x) = 1.
double q_function(double x);

// Exponential integral Ei(x) for x < 0. Negative, increasing, -> 0- as
// x -> -inf. The positive branch is not needed here and is rejected.
double exp_integral_ei(double x, const Accuracy& acc = {});

// Exponentially scaled E1: returns e^w * E1(w) = -e^w * Ei(-w) for w > 0.
// Finite and in (0, ~ -ln w + ...] for all w; free of over/underflow.
double exp_e1_scaled(double w, const Accuracy& acc = {});

// e^a * (Ei(-u) - Ei(-v)) for u, v > 0, evaluated in scaled form so the
// product stays finite even when a is large and Ei(-u), Ei(-v) underflow.
// Antisymmetric in (u, v); exactly 0 when u == v.
double exp_scaled_ei_diff(double a, double u, double v, const Accuracy& acc = {});

}  // namespace fblrelay
