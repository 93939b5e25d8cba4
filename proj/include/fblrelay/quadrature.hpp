#pragma once

#include <cstddef>
#include <functional>

#include "fblrelay/errors.hpp"

namespace fblrelay {

struct QuadResult {
  double value = 0;
  double abs_error = 0;   // accumulated embedded-rule error estimate
  std::size_t evals = 0;  // integrand evaluations spent
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. Subdivides the interval with the
// largest error estimate until the total estimate drops below
// max(rel_tol*|integral|, abs_tol). Throws convergence_error once max_evals
// integrand evaluations have been spent without meeting the target.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol = 0.0,
                              std::size_t max_evals = 1'000'000);

}  // namespace fblrelay
