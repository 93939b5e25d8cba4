#include "fblrelay/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace fblrelay {

void Accuracy::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1e-6))
    throw std::domain_error("Accuracy.rel_tol must lie in (0, 1e-6)");
  if (max_terms < 50) throw std::domain_error("Accuracy.max_terms must be >= 50");
}

double q_function(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q_function: non-finite argument");
  return 0.5 * std::erfc(x * (1.0 / std::numbers::sqrt2));
}

namespace {

// e^w * E1(w) by the convergent series E1 = -egamma - ln w - sum (-w)^k/(k k!).
// Only used for w <= 1, where the alternating terms never grow.
double exp_e1_scaled_series(double w, const Accuracy& acc) {
  double sum = 0.0;
  double term = 1.0;  // (-w)^k / k!
  for (int k = 1; k <= acc.max_terms; ++k) {
    term *= -w / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) <= acc.rel_tol * 1e-2 * std::abs(sum)) {
      const double e1 = -std::numbers::egamma - std::log(w) - sum;
      return std::exp(w) * e1;
    }
  }
  throw convergence_error("exp_e1_scaled: series did not converge");
}

// e^w * E1(w) by the continued fraction
//   E1(w) = e^-w / (w + 1 - 1/(w + 3 - 4/(w + 5 - 9/(...))))
// evaluated with the modified Lentz scheme. Used for w > 1.
double exp_e1_scaled_cf(double w, const Accuracy& acc) {
  const double tiny = 1e-290;
  double b = w + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  const int iter_cap = std::max(acc.max_terms, 400);
  for (int i = 1; i <= iter_cap; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= acc.rel_tol * 1e-2) return h;
  }
  throw convergence_error("exp_e1_scaled: continued fraction did not converge");
}

}  // namespace

double exp_e1_scaled(double w, const Accuracy& acc) {
  acc.validate();
  if (!(w > 0.0)) throw std::domain_error("exp_e1_scaled: argument must be positive");
  return w <= 1.0 ? exp_e1_scaled_series(w, acc) : exp_e1_scaled_cf(w, acc);
}

double exp_integral_ei(double x, const Accuracy& acc) {
  acc.validate();
  if (!std::isfinite(x)) throw std::domain_error("exp_integral_ei: non-finite argument");
  if (x >= 0.0)
    throw std::domain_error("exp_integral_ei: only the negative branch is implemented");
  const double w = -x;
  return -std::exp(-w) * exp_e1_scaled(w, acc);
}

double exp_scaled_ei_diff(double a, double u, double v, const Accuracy& acc) {
  acc.validate();
  if (!(u > 0.0) || !(v > 0.0))
    throw std::domain_error("exp_scaled_ei_diff: u and v must be positive");
  if (u == v) return 0.0;
  // e^a (Ei(-u) - Ei(-v)) = e^(a-v) * e^v E1(v) - e^(a-u) * e^u E1(u)
  const double gu = exp_e1_scaled(u, acc);
  const double gv = exp_e1_scaled(v, acc);
  return std::exp(a - v) * gv - std::exp(a - u) * gu;
}

}  // namespace fblrelay
