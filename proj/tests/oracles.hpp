#pragma once

// Test-only reference implementations, independent of the library's
// evaluation paths: long-double quadrature and series with generous budgets.

#include <functional>
#include <vector>

namespace oracles {

// Gauss-Legendre nodes/weights on [-1, 1], long double Newton iteration.
struct GlRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};
const GlRule& gl_rule(int n);

// composite Gauss-Legendre integral of f over [a,b] in `panels` equal panels
long double gl_integrate(const std::function<long double(long double)>& f, long double a,
                         long double b, int panels, int order = 40);

// Gaussian tail probability by quadrature of the density.
long double q_gauss_tail(long double x);

// E1(u) by the 200-term power series -egamma - ln u - sum (-u)^k/(k k!).
// Reliable (to well under 1e-12 relative) for 0 < u <= ~9 in long double.
long double e1_series(long double u, int terms = 200);

// e^u * E1(u) by quadrature of e^-s/(u+s) over s >= 0; for u >= 0.05.
long double exp_e1_scaled_integral(long double u);

// e^w * E1(w) by the divergent asymptotic series truncated at its smallest
// term; floor error ~ sqrt(2 pi w) e^-w, so use only for w >= 30.
long double exp_e1_scaled_asymptotic(long double w);

// two-sided Kolmogorov-Smirnov statistic of samples against cdf (sorts a copy)
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace oracles
