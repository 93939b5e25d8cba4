#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace oracles {

const GlRule& gl_rule(int n) {
  static std::map<int, GlRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GlRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(static_cast<double>(pi * (i + 0.75L) / (n + 0.5L)));
    long double dp = 0;
    for (int iter = 0; iter < 200; ++iter) {
      long double pm = 1.0L, pc = x;
      for (int k = 2; k <= n; ++k) {
        const long double pn = ((2 * k - 1) * x * pc - (k - 1) * pm) / k;
        pm = pc;
        pc = pn;
      }
      dp = n * (x * pc - pm) / (x * x - 1.0L);
      const long double dx = pc / dp;
      x -= dx;
      if (fabsl(dx) < 1e-19L * (fabsl(x) + 1e-3L)) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

long double gl_integrate(const std::function<long double(long double)>& f, long double a,
                         long double b, int panels, int order) {
  const GlRule& rule = gl_rule(order);
  long double total = 0;
  const long double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const long double mid = a + h * (p + 0.5L);
    const long double half = h * 0.5L;
    long double s = 0;
    for (int i = 0; i < order; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += s * half;
  }
  return total;
}

long double q_gauss_tail(long double x) {
  if (x < 0) return 1.0L - q_gauss_tail(-x);
  const long double inv_sqrt_2pi = 0.398942280401432677939946059934381868L;
  const long double upper = x + 50.0L;
  return gl_integrate([](long double t) { return expl(-0.5L * t * t); }, x, upper, 64, 40) *
         inv_sqrt_2pi;
}

long double e1_series(long double u, int terms) {
  const long double egamma = 0.577215664901532860606512090082402431L;
  long double sum = 0.0L;
  long double term = 1.0L;  // (-u)^k / k!
  for (int k = 1; k <= terms; ++k) {
    term *= -u / k;
    sum += term / k;
  }
  return -egamma - logl(u) - sum;
}

long double exp_e1_scaled_integral(long double u) {
  // e^u E1(u) = integral of e^-s / (u + s) ds over [0, inf)
  return gl_integrate([u](long double s) { return expl(-s) / (u + s); }, 0.0L, 90.0L, 90, 40);
}

long double exp_e1_scaled_asymptotic(long double w) {
  long double sum = 0.0L;
  long double term = 1.0L / w;  // k! / w^(k+1)
  long double prev = fabsl(term);
  for (int k = 0; k < 60; ++k) {
    sum += (k % 2 == 0 ? term : -term);
    const long double next = term * (k + 1) / w;
    if (fabsl(next) >= prev) break;  // smallest term reached
    prev = fabsl(next);
    term = next;
  }
  return sum;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  return d;
}

}  // namespace oracles
