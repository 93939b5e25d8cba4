#include "fblrelay/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace fblrelay {

namespace {

// Gauss-Kronrod 15(7) abscissae/weights on [-1,1]; xgk[7] = 0 is the center.
constexpr double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                           0.741531185599394, 0.586087235467691, 0.405845151377397,
                           0.207784955007898, 0.0};
constexpr double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                           0.140653259715525, 0.169004726639267, 0.190350578064785,
                           0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                          0.417959183673469};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double halflen = 0.5 * (b - a);
  const double fc = f(center);
  double k15 = wgk[7] * fc;
  double g7 = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = halflen * xgk[i];
    const double fsum = f(center - dx) + f(center + dx);
    k15 += wgk[i] * fsum;
    if (i % 2 == 1) g7 += wg[i / 2] * fsum;
  }
  k15 *= halflen;
  g7 *= halflen;
  double err = std::abs(k15 - g7);
  // standard Kronrod error sharpening, floored at rounding level so an
  // unreachable tolerance exhausts the budget instead of silently passing
  err = 200.0 * err * std::sqrt(std::min(1.0, 200.0 * err));
  err = std::max(err, 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k15));
  return Panel{a, b, k15, err};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, std::size_t max_evals) {
  if (!(rel_tol > 0.0)) throw std::domain_error("integrate_adaptive: rel_tol must be positive");
  if (a == b) return QuadResult{0.0, 0.0, 0};
  std::priority_queue<Panel> heap;
  Panel first = evaluate(f, a, b);
  std::size_t evals = 15;
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  while (total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
    if (evals + 30 > max_evals)
      throw convergence_error("integrate_adaptive: evaluation budget exhausted before tolerance");
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw convergence_error("integrate_adaptive: interval vanished before tolerance");
    Panel left = evaluate(f, worst.a, mid);
    Panel right = evaluate(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  return QuadResult{total, total_err, evals};
}

}  // namespace fblrelay
