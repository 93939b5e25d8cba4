#include <cmath>

#include "fblrelay/finite_blocklength.hpp"
#include "fblrelay/kernels.hpp"
#include "rng_common.hpp"

// Reference kernels. Plain loops over the same per-element math the SIMD
// variants implement; this translation unit is built with -ffp-contract=off
// so results do not depend on compiler fusion choices.

namespace fblrelay::kernels::scalar {

namespace {

void unit_exponentials(std::uint64_t seed, std::uint32_t stream, std::uint64_t first,
                       std::size_t n, double* out) {
  const std::uint64_t sbase = detail::seed_base(seed);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = -std::log(detail::unit_from_raw(detail::raw_at(sbase, stream, first + i)));
}

void fd_relay_sinr(const double* x, const double* y, std::size_t n, double mean_sr,
                   double mean_rr, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double num = mean_sr * x[i];
    const double den = mean_rr * y[i] + 1.0;
    out[i] = num / den;
  }
}

void block_error(const double* snr, std::size_t n, double rate, double blocklength,
                 double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = fblrelay::detail::block_error_from_snr(snr[i], rate, blocklength);
}

void df_moments(const double* e1, const double* e2, std::size_t n, double* sum, double* sumsq) {
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = e1[i] + (1.0 - e1[i]) * e2[i];
    s += c;
    s2 += c * c;
  }
  *sum = s;
  *sumsq = s2;
}

void moments(const double* e, std::size_t n, double* sum, double* sumsq) {
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += e[i];
    s2 += e[i] * e[i];
  }
  *sum = s;
  *sumsq = s2;
}

}  // namespace

const Ops kOps{unit_exponentials, fd_relay_sinr, block_error, df_moments, moments};

}  // namespace fblrelay::kernels::scalar
