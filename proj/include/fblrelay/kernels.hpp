#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fblrelay::kernels {

enum class Backend { scalar, avx2 };

// Batch operations behind the Monte Carlo estimator. The scalar table is the
// reference; SIMD variants are equivalence-tested against it and selected at
// runtime (override with FBLRELAY_SIMD=scalar|avx2|auto).
struct Ops {
  // out[i] = unit-mean exponential variate for (seed, stream, first + i).
  void (*unit_exponentials)(std::uint64_t seed, std::uint32_t stream, std::uint64_t first,
                            std::size_t n, double* out);
  // out[i] = mean_sr * x[i] / (mean_rr * y[i] + 1)
  void (*fd_relay_sinr)(const double* x, const double* y, std::size_t n, double mean_sr,
                        double mean_rr, double* out);
  // out[i] = normal-approximation block error probability at SNR snr[i]
  void (*block_error)(const double* snr, std::size_t n, double rate, double blocklength,
                      double* out);
  // sum/sumsq of c[i] = e1[i] + (1 - e1[i]) * e2[i]
  void (*df_moments)(const double* e1, const double* e2, std::size_t n, double* sum,
                     double* sumsq);
  // sum/sumsq of e[i]
  void (*moments)(const double* e, std::size_t n, double* sum, double* sumsq);
};

bool avx2_available();
Backend active_backend();
void set_backend(Backend b);  // throws std::invalid_argument if unavailable
std::string_view backend_name(Backend b);

const Ops& ops();                    // table for the active backend
const Ops& ops_for(Backend b);       // direct access, for equivalence tests

}  // namespace fblrelay::kernels
