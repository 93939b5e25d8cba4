#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fblrelay/errors.hpp"

namespace fblrelay {

// Linear-unit channel description. dB/dBm conversion is the CLI's job;
// everything below this line is strictly linear.
struct LinkGains {
  double omega_sr = 0;  // S-R average power gain
  double omega_rd = 0;  // R-D average power gain
  double omega_rr = 0;  // residual loop-interference gain; 0 = perfect cancellation
  double noise_r = 0;   // AWGN variance at the relay, watts
  double noise_d = 0;   // AWGN variance at the destination, watts

  void validate() const;
};

struct SystemParams {
  LinkGains gains;
  double power_s = 0;  // source transmit power, watts
  double power_r = 0;  // relay transmit power, watts

  void validate() const;
};

// Average link SNRs: sr = P_S*Omega_SR/N_R, rd = P_R*Omega_RD/N_D,
// rr = P_R*Omega_RR/N_R.
struct AvgSnrs {
  double sr = 0;
  double rd = 0;
  double rr = 0;
};

AvgSnrs avg_snrs(const SystemParams& sys);

// CDF of mean*X with X unit exponential: 1 - exp(-x/mean).
double cdf_exponential(double x, double mean);

// CDF of the full-duplex relay input SINR sr*X/(rr*Y + 1):
// F(x) = 1 - sr * exp(-x/sr) / (sr + rr*x). Reduces to the exponential CDF
// when rr == 0.
double cdf_fd_relay_sinr(double x, const AvgSnrs& s);

// High-SNR approximation (rr/sr)*x, clamped to [0,1].
double cdf_fd_relay_sinr_high_snr(double x, const AvgSnrs& s);

enum class DuplexMode { full, half };

// One fading realization: SNR at the relay input and at the destination.
struct SnrDraw {
  double relay = 0;
  double dest = 0;
};

// Fills relay[i], dest[i] for draw indices [first, first+n). Every draw is a
// pure function of (seed, draw index), so output never depends on chunking
// or thread count. Full duplex consumes unit-exponential streams X,Y,Z;
// half duplex consumes X,Y.
void sample_relay_dest_snrs(const AvgSnrs& s, DuplexMode mode, std::uint64_t seed,
                            std::uint64_t first, std::size_t n, double* relay, double* dest);

// Convenience wrapper returning n draws starting at index 0.
std::vector<SnrDraw> sample_link_snrs(const AvgSnrs& s, DuplexMode mode, std::size_t n,
                                      std::uint64_t seed);

}  // namespace fblrelay
