#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "fblrelay/channels.hpp"
#include "fblrelay/finite_blocklength.hpp"

namespace fblrelay {

enum class Method { closed_form, asymptotic, quadrature, monte_carlo };

struct BlerEstimate {
  double value = 0;           // in [0,1]
  Method method = Method::closed_form;
  double ci_halfwidth = 0;    // 95% half-width; nonzero only for monte_carlo
  bool clamped = false;       // raw formula output fell outside [0,1]
};

// Decode-and-forward error combining: e1 + (1 - e1) * e2.
double combine_df(double e1, double e2);

// Ramp-weighted BLER of a single hop for an arbitrary SINR CDF:
// slope * integral of cdf over [max(ramp_lower,0), ramp_upper], adaptively
// integrated to rel_tol.
BlerEstimate hop_bler_quadrature(const std::function<double(double)>& cdf,
                                 const LinearApproxParams& p, double blocklength,
                                 double rel_tol = 1e-9);

// Closed form of the same integral for a pure Rayleigh hop (exponential SNR
// with the given mean).
BlerEstimate hop_bler_rayleigh_closed(double mean_snr, const LinearApproxParams& p,
                                      double blocklength);

// Closed form for the full-duplex S-R hop under loop interference
// (exponential-integral based; delegates to the Rayleigh form when rr == 0).
BlerEstimate hop_bler_fdr_sr_closed(const AvgSnrs& s, const LinearApproxParams& p,
                                    double blocklength);

// End-to-end closed forms (decode-and-forward combination of the two hops).
BlerEstimate bler_fdr_closed(const AvgSnrs& s, const CodingSpec& spec_f);
BlerEstimate bler_hdr_closed(const AvgSnrs& s, const CodingSpec& spec_h);

// High-SNR asymptotes.
BlerEstimate bler_fdr_asymptotic(const AvgSnrs& s, int payload_bits, int block_channel_uses);
BlerEstimate bler_hdr_asymptotic(const AvgSnrs& s, int payload_bits, int block_channel_uses);
BlerEstimate bler_hdr_asymptotic(const SystemParams& sys, int payload_bits,
                                 int block_channel_uses);

enum class Hop { both, source_relay, relay_dest };

// Monte Carlo estimate over n fading draws; per draw the two hop errors are
// combined as e1 + (1-e1)*e2 before averaging. ci_halfwidth is
// 1.96 * sample_std / sqrt(n). Deterministic for fixed (inputs, seed, n)
// regardless of worker count; FBLRELAY_THREADS caps workers.
BlerEstimate bler_monte_carlo(const AvgSnrs& s, DuplexMode mode, const CodingSpec& spec,
                              std::size_t n, std::uint64_t seed, Hop hop = Hop::both);

}  // namespace fblrelay
