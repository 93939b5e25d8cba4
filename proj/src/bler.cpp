#include "fblrelay/bler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "fblrelay/kernels.hpp"
#include "fblrelay/quadrature.hpp"
#include "fblrelay/special_functions.hpp"

namespace fblrelay {

namespace {

double clamp01(double raw, bool* clamped) {
  if (raw < 0.0) {
    *clamped = true;
    return 0.0;
  }
  if (raw > 1.0) {
    *clamped = true;
    return 1.0;
  }
  return raw;
}

struct RampWindow {
  double lo;     // max(ramp_lower, 0)
  double hi;     // ramp_upper
  double width;  // hi - lo
  double slope;  // slope_coeff * sqrt(m)
};

RampWindow ramp_window(const LinearApproxParams& p, double blocklength) {
  RampWindow w;
  w.lo = std::max(p.ramp_lower, 0.0);
  w.hi = p.ramp_upper;
  if (!(w.hi > 0.0) || !(w.hi > w.lo))
    throw std::domain_error("ramp window is empty; check LinearApproxParams");
  w.width = w.hi - w.lo;
  w.slope = p.slope_coeff * std::sqrt(blocklength);
  return w;
}

// integral over [lo, hi] of (1 - e^(-x/mean)) dx by the series
//   hi * sum_{k>=1} (-1)^(k+1) beta^k (1 - lambda^(k+1)) / (k! (k+1)),
// beta = hi/mean, lambda = lo/hi. Keeps full relative precision when the
// integrand is tiny (mean >> hi), where the expm1 form would cancel.
double ramp_tail_integral_series(double lo, double hi, double mean) {
  const double beta = hi / mean;
  const double lambda = lo / hi;
  double lam_pow = lambda * lambda;  // lambda^(k+1), k = 1
  double beta_fact = beta;           // beta^k / k!
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 160; ++k) {
    const double term = sign * beta_fact * (1.0 - lam_pow) / (k + 1);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k >= 4) break;
    sign = -sign;
    lam_pow *= lambda;
    beta_fact *= beta / (k + 1);
  }
  return hi * sum;
}

double ramp_tail_integral(double lo, double hi, double mean) {
  if (hi / mean <= 1.0) return ramp_tail_integral_series(lo, hi, mean);
  // (hi-lo) - mean*(e^(-lo/mean) - e^(-hi/mean))
  return (hi - lo) + mean * std::exp(-lo / mean) * std::expm1(-(hi - lo) / mean);
}

// integral over [lo, hi] of e^(-x/mean) * c*x/(1+c*x) dx via the double
// series in (c*hi) and (hi/mean):
//   hi * sum_{j>=1} sum_{i>=0} (-1)^(j+1+i) (c hi)^j beta^i
//                   (1 - lambda^(i+j+1)) / (i! (i+j+1)).
// Requires c*hi <= ~0.5 and beta <= ~1; all partial terms stay bounded by
// e * hi, so there is no overflow or cancellation blow-up.
double interference_correction_series(double lo, double hi, double mean, double c) {
  const double beta = hi / mean;
  const double chi = c * hi;
  const double lambda = lo / hi;
  double sum = 0.0;
  double chi_pow = 1.0;  // (c hi)^j
  double sign_j = 1.0;
  for (int j = 1; j <= 256; ++j) {
    chi_pow *= chi;
    sign_j = -sign_j;
    // inner sum over i at fixed j
    double inner = 0.0;
    double beta_fact = 1.0;  // beta^i / i!
    double sign_i = 1.0;
    double lam_pow = 1.0;
    for (int n = 1; n < j + 1; ++n) lam_pow *= lambda;  // lambda^j, advanced below
    for (int i = 0; i <= 256; ++i) {
      lam_pow *= lambda;  // lambda^(i+j+1)
      const double term = sign_i * beta_fact * (1.0 - lam_pow) / (i + j + 1);
      inner += term;
      if (std::abs(term) <= 1e-18 * (std::abs(inner) + 1e-30) && i >= 2) break;
      sign_i = -sign_i;
      beta_fact *= beta / (i + 1);
    }
    const double term_j = -sign_j * chi_pow * inner;  // (-1)^(j+1) (c hi)^j * inner
    sum += term_j;
    if (std::abs(term_j) <= 1e-18 * (std::abs(sum) + 1e-300) && j >= 2) break;
  }
  return hi * sum;
}

std::size_t worker_count(std::size_t nchunks) {
  std::size_t n = 0;
  if (const char* env = std::getenv("FBLRELAY_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<std::size_t>(std::min(v, 1024ul));
  }
  if (n == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    n = hc == 0 ? 1 : hc;
  }
  return std::max<std::size_t>(1, std::min(n, nchunks));
}

}  // namespace

double combine_df(double e1, double e2) {
  if (!(e1 >= 0.0 && e1 <= 1.0) || !(e2 >= 0.0 && e2 <= 1.0))
    throw std::domain_error("combine_df: hop error rates must lie in [0,1]");
  return e1 + (1.0 - e1) * e2;
}

BlerEstimate hop_bler_quadrature(const std::function<double(double)>& cdf,
                                 const LinearApproxParams& p, double blocklength,
                                 double rel_tol) {
  const RampWindow w = ramp_window(p, blocklength);
  const QuadResult q = integrate_adaptive(cdf, w.lo, w.hi, rel_tol, 1e-300);
  bool clamped = false;
  const double v = clamp01(w.slope * q.value, &clamped);
  return BlerEstimate{v, Method::quadrature, 0.0, clamped};
}

BlerEstimate hop_bler_rayleigh_closed(double mean_snr, const LinearApproxParams& p,
                                      double blocklength) {
  if (!(mean_snr > 0.0))
    throw std::domain_error("hop_bler_rayleigh_closed: mean SNR must be positive");
  const RampWindow w = ramp_window(p, blocklength);
  const double raw = w.slope * ramp_tail_integral(w.lo, w.hi, mean_snr);
  bool clamped = false;
  const double v = clamp01(raw, &clamped);
  return BlerEstimate{v, Method::closed_form, 0.0, clamped};
}

BlerEstimate hop_bler_fdr_sr_closed(const AvgSnrs& s, const LinearApproxParams& p,
                                    double blocklength) {
  if (!(s.sr > 0.0)) throw std::domain_error("hop_bler_fdr_sr_closed: sr must be positive");
  if (!(s.rr >= 0.0)) throw std::domain_error("hop_bler_fdr_sr_closed: rr must be >= 0");
  if (s.rr == 0.0) return hop_bler_rayleigh_closed(s.sr, p, blocklength);
  const RampWindow w = ramp_window(p, blocklength);
  const double c = s.rr / s.sr;
  double raw;
  if (c * w.hi <= 0.5 && w.hi / s.sr <= 1.0) {
    // Rayleigh term plus interference correction, both as stable series.
    raw = w.slope * (ramp_tail_integral_series(w.lo, w.hi, s.sr) +
                     interference_correction_series(w.lo, w.hi, s.sr, c));
  } else {
    // exponential-integral closed form
    const double a = 1.0 / s.rr;
    const double u = w.hi / s.sr + a;
    const double v = w.lo / s.sr + a;
    raw = w.slope * (w.width - s.sr / s.rr * exp_scaled_ei_diff(a, u, v));
  }
  bool clamped = false;
  const double v01 = clamp01(raw, &clamped);
  return BlerEstimate{v01, Method::closed_form, 0.0, clamped};
}

BlerEstimate bler_fdr_closed(const AvgSnrs& s, const CodingSpec& spec_f) {
  if (!(s.rd > 0.0)) throw std::domain_error("bler_fdr_closed: rd must be positive");
  const LinearApproxParams p = linear_approx_params(spec_f);
  const BlerEstimate e1 = hop_bler_fdr_sr_closed(s, p, spec_f.blocklength);
  const BlerEstimate e2 = hop_bler_rayleigh_closed(s.rd, p, spec_f.blocklength);
  return BlerEstimate{combine_df(e1.value, e2.value), Method::closed_form, 0.0,
                      e1.clamped || e2.clamped};
}

BlerEstimate bler_hdr_closed(const AvgSnrs& s, const CodingSpec& spec_h) {
  if (!(s.sr > 0.0) || !(s.rd > 0.0))
    throw std::domain_error("bler_hdr_closed: sr and rd must be positive");
  const LinearApproxParams p = linear_approx_params(spec_h);
  const BlerEstimate e1 = hop_bler_rayleigh_closed(s.sr, p, spec_h.blocklength);
  const BlerEstimate e2 = hop_bler_rayleigh_closed(s.rd, p, spec_h.blocklength);
  return BlerEstimate{combine_df(e1.value, e2.value), Method::closed_form, 0.0,
                      e1.clamped || e2.clamped};
}

BlerEstimate bler_fdr_asymptotic(const AvgSnrs& s, int payload_bits, int block_channel_uses) {
  if (!(s.sr > 0.0) || !(s.rd > 0.0) || !(s.rr >= 0.0) || payload_bits < 1 ||
      block_channel_uses < 1)
    throw std::domain_error("bler_fdr_asymptotic: invalid inputs");
  const double r = static_cast<double>(payload_bits) / block_channel_uses;
  const double raw = (s.rr / s.sr + 1.0 / s.rd) * std::expm1(r * std::numbers::ln2);
  bool clamped = false;
  const double v = clamp01(raw, &clamped);
  return BlerEstimate{v, Method::asymptotic, 0.0, clamped};
}

BlerEstimate bler_hdr_asymptotic(const AvgSnrs& s, int payload_bits, int block_channel_uses) {
  if (!(s.sr > 0.0) || !(s.rd > 0.0) || payload_bits < 1 || block_channel_uses < 1)
    throw std::domain_error("bler_hdr_asymptotic: invalid inputs");
  const double r2 = 2.0 * payload_bits / block_channel_uses;
  const double raw = (1.0 / s.sr + 1.0 / s.rd) * std::expm1(r2 * std::numbers::ln2);
  bool clamped = false;
  const double v = clamp01(raw, &clamped);
  return BlerEstimate{v, Method::asymptotic, 0.0, clamped};
}

BlerEstimate bler_hdr_asymptotic(const SystemParams& sys, int payload_bits,
                                 int block_channel_uses) {
  return bler_hdr_asymptotic(avg_snrs(sys), payload_bits, block_channel_uses);
}

BlerEstimate bler_monte_carlo(const AvgSnrs& s, DuplexMode mode, const CodingSpec& spec,
                              std::size_t n, std::uint64_t seed, Hop hop) {
  if (n < 10'000) throw std::domain_error("bler_monte_carlo: need at least 1e4 samples");
  if (!(s.sr > 0.0) || !(s.rd > 0.0) || !(s.rr >= 0.0))
    throw std::domain_error("bler_monte_carlo: invalid average SNRs");
  spec.validate();

  constexpr std::size_t kChunk = 8192;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> chunk_sum(nchunks), chunk_sumsq(nchunks);
  const double rate = spec.rate();
  const double m = spec.blocklength;
  const auto& k = kernels::ops();

  auto process = [&](std::size_t chunk_begin, std::size_t chunk_end) {
    std::vector<double> relay(kChunk), dest(kChunk), e1(kChunk), e2(kChunk);
    for (std::size_t c = chunk_begin; c < chunk_end; ++c) {
      const std::uint64_t first = c * kChunk;
      const std::size_t len = std::min(kChunk, n - first);
      sample_relay_dest_snrs(s, mode, seed, first, len, relay.data(), dest.data());
      switch (hop) {
        case Hop::both:
          k.block_error(relay.data(), len, rate, m, e1.data());
          k.block_error(dest.data(), len, rate, m, e2.data());
          k.df_moments(e1.data(), e2.data(), len, &chunk_sum[c], &chunk_sumsq[c]);
          break;
        case Hop::source_relay:
          k.block_error(relay.data(), len, rate, m, e1.data());
          k.moments(e1.data(), len, &chunk_sum[c], &chunk_sumsq[c]);
          break;
        case Hop::relay_dest:
          k.block_error(dest.data(), len, rate, m, e2.data());
          k.moments(e2.data(), len, &chunk_sum[c], &chunk_sumsq[c]);
          break;
      }
    }
  };

  const std::size_t workers = worker_count(nchunks);
  if (workers == 1) {
    process(0, nchunks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t per = (nchunks + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t b = t * per;
      const std::size_t e = std::min(nchunks, b + per);
      if (b >= e) break;
      pool.emplace_back(process, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // combine in chunk order so the result is independent of the worker layout
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    sum += chunk_sum[c];
    sumsq += chunk_sumsq[c];
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) / (static_cast<double>(n) - 1));
  const double ci = 1.96 * std::sqrt(var / static_cast<double>(n));
  return BlerEstimate{mean, Method::monte_carlo, ci, false};
}

}  // namespace fblrelay
