// AVX2 variants of the batch kernels. The transcendental cores (log, exp,
// erfc) follow the classic fdlibm/Sun branch structure so they track the
// scalar libm reference to a few ulp; equivalence against the scalar kernels
// is asserted in tests/test_kernels.cpp.

#include "fblrelay/finite_blocklength.hpp"
#include "fblrelay/kernels.hpp"
#include "rng_common.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace fblrelay::kernels::avx2 {

namespace {

inline __m256d vd(double x) { return _mm256_set1_pd(x); }

// ---------------------------------------------------------------------------
// integer helpers

inline __m256i mullo64(__m256i a, std::uint64_t c) {
  const __m256i cv = _mm256_set1_epi64x(static_cast<long long>(c));
  const __m256i lo = _mm256_mul_epu32(a, cv);
  const __m256i alo_chi = _mm256_mul_epu32(a, _mm256_srli_epi64(cv, 32));
  const __m256i ahi_clo = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), cv);
  const __m256i hi = _mm256_add_epi64(alo_chi, ahi_clo);
  return _mm256_add_epi64(lo, _mm256_slli_epi64(hi, 32));
}

inline __m256i mix_fin(__m256i z) {
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, 0xBF58476D1CE4E5B9ULL);
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, 0x94D049BB133111EBULL);
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// exact conversion of integers in [0, 2^52) held in 64-bit lanes
inline __m256d u52_to_pd(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)), vd(0x1p52));
}

// ---------------------------------------------------------------------------
// vector log for positive normal doubles

inline __m256d vlog(__m256d x) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256i bits = _mm256_castpd_si256(x);
  __m256d k = _mm256_sub_pd(u52_to_pd(_mm256_srli_epi64(bits, 52)), vd(1023.0));
  __m256d m =
      _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d big = _mm256_cmp_pd(m, vd(1.4142135623730951), _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, vd(0.5)), big);
  k = _mm256_add_pd(k, _mm256_and_pd(big, vd(1.0)));
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, vd(1.0)), _mm256_add_pd(m, vd(1.0)));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d p = vd(1.0 / 19.0);
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z, vd(1.0 / 3.0));
  p = _mm256_mul_pd(p, z);
  const __m256d s2 = _mm256_add_pd(s, s);
  const double kLn2Hi = 6.93147180369123816490e-01;
  const double kLn2Lo = 1.90821492927058770002e-10;
  __m256d r = _mm256_fmadd_pd(k, vd(kLn2Lo), _mm256_mul_pd(s2, p));
  r = _mm256_add_pd(r, s2);
  return _mm256_fmadd_pd(k, vd(kLn2Hi), r);
}

// ---------------------------------------------------------------------------
// vector exp; arguments clamped to the representable band, result accurate to
// ~1 ulp on [-745, 709]

inline __m256d vexp(__m256d x) {
  const double kLn2Hi = 6.93147180369123816490e-01;
  const double kLn2Lo = 1.90821492927058770002e-10;
  x = _mm256_max_pd(_mm256_min_pd(x, vd(709.0)), vd(-745.5));
  const __m256d kd = _mm256_round_pd(_mm256_mul_pd(x, vd(1.4426950408889634074)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(kd, vd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(kd, vd(kLn2Lo), r);
  __m256d p = vd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, vd(0.5));
  p = _mm256_fmadd_pd(p, r, vd(1.0));
  p = _mm256_fmadd_pd(p, r, vd(1.0));
  // scale by 2^k in two steps so subnormal results survive
  const __m128i ki = _mm256_cvtpd_epi32(kd);
  const __m128i k1 = _mm_srai_epi32(ki, 1);
  const __m128i k2 = _mm_sub_epi32(ki, k1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52));
  const __m256d s2 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52));
  return _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);
}

// ---------------------------------------------------------------------------
// vector erfc (fdlibm branch structure)

inline __m256d poly_blend(__m256d s, __m256d mask, const double* ca, const double* cb, int n) {
  __m256d p = _mm256_blendv_pd(vd(cb[n - 1]), vd(ca[n - 1]), mask);
  for (int i = n - 2; i >= 0; --i)
    p = _mm256_fmadd_pd(p, s, _mm256_blendv_pd(vd(cb[i]), vd(ca[i]), mask));
  return p;
}

inline __m256d verfc(__m256d x) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  const __m256d ax = _mm256_and_pd(x, abs_mask);

  // |x| < 0.84375: erfc = 1 - (x + x*P(x^2)/Q(x^2)), valid for signed x
  static const double pp[5] = {1.28379167095512558561e-01, -3.25042107247001499370e-01,
                               -2.84817495755985104766e-02, -5.77027029648944159157e-03,
                               -2.37630166566501626084e-05};
  static const double qq[5] = {3.97917223959155352819e-01, 6.50222499887672944485e-02,
                               5.08130628187576562776e-03, 1.32494738004321644526e-04,
                               -3.96022827877536812320e-06};
  const __m256d z = _mm256_mul_pd(x, x);
  __m256d pr = vd(pp[4]);
  for (int i = 3; i >= 0; --i) pr = _mm256_fmadd_pd(pr, z, vd(pp[i]));
  __m256d qr = vd(qq[4]);
  for (int i = 3; i >= 0; --i) qr = _mm256_fmadd_pd(qr, z, vd(qq[i]));
  qr = _mm256_fmadd_pd(qr, z, vd(1.0));
  const __m256d ya = _mm256_div_pd(pr, qr);
  const __m256d va = _mm256_sub_pd(vd(1.0), _mm256_fmadd_pd(x, ya, x));

  // 0.84375 <= |x| < 1.25: erfc(|x|) = 1 - erx - P(s)/Q(s), s = |x| - 1
  static const double pa[7] = {-2.36211856075265944077e-03, 4.14856118683748331666e-01,
                               -3.72207876035701323847e-01, 3.18346619901161753674e-01,
                               -1.10894694282396677476e-01, 3.54783043256182359371e-02,
                               -2.16637559486879084300e-03};
  static const double qa[6] = {1.06420880400844228286e-01, 5.40397917702171048937e-01,
                               7.18286544141962662868e-02, 1.26171219808761642112e-01,
                               1.36370839120290507362e-02, 1.19844998467991074170e-02};
  const double kErx = 8.45062911510467529297e-01;
  const __m256d sb = _mm256_sub_pd(ax, vd(1.0));
  __m256d pb = vd(pa[6]);
  for (int i = 5; i >= 0; --i) pb = _mm256_fmadd_pd(pb, sb, vd(pa[i]));
  __m256d qb = vd(qa[5]);
  for (int i = 4; i >= 0; --i) qb = _mm256_fmadd_pd(qb, sb, vd(qa[i]));
  qb = _mm256_fmadd_pd(qb, sb, vd(1.0));
  const __m256d vb =
      _mm256_sub_pd(_mm256_sub_pd(vd(1.0), vd(kErx)), _mm256_div_pd(pb, qb));

  // 1.25 <= |x| < 28: erfc(|x|) = exp(-zt^2 - 0.5625 + (zt-|x|)(zt+|x|) + R/S)/|x|
  static const double ra[8] = {-9.86494403484714822705e-03, -6.93858326784720833426e-01,
                               -1.05586262253232909814e+01, -6.23753324503260060396e+01,
                               -1.62396669462573470355e+02, -1.84605092906711035994e+02,
                               -8.12874355063065934246e+01, -9.81432934416914548592e+00};
  static const double sa[8] = {1.96512716674392571292e+01, 1.37657754143519042600e+02,
                               4.34565877475229228821e+02, 6.45387271733267880336e+02,
                               4.29008140027567833386e+02, 1.08635005541779435134e+02,
                               6.57024977031928170135e+00, -6.04244152148580987438e-02};
  static const double rb[8] = {-9.86494292470009928597e-03, -7.99283237680523006574e-01,
                               -1.77579549177547519889e+01, -1.60636384855821916062e+02,
                               -6.37566443368389627722e+02, -1.02509513161107724954e+03,
                               -4.83519191608651397019e+02, 0.0};
  static const double sbt[8] = {3.03380607434824582924e+01, 3.25792512996573918826e+02,
                                1.53672958608443695994e+03, 3.19985821950859553908e+03,
                                2.55305040643316442583e+03, 4.74528541206955367215e+02,
                                -2.24409524465858183362e+01, 0.0};
  const __m256d axc = _mm256_max_pd(ax, vd(1.25));
  const __m256d st = _mm256_div_pd(vd(1.0), _mm256_mul_pd(axc, axc));
  const __m256d near = _mm256_cmp_pd(axc, vd(2.857142857142857), _CMP_LT_OQ);
  const __m256d rt = poly_blend(st, near, ra, rb, 8);
  __m256d stq = poly_blend(st, near, sa, sbt, 8);
  stq = _mm256_fmadd_pd(stq, st, vd(1.0));
  const __m256d rs = _mm256_div_pd(rt, stq);
  const __m256d hi32 = _mm256_castsi256_pd(_mm256_set1_epi64x(0xFFFFFFFF00000000LL));
  const __m256d zt = _mm256_and_pd(axc, hi32);
  const __m256d e1 = vexp(_mm256_fnmadd_pd(zt, zt, vd(-0.5625)));
  const __m256d e2 = vexp(
      _mm256_fmadd_pd(_mm256_sub_pd(zt, axc), _mm256_add_pd(zt, axc), rs));
  __m256d vc = _mm256_div_pd(_mm256_mul_pd(e1, e2), axc);
  vc = _mm256_andnot_pd(_mm256_cmp_pd(ax, vd(28.0), _CMP_GE_OQ), vc);  // |x| >= 28 -> 0

  // assemble
  const __m256d tail = _mm256_blendv_pd(vc, vb, _mm256_cmp_pd(ax, vd(1.25), _CMP_LT_OQ));
  const __m256d neg_tail = _mm256_sub_pd(vd(2.0), tail);
  const __m256d signed_tail =
      _mm256_blendv_pd(tail, neg_tail, _mm256_cmp_pd(x, vd(0.0), _CMP_LT_OQ));
  return _mm256_blendv_pd(signed_tail, va, _mm256_cmp_pd(ax, vd(0.84375), _CMP_LT_OQ));
}

// ---------------------------------------------------------------------------
// batch kernels

void unit_exponentials(std::uint64_t seed, std::uint32_t stream, std::uint64_t first,
                       std::size_t n, double* out) {
  const std::uint64_t sbase = detail::seed_base(seed);
  const __m256i sbase_v = _mm256_set1_epi64x(static_cast<long long>(sbase));
  const __m256i stream_v = _mm256_set1_epi64x(stream);
  const __m256d sign = vd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i idx = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first + i)),
                                         _mm256_setr_epi64x(0, 1, 2, 3));
    const __m256i counter = _mm256_add_epi64(_mm256_slli_epi64(idx, 2), stream_v);
    const __m256i raw = mix_fin(_mm256_add_epi64(sbase_v, mullo64(counter, detail::kGolden)));
    const __m256d mant = u52_to_pd(_mm256_srli_epi64(raw, 12));
    const __m256d u = _mm256_add_pd(_mm256_mul_pd(mant, vd(0x1p-52)), vd(0x1p-52));
    _mm256_storeu_pd(out + i, _mm256_xor_pd(vlog(u), sign));
  }
  for (; i < n; ++i)
    out[i] = -std::log(detail::unit_from_raw(detail::raw_at(sbase, stream, first + i)));
}

void fd_relay_sinr(const double* x, const double* y, std::size_t n, double mean_sr,
                   double mean_rr, double* out) {
  const __m256d gsr = vd(mean_sr), grr = vd(mean_rr), one = vd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d num = _mm256_mul_pd(gsr, _mm256_loadu_pd(x + i));
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(grr, _mm256_loadu_pd(y + i)), one);
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) {
    const double num = mean_sr * x[i];
    const double den = mean_rr * y[i] + 1.0;
    out[i] = num / den;
  }
}

void block_error(const double* snr, std::size_t n, double rate, double blocklength,
                 double* out) {
  const __m256d rln2 = vd(rate * 6.93147180559945309417e-01);
  const __m256d sqm = vd(std::sqrt(blocklength));
  const __m256d inv_sqrt2 = vd(7.07106781186547524401e-01);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(snr + i);
    const __m256d t = _mm256_add_pd(g, vd(1.0));
    // log1p(g) = log(t) + (g - (t-1))/t
    const __m256d corr =
        _mm256_div_pd(_mm256_sub_pd(g, _mm256_sub_pd(t, vd(1.0))), t);
    const __m256d gt = _mm256_max_pd(t, vd(0x1p-1000));  // guard vlog against g <= -1 junk
    const __m256d lg = _mm256_add_pd(vlog(gt), corr);
    const __m256d nu = _mm256_div_pd(_mm256_mul_pd(g, _mm256_add_pd(g, vd(2.0))),
                                     _mm256_mul_pd(t, t));
    __m256d arg = _mm256_mul_pd(
        sqm, _mm256_div_pd(_mm256_sub_pd(lg, rln2), _mm256_sqrt_pd(nu)));
    arg = _mm256_max_pd(_mm256_min_pd(arg, vd(39.0)), vd(-39.0));
    __m256d q = _mm256_mul_pd(vd(0.5), verfc(_mm256_mul_pd(arg, inv_sqrt2)));
    const __m256d certain = _mm256_cmp_pd(g, vd(0.0), _CMP_LE_OQ);
    q = _mm256_blendv_pd(q, vd(1.0), certain);
    _mm256_storeu_pd(out + i, q);
  }
  for (; i < n; ++i)
    out[i] = fblrelay::detail::block_error_from_snr(snr[i], rate, blocklength);
}

void df_moments(const double* e1, const double* e2, std::size_t n, double* sum, double* sumsq) {
  __m256d vs = _mm256_setzero_pd(), vs2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(e1 + i);
    const __m256d b = _mm256_loadu_pd(e2 + i);
    const __m256d c = _mm256_add_pd(a, _mm256_mul_pd(_mm256_sub_pd(vd(1.0), a), b));
    vs = _mm256_add_pd(vs, c);
    vs2 = _mm256_add_pd(vs2, _mm256_mul_pd(c, c));
  }
  alignas(32) double l[4], l2[4];
  _mm256_store_pd(l, vs);
  _mm256_store_pd(l2, vs2);
  double s = ((l[0] + l[1]) + l[2]) + l[3];
  double s2 = ((l2[0] + l2[1]) + l2[2]) + l2[3];
  for (; i < n; ++i) {
    const double c = e1[i] + (1.0 - e1[i]) * e2[i];
    s += c;
    s2 += c * c;
  }
  *sum = s;
  *sumsq = s2;
}

void moments(const double* e, std::size_t n, double* sum, double* sumsq) {
  __m256d vs = _mm256_setzero_pd(), vs2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(e + i);
    vs = _mm256_add_pd(vs, c);
    vs2 = _mm256_add_pd(vs2, _mm256_mul_pd(c, c));
  }
  alignas(32) double l[4], l2[4];
  _mm256_store_pd(l, vs);
  _mm256_store_pd(l2, vs2);
  double s = ((l[0] + l[1]) + l[2]) + l[3];
  double s2 = ((l2[0] + l2[1]) + l2[2]) + l2[3];
  for (; i < n; ++i) {
    s += e[i];
    s2 += e[i] * e[i];
  }
  *sum = s;
  *sumsq = s2;
}

}  // namespace

const Ops kOps{unit_exponentials, fd_relay_sinr, block_error, df_moments, moments};

}  // namespace fblrelay::kernels::avx2
