#include "fblrelay/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace fblrelay::kernels {

namespace scalar {
extern const Ops kOps;
}
#ifdef FBLRELAY_HAVE_AVX2
namespace avx2 {
extern const Ops kOps;
}
#endif

bool avx2_available() {
#if defined(FBLRELAY_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("FBLRELAY_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    // "auto" or anything unrecognized falls through to detection
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_ref() {
  static Backend b = detect_backend();
  return b;
}

}  // namespace

Backend active_backend() { return backend_ref(); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::invalid_argument("set_backend: avx2 kernels not available on this host");
  backend_ref() = b;
}

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

const Ops& ops_for(Backend b) {
#ifdef FBLRELAY_HAVE_AVX2
  if (b == Backend::avx2) return avx2::kOps;
#else
  (void)b;
#endif
  return scalar::kOps;
}

const Ops& ops() { return ops_for(active_backend()); }

}  // namespace fblrelay::kernels
