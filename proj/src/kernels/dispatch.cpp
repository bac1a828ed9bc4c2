#include "pdc/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace pdc::kern {

namespace {

Ops make_scalar() {
  return Ops{scalar::cauchy_sum, scalar::cdot, scalar::wnorm2, scalar::wsum,
             scalar::waxpy};
}

#ifdef PDC_HAVE_AVX2_TU
Ops make_avx2() {
  return Ops{avx2::cauchy_sum, avx2::cdot, avx2::wnorm2, avx2::wsum,
             avx2::waxpy};
}
#endif

Backend detect() {
  if (const char* e = std::getenv("PDC_FORCE_SCALAR"))
    if (e[0] == '1') return Backend::scalar;
#ifdef PDC_HAVE_AVX2_TU
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect()};
Ops g_ops[2] = {make_scalar(),
#ifdef PDC_HAVE_AVX2_TU
                make_avx2()
#else
                make_scalar()
#endif
};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void force_backend(Backend b) {
#ifndef PDC_HAVE_AVX2_TU
  b = Backend::scalar;
#endif
  g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

const Ops& ops() { return g_ops[active_backend() == Backend::avx2 ? 1 : 0]; }

}  // namespace pdc::kern
