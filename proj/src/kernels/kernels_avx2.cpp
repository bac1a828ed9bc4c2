#include "pdc/kernels.hpp"

#ifdef PDC_HAVE_AVX2_TU

#include <immintrin.h>

#define PDC_AVX2 __attribute__((target("avx2,fma")))

namespace pdc::kern::avx2 {

namespace {

PDC_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

PDC_AVX2
cplx cauchy_sum(const double* sre, const double* sim, const double* wre,
                const double* wim, std::size_t n, cplx z) {
  const __m256d zr = _mm256_set1_pd(z.real());
  const __m256d zi = _mm256_set1_pd(z.imag());
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dr = _mm256_sub_pd(zr, _mm256_loadu_pd(sre + j));
    const __m256d di = _mm256_sub_pd(zi, _mm256_loadu_pd(sim + j));
    const __m256d d2 = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    // zero out self terms instead of dividing by zero
    const __m256d mask = _mm256_cmp_pd(d2, zero, _CMP_NEQ_OQ);
    const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), d2, mask);
    const __m256d inv =
        _mm256_and_pd(_mm256_div_pd(_mm256_set1_pd(1.0), safe), mask);
    const __m256d wr = _mm256_loadu_pd(wre + j);
    const __m256d wi = _mm256_loadu_pd(wim + j);
    const __m256d numr = _mm256_fmadd_pd(wr, dr, _mm256_mul_pd(wi, di));
    const __m256d numi = _mm256_fmsub_pd(wi, dr, _mm256_mul_pd(wr, di));
    accr = _mm256_fmadd_pd(numr, inv, accr);
    acci = _mm256_fmadd_pd(numi, inv, acci);
  }
  double ar = hsum(accr), ai = hsum(acci);
  const double zrs = z.real(), zis = z.imag();
  for (; j < n; ++j) {
    const double dr = zrs - sre[j];
    const double di = zis - sim[j];
    const double d2 = dr * dr + di * di;
    if (d2 == 0.0) continue;
    const double inv = 1.0 / d2;
    ar += (wre[j] * dr + wim[j] * di) * inv;
    ai += (wim[j] * dr - wre[j] * di) * inv;
  }
  return {ar, ai};
}

PDC_AVX2
cplx cdot(const double* are, const double* aim, const double* bre,
          const double* bim, std::size_t n) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ar = _mm256_loadu_pd(are + j);
    const __m256d ai = _mm256_loadu_pd(aim + j);
    const __m256d br = _mm256_loadu_pd(bre + j);
    const __m256d bi = _mm256_loadu_pd(bim + j);
    accr = _mm256_fmadd_pd(ar, br, accr);
    accr = _mm256_fmadd_pd(ai, bi, accr);
    acci = _mm256_fmadd_pd(ai, br, acci);
    acci = _mm256_fnmadd_pd(ar, bi, acci);
  }
  double r = hsum(accr), i = hsum(acci);
  for (; j < n; ++j) {
    r += are[j] * bre[j] + aim[j] * bim[j];
    i += aim[j] * bre[j] - are[j] * bim[j];
  }
  return {r, i};
}

PDC_AVX2
double wnorm2(const double* w, const double* ure, const double* uim,
              std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ur = _mm256_loadu_pd(ure + j);
    const __m256d ui = _mm256_loadu_pd(uim + j);
    const __m256d m = _mm256_fmadd_pd(ur, ur, _mm256_mul_pd(ui, ui));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), m, acc);
  }
  double s = hsum(acc);
  for (; j < n; ++j) s += w[j] * (ure[j] * ure[j] + uim[j] * uim[j]);
  return s;
}

PDC_AVX2
cplx wsum(const double* w, const double* ure, const double* uim,
          std::size_t n) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d wv = _mm256_loadu_pd(w + j);
    accr = _mm256_fmadd_pd(wv, _mm256_loadu_pd(ure + j), accr);
    acci = _mm256_fmadd_pd(wv, _mm256_loadu_pd(uim + j), acci);
  }
  double r = hsum(accr), i = hsum(acci);
  for (; j < n; ++j) {
    r += w[j] * ure[j];
    i += w[j] * uim[j];
  }
  return {r, i};
}

PDC_AVX2
void waxpy(double* accre, double* accim, const double* w, const double* cre,
           const double* cim, cplx g, std::size_t n) {
  const __m256d gr = _mm256_set1_pd(g.real());
  const __m256d gi = _mm256_set1_pd(g.imag());
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cr = _mm256_loadu_pd(cre + j);
    const __m256d ci = _mm256_loadu_pd(cim + j);
    const __m256d pr = _mm256_fmsub_pd(cr, gr, _mm256_mul_pd(ci, gi));
    const __m256d pi = _mm256_fmadd_pd(cr, gi, _mm256_mul_pd(ci, gr));
    const __m256d wv = _mm256_loadu_pd(w + j);
    _mm256_storeu_pd(accre + j,
                     _mm256_fmadd_pd(wv, pr, _mm256_loadu_pd(accre + j)));
    _mm256_storeu_pd(accim + j,
                     _mm256_fmadd_pd(wv, pi, _mm256_loadu_pd(accim + j)));
  }
  const double grs = g.real(), gis = g.imag();
  for (; j < n; ++j) {
    const double pr = cre[j] * grs - cim[j] * gis;
    const double pi = cre[j] * gis + cim[j] * grs;
    accre[j] += w[j] * pr;
    accim[j] += w[j] * pi;
  }
}

}  // namespace pdc::kern::avx2

#endif  // PDC_HAVE_AVX2_TU
