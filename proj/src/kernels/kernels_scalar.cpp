#include "pdc/kernels.hpp"

namespace pdc::kern::scalar {

cplx cauchy_sum(const double* sre, const double* sim, const double* wre,
                const double* wim, std::size_t n, cplx z) {
  const double zr = z.real(), zi = z.imag();
  double ar = 0.0, ai = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dr = zr - sre[j];
    const double di = zi - sim[j];
    const double d2 = dr * dr + di * di;
    if (d2 == 0.0) continue;  // self term: principal-value convention
    const double inv = 1.0 / d2;
    // w / (z - s) = w * conj(z - s) / |z - s|^2
    ar += (wre[j] * dr + wim[j] * di) * inv;
    ai += (wim[j] * dr - wre[j] * di) * inv;
  }
  return {ar, ai};
}

cplx cdot(const double* are, const double* aim, const double* bre,
          const double* bim, std::size_t n) {
  double r = 0.0, i = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    r += are[j] * bre[j] + aim[j] * bim[j];
    i += aim[j] * bre[j] - are[j] * bim[j];
  }
  return {r, i};
}

double wnorm2(const double* w, const double* ure, const double* uim,
              std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += w[j] * (ure[j] * ure[j] + uim[j] * uim[j]);
  return s;
}

cplx wsum(const double* w, const double* ure, const double* uim,
          std::size_t n) {
  double r = 0.0, i = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    r += w[j] * ure[j];
    i += w[j] * uim[j];
  }
  return {r, i};
}

void waxpy(double* accre, double* accim, const double* w, const double* cre,
           const double* cim, cplx g, std::size_t n) {
  const double gr = g.real(), gi = g.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double pr = cre[j] * gr - cim[j] * gi;
    const double pi = cre[j] * gi + cim[j] * gr;
    accre[j] += w[j] * pr;
    accim[j] += w[j] * pi;
  }
}

}  // namespace pdc::kern::scalar
