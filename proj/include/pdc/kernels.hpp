#pragma once
// Data-parallel inner-loop kernels: scalar reference implementations plus an
// AVX2 variant selected at runtime. All higher-level quadrature and norm code
// goes through this interface so the two backends stay interchangeable and
// equivalence-testable.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace pdc::kern {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// Active backend. Detection runs once; PDC_FORCE_SCALAR=1 in the environment
// or force_backend() overrides it.
Backend active_backend();
void force_backend(Backend b);
std::string backend_name();

struct Ops {
  // sum_j w_j / (z - s_j); sources and weights in split re/im layout
  cplx (*cauchy_sum)(const double* sre, const double* sim, const double* wre,
                     const double* wim, std::size_t n, cplx z);
  // sum_j a_j * conj(b_j)
  cplx (*cdot)(const double* are, const double* aim, const double* bre,
               const double* bim, std::size_t n);
  // sum_j w_j * (ure_j^2 + uim_j^2)
  double (*wnorm2)(const double* w, const double* ure, const double* uim,
                   std::size_t n);
  // sum_j w_j * u_j (w real)
  cplx (*wsum)(const double* w, const double* ure, const double* uim,
               std::size_t n);
  // acc_j += w_j * (cre_j + i*cim_j) * g  (complex axpy with per-entry weight)
  void (*waxpy)(double* accre, double* accim, const double* w,
                const double* cre, const double* cim, cplx g, std::size_t n);
};

const Ops& ops();

namespace scalar {
cplx cauchy_sum(const double* sre, const double* sim, const double* wre,
                const double* wim, std::size_t n, cplx z);
cplx cdot(const double* are, const double* aim, const double* bre,
          const double* bim, std::size_t n);
double wnorm2(const double* w, const double* ure, const double* uim,
              std::size_t n);
cplx wsum(const double* w, const double* ure, const double* uim,
          std::size_t n);
void waxpy(double* accre, double* accim, const double* w, const double* cre,
           const double* cim, cplx g, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define PDC_HAVE_AVX2_TU 1
namespace avx2 {
cplx cauchy_sum(const double* sre, const double* sim, const double* wre,
                const double* wim, std::size_t n, cplx z);
cplx cdot(const double* are, const double* aim, const double* bre,
          const double* bim, std::size_t n);
double wnorm2(const double* w, const double* ure, const double* uim,
              std::size_t n);
cplx wsum(const double* w, const double* ure, const double* uim,
          std::size_t n);
void waxpy(double* accre, double* accim, const double* w, const double* cre,
           const double* cim, cplx g, std::size_t n);
}  // namespace avx2
#endif

// Split-layout helper: owns re/im arrays for a complex sequence.
struct SplitVec {
  std::vector<double> re, im;
  SplitVec() = default;
  explicit SplitVec(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  std::size_t size() const { return re.size(); }
  void push_back(cplx v) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  cplx get(std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, cplx v) {
    re[i] = v.real();
    im[i] = v.imag();
  }
};

}  // namespace pdc::kern
