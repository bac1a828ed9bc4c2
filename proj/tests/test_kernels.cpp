#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdc/kernels.hpp"
#include "pdc/util.hpp"

using namespace pdc;
using kern::cplx;

namespace {

kern::SplitVec random_split(Rng& rng, std::size_t n, double scale = 1.0) {
  kern::SplitVec v(n);
  for (std::size_t i = 0; i < n; ++i)
    v.set(i, scale * cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)});
  return v;
}

}  // namespace

TEST_CASE("scalar and avx2 backends agree on random data") {
  Rng rng(20240811);
  const bool have_avx2 = kern::active_backend() == kern::Backend::avx2;
  if (!have_avx2) {
    MESSAGE("avx2 unavailable, equivalence trivially checked against scalar");
  }
  for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 64ul, 1001ul}) {
    auto s = random_split(rng, n);
    auto w = random_split(rng, n);
    std::vector<double> wr(n);
    for (std::size_t i = 0; i < n; ++i) wr[i] = rng.uniform(0.0, 2.0);
    const cplx z{1.7, -0.4};  // outside the unit box: no self terms

    const cplx c1 = kern::scalar::cauchy_sum(s.re.data(), s.im.data(),
                                             w.re.data(), w.im.data(), n, z);
    const cplx d1 = kern::scalar::cdot(s.re.data(), s.im.data(), w.re.data(),
                                       w.im.data(), n);
    const double n1 = kern::scalar::wnorm2(wr.data(), s.re.data(), s.im.data(), n);
    const cplx s1 = kern::scalar::wsum(wr.data(), s.re.data(), s.im.data(), n);

#ifdef PDC_HAVE_AVX2_TU
    if (have_avx2) {
      const cplx c2 = kern::avx2::cauchy_sum(s.re.data(), s.im.data(),
                                             w.re.data(), w.im.data(), n, z);
      const cplx d2 = kern::avx2::cdot(s.re.data(), s.im.data(), w.re.data(),
                                       w.im.data(), n);
      const double n2 = kern::avx2::wnorm2(wr.data(), s.re.data(), s.im.data(), n);
      const cplx s2 = kern::avx2::wsum(wr.data(), s.re.data(), s.im.data(), n);
      CHECK(std::abs(c1 - c2) <= 1e-13 * (1.0 + std::abs(c1)));
      CHECK(std::abs(d1 - d2) <= 1e-13 * (1.0 + std::abs(d1)));
      CHECK(n1 == doctest::Approx(n2).epsilon(1e-13));
      CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + std::abs(s1)));

      auto ar = random_split(rng, n), ar2 = ar;
      kern::scalar::waxpy(ar.re.data(), ar.im.data(), wr.data(), s.re.data(),
                          s.im.data(), cplx{0.3, -1.2}, n);
      kern::avx2::waxpy(ar2.re.data(), ar2.im.data(), wr.data(), s.re.data(),
                        s.im.data(), cplx{0.3, -1.2}, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(ar.get(i) - ar2.get(i)) <= 1e-13 * (1.0 + std::abs(ar.get(i))));
    }
#endif
    // reference identities
    cplx ref{0, 0};
    for (std::size_t i = 0; i < n; ++i) ref += w.get(i) / (z - s.get(i));
    CHECK(std::abs(c1 - ref) <= 1e-12 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("cauchy_sum skips coincident source points") {
  // principal-value convention: the self term contributes zero
  double sre[2] = {0.5, 0.25};
  double sim[2] = {0.0, 0.0};
  double wre[2] = {1.0, 2.0};
  double wim[2] = {0.0, 0.0};
  const cplx z{0.5, 0.0};
  const cplx r = kern::ops().cauchy_sum(sre, sim, wre, wim, 2, z);
  CHECK(std::abs(r - cplx{2.0 / 0.25, 0.0}) < 1e-14);
}

TEST_CASE("backend forcing") {
  const auto saved = kern::active_backend();
  kern::force_backend(kern::Backend::scalar);
  CHECK(kern::backend_name() == "scalar");
  kern::force_backend(saved);
}

TEST_CASE("parallel for_range is deterministic") {
  std::vector<double> out(1000);
  Parallel::for_range(1000, [&](std::int64_t i) { out[i] = std::sin(0.1 * i); });
  double s1 = 0;
  for (double v : out) s1 += v;
  Parallel::set_threads(1);
  std::vector<double> out2(1000);
  Parallel::for_range(1000, [&](std::int64_t i) { out2[i] = std::sin(0.1 * i); });
  Parallel::set_threads(4);
  CHECK(out == out2);
}

TEST_CASE("loglog fit recovers slope") {
  std::vector<double> x, y;
  for (int k = 1; k <= 8; ++k) {
    const double h = std::pow(2.0, -k);
    x.push_back(h);
    y.push_back(3.0 * std::pow(h, 1.5));
  }
  const auto f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-10));
}
