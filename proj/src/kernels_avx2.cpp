// AVX2 variants of the batch kernels. Four lanes per step, each lane running
// the same mul/add/sub/div/sqrt sequence as the scalar reference (no FMA), so
// outputs are bit-identical to scalar_ops. Tails fall through to scalar_ops.

#include "swiss/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

namespace swiss::kernels {
namespace {

void poly_eval_avx2(const double* cr, const double* ci, std::size_t nc,
                    const double* zr, const double* zi, std::size_t n,
                    double* outr, double* outi) {
  const std::size_t n4 = n & ~std::size_t(3);
  if (nc == 0) {
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
      _mm256_storeu_pd(outr + i, zero);
      _mm256_storeu_pd(outi + i, zero);
    }
  } else {
    const __m256d topr = _mm256_set1_pd(cr[nc - 1]);
    const __m256d topi = _mm256_set1_pd(ci[nc - 1]);
    for (std::size_t i = 0; i < n4; i += 4) {
      const __m256d xr = _mm256_loadu_pd(zr + i);
      const __m256d xi = _mm256_loadu_pd(zi + i);
      __m256d wr = topr;
      __m256d wi = topi;
      for (std::size_t k = nc - 1; k-- > 0;) {
        const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(wr, xr), _mm256_mul_pd(wi, xi));
        const __m256d ti = _mm256_add_pd(_mm256_mul_pd(wr, xi), _mm256_mul_pd(wi, xr));
        wr = _mm256_add_pd(tr, _mm256_set1_pd(cr[k]));
        wi = _mm256_add_pd(ti, _mm256_set1_pd(ci[k]));
      }
      _mm256_storeu_pd(outr + i, wr);
      _mm256_storeu_pd(outi + i, wi);
    }
  }
  if (n4 < n) {
    scalar_ops.poly_eval(cr, ci, nc, zr + n4, zi + n4, n - n4, outr + n4, outi + n4);
  }
}

void factor_mul_avx2(double pr, double pi, int mult,
                     const double* zr, const double* zi, std::size_t n,
                     double* accr, double* acci) {
  const std::size_t n4 = n & ~std::size_t(3);
  const __m256d vpr = _mm256_set1_pd(pr);
  const __m256d vpi = _mm256_set1_pd(pi);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d tr = _mm256_sub_pd(_mm256_loadu_pd(zr + i), vpr);
    const __m256d ti = _mm256_sub_pd(_mm256_loadu_pd(zi + i), vpi);
    __m256d ar = _mm256_loadu_pd(accr + i);
    __m256d ai = _mm256_loadu_pd(acci + i);
    for (int m = 0; m < mult; ++m) {
      const __m256d nr = _mm256_sub_pd(_mm256_mul_pd(ar, tr), _mm256_mul_pd(ai, ti));
      const __m256d ni = _mm256_add_pd(_mm256_mul_pd(ar, ti), _mm256_mul_pd(ai, tr));
      ar = nr;
      ai = ni;
    }
    _mm256_storeu_pd(accr + i, ar);
    _mm256_storeu_pd(acci + i, ai);
  }
  if (n4 < n) {
    scalar_ops.factor_mul(pr, pi, mult, zr + n4, zi + n4, n - n4, accr + n4, acci + n4);
  }
}

void cmul_avx2(const double* ar, const double* ai,
               const double* br, const double* bi, std::size_t n,
               double* outr, double* outi) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    _mm256_storeu_pd(outr + i, _mm256_sub_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi)));
    _mm256_storeu_pd(outi + i, _mm256_add_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr)));
  }
  if (n4 < n) {
    scalar_ops.cmul(ar + n4, ai + n4, br + n4, bi + n4, n - n4, outr + n4, outi + n4);
  }
}

void cdiv_avx2(const double* ar, const double* ai,
               const double* br, const double* bi, std::size_t n,
               double* outr, double* outi) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    const __m256d d = _mm256_add_pd(_mm256_mul_pd(yr, yr), _mm256_mul_pd(yi, yi));
    const __m256d nr = _mm256_add_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
    const __m256d ni = _mm256_sub_pd(_mm256_mul_pd(xi, yr), _mm256_mul_pd(xr, yi));
    _mm256_storeu_pd(outr + i, _mm256_div_pd(nr, d));
    _mm256_storeu_pd(outi + i, _mm256_div_pd(ni, d));
  }
  if (n4 < n) {
    scalar_ops.cdiv(ar + n4, ai + n4, br + n4, bi + n4, n - n4, outr + n4, outi + n4);
  }
}

void cabs_avx2(const double* ar, const double* ai, std::size_t n, double* out) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(xr, xr), _mm256_mul_pd(xi, xi));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(s));
  }
  if (n4 < n) {
    scalar_ops.cabs(ar + n4, ai + n4, n - n4, out + n4);
  }
}

void csub_sa_avx2(double wr, double wi,
                  const double* zr, const double* zi, std::size_t n,
                  double* outr, double* outi) {
  const std::size_t n4 = n & ~std::size_t(3);
  const __m256d vr = _mm256_set1_pd(wr);
  const __m256d vi = _mm256_set1_pd(wi);
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(outr + i, _mm256_sub_pd(vr, _mm256_loadu_pd(zr + i)));
    _mm256_storeu_pd(outi + i, _mm256_sub_pd(vi, _mm256_loadu_pd(zi + i)));
  }
  if (n4 < n) {
    scalar_ops.csub_sa(wr, wi, zr + n4, zi + n4, n - n4, outr + n4, outi + n4);
  }
}

}  // namespace

const KernelOps avx2_ops = {
    "avx2",      poly_eval_avx2, factor_mul_avx2, cmul_avx2,
    cdiv_avx2,   cabs_avx2,      csub_sa_avx2,
};

}  // namespace swiss::kernels

#else  // no AVX2 at compile time: keep the symbol, forward to scalar

namespace swiss::kernels {

const KernelOps avx2_ops = {
    "scalar",          scalar_ops.poly_eval, scalar_ops.factor_mul,
    scalar_ops.cmul,   scalar_ops.cdiv,      scalar_ops.cabs,
    scalar_ops.csub_sa,
};

}  // namespace swiss::kernels

#endif
