// Reference kernels. Every arithmetic step is written out explicitly so the
// SIMD variants can reproduce the exact rounding sequence.

#include <cmath>

#include "swiss/kernels.hpp"

namespace swiss::kernels {
namespace {

void poly_eval_scalar(const double* cr, const double* ci, std::size_t nc,
                      const double* zr, const double* zi, std::size_t n,
                      double* outr, double* outi) {
  if (nc == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      outr[i] = 0.0;
      outi[i] = 0.0;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double wr = cr[nc - 1];
    double wi = ci[nc - 1];
    const double xr = zr[i];
    const double xi = zi[i];
    for (std::size_t k = nc - 1; k-- > 0;) {
      const double tr = wr * xr - wi * xi;
      const double ti = wr * xi + wi * xr;
      wr = tr + cr[k];
      wi = ti + ci[k];
    }
    outr[i] = wr;
    outi[i] = wi;
  }
}

void factor_mul_scalar(double pr, double pi, int mult,
                       const double* zr, const double* zi, std::size_t n,
                       double* accr, double* acci) {
  for (std::size_t i = 0; i < n; ++i) {
    const double tr = zr[i] - pr;
    const double ti = zi[i] - pi;
    double ar = accr[i];
    double ai = acci[i];
    for (int m = 0; m < mult; ++m) {
      const double nr = ar * tr - ai * ti;
      const double ni = ar * ti + ai * tr;
      ar = nr;
      ai = ni;
    }
    accr[i] = ar;
    acci[i] = ai;
  }
}

void cmul_scalar(const double* ar, const double* ai,
                 const double* br, const double* bi, std::size_t n,
                 double* outr, double* outi) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = ar[i];
    const double xi = ai[i];
    const double yr = br[i];
    const double yi = bi[i];
    outr[i] = xr * yr - xi * yi;
    outi[i] = xr * yi + xi * yr;
  }
}

void cdiv_scalar(const double* ar, const double* ai,
                 const double* br, const double* bi, std::size_t n,
                 double* outr, double* outi) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = ar[i];
    const double xi = ai[i];
    const double yr = br[i];
    const double yi = bi[i];
    const double d = yr * yr + yi * yi;
    outr[i] = (xr * yr + xi * yi) / d;
    outi[i] = (xi * yr - xr * yi) / d;
  }
}

void cabs_scalar(const double* ar, const double* ai, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::sqrt(ar[i] * ar[i] + ai[i] * ai[i]);
  }
}

void csub_sa_scalar(double wr, double wi,
                    const double* zr, const double* zi, std::size_t n,
                    double* outr, double* outi) {
  for (std::size_t i = 0; i < n; ++i) {
    outr[i] = wr - zr[i];
    outi[i] = wi - zi[i];
  }
}

}  // namespace

const KernelOps scalar_ops = {
    "scalar",        poly_eval_scalar, factor_mul_scalar, cmul_scalar,
    cdiv_scalar,     cabs_scalar,      csub_sa_scalar,
};

}  // namespace swiss::kernels
