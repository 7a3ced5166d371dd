#pragma once

#include <cstddef>

namespace swiss::kernels {

// Batched complex arithmetic over split re/im arrays. These are the inner
// loops of every quadrature, norm and evaluation pass.
//
// The scalar table is the reference semantics: one rounding per arithmetic
// op, no fused multiply-add, no reassociation. The AVX2 table performs the
// identical operation sequence lane-wise, so both tables produce bit-identical
// outputs and runtime dispatch cannot change any result.
struct KernelOps {
  const char* name;

  // out = p(z) with complex coefficients c[0..nc-1], ascending degree (Horner).
  // nc == 0 writes zeros.
  void (*poly_eval)(const double* cr, const double* ci, std::size_t nc,
                    const double* zr, const double* zi, std::size_t n,
                    double* outr, double* outi);

  // acc *= (z - p)^mult, elementwise. mult >= 1.
  void (*factor_mul)(double pr, double pi, int mult,
                     const double* zr, const double* zi, std::size_t n,
                     double* accr, double* acci);

  // out = a * b elementwise. out may alias a or b.
  void (*cmul)(const double* ar, const double* ai,
               const double* br, const double* bi, std::size_t n,
               double* outr, double* outi);

  // out = a / b elementwise (plain formula; callers guarantee |b| is moderate).
  // out may alias a or b.
  void (*cdiv)(const double* ar, const double* ai,
               const double* br, const double* bi, std::size_t n,
               double* outr, double* outi);

  // out = |a| elementwise.
  void (*cabs)(const double* ar, const double* ai, std::size_t n, double* out);

  // out = w - z[k] elementwise for a fixed complex w.
  void (*csub_sa)(double wr, double wi,
                  const double* zr, const double* zi, std::size_t n,
                  double* outr, double* outi);
};

enum class Isa { Scalar, Avx2 };

extern const KernelOps scalar_ops;
extern const KernelOps avx2_ops;  // forwards to scalar_ops when built without AVX2

bool avx2_supported();

// Active table. Defaults to AVX2 when the CPU supports it.
const KernelOps& ops();

// Forces a table. Throws std::invalid_argument if the ISA is unavailable.
// Call before spawning worker threads.
void select(Isa isa);
Isa selected();

}  // namespace swiss::kernels
