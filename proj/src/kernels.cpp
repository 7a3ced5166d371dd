#include "swiss/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace swiss::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

const KernelOps* detect() {
  return avx2_supported() ? &avx2_ops : &scalar_ops;
}

std::atomic<const KernelOps*> g_active{nullptr};

}  // namespace

const KernelOps& ops() {
  const KernelOps* p = g_active.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = detect();
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void select(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      g_active.store(&scalar_ops, std::memory_order_release);
      return;
    case Isa::Avx2:
      if (!avx2_supported()) {
        throw std::invalid_argument("AVX2 kernels requested but the CPU does not support AVX2");
      }
      g_active.store(&avx2_ops, std::memory_order_release);
      return;
  }
  throw std::invalid_argument("unknown kernel ISA");
}

Isa selected() {
  return &ops() == &avx2_ops && avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace swiss::kernels
