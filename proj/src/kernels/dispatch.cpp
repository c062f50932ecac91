#include <atomic>
#include <stdexcept>
#include <string>

#include "qgraph/kernels.hpp"

namespace qgraph::kernels {

namespace {

Isa detect() noexcept {
#if QGRAPH_KERNELS_X86 && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
  return detect() == Isa::Avx2;
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel variant not supported on this CPU: " +
                                std::string(isa_name(isa)));
  }
  selected().store(isa, std::memory_order_relaxed);
}

void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
#if QGRAPH_KERNELS_X86
  if (active_isa() == Isa::Avx2) return avx2::caxpy(a, x, y);
#endif
  scalar::caxpy(a, x, y);
}

Complex cdotu(std::span<const Complex> x, std::span<const Complex> y) {
#if QGRAPH_KERNELS_X86
  if (active_isa() == Isa::Avx2) return avx2::cdotu(x, y);
#endif
  return scalar::cdotu(x, y);
}

void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out) {
#if QGRAPH_KERNELS_X86
  if (active_isa() == Isa::Avx2) return avx2::horner(coeffs, z, out);
#endif
  scalar::horner(coeffs, z, out);
}

}  // namespace qgraph::kernels
