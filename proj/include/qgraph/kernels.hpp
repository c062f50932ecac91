#pragma once

// Data-parallel complex kernels used by the dense linear algebra and the
// polynomial code. Each kernel has a portable scalar reference in
// kernels::scalar and, on x86-64, an AVX2 variant in kernels::avx2. The
// unqualified entry points dispatch at runtime to the best variant the CPU
// supports.
//
// caxpy and horner perform the same IEEE operations in the same order in both
// variants, so their results are bitwise identical. cdotu reduces in a
// different order under AVX2 and agrees only to rounding.

#include <span>
#include <string_view>

#include "qgraph/types.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define QGRAPH_KERNELS_X86 1
#else
#define QGRAPH_KERNELS_X86 0
#endif

namespace qgraph::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;

/// Overrides runtime selection. Throws std::invalid_argument if the CPU
/// cannot run the requested variant.
void set_isa(Isa isa);

/// y += a * x. Sizes must match.
void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y);

/// Unconjugated dot product sum_i x_i * y_i.
Complex cdotu(std::span<const Complex> x, std::span<const Complex> y);

/// out_k = sum_j coeffs_j * z_k^j (Horner), for every point z_k.
void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out);

namespace scalar {
void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
Complex cdotu(std::span<const Complex> x, std::span<const Complex> y);
void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out);
}  // namespace scalar

#if QGRAPH_KERNELS_X86
namespace avx2 {
void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
Complex cdotu(std::span<const Complex> x, std::span<const Complex> y);
void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out);
}  // namespace avx2
#endif

}  // namespace qgraph::kernels
