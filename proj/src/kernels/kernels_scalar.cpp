#include <cassert>

#include "qgraph/kernels.hpp"

namespace qgraph::kernels::scalar {

// Complex products are spelled out component-wise: std::complex's operator*
// adds NaN recovery branches and its rounding would not match the vector path.

void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  assert(x.size() == y.size());
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double pr = xr * ar - xi * ai;
    const double pi = xi * ar + xr * ai;
    y[i] = Complex(y[i].real() + pr, y[i].imag() + pi);
  }
}

Complex cdotu(std::span<const Complex> x, std::span<const Complex> y) {
  assert(x.size() == y.size());
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    sr += xr * yr - xi * yi;
    si += xi * yr + xr * yi;
  }
  return {sr, si};
}

void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out) {
  assert(z.size() == out.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (coeffs.empty()) {
      out[k] = 0.0;
      continue;
    }
    const double zr = z[k].real();
    const double zi = z[k].imag();
    double ar = coeffs.back().real();
    double ai = coeffs.back().imag();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
      const double pr = ar * zr - ai * zi;
      const double pi = ai * zr + ar * zi;
      ar = pr + coeffs[j].real();
      ai = pi + coeffs[j].imag();
    }
    out[k] = Complex(ar, ai);
  }
}

}  // namespace qgraph::kernels::scalar
