#include "qgraph/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qgraph/kernels.hpp"

namespace qgraph {

namespace {

constexpr int kNewtonSteps = 5;
constexpr double kClusterRadius = 1e-2;
constexpr double kMultipleRootTolerance = 1e-9;

Complex newton(std::span<const Complex> f, std::span<const Complex> df, Complex z) {
  double best = std::abs(evaluate(f, z));
  for (int step = 0; step < kNewtonSteps && best > 0.0; ++step) {
    const Complex d = evaluate(df, z);
    if (d == Complex(0.0)) break;
    const Complex next = z - evaluate(f, z) / d;
    const double value = std::abs(evaluate(f, next));
    if (!(value < best)) break;
    z = next;
    best = value;
  }
  return z;
}

std::vector<Complex> companion_eigenvalues(std::span<const Complex> c) {
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  CMatrix companion = CMatrix::Zero(n, n);
  const Complex lead = c.back();
  for (Eigen::Index i = 0; i < n; ++i) companion(0, i) = -c[static_cast<std::size_t>(n - 1 - i)] / lead;
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  const CVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Single-linkage groups of eigenvalues closer than the cluster radius.
std::vector<std::vector<Complex>> cluster(const std::vector<Complex>& z) {
  const std::size_t n = z.size();
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double radius = kClusterRadius * std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (std::abs(z[i] - z[j]) < radius) label[find(i)] = find(j);
    }
  }
  std::vector<std::vector<Complex>> groups;
  std::vector<std::size_t> group_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (group_of[root] == n) {
      group_of[root] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(z[i]);
  }
  return groups;
}

}  // namespace

Complex evaluate(std::span<const Complex> c, Complex z) {
  Complex out;
  kernels::horner(c, std::span<const Complex>(&z, 1), std::span<Complex>(&out, 1));
  return out;
}

std::vector<Complex> evaluate(std::span<const Complex> c, std::span<const Complex> z) {
  std::vector<Complex> out(z.size());
  kernels::horner(c, z, out);
  return out;
}

double evaluation_scale(std::span<const Complex> c, Complex z) {
  const double r = std::abs(z);
  double scale = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) scale = scale * r + std::abs(c[k]);
  return scale;
}

Coefficients derivative(std::span<const Complex> c) {
  if (c.size() <= 1) return {};
  Coefficients d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

Coefficients multiply(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  Coefficients out(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    kernels::caxpy(a[i], b, std::span<Complex>(out).subspan(i, b.size()));
  }
  return out;
}

TrimmedPolynomial trim(std::span<const Complex> c, double rel) {
  double largest = 0.0;
  for (const auto& x : c) largest = std::max(largest, std::abs(x));
  TrimmedPolynomial out;
  if (largest == 0.0) return out;
  const double cut = rel * largest;
  std::size_t lo = 0;
  while (std::abs(c[lo]) <= cut) ++lo;
  std::size_t hi = c.size();
  while (std::abs(c[hi - 1]) <= cut) --hi;
  out.valuation = lo;
  out.coefficients.assign(c.begin() + static_cast<std::ptrdiff_t>(lo),
                          c.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

Coefficients fit_unit_circle(std::span<const Complex> samples) {
  const std::size_t m = samples.size();
  Coefficients c(m);
  std::vector<Complex> twiddle(m);
  for (std::size_t j = 0; j < m; ++j) {
    // c_j = (1/M) sum_k f_k exp(-2 pi i j k / M); the index product is
    // reduced mod M so the angle stays exact for large M.
    for (std::size_t k = 0; k < m; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % m) /
                           static_cast<double>(m);
      twiddle[k] = std::polar(1.0, angle);
    }
    c[j] = kernels::cdotu(samples, twiddle) / static_cast<double>(m);
  }
  return c;
}

std::vector<PolynomialRoot> polynomial_roots(std::span<const Complex> c, double merge_tol) {
  if (c.size() <= 1) return {};
  const std::vector<Complex> eigenvalues = companion_eigenvalues(c);

  // Derivatives f, f', f'', ... up to the largest cluster that may need them.
  std::vector<Coefficients> derivs{Coefficients(c.begin(), c.end())};
  auto nth = [&](std::size_t k) -> const Coefficients& {
    while (derivs.size() <= k) derivs.push_back(derivative(derivs.back()));
    return derivs[k];
  };

  std::vector<PolynomialRoot> found;
  for (const auto& group : cluster(eigenvalues)) {
    const std::size_t m = group.size();
    Complex centre(0.0);
    for (const auto& z : group) centre += z;
    centre /= static_cast<double>(m);

    bool accepted = false;
    if (m > 1) {
      const Complex z = newton(nth(m - 1), nth(m), centre);
      accepted = true;
      for (std::size_t k = 0; k + 1 < m && accepted; ++k) {
        const double scale = evaluation_scale(nth(k), z);
        accepted = std::abs(evaluate(nth(k), z)) <= kMultipleRootTolerance * scale;
      }
      if (accepted) found.push_back({z, m});
    }
    if (!accepted) {
      for (const auto& z0 : group) found.push_back({newton(nth(0), nth(1), z0), 1});
    }
  }

  // Merge polished roots that landed together.
  std::vector<PolynomialRoot> merged;
  for (const auto& r : found) {
    auto hit = std::find_if(merged.begin(), merged.end(), [&](const PolynomialRoot& q) {
      return std::abs(q.value - r.value) < merge_tol;
    });
    if (hit == merged.end()) {
      merged.push_back(r);
    } else {
      hit->multiplicity += r.multiplicity;
    }
  }
  // Moduli are compared on a 1e-10 grid so that conjugate and sign-flipped
  // roots of equal modulus order by argument.
  auto key = [](const PolynomialRoot& r) {
    return std::make_pair(std::round(std::abs(r.value) * 1e10), std::arg(r.value));
  };
  std::sort(merged.begin(), merged.end(),
            [&](const PolynomialRoot& a, const PolynomialRoot& b) { return key(a) < key(b); });
  return merged;
}

}  // namespace qgraph
