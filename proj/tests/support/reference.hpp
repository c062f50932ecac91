#pragma once

// Reference values for the tetrahedron, cube and triangle/star fixtures.
// zeta stands for exp(-i p d).

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace reference {

using C = std::complex<double>;

inline std::vector<C> tetrahedron_poles_case1() {
  const double s7 = std::sqrt(7.0);
  return {0.5, C(-1.0, s7) / 4.0, C(-1.0, -s7) / 4.0};
}

inline std::vector<C> tetrahedron_poles_case2() {
  const double s73 = std::sqrt(73.0);
  return {0.5, (1.0 + s73) / 12.0, (1.0 - s73) / 12.0};
}

inline std::vector<C> cube_poles_case1() {
  const double s7 = std::sqrt(7.0);
  std::vector<C> out;
  for (double sign : {1.0, -1.0}) {
    out.push_back(sign * 0.5);
    out.push_back(sign * C(1.0, s7) / 4.0);
    out.push_back(sign * C(1.0, -s7) / 4.0);
  }
  return out;
}

inline std::vector<C> cube_poles_case2() {
  const double s73 = std::sqrt(73.0);
  std::vector<C> out;
  for (double sign : {1.0, -1.0}) {
    out.push_back(sign * 0.5);
    out.push_back(sign * (1.0 + s73) / 12.0);
    out.push_back(sign * (1.0 - s73) / 12.0);
  }
  return out;
}

/// All-ones off the diagonal.
inline Eigen::MatrixXcd tetrahedron_a() {
  return Eigen::MatrixXcd::Constant(4, 4, 1.0) - Eigen::MatrixXcd::Identity(4, 4);
}

/// (-2(z^3 + z - 1) I + z(z + 1) A) / ((2z^2 + z + 1)(2z - 1)).
inline Eigen::MatrixXcd tetrahedron_closed_form_case1(C z) {
  const C g = (2.0 * z * z + z + 1.0) * (2.0 * z - 1.0);
  return (-2.0 * (z * z * z + z - 1.0) * Eigen::MatrixXcd::Identity(4, 4) +
          z * (z + 1.0) * tetrahedron_a()) /
         g;
}

/// (-2(-6z^3 + 4z^2 + 10z - 6) I + 3z(z - 1) A) / ((6z^2 - z - 3)(2z - 1)).
inline Eigen::MatrixXcd tetrahedron_closed_form_case2_reference(C z) {
  const C g = (6.0 * z * z - z - 3.0) * (2.0 * z - 1.0);
  return (-2.0 * (-6.0 * z * z * z + 4.0 * z * z + 10.0 * z - 6.0) *
              Eigen::MatrixXcd::Identity(4, 4) +
          3.0 * z * (z - 1.0) * tetrahedron_a()) /
         g;
}

/// Reference coefficient functions a_0 .. a_7 of the cube expansion
/// a_0 I + a_1 E1 + a_2 E2 + a_3 E3 + a_4 E1E2 + a_5 E1E3 + a_6 E2E3 + a_7 E1E2E3.
inline std::array<C, 8> cube_coefficients_case1(C z) {
  const C z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z, z6 = z5 * z;
  const C q = 4.0 * (-1.0 + z2 + 8.0 * z4 + 16.0 * z6);
  const C half = 3.0 * z / (4.0 - 16.0 * z2);
  const C m = 4.0 * (-1.0 + z + 2.0 * z2 - 4.0 * z3 + 8.0 * z4);
  const C mm = 4.0 * (-1.0 - z + 2.0 * z2 + 4.0 * z3 + 8.0 * z4);
  return {
      (8.0 + z - 8.0 * z2 - 5.0 * z3 - 40.0 * z4 + 4.0 * z5 - 32.0 * z6) / q,
      (-5.0 * z + z3 - 20.0 * z5) / q,
      half,
      half,
      -z * (1.0 - 9.0 * z + 2.0 * z2) / m,
      -z * (1.0 - 9.0 * z + 2.0 * z2) / m,
      z * (1.0 + 9.0 * z + 2.0 * z2) / mm,
      -(z + 19.0 * z3 + 4.0 * z5) / q,
  };
}

inline std::array<C, 8> cube_coefficients_case2(C z) {
  const C z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z, z6 = z5 * z;
  const C q = 4.0 * (-9.0 + 73.0 * z2 - 184.0 * z4 + 144.0 * z6);
  const C half = 3.0 * z / (4.0 - 16.0 * z2);
  const C m = 4.0 * (3.0 - z - 18.0 * z2 + 4.0 * z3 + 24.0 * z4);
  const C mm = 4.0 * (3.0 + z - 18.0 * z2 - 4.0 * z3 + 24.0 * z4);
  return {
      (72.0 + 9.0 * z - 440.0 * z2 - 45.0 * z3 + 728.0 * z4 + 36.0 * z5 - 288.0 * z6) / q,
      -3.0 * z * (15.0 - 67.0 * z2 + 60.0 * z4) / q,
      half,
      half,
      -3.0 * z * (-1.0 + 3.0 * z + 2.0 * z2) / m,
      -3.0 * z * (-1.0 + 3.0 * z + 2.0 * z2) / m,
      3.0 * z * (-1.0 - 3.0 * z + 2.0 * z2) / mm,
      3.0 * z * (3.0 - 7.0 * z2 + 12.0 * z4) / (4.0 * (9.0 - 73.0 * z2 + 184.0 * z4 - 144.0 * z6)),
  };
}

/// Permutation matrix from 1-based vertex pairs.
inline Eigen::MatrixXd pairing(int n, std::initializer_list<std::array<int, 2>> pairs) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : pairs) {
    m(p[0] - 1, p[1] - 1) = 1.0;
    m(p[1] - 1, p[0] - 1) = 1.0;
  }
  return m;
}

inline std::array<Eigen::MatrixXd, 3> tetrahedron_colour_matrices() {
  return {pairing(4, {{1, 4}, {2, 3}}), pairing(4, {{1, 2}, {3, 4}}), pairing(4, {{1, 3}, {2, 4}})};
}

inline std::array<Eigen::MatrixXd, 3> cube_colour_matrices() {
  return {pairing(8, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}), pairing(8, {{1, 4}, {2, 3}, {5, 8}, {6, 7}}),
          pairing(8, {{1, 5}, {2, 6}, {3, 7}, {4, 8}})};
}

inline std::vector<std::vector<int>> tetrahedron_sign_matrices() {
  return {{-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}, {1, 1, 1}};
}

/// The reference list; its seventh entry repeats the third.
inline std::vector<std::vector<int>> cube_sign_matrices_reference() {
  return {{1, 1, 1},   {-1, 1, 1},  {1, -1, 1},  {-1, -1, 1},
          {1, 1, -1},  {-1, 1, -1}, {1, -1, 1},  {-1, -1, -1}};
}

/// Triangle-to-star internal permutation, rows = star slots.
inline Eigen::MatrixXd triangle_star_permutation() {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(6, 6);
  const int col[] = {0, 2, 3, 5, 1, 4};
  for (int i = 0; i < 6; ++i) p(i, col[i]) = 1.0;
  return p;
}

}  // namespace reference
