#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the closed forms of the library.

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qcalab/types.hpp"

namespace oracle {

using qcalab::Chirality;
using qcalab::Complex;
using qcalab::Mat2;
using qcalab::Mat3;
using qcalab::Vec3;
using qcalab::Wavevector;

inline Mat2 pauli(int a) {
  Mat2 m;
  const Complex i(0.0, 1.0);
  switch (a) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat2 expm_i(const Vec3& v) {
  const Complex i(0.0, 1.0);
  Mat2 g = -i * (v.x() * pauli(1) + v.y() * pauli(2) + v.z() * pauli(3));
  return g.exp();
}

/// The automaton step as an ordered product of single-axis rotations,
///   A^- = e^{-i kx' sx} e^{-i ky' sy} e^{-i kz' sz},  k' = k/sqrt3,
/// and A^+ the same with ky' -> -ky'. Each factor is a Pade exponential.
inline Mat2 automaton_product(const Wavevector& k, Chirality s) {
  const double r = std::numbers::sqrt3;
  const double sy = s == Chirality::plus ? -1.0 : 1.0;
  return expm_i(Vec3(k.x() / r, 0, 0)) * expm_i(Vec3(0, sy * k.y() / r, 0)) * expm_i(Vec3(0, 0, k.z() / r));
}

inline Mat2 repeated(const Mat2& a, long t) {
  Mat2 base = t >= 0 ? a : Mat2(a.adjoint());
  Mat2 out = Mat2::Identity();
  for (long i = 0; i < std::labs(t); ++i) out = out * base;
  return out;
}

/// R_{ba} read off from U sigma_a U^dagger = sum_b R_{ba} sigma_b.
inline Mat3 adjoint_action(const Mat2& u) {
  Mat3 r;
  for (int a = 0; a < 3; ++a) {
    const Mat2 m = u * pauli(a + 1) * u.adjoint();
    for (int b = 0; b < 3; ++b) r(b, a) = (0.5 * (pauli(b + 1) * m).trace()).real();
  }
  return r;
}

/// Rotation by angle |v| about v via the 3x3 matrix exponential of the cross-product matrix.
inline Mat3 rotation(const Vec3& v) {
  Mat3 k;
  k << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return k.exp();
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

inline Vec3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

inline double op_norm(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m);
  return svd.singularValues()[0];
}

}  // namespace oracle
