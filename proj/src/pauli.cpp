#include "qcalab/pauli.hpp"

#include <array>
#include <cmath>

#include <Eigen/SVD>

namespace qcalab::pauli {

namespace {

std::array<Mat2, 4> make_sigmas() {
  const Complex i(0.0, 1.0);
  std::array<Mat2, 4> s;
  s[0] << 1.0, 0.0, 0.0, 1.0;
  s[1] << 0.0, 1.0, 1.0, 0.0;
  s[2] << 0.0, -i, i, 0.0;
  s[3] << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace

const Mat2& sigma(int mu) {
  static const std::array<Mat2, 4> s = make_sigmas();
  return s.at(static_cast<std::size_t>(mu));
}

Mat2 dot(const Vec3& v) { return v.x() * sigma(1) + v.y() * sigma(2) + v.z() * sigma(3); }

Mat2 dot(const CVec3& v) { return v.x() * sigma(1) + v.y() * sigma(2) + v.z() * sigma(3); }

Mat2 exp_minus_i(const Vec3& v) {
  const double angle = v.norm();
  const Complex i(0.0, 1.0);
  if (angle == 0.0) return Mat2::Identity();
  return std::cos(angle) * Mat2::Identity() - i * std::sin(angle) * dot(Vec3(v / angle));
}

Vec4c coefficients(const Mat2& m) {
  Vec4c c;
  for (int mu = 0; mu < 4; ++mu) c[mu] = (sigma(mu) * m).trace() / 2.0;
  return c;
}

Mat2 from_coefficients(const Vec4c& c) {
  Mat2 m = Mat2::Zero();
  for (int mu = 0; mu < 4; ++mu) m += c[mu] * sigma(mu);
  return m;
}

double operator_norm(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m);
  return svd.singularValues()[0];
}

}  // namespace qcalab::pauli
