#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcalab {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Vec4c = Eigen::Vector4cd;

/// Point of momentum space in adimensional Planck units. The closed forms of
/// the automaton take arguments k_alpha / sqrt(3), so every function of a
/// Wavevector is periodic with period 2*pi*sqrt(3) along each axis.
class Wavevector {
 public:
  Wavevector() : v_(Vec3::Zero()) {}
  Wavevector(double kx, double ky, double kz) : v_(kx, ky, kz) {}
  explicit Wavevector(const Vec3& v) : v_(v) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double operator[](int i) const { return v_[i]; }
  double norm() const { return v_.norm(); }

  Wavevector operator+(const Wavevector& o) const { return Wavevector(Vec3(v_ + o.v_)); }
  Wavevector operator-(const Wavevector& o) const { return Wavevector(Vec3(v_ - o.v_)); }
  Wavevector operator-() const { return Wavevector(Vec3(-v_)); }
  Wavevector operator*(double s) const { return Wavevector(Vec3(v_ * s)); }
  Wavevector operator/(double s) const { return Wavevector(Vec3(v_ / s)); }
  Wavevector half() const { return *this / 2.0; }

 private:
  Vec3 v_;
};

/// Selects one of the two Weyl automata A^+ / A^-.
enum class Chirality { plus, minus };

inline double sign_of(Chirality s) { return s == Chirality::plus ? 1.0 : -1.0; }
inline const char* to_string(Chirality s) { return s == Chirality::plus ? "plus" : "minus"; }

/// Raised when a rotation axis n_{k/2}/|n_{k/2}| (or a gradient of |n|) is
/// requested at a point where n vanishes.
class DegeneratePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an internally checked identity fails beyond its tolerance.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qcalab
