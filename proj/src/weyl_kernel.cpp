#include "qcalab/weyl_kernel.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "qcalab/pauli.hpp"

namespace qcalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 to_vec(const std::array<double, 3>& a) { return Vec3(a[0], a[1], a[2]); }

// Unit rotation axis of A_k. At the exact degeneracy A = +-I the axis is
// arbitrary; z is used.
Vec3 axis_of(const BlochData& b) {
  const double norm = b.n_tilde.norm();
  if (norm < kAxisTolerance) return Vec3::UnitZ();
  return b.n_tilde / norm;
}

}  // namespace

BlochData bloch_data(const Wavevector& k, Chirality sign) {
  const auto core = detail::bloch_core<double>({k.x(), k.y(), k.z()}, sign);
  BlochData b;
  b.d = core.d;
  b.n_tilde = to_vec(core.n_tilde);
  const double nt = b.n_tilde.norm();
  // atan2 equals arccos(d) on the unit sphere d^2 + |n_tilde|^2 = 1 and keeps
  // full precision near lambda = 0 and lambda = pi.
  b.lambda = std::atan2(nt, b.d);
  const double s = std::sin(b.lambda);
  if (s >= kSinLambdaSeriesThreshold) {
    b.n = (b.lambda / s) * b.n_tilde;
  } else if (b.lambda < std::numbers::pi / 2) {
    b.n = (1.0 + b.lambda * b.lambda / 6.0) * b.n_tilde;
  } else {
    b.n = b.lambda * axis_of(b);
  }
  return b;
}

WeylStep weyl_step(const Wavevector& k, Chirality sign) {
  WeylStep step;
  step.sign = sign;
  step.bloch = bloch_data(k, sign);
  const Complex i(0.0, 1.0);
  step.matrix = step.bloch.d * Mat2::Identity() - i * pauli::dot(step.bloch.n_tilde);
  const Mat2 generator = -i * pauli::dot(step.bloch.n);
  const Mat2 exponential = generator.exp();
  if ((exponential - step.matrix).norm() > 1e-10) {
    throw InvariantViolation("weyl_step: d I - i n~.sigma and exp(-i n.sigma) disagree");
  }
  return step;
}

namespace {

// t * lambda mod 2pi. Extended precision keeps the error near t * ulp(lambda)
// instead of ulp(t * lambda).
double phase(long t, double lambda) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  return static_cast<double>(std::fmod(static_cast<long double>(t) * lambda, two_pi));
}

}  // namespace

double rotation_angle(const Wavevector& k, Chirality sign, long t) {
  const BlochData b = bloch_data(k, sign);
  double angle = phase(t, b.lambda);
  if (angle < 0) angle += kTwoPi;
  return angle;
}

Mat2 step_power(const Wavevector& k, Chirality sign, long t) {
  const BlochData b = bloch_data(k, sign);
  const double angle = phase(t, b.lambda);
  const Complex i(0.0, 1.0);
  return std::cos(angle) * Mat2::Identity() - i * std::sin(angle) * pauli::dot(axis_of(b));
}

Mat2 interp_unitary(const Wavevector& k, const Wavevector& q, Chirality sign, long t) {
  return step_power(k.half(), sign, -t) * step_power(q, sign, t);
}

Mat3 n_jacobian(const Wavevector& p, Chirality sign, double h) {
  Mat3 jac;
  for (int col = 0; col < 3; ++col) {
    Vec3 dp = Vec3::Zero();
    dp[col] = h;
    const Vec3 fwd = bloch_data(p + Wavevector(dp), sign).n;
    const Vec3 bwd = bloch_data(p - Wavevector(dp), sign).n;
    jac.col(col) = (fwd - bwd) / (2.0 * h);
  }
  return jac;
}

namespace {

struct AxisModel {
  Vec3 axis;
  double rate;  // c_{k,q}
};

AxisModel axis_model(const Wavevector& k, const Wavevector& q_offset, Chirality sign, double h) {
  const Wavevector p = k.half();
  const Vec3 n = bloch_data(p, sign).n;
  const double norm = n.norm();
  if (norm < kDegenerateTolerance) {
    throw DegeneratePointError("approx_interp_unitary: n_{k/2} vanishes, rotation axis undefined");
  }
  const Vec3 e = n / norm;
  const Vec3 l = n_jacobian(p, sign, h) * q_offset.vec();
  return {e, e.dot(l)};
}

}  // namespace

Mat2 approx_interp_unitary(const Wavevector& k, const Wavevector& q_offset, Chirality sign, long t,
                           double h) {
  const AxisModel m = axis_model(k, q_offset, sign, h);
  return pauli::exp_minus_i(m.axis * (m.rate * static_cast<double>(t)));
}

InterpErrorSplit interp_error_split(const Wavevector& k, const Wavevector& q_offset, Chirality sign, long t,
                                    double h) {
  const AxisModel m = axis_model(k, q_offset, sign, h);
  const Mat2 approx = pauli::exp_minus_i(m.axis * (m.rate * static_cast<double>(t)));
  const Mat2 exact = interp_unitary(k, k.half() + q_offset, sign, t);
  const Mat2 diff = exact - approx;
  const Vec4c c = pauli::coefficients(diff);
  const CVec3 vec = c.tail<3>();
  const Complex along = m.axis.cast<Complex>().dot(vec);  // e is real so no conjugation issue
  const CVec3 across = vec - along * m.axis.cast<Complex>();
  InterpErrorSplit out;
  out.total = pauli::operator_norm(diff);
  out.axial = std::sqrt(std::norm(c[0]) + std::norm(along));
  out.transverse = across.norm();
  return out;
}

Mat2 relativistic_step(const Wavevector& k) { return pauli::exp_minus_i(k.vec() / std::numbers::sqrt3); }

Wavevector to_canonical_cell(const Wavevector& k) {
  const double period = 2.0 * kCellHalfWidth;
  Vec3 out;
  for (int a = 0; a < 3; ++a) {
    // Map into (-half, half].
    double r = std::fmod(k[a] + kCellHalfWidth, period);
    if (r <= 0) r += period;
    out[a] = r - kCellHalfWidth;
  }
  return Wavevector(out);
}

}  // namespace qcalab
