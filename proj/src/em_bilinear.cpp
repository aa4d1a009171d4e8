#include "qcalab/em_bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcalab/pauli.hpp"
#include "qcalab/weyl_kernel.hpp"

namespace qcalab {

double SmearingProfile::norm2() const {
  double s = 0.0;
  for (const auto& w : weights) s += std::norm(w);
  return s;
}

double SmearingProfile::support_radius() const {
  double r = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (weights[i] != Complex(0.0)) r = std::max(r, grid[i].norm());
  }
  return r;
}

double SmearingProfile::mass_outside(double qbar) const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].norm() > qbar) s += std::norm(weights[i]);
  }
  return s;
}

SmearingProfile make_uniform_profile(const Wavevector& k, double radius, double grid_spacing) {
  if (!(radius > 0.0) || !(grid_spacing > 0.0)) {
    throw std::invalid_argument("make_uniform_profile: radius and grid spacing must be positive");
  }
  SmearingProfile p;
  p.k = k;
  p.spacing = grid_spacing;
  // Points exactly on the sphere count as inside.
  const double limit = radius * (1.0 + 1e-12);
  const long n = static_cast<long>(std::floor(limit / grid_spacing));
  for (long i = -n; i <= n; ++i) {
    for (long j = -n; j <= n; ++j) {
      for (long l = -n; l <= n; ++l) {
        const Wavevector q(i * grid_spacing, j * grid_spacing, l * grid_spacing);
        if (q.norm() <= limit) p.grid.push_back(q);
      }
    }
  }
  if (p.grid.empty()) throw std::invalid_argument("make_uniform_profile: no grid point inside the ball");
  const Complex w(1.0 / std::sqrt(static_cast<double>(p.grid.size())), 0.0);
  p.weights.assign(p.grid.size(), w);
  return p;
}

namespace {

struct PairSteps {
  Mat2 minus_dag;  // (A^t_{k/2-q})^dagger
  Mat2 plus;       // A^t_{k/2+q}
};

PairSteps pair_steps(const Wavevector& k, const Wavevector& q, Chirality sign, long t) {
  const Wavevector p = k.half();
  return {step_power(p - q, sign, t).adjoint(), step_power(p + q, sign, t)};
}

Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

}  // namespace

BilinearKernel evolve_kernel(int mu, const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t) {
  if (mu < 0 || mu > 3) throw std::out_of_range("evolve_kernel: mu must be in 0..3");
  BilinearKernel out;
  out.k = k;
  out.t = t;
  out.mu = mu;
  out.table.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const PairSteps a = pair_steps(k, profile.grid[i], sign, t);
    const Mat2 m = profile.weights[i] * (a.minus_dag * pauli::sigma(mu) * a.plus);
    out.table.push_back(pauli::coefficients(m));
  }
  return out;
}

Mat2 kernel_matrix(const BilinearKernel& kernel, std::size_t point) {
  return pauli::from_coefficients(kernel.table.at(point));
}

VectorKernel evolve_vector_kernel(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t) {
  VectorKernel out;
  out.k = k;
  out.t = t;
  out.table.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const PairSteps a = pair_steps(k, profile.grid[i], sign, t);
    VectorEntry e;
    for (int row = 0; row < 3; ++row) {
      const Mat2 m = profile.weights[i] * (a.minus_dag * pauli::sigma(row + 1) * a.plus);
      e.row(row) = pauli::coefficients(m).transpose();
    }
    out.table.push_back(e);
  }
  return out;
}

Mat3 rotation_generator(const Vec3& v) {
  const double angle = v.norm();
  if (angle == 0.0) return Mat3::Identity();
  const Mat3 kx = cross_matrix(v / angle);
  return Mat3::Identity() + std::sin(angle) * kx + (1.0 - std::cos(angle)) * kx * kx;
}

PolarizationFrame frame_from_axis(const Vec3& axis) {
  const double norm = axis.norm();
  if (norm < kDegenerateTolerance) throw DegeneratePointError("polarization frame: axis vanishes");
  PolarizationFrame f;
  f.e = axis / norm;
  int best = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(f.e[a]) < std::abs(f.e[best])) best = a;
  }
  f.u1 = f.e.cross(Vec3::Unit(best)).normalized();
  f.u2 = f.e.cross(f.u1);
  return f;
}

PolarizationFrame polarization_frame(const Wavevector& k, Chirality sign) {
  const Vec3 n = bloch_data(k.half(), sign).n;
  if (n.norm() < kDegenerateTolerance) {
    throw DegeneratePointError("polarization frame: n_{k/2} vanishes");
  }
  return frame_from_axis(n);
}

TransverseComponents transverse_project(std::span<const CVec3> vectors, const PolarizationFrame& frame) {
  if (std::abs(frame.e.norm() - 1.0) > 1e-9) throw DegeneratePointError("transverse_project: frame is not unit");
  TransverseComponents out;
  out.transverse.reserve(vectors.size());
  out.longitudinal.reserve(vectors.size());
  const CVec3 u1 = frame.u1.cast<Complex>(), u2 = frame.u2.cast<Complex>(), e = frame.e.cast<Complex>();
  for (const auto& v : vectors) {
    // Real frame vectors: dot() conjugates its left argument, which is harmless here.
    out.transverse.emplace_back(u1.dot(v), u2.dot(v));
    out.longitudinal.push_back(e.dot(v));
  }
  return out;
}

namespace {

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Eigen::Matrix<double, 2, 3> transverse_rows(const PolarizationFrame& f) {
  Eigen::Matrix<double, 2, 3> p;
  p.row(0) = f.u1.transpose();
  p.row(1) = f.u2.transpose();
  return p;
}

}  // namespace

MaxwellReport maxwell_emergence_report(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t) {
  if (t < 0) throw std::invalid_argument("maxwell_emergence_report: t must be non-negative");
  const Vec3 n = bloch_data(k.half(), sign).n;
  const PolarizationFrame frame = polarization_frame(k, sign);
  MaxwellReport r;
  r.k = k;
  r.t = t;
  r.qbar = profile.support_radius();
  r.predicted_rotation = rotation_generator(2.0 * static_cast<double>(t) * n);
  r.axis_angle_to_k = angle_between(n, k.vec());

  const Mat3 back = r.predicted_rotation.transpose();
  const Eigen::Matrix<Complex, 2, 3> proj = transverse_rows(frame).cast<Complex>();
  const VectorKernel kernel = evolve_vector_kernel(profile, k, sign, t);
  double acc = 0.0;
  Mat3 w = Mat3::Zero();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const VectorEntry& c = kernel.table[i];
    VectorEntry c0 = VectorEntry::Zero();
    c0.rightCols<3>() = profile.weights[i] * CMat3::Identity();
    acc += (proj * (back.cast<Complex>() * c - c0)).squaredNorm();
    w += (std::conj(profile.weights[i]) * c.rightCols<3>()).real();
  }
  r.residual_transverse = std::sqrt(acc);

  // The polarization plane spanned by the images of u1, u2 under the
  // profile-averaged transfer matrix.
  const Vec3 normal = (w * frame.u1).cross(w * frame.u2);
  if (normal.norm() < 1e-14 || k.norm() == 0.0) {
    throw DegeneratePointError("maxwell_emergence_report: evolved polarization plane collapsed");
  }
  const double c = std::abs(normal.normalized().dot(k.vec().normalized()));
  r.tilt_angle = std::acos(std::min(1.0, c));
  return r;
}

GeneratorCheck generator_check(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t) {
  if (t < 1) throw std::invalid_argument("generator_check: t must be at least 1");
  const Vec3 n = bloch_data(k.half(), sign).n;
  const PolarizationFrame frame = polarization_frame(k, sign);
  const CMat3 transverse = (Mat3::Identity() - frame.e * frame.e.transpose()).cast<Complex>();
  const double theta = 2.0 * n.norm();
  const CMat3 gen = cross_matrix(2.0 * n).cast<Complex>();
  const double sinc = std::sin(theta) / theta;

  const VectorKernel prev = evolve_vector_kernel(profile, k, sign, t - 1);
  const VectorKernel now = evolve_vector_kernel(profile, k, sign, t);
  const VectorKernel next = evolve_vector_kernel(profile, k, sign, t + 1);
  double disc = 0.0, cont = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const VectorEntry d = transverse * (next.table[i] - prev.table[i]) * 0.5;
    const VectorEntry g = gen * transverse * now.table[i];
    disc += (d - sinc * g).squaredNorm();
    cont += (d - g).squaredNorm();
  }
  GeneratorCheck out;
  out.residual_discrete = std::sqrt(disc);
  out.residual_continuum = std::sqrt(cont);
  out.generator_norm = theta;
  return out;
}

CircularModes eigenmodes(const Wavevector& k, Chirality sign) {
  const Vec3 n = bloch_data(k.half(), sign).n;
  const PolarizationFrame f = polarization_frame(k, sign);
  const Complex i(0.0, 1.0);
  CircularModes m;
  m.u_plus = (f.u1.cast<Complex>() + i * f.u2.cast<Complex>()) / std::numbers::sqrt2;
  m.u_minus = m.u_plus.conjugate();
  m.frequency = 2.0 * n.norm();
  const CMat3 r = rotation_generator(2.0 * n).cast<Complex>();
  const double dp = (r * m.u_plus - std::exp(-i * m.frequency) * m.u_plus).norm();
  const double dm = (r * m.u_minus - std::exp(i * m.frequency) * m.u_minus).norm();
  if (dp > 1e-10 || dm > 1e-10) throw InvariantViolation("eigenmodes: eigen-relation check failed");
  return m;
}

EmFieldKernels em_field_kernels(std::span<const CVec3> transverse_field, double n_norm) {
  EmFieldKernels out;
  out.electric.reserve(transverse_field.size());
  out.magnetic.reserve(transverse_field.size());
  const Complex i(0.0, 1.0);
  for (const auto& f : transverse_field) {
    out.electric.push_back(n_norm * (f + f.conjugate()));
    out.magnetic.push_back(i * n_norm * (f.conjugate() - f));
  }
  return out;
}

Mat2 q_operator(const Wavevector& k, const Wavevector& q, Chirality sign, long t, const Vec3& w, bool approximate) {
  Mat2 um, up;
  if (approximate) {
    um = approx_interp_unitary(k, -q, sign, t);
    up = approx_interp_unitary(k, q, sign, t);
  } else {
    um = interp_unitary(k, k.half() - q, sign, t);
    up = interp_unitary(k, k.half() + q, sign, t);
  }
  return um.adjoint() * pauli::dot(w) * up;
}

}  // namespace qcalab
