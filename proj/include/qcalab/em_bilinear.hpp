#pragma once

#include <span>
#include <vector>

#include "qcalab/types.hpp"

namespace qcalab {

/// Internal wavefunction f_k(q) of the Fermion pair on a finite cubic grid of
/// offsets q. Normalization is discrete: sum |f|^2 = 1.
struct SmearingProfile {
  Wavevector k;
  double spacing = 0.0;
  std::vector<Wavevector> grid;
  std::vector<Complex> weights;

  std::size_t size() const { return grid.size(); }
  double norm2() const;
  /// max |q| over points with nonzero weight; this is the q-bar of the profile.
  double support_radius() const;
  /// Weight fraction sum_{|q| > qbar} |f(q)|^2.
  double mass_outside(double qbar) const;
};

/// Uniform |f|^2 = 1/N_k over the N_k points q = spacing * (i, j, l) with
/// |q| <= radius. The origin is always a grid point, so a radius below the
/// spacing gives the single-point profile. Throws std::invalid_argument for
/// non-positive arguments.
SmearingProfile make_uniform_profile(const Wavevector& k, double radius, double grid_spacing);

/// Sigma-basis coefficients (I, sigma_x, sigma_y, sigma_z) of
///   f_k(q) (A^t_{k/2-q})^dagger sigma^mu A^t_{k/2+q}
/// per grid point q.
struct BilinearKernel {
  Wavevector k;
  long t = 0;
  int mu = 0;
  std::vector<Vec4c> table;
};

BilinearKernel evolve_kernel(int mu, const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t);

/// Matrix reassembled from one kernel entry.
Mat2 kernel_matrix(const BilinearKernel& kernel, std::size_t point);

/// The vector field F(k,t) = (F^1, F^2, F^3): row a holds the coefficients of
/// F^{a+1} over the basis bilinears phi^T(k/2-q) sigma^nu psi(k/2+q).
using VectorEntry = Eigen::Matrix<Complex, 3, 4>;
struct VectorKernel {
  Wavevector k;
  long t = 0;
  std::vector<VectorEntry> table;
};

VectorKernel evolve_vector_kernel(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t);

/// Exp(-i v.J) with (J_i)_{jk} = -i eps_{ijk}: the right-handed rotation by |v|
/// about v/|v|. Conjugating a Pauli vector,
///   exp(-i v.sigma/2) (c.sigma) exp(i v.sigma/2) = (R c).sigma.
Mat3 rotation_generator(const Vec3& v);

/// Orthonormal right-handed frame (u1, u2, e) with e along n_{k/2}.
struct PolarizationFrame {
  Vec3 e;
  Vec3 u1;
  Vec3 u2;
};

/// u1 = normalize(e x a) with a the coordinate axis least aligned with e
/// (ties broken toward the lower axis index), u2 = e x u1.
PolarizationFrame frame_from_axis(const Vec3& axis);
/// Frame of n_{k/2}; throws DegeneratePointError if |n_{k/2}| < 1e-12.
PolarizationFrame polarization_frame(const Wavevector& k, Chirality sign);

struct TransverseComponents {
  std::vector<Eigen::Vector2cd> transverse;  ///< components along u1, u2
  std::vector<Complex> longitudinal;         ///< component along e
};

/// Splits each complex 3-vector into its (u1, u2) and e components.
TransverseComponents transverse_project(std::span<const CVec3> vectors, const PolarizationFrame& frame);

struct MaxwellReport {
  Wavevector k;
  long t = 0;
  double qbar = 0.0;
  /// Profile-weighted RMS of the back-rotated transverse kernel minus its t=0
  /// value, i.e. the size of Lambda(k,t).
  double residual_transverse = 0.0;
  /// Angle between the evolved polarization plane and the plane orthogonal to k.
  double tilt_angle = 0.0;
  /// Angle between the rotation axis 2 n_{k/2} and k.
  double axis_angle_to_k = 0.0;
  /// Exp(-2i n_{k/2}.J t): predicted propagator of F_T.
  Mat3 predicted_rotation = Mat3::Identity();
};

MaxwellReport maxwell_emergence_report(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t);

/// One-step check of d/dt F_T = 2 n_{k/2} x F_T at step t (t >= 1).
struct GeneratorCheck {
  /// |(F_T(t+1) - F_T(t-1))/2 - sinc(2|n|) (2n x F_T(t))|, sinc(x) = sin(x)/x:
  /// the central difference against the generator of the discrete rotation.
  double residual_discrete = 0.0;
  /// Same against the continuum generator 2n x F_T(t); includes the O(|n|^3)
  /// cost of a unit time step.
  double residual_continuum = 0.0;
  double generator_norm = 0.0;  ///< 2|n_{k/2}|
};

GeneratorCheck generator_check(const SmearingProfile& profile, const Wavevector& k, Chirality sign, long t);

/// Circular eigenvectors of the F_T propagator Exp(-2i n_{k/2}.J t):
/// u_plus = (u1 + i u2)/sqrt2 with eigenvalue exp(-2i|n|t), u_minus its conjugate.
struct CircularModes {
  CVec3 u_plus;
  CVec3 u_minus;
  double frequency = 0.0;  ///< 2|n_{k/2}|
};

CircularModes eigenmodes(const Wavevector& k, Chirality sign);

/// c-number electric and magnetic kernels: E = |n|(F_T + conj F_T) and
/// B = i|n|(conj F_T - F_T), so that 2|n| F_T = E + iB.
struct EmFieldKernels {
  std::vector<CVec3> electric;
  std::vector<CVec3> magnetic;
};

EmFieldKernels em_field_kernels(std::span<const CVec3> transverse_field, double n_norm);

/// Q^i(k,q,t) = (U_{k/2-q})^dagger (w.sigma) U_{k/2+q}. With `approximate` the
/// first-order model of U is used instead of the exact interpolating unitary.
Mat2 q_operator(const Wavevector& k, const Wavevector& q, Chirality sign, long t, const Vec3& w, bool approximate);

}  // namespace qcalab
