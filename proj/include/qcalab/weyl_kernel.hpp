#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "qcalab/types.hpp"

namespace qcalab {

/// Bloch decomposition A = d I - i n_tilde . sigma = exp(-i n . sigma).
struct BlochData {
  double d = 1.0;
  Vec3 n_tilde = Vec3::Zero();
  double lambda = 0.0;  ///< rotation angle in [0, pi]
  Vec3 n = Vec3::Zero();  ///< |n| == lambda
};

struct WeylStep {
  Mat2 matrix = Mat2::Identity();
  BlochData bloch;
  Chirality sign = Chirality::plus;
};

namespace detail {

/// Scalar-generic closed forms for d and n_tilde. Used with double in the
/// kernel and with extended precision where group-speed deficits of order
/// 1e-20 have to be resolved.
template <class T>
struct BlochCore {
  T d;
  std::array<T, 3> n_tilde;
  std::array<T, 3> grad_d;  ///< derivative of d with respect to k
};

template <class T>
BlochCore<T> bloch_core(const std::array<T, 3>& k, Chirality sign) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T inv_sqrt3 = T(1) / sqrt(T(3));
  const T cx = cos(k[0] * inv_sqrt3), cy = cos(k[1] * inv_sqrt3), cz = cos(k[2] * inv_sqrt3);
  const T sx = sin(k[0] * inv_sqrt3), sy = sin(k[1] * inv_sqrt3), sz = sin(k[2] * inv_sqrt3);
  const T p = sign == Chirality::plus ? T(1) : T(-1);
  BlochCore<T> out;
  out.d = cx * cy * cz + p * sx * sy * sz;
  out.n_tilde = {sx * cy * cz - p * cx * sy * sz,
                 -p * cx * sy * cz - sx * cy * sz,
                 cx * cy * sz - p * sx * sy * cz};
  out.grad_d = {inv_sqrt3 * (-sx * cy * cz + p * cx * sy * sz),
                inv_sqrt3 * (-cx * sy * cz + p * sx * cy * sz),
                inv_sqrt3 * (-cx * cy * sz + p * sx * sy * cz)};
  return out;
}

}  // namespace detail

/// Below this value of sin(lambda) the ratio lambda / sin(lambda) switches to
/// its series (lambda -> 0) or to the normalized axis (lambda -> pi).
inline constexpr double kSinLambdaSeriesThreshold = 1e-8;
/// |n_tilde| below which the axis is treated as undefined.
inline constexpr double kAxisTolerance = 1e-14;
/// |n_{k/2}| below which frames, Jacobian-based approximations and gradients
/// of the dispersion relation are refused.
inline constexpr double kDegenerateTolerance = 1e-12;

BlochData bloch_data(const Wavevector& k, Chirality sign);

/// Builds A^{sign}_k twice (d I - i n_tilde.sigma and the Pade matrix
/// exponential of -i n.sigma) and throws InvariantViolation if they differ.
WeylStep weyl_step(const Wavevector& k, Chirality sign);

/// A^t computed as a rotation by angle t*lambda (reduced mod 2 pi) about
/// n_tilde / |n_tilde|. Negative t gives inverse steps.
Mat2 step_power(const Wavevector& k, Chirality sign, long t);

/// U^{k,t}_q = A^{-t}_{k/2} A^t_q.
Mat2 interp_unitary(const Wavevector& k, const Wavevector& q, Chirality sign, long t);

/// Jacobian dn/dk at p by central differences with step h.
Mat3 n_jacobian(const Wavevector& p, Chirality sign, double h = 1e-5);

/// First-order model of U^{k,t}_{k/2 + q_offset}:
///   exp(-i c t e.sigma),  e = n_{k/2}/|n_{k/2}|,  c = e . (J_n(k/2) q_offset).
/// Pass -q for the k/2 - q partner. Throws DegeneratePointError when
/// |n_{k/2}| < kDegenerateTolerance.
Mat2 approx_interp_unitary(const Wavevector& k, const Wavevector& q_offset, Chirality sign, long t,
                           double h = 1e-5);

/// Deviation of approx_interp_unitary from interp_unitary(k, k/2 + q_offset)
/// split by sigma components: `axial` collects the I and e.sigma parts (the
/// secular phase error), `transverse` the components orthogonal to e.
struct InterpErrorSplit {
  double total = 0.0;  ///< operator norm of the difference
  double axial = 0.0;
  double transverse = 0.0;
};
InterpErrorSplit interp_error_split(const Wavevector& k, const Wavevector& q_offset, Chirality sign, long t,
                                    double h = 1e-5);

/// exp(-i (k/sqrt3) . sigma), the small-k Weyl limit.
Mat2 relativistic_step(const Wavevector& k);

/// Maps k into the periodic cell (-pi sqrt3, pi sqrt3]^3.
Wavevector to_canonical_cell(const Wavevector& k);
inline constexpr double kCellHalfWidth = std::numbers::pi * std::numbers::sqrt3;

/// t * lambda reduced to [0, 2 pi): the angle used by step_power.
double rotation_angle(const Wavevector& k, Chirality sign, long t);

}  // namespace qcalab
