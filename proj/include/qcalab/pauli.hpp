#pragma once

#include "qcalab/types.hpp"

namespace qcalab::pauli {

/// sigma^0 = I, sigma^1..3 = sigma_x, sigma_y, sigma_z.
const Mat2& sigma(int mu);

/// v . sigma for a real or complex 3-vector.
Mat2 dot(const Vec3& v);
Mat2 dot(const CVec3& v);

/// exp(-i v . sigma) in closed form: cos|v| I - i sin|v| (v/|v|) . sigma.
Mat2 exp_minus_i(const Vec3& v);

/// Coefficients c_mu with M = sum_mu c_mu sigma^mu, c_mu = Tr(sigma^mu M) / 2.
Vec4c coefficients(const Mat2& m);
Mat2 from_coefficients(const Vec4c& c);

/// Spectral (largest singular value) norm of a 2x2 matrix.
double operator_norm(const Mat2& m);

}  // namespace qcalab::pauli
