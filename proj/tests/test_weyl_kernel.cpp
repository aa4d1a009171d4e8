#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qcalab/numerics.hpp"
#include "qcalab/pauli.hpp"
#include "qcalab/weyl_kernel.hpp"

using namespace qcalab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR3 = std::numbers::sqrt3;
const Chirality kBoth[] = {Chirality::plus, Chirality::minus};

}  // namespace

TEST_SUITE("weyl_kernel") {

TEST_CASE("identity at the origin") {
  for (auto s : kBoth) {
    const BlochData b = bloch_data(Wavevector(), s);
    CHECK(b.d == doctest::Approx(1.0));
    CHECK(b.n_tilde.norm() == 0.0);
    CHECK(b.lambda == 0.0);
    CHECK(b.n.norm() == 0.0);
    CHECK((weyl_step(Wavevector(), s).matrix - Mat2::Identity()).norm() < 1e-15);
  }
}

TEST_CASE("hand-evaluated point k = (pi sqrt3 / 2, 0, 0)") {
  // c_x = 0, s_x = 1, c_y = c_z = 1, s_y = s_z = 0.
  const Wavevector k(kPi * kR3 / 2, 0, 0);
  const BlochData b = bloch_data(k, Chirality::plus);
  CHECK(std::abs(b.d) < 1e-15);
  CHECK((b.n_tilde - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK(b.lambda == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK((b.n - Vec3(kPi / 2, 0, 0)).norm() < 1e-14);

  const Complex i(0, 1);
  const Mat2 expected = -i * oracle::pauli(1);
  CHECK((weyl_step(k, Chirality::plus).matrix - expected).norm() < 1e-15);
  CHECK((step_power(k, Chirality::plus, 2) + Mat2::Identity()).norm() < 1e-14);
}

TEST_CASE("closed form matches the product of single-axis exponentials") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const Wavevector k(oracle::random_vec(rng, 2 * kPi * kR3));
    for (auto s : kBoth) {
      CHECK((weyl_step(k, s).matrix - oracle::automaton_product(k, s)).norm() < 1e-12);
    }
    const Wavevector mirrored(k.x(), -k.y(), k.z());
    CHECK((weyl_step(k, Chirality::plus).matrix - weyl_step(mirrored, Chirality::minus).matrix).norm() < 1e-14);
  }
}

TEST_CASE("unitarity, Bloch normalization and conjugation identity on 1e4 samples") {
  std::mt19937_64 rng(12);
  const Mat2 sy = oracle::pauli(2);
  double worst_u = 0, worst_b = 0, worst_c = 0, worst_n = 0, worst_e = 0;
  for (int n = 0; n < 10000; ++n) {
    const Wavevector k(oracle::random_vec(rng, kPi * kR3));
    for (auto s : kBoth) {
      const WeylStep w = weyl_step(k, s);
      const Mat2& a = w.matrix;
      worst_u = std::max(worst_u, (a.adjoint() * a - Mat2::Identity()).norm());
      worst_b = std::max(worst_b, std::abs(w.bloch.d * w.bloch.d + w.bloch.n_tilde.squaredNorm() - 1.0));
      worst_c = std::max(worst_c, (a.conjugate() - sy * a * sy).norm());
      worst_n = std::max(worst_n, std::abs(w.bloch.n.norm() - w.bloch.lambda));
      worst_e = std::max(worst_e, (oracle::expm_i(w.bloch.n) - a).norm());
      CHECK(w.bloch.lambda >= 0.0);
      CHECK(w.bloch.lambda <= kPi);
    }
  }
  CHECK(worst_u <= 1e-12);
  CHECK(worst_b <= 1e-12);
  CHECK(worst_c <= 1e-12);
  CHECK(worst_n <= 1e-12);
  CHECK(worst_e <= 1e-11);
}

TEST_CASE("removable singularities near lambda = 0 and lambda = pi") {
  SUBCASE("tiny k") {
    const Wavevector k(1e-10, -2e-10, 3e-10);
    const BlochData b = bloch_data(k, Chirality::minus);
    CHECK(std::isfinite(b.n.norm()));
    CHECK((b.n - b.n_tilde).norm() < 1e-25);
  }
  SUBCASE("exact half turn, axis undefined") {
    const Wavevector k(kPi * kR3, 0, 0);
    const WeylStep w = weyl_step(k, Chirality::plus);
    CHECK(w.bloch.lambda == doctest::Approx(kPi));
    CHECK(w.bloch.n.norm() == doctest::Approx(kPi));
    CHECK((w.matrix + Mat2::Identity()).norm() < 1e-12);
  }
  SUBCASE("just below a half turn") {
    const Wavevector k(kPi * kR3 * (1 - 1e-10), 0, 0);
    const WeylStep w = weyl_step(k, Chirality::plus);
    CHECK(std::sin(w.bloch.lambda) < 1e-8);
    CHECK(w.bloch.n.norm() == doctest::Approx(w.bloch.lambda).epsilon(1e-14));
    CHECK((oracle::expm_i(w.bloch.n) - w.matrix).norm() < 1e-12);
  }
}

TEST_CASE("relativistic limit") {
  // A^- -> exp(-i k/sqrt3 . sigma); A^+ tends to the y-mirrored form
  // sigma_y exp(+i k/sqrt3 . sigma) sigma_y = exp(-i (kx,-ky,kz)/sqrt3 . sigma).
  std::mt19937_64 rng(13);
  std::vector<Vec3> dirs;
  for (int i = 0; i < 20; ++i) dirs.push_back(oracle::random_dir(rng));
  std::vector<double> ks, dev_minus, dev_plus_mirror, dev_plus_literal;
  for (double kk = 1e-4; kk <= 1e-1 * 1.0001; kk *= std::sqrt(10.0)) {
    double m = 0, p = 0, l = 0;
    for (const auto& d : dirs) {
      const Wavevector k(Vec3(kk * d));
      const Wavevector mirrored(k.x(), -k.y(), k.z());
      m = std::max(m, oracle::op_norm(weyl_step(k, Chirality::minus).matrix - relativistic_step(k)));
      p = std::max(p, oracle::op_norm(weyl_step(k, Chirality::plus).matrix - relativistic_step(mirrored)));
      l = std::max(l, oracle::op_norm(weyl_step(k, Chirality::plus).matrix - relativistic_step(k)));
    }
    ks.push_back(kk);
    dev_minus.push_back(m);
    dev_plus_mirror.push_back(p);
    dev_plus_literal.push_back(l);
  }
  CHECK(loglog_slope(ks, dev_minus) >= 1.9);
  CHECK(loglog_slope(ks, dev_plus_mirror) >= 1.9);
  // Without the mirror the A^+ deviation is first order: it is not a small-k limit.
  CHECK(loglog_slope(ks, dev_plus_literal) == doctest::Approx(1.0).epsilon(0.05));
  // Fitted constant of the quadratic law.
  double c = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) c = std::max(c, dev_minus[i] / (ks[i] * ks[i]));
  CHECK(c < 1.0);
}

TEST_CASE("step_power") {
  std::mt19937_64 rng(14);
  SUBCASE("t = 0 and t = 1") {
    const Wavevector k(oracle::random_vec(rng, 3.0));
    for (auto s : kBoth) {
      CHECK((step_power(k, s, 0) - Mat2::Identity()).norm() < 1e-15);
      CHECK((step_power(k, s, 1) - weyl_step(k, s).matrix).norm() < 1e-14);
    }
  }
  SUBCASE("repeated multiplication for |t| <= 1000") {
    for (int n = 0; n < 20; ++n) {
      const Wavevector k(oracle::random_vec(rng, 5.0));
      const auto s = n % 2 ? Chirality::plus : Chirality::minus;
      const Mat2 a = oracle::automaton_product(k, s);
      for (long t : {-1000L, -37L, -1L, 2L, 3L, 64L, 999L, 1000L}) {
        CHECK((step_power(k, s, t) - oracle::repeated(a, t)).norm() < 1e-10);
      }
    }
  }
  SUBCASE("group property up to t = 1e6") {
    std::uniform_int_distribution<long> ut(-1000000, 1000000);
    for (int n = 0; n < 200; ++n) {
      const Wavevector k(oracle::random_vec(rng, 5.0));
      const long t1 = ut(rng), t2 = ut(rng);
      for (auto s : kBoth) {
        const Mat2 lhs = step_power(k, s, t1 + t2);
        const Mat2 rhs = step_power(k, s, t1) * step_power(k, s, t2);
        CHECK((lhs - rhs).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("periodicity and canonical cell") {
  std::mt19937_64 rng(15);
  const double period = 2 * kPi * kR3;
  for (int n = 0; n < 200; ++n) {
    const Wavevector k(oracle::random_vec(rng, 4.0));
    for (auto s : kBoth) {
      const BlochData b = bloch_data(k, s);
      for (int a = 0; a < 3; ++a) {
        Vec3 shift = Vec3::Zero();
        shift[a] = period;
        const BlochData c = bloch_data(k + Wavevector(shift), s);
        CHECK(std::abs(c.d - b.d) < 1e-12);
        CHECK((c.n_tilde - b.n_tilde).norm() < 1e-12);
      }
      const Wavevector far = k + Wavevector(3 * period, -2 * period, 5 * period);
      const Wavevector back = to_canonical_cell(far);
      CHECK(back.vec().cwiseAbs().maxCoeff() <= kCellHalfWidth);
      CHECK((back - k).norm() < 1e-12);
    }
  }
  CHECK(to_canonical_cell(Wavevector(kCellHalfWidth, 0, 0)).x() == doctest::Approx(kCellHalfWidth));
  CHECK(to_canonical_cell(Wavevector(-kCellHalfWidth, 0, 0)).x() == doctest::Approx(kCellHalfWidth));
}

TEST_CASE("interpolating unitary") {
  std::mt19937_64 rng(16);
  for (int n = 0; n < 50; ++n) {
    const Wavevector k(oracle::random_vec(rng, 2.0));
    const Wavevector q(oracle::random_vec(rng, 2.0));
    for (auto s : kBoth) {
      CHECK((interp_unitary(k, k.half(), s, 17) - Mat2::Identity()).norm() < 1e-13);
      CHECK((interp_unitary(k, q, s, 0) - Mat2::Identity()).norm() < 1e-15);
      const Mat2 u = interp_unitary(k, q, s, 5);
      CHECK((u.adjoint() * u - Mat2::Identity()).norm() < 1e-12);
      const Mat2 direct = oracle::repeated(oracle::automaton_product(k.half(), s), -5) *
                          oracle::repeated(oracle::automaton_product(q, s), 5);
      CHECK((u - direct).norm() < 1e-12);
    }
  }
}

TEST_CASE("first-order interpolating unitary") {
  const Wavevector k(0.4, 0.3, 0.2);
  SUBCASE("trivial cases") {
    for (auto s : kBoth) {
      CHECK((approx_interp_unitary(k, Wavevector(), s, 50) - Mat2::Identity()).norm() < 1e-15);
      CHECK((approx_interp_unitary(k, Wavevector(1e-3, 2e-3, 0), s, 0) - Mat2::Identity()).norm() < 1e-15);
    }
  }
  SUBCASE("degenerate point") {
    CHECK_THROWS_AS(approx_interp_unitary(Wavevector(), Wavevector(1e-3, 0, 0), Chirality::plus, 3),
                    DegeneratePointError);
  }
  SUBCASE("finite-difference Jacobian against Richardson extrapolation") {
    for (auto s : kBoth) {
      const Mat3 j1 = n_jacobian(k.half(), s, 1e-5);
      const Mat3 j2 = n_jacobian(k.half(), s, 2e-3);
      const Mat3 j3 = n_jacobian(k.half(), s, 1e-3);
      const Mat3 richardson = (4.0 * j3 - j2) / 3.0;
      CHECK((j1 - richardson).norm() < 1e-8);
    }
  }
  SUBCASE("error law in qbar") {
    // Transverse part: slope 1 at fixed t. The secular (axial) part grows as qbar^2 t.
    std::mt19937_64 rng(17);
    const Vec3 dir = oracle::random_dir(rng);
    for (auto s : kBoth) {
      const double n_norm = bloch_data(k.half(), s).n.norm();
      std::vector<double> qs, total, transverse, axial;
      for (double q = 1e-2; q > 1e-4; q /= 2) {
        const InterpErrorSplit e = interp_error_split(k, Wavevector(Vec3(q * dir)), s, 10);
        qs.push_back(q / n_norm);
        total.push_back(e.total);
        transverse.push_back(e.transverse);
        axial.push_back(e.axial);
      }
      CHECK(loglog_slope(qs, total) == doctest::Approx(1.0).epsilon(0.15));
      CHECK(loglog_slope(qs, transverse) == doctest::Approx(1.0).epsilon(0.15));
      CHECK(loglog_slope(qs, axial) == doctest::Approx(2.0).epsilon(0.15));

      // The axial part is the one proportional to t.
      const Wavevector q(Vec3(2e-3 * dir));
      const double a10 = interp_error_split(k, q, s, 10).axial;
      const double a40 = interp_error_split(k, q, s, 40).axial;
      CHECK(a40 / a10 == doctest::Approx(4.0).epsilon(0.1));

      // Fitted constants C1, C2 of |U - U_approx| <= C1 (q/|n|) + C2 (q/|n|)^2 t.
      double c1 = 0, c2 = 0;
      for (std::size_t i = 0; i < qs.size(); ++i) {
        c1 = std::max(c1, transverse[i] / qs[i]);
        c2 = std::max(c2, axial[i] / (qs[i] * qs[i] * 10));
      }
      for (std::size_t i = 0; i < qs.size(); ++i) {
        CHECK(total[i] <= c1 * qs[i] + c2 * qs[i] * qs[i] * 10 + 1e-14);
      }
    }
  }
}

TEST_CASE("Pauli helpers") {
  std::mt19937_64 rng(18);
  for (int n = 0; n < 100; ++n) {
    const Vec3 v = oracle::random_vec(rng, 4.0);
    CHECK((pauli::exp_minus_i(v) - oracle::expm_i(v)).norm() < 1e-13);
    Mat2 m;
    m << Complex(n, 1), Complex(2, -n), Complex(0.5, 0.5), Complex(-1, 3);
    CHECK((pauli::from_coefficients(pauli::coefficients(m)) - m).norm() < 1e-13);
  }
  CHECK(rotation_angle(Wavevector(kPi * kR3 / 2, 0, 0), Chirality::plus, 5) == doctest::Approx(kPi / 2));
}

}  // TEST_SUITE
