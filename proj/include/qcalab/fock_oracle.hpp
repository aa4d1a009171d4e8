#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "qcalab/em_bilinear.hpp"
#include "qcalab/types.hpp"

namespace qcalab {

using SparseOp = Eigen::SparseMatrix<Complex>;
using StateVec = Eigen::VectorXcd;

enum class Field { psi = 0, phi = 1 };
enum class Spin { R = 0, L = 1 };

struct ModeIndex {
  Field field = Field::psi;
  Spin spin = Spin::R;
  std::size_t momentum = 0;
};

/// Size error for spaces above the momentum cap.
class FockSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A pairing term for which neither k/2 - q nor k/2 + q is in the momentum list.
class UnresolvedMomentumError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Exact Fermionic Fock space over (field, spin, momentum) modes. Mode i is
/// bit i of a basis-state index; the linear order is field, then spin, then
/// momentum: i = field * 2P + spin * P + momentum. Jordan-Wigner signs follow
/// this order.
class FockSpace {
 public:
  static constexpr std::size_t kMaxMomenta = 5;

  explicit FockSpace(std::vector<Wavevector> momenta);

  std::size_t momentum_count() const { return momenta_.size(); }
  std::size_t mode_count() const { return 4 * momenta_.size(); }
  std::size_t dimension() const { return std::size_t{1} << mode_count(); }
  const std::vector<Wavevector>& momenta() const { return momenta_; }

  std::size_t linear(const ModeIndex& m) const;
  ModeIndex mode(std::size_t i) const;

  const SparseOp& annihilator(std::size_t i) const { return ann_.at(i); }
  const SparseOp& annihilator(Field f, Spin s, std::size_t momentum) const {
    return ann_.at(linear({f, s, momentum}));
  }
  SparseOp creator(std::size_t i) const { return ann_.at(i).adjoint(); }
  SparseOp number(std::size_t i) const;
  SparseOp identity() const;

  StateVec vacuum() const { return basis_state(0); }
  StateVec basis_state(std::uint32_t occupation) const;

  /// Index of the listed momentum within tol of p; throws UnresolvedMomentumError.
  std::size_t find_momentum(const Wavevector& p, double tol = 1e-9) const;

  int count(std::uint32_t occupation, Field f) const;

 private:
  std::vector<Wavevector> momenta_;
  std::vector<SparseOp> ann_;
};

/// Builds the space and verifies {a_i, a_j} = 0, {a_i, a_j^dagger} = delta_ij I.
/// Up to dimension 4096 the identities are checked as exact matrix products;
/// above, by action on a fixed pseudo-random vector.
/// Throws FockSizeError for 0 or more than kMaxMomenta momenta.
FockSpace build_fock(const std::vector<Wavevector>& momenta);

/// phi at momentum index `minus` (k/2 - q), psi at `plus` (k/2 + q).
struct PairTerm {
  std::size_t minus = 0;
  std::size_t plus = 0;
  Complex weight{1.0, 0.0};
};
using PairingTable = std::vector<PairTerm>;

/// Resolves the offsets q of profile (weights f) about the total momentum k.
PairingTable resolve_pairing(const FockSpace& space, const Wavevector& k, std::span<const Wavevector> q,
                             std::span<const Complex> f);

/// Every ordered pair (i, j) with p_i + p_j = k, ordered by i, with uniform
/// weights 1/sqrt(N_k). Throws UnresolvedMomentumError if there is none.
PairingTable uniform_pairing(const FockSpace& space, const Wavevector& k, double tol = 1e-9);

/// Same channels with the given weights (normalized by the caller).
PairingTable with_weights(PairingTable table, std::span<const Complex> f);

/// gamma_{alpha beta} = sum f phi_alpha(minus) psi_beta(plus).
struct GammaSpec {
  Spin alpha = Spin::R;
  Spin beta = Spin::R;
  PairingTable pairs;
};

SparseOp gamma_ab(const FockSpace& space, const GammaSpec& spec);

/// H^+ and H^- of the commutator [gamma, gamma'^dagger]:
///   H^+ = sum_{phi modes match} f g* psi^dagger_{beta'}(plus') psi_beta(plus)
///   H^- = sum_{psi modes match} f g* phi^dagger_{alpha'}(minus') phi_alpha(minus)
SparseOp h_plus(const FockSpace& space, const GammaSpec& a, const GammaSpec& b);
SparseOp h_minus(const FockSpace& space, const GammaSpec& a, const GammaSpec& b);

/// Gamma^+_{psi,beta} = sum |f|^2 n_{psi beta}(plus), Gamma^-_{phi,alpha} = sum |f|^2 n_{phi alpha}(minus).
SparseOp gamma_plus(const FockSpace& space, Spin beta, const PairingTable& pairs);
SparseOp gamma_minus(const FockSpace& space, Spin alpha, const PairingTable& pairs);

struct CommutatorReport {
  SparseOp commutator;    ///< [gamma, gamma'^dagger]
  SparseOp assembled;     ///< delta I - (delta_{alpha alpha'} H^+ + delta_{beta beta'} H^-)
  double assembly_error = 0.0;  ///< max |entry| of the difference
  double annihilator_commutator = 0.0;  ///< max |entry| of [gamma, gamma']
};

CommutatorReport commutator_report(const FockSpace& space, const GammaSpec& a, const GammaSpec& b);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// |<H>| <= sqrt(<Gamma1> <Gamma2>) + 1e-10 on a normalized state.
BoundCheck schwartz_bound_check(const StateVec& state, const SparseOp& h, const SparseOp& gamma1,
                                const SparseOp& gamma2);

Complex expectation(const SparseOp& op, const StateVec& state);

/// Largest singular value: dense below dimension 1024, power iteration on
/// A^dagger A above.
double operator_norm(const SparseOp& op);

/// Change of psi and phi particle numbers produced by an operator. `uniform`
/// is false if different nonzero entries shift by different amounts.
struct SectorShift {
  bool uniform = true;
  int d_psi = 0;
  int d_phi = 0;
};
SectorShift sector_shift(const FockSpace& space, const SparseOp& op);

/// gamma^i = (1/sqrt2) sum_{alpha beta} (M^i)_{alpha beta} gamma_{alpha beta},
/// M = I, u1.sigma, u2.sigma, e.sigma for i = 0..3.
SparseOp polarization_operator(const FockSpace& space, int i, const PairingTable& pairs,
                               const PolarizationFrame& frame);

struct PolarizationInput {
  PairingTable pairs;
  PolarizationFrame frame;
};

struct PolarizationReport {
  double vacuum_deviation = 0.0;
  /// max over basis states with n particles of |<[gamma^i, gamma^j'^dagger]> - delta|, n = 0, 1, 2.
  std::vector<double> deviation_by_particles;
  std::size_t states_checked = 0;
};

PolarizationReport polarization_boson_check(const FockSpace& space, std::span<const PolarizationInput> modes);

/// c = sum_i f(i) psi_i phi_i over the shared (spin, momentum) index i = spin * P + momentum.
SparseOp composite_boson(const FockSpace& space, std::span<const Complex> f);
SparseOp gamma_psi(const FockSpace& space, std::span<const Complex> f);  ///< sum |f|^2 n_psi
SparseOp gamma_phi(const FockSpace& space, std::span<const Complex> f);

/// Purity P = sum |f|^4.
double purity(std::span<const Complex> f);

/// (c^dagger)^N |0> without normalization.
StateVec composite_power(const SparseOp& c, const StateVec& vacuum, int n);

/// Raised when (c^dagger)^N |0> vanishes.
class SaturationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// chi_N (c^dagger)^N |0> / sqrt(N!) with chi_N fixed by normalization.
StateVec composite_state(const SparseOp& c, const StateVec& vacuum, int n);

struct CompositeLevel {
  int n = 0;
  double gamma_psi = 0.0;        ///< <N|Gamma_psi|N>
  double lower = 0.0, upper = 0.0;  ///< P and NP
  double cross_commutator = 0.0;  ///< |<N|[c1, c2^dagger]|N>|
  double cross_bound = 0.0;       ///< 2NP
};

struct CompositeReport {
  double purity = 0.0;
  double commutator_error = 0.0;  ///< max |[c,c^dagger] - (I - Gamma_psi - Gamma_phi)|
  double orthogonal_error = 0.0;  ///< max |[c1,c2^dagger] + sum f1 f2* (n_psi + n_phi)|
  std::vector<CompositeLevel> levels;
};

/// f1, f2 orthogonal and normalized, one weight per shared mode (2P entries).
CompositeReport composite_boson_suite(const FockSpace& space, std::span<const Complex> f1,
                                      std::span<const Complex> f2, int n_max);

/// Evenly spaced momenta along x around `base`: base + (j - (count-1)/2) * step.
std::vector<Wavevector> line_momenta(const Wavevector& base, double step, std::size_t count);

}  // namespace qcalab
