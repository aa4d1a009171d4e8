#include "qcalab/fock_oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qcalab/pauli.hpp"

namespace qcalab {

namespace {

using Triplet = Eigen::Triplet<Complex>;

double max_abs_entry(const SparseOp& m) {
  double out = 0.0;
  for (int col = 0; col < m.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(m, col); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

bool exactly_zero(const SparseOp& m) {
  for (int col = 0; col < m.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(m, col); it; ++it) {
      if (it.value() != Complex(0.0)) return false;
    }
  }
  return true;
}

SparseOp zero_op(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return SparseOp(n, n);
}

void verify_anticommutators(const FockSpace& space) {
  const std::size_t m = space.mode_count();
  if (space.dimension() <= 4096) {
    const SparseOp id = space.identity();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const SparseOp& ai = space.annihilator(i);
        const SparseOp& aj = space.annihilator(j);
        const SparseOp ajd = space.creator(j);
        SparseOp mixed = SparseOp(ai * ajd) + SparseOp(ajd * ai);
        if (i == j) mixed -= id;
        const SparseOp pure = SparseOp(ai * aj) + SparseOp(aj * ai);
        if (!exactly_zero(mixed) || !exactly_zero(pure)) {
          throw InvariantViolation("build_fock: anticommutator fails for modes " + std::to_string(i) + ", " +
                                   std::to_string(j));
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVec v(static_cast<Eigen::Index>(space.dimension()));
  for (auto& x : v) x = Complex(u(rng), u(rng));
  for (std::size_t i = 0; i < m; ++i) {
    const SparseOp& ai = space.annihilator(i);
    const StateVec ai_v = ai * v;
    for (std::size_t j = 0; j < m; ++j) {
      const SparseOp& aj = space.annihilator(j);
      const SparseOp ajd = space.creator(j);
      StateVec mixed = ai * (ajd * v) + ajd * ai_v;
      if (i == j) mixed -= v;
      const StateVec pure = ai * (aj * v) + aj * ai_v;
      if (mixed.cwiseAbs().maxCoeff() != 0.0 || pure.cwiseAbs().maxCoeff() != 0.0) {
        throw InvariantViolation("build_fock: anticommutator fails for modes " + std::to_string(i) + ", " +
                                 std::to_string(j));
      }
    }
  }
}

}  // namespace

FockSpace::FockSpace(std::vector<Wavevector> momenta) : momenta_(std::move(momenta)) {
  if (momenta_.empty() || momenta_.size() > kMaxMomenta) {
    throw FockSizeError("build_fock: momentum count must be between 1 and " + std::to_string(kMaxMomenta) +
                        ", got " + std::to_string(momenta_.size()));
  }
  const std::size_t m = mode_count();
  const std::size_t dim = dimension();
  ann_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    const std::uint32_t below = bit - 1;
    std::vector<Triplet> entries;
    entries.reserve(dim / 2);
    for (std::uint32_t s = 0; s < dim; ++s) {
      if (!(s & bit)) continue;
      const double sign = (std::popcount(s & below) % 2) ? -1.0 : 1.0;
      entries.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), Complex(sign, 0.0));
    }
    SparseOp a = zero_op(dim);
    a.setFromTriplets(entries.begin(), entries.end());
    ann_.push_back(std::move(a));
  }
  verify_anticommutators(*this);
}

FockSpace build_fock(const std::vector<Wavevector>& momenta) { return FockSpace(momenta); }

std::size_t FockSpace::linear(const ModeIndex& m) const {
  if (m.momentum >= momenta_.size()) throw std::out_of_range("FockSpace: momentum index out of range");
  const std::size_t p = momenta_.size();
  return static_cast<std::size_t>(m.field) * 2 * p + static_cast<std::size_t>(m.spin) * p + m.momentum;
}

ModeIndex FockSpace::mode(std::size_t i) const {
  if (i >= mode_count()) throw std::out_of_range("FockSpace: mode index out of range");
  const std::size_t p = momenta_.size();
  return {static_cast<Field>(i / (2 * p)), static_cast<Spin>((i / p) % 2), i % p};
}

SparseOp FockSpace::number(std::size_t i) const { return SparseOp(creator(i) * ann_.at(i)); }

SparseOp FockSpace::identity() const {
  SparseOp id = zero_op(dimension());
  id.setIdentity();
  return id;
}

StateVec FockSpace::basis_state(std::uint32_t occupation) const {
  if (occupation >= dimension()) throw std::out_of_range("FockSpace: basis state out of range");
  StateVec v = StateVec::Zero(static_cast<Eigen::Index>(dimension()));
  v[occupation] = 1.0;
  return v;
}

std::size_t FockSpace::find_momentum(const Wavevector& p, double tol) const {
  for (std::size_t i = 0; i < momenta_.size(); ++i) {
    if ((momenta_[i] - p).norm() <= tol) return i;
  }
  throw UnresolvedMomentumError("momentum (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ", " +
                                std::to_string(p.z()) + ") is not in the mode list");
}

int FockSpace::count(std::uint32_t occupation, Field f) const {
  const std::size_t width = 2 * momenta_.size();
  const std::uint32_t mask = ((std::uint32_t{1} << width) - 1) << (static_cast<std::size_t>(f) * width);
  return std::popcount(occupation & mask);
}

PairingTable resolve_pairing(const FockSpace& space, const Wavevector& k, std::span<const Wavevector> q,
                             std::span<const Complex> f) {
  if (q.size() != f.size()) throw std::invalid_argument("resolve_pairing: offsets and weights differ in length");
  PairingTable out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out.push_back({space.find_momentum(k.half() - q[i]), space.find_momentum(k.half() + q[i]), f[i]});
  }
  return out;
}

PairingTable uniform_pairing(const FockSpace& space, const Wavevector& k, double tol) {
  const auto& p = space.momenta();
  PairingTable out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if ((p[i] + p[j] - k).norm() <= tol) out.push_back({i, j, Complex(1.0, 0.0)});
    }
  }
  if (out.empty()) throw UnresolvedMomentumError("uniform_pairing: no momentum pair adds up to k");
  const double w = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& t : out) t.weight = w;
  return out;
}

PairingTable with_weights(PairingTable table, std::span<const Complex> f) {
  if (table.size() != f.size()) throw std::invalid_argument("with_weights: length mismatch");
  for (std::size_t i = 0; i < f.size(); ++i) table[i].weight = f[i];
  return table;
}

SparseOp gamma_ab(const FockSpace& space, const GammaSpec& spec) {
  SparseOp g = zero_op(space.dimension());
  for (const auto& t : spec.pairs) {
    g += t.weight * SparseOp(space.annihilator(Field::phi, spec.alpha, t.minus) *
                             space.annihilator(Field::psi, spec.beta, t.plus));
  }
  return g;
}

SparseOp h_plus(const FockSpace& space, const GammaSpec& a, const GammaSpec& b) {
  SparseOp h = zero_op(space.dimension());
  for (const auto& t : a.pairs) {
    for (const auto& u : b.pairs) {
      if (t.minus != u.minus) continue;
      h += (t.weight * std::conj(u.weight)) *
           SparseOp(space.creator(space.linear({Field::psi, b.beta, u.plus})) *
                    space.annihilator(Field::psi, a.beta, t.plus));
    }
  }
  return h;
}

SparseOp h_minus(const FockSpace& space, const GammaSpec& a, const GammaSpec& b) {
  SparseOp h = zero_op(space.dimension());
  for (const auto& t : a.pairs) {
    for (const auto& u : b.pairs) {
      if (t.plus != u.plus) continue;
      h += (t.weight * std::conj(u.weight)) *
           SparseOp(space.creator(space.linear({Field::phi, b.alpha, u.minus})) *
                    space.annihilator(Field::phi, a.alpha, t.minus));
    }
  }
  return h;
}

SparseOp gamma_plus(const FockSpace& space, Spin beta, const PairingTable& pairs) {
  SparseOp g = zero_op(space.dimension());
  for (const auto& t : pairs) g += std::norm(t.weight) * space.number(space.linear({Field::psi, beta, t.plus}));
  return g;
}

SparseOp gamma_minus(const FockSpace& space, Spin alpha, const PairingTable& pairs) {
  SparseOp g = zero_op(space.dimension());
  for (const auto& t : pairs) g += std::norm(t.weight) * space.number(space.linear({Field::phi, alpha, t.minus}));
  return g;
}

CommutatorReport commutator_report(const FockSpace& space, const GammaSpec& a, const GammaSpec& b) {
  const SparseOp g1 = gamma_ab(space, a);
  const SparseOp g2 = gamma_ab(space, b);
  const SparseOp g2d = g2.adjoint();
  if (g1.rows() != g2.rows()) throw std::invalid_argument("commutator_report: operators on different spaces");
  CommutatorReport r;
  r.commutator = SparseOp(g1 * g2d) - SparseOp(g2d * g1);
  r.annihilator_commutator = max_abs_entry(SparseOp(SparseOp(g1 * g2) - SparseOp(g2 * g1)));

  const bool same_alpha = a.alpha == b.alpha;
  const bool same_beta = a.beta == b.beta;
  Complex overlap(0.0);
  for (const auto& t : a.pairs) {
    for (const auto& u : b.pairs) {
      if (t.minus == u.minus && t.plus == u.plus) overlap += t.weight * std::conj(u.weight);
    }
  }
  r.assembled = zero_op(space.dimension());
  if (same_alpha && same_beta) r.assembled = overlap * space.identity();
  if (same_alpha) r.assembled -= h_plus(space, a, b);
  if (same_beta) r.assembled -= h_minus(space, a, b);
  r.assembly_error = max_abs_entry(SparseOp(r.commutator - r.assembled));
  return r;
}

Complex expectation(const SparseOp& op, const StateVec& state) { return state.dot(op * state); }

BoundCheck schwartz_bound_check(const StateVec& state, const SparseOp& h, const SparseOp& gamma1,
                                const SparseOp& gamma2) {
  BoundCheck b;
  b.lhs = std::abs(expectation(h, state));
  const double e1 = std::max(0.0, expectation(gamma1, state).real());
  const double e2 = std::max(0.0, expectation(gamma2, state).real());
  b.rhs = std::sqrt(e1 * e2);
  b.holds = b.lhs <= b.rhs + 1e-10;
  return b;
}

double operator_norm(const SparseOp& op) {
  if (op.rows() <= 1024 && op.cols() <= 1024) {
    const Eigen::MatrixXcd dense(op);
    const Eigen::MatrixXcd gram = dense.adjoint() * dense;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  std::mt19937_64 rng(0x0badcafe);
  std::normal_distribution<double> g;
  StateVec v(op.cols());
  for (auto& x : v) x = Complex(g(rng), g(rng));
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < 2000; ++it) {
    StateVec w = op.adjoint() * (op * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - estimate) <= 1e-13 * next) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return std::sqrt(estimate);
}

SectorShift sector_shift(const FockSpace& space, const SparseOp& op) {
  SectorShift s;
  bool first = true;
  for (int col = 0; col < op.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(op, col); it; ++it) {
      if (it.value() == Complex(0.0)) continue;
      const auto r = static_cast<std::uint32_t>(it.row());
      const auto c = static_cast<std::uint32_t>(it.col());
      const int dpsi = space.count(r, Field::psi) - space.count(c, Field::psi);
      const int dphi = space.count(r, Field::phi) - space.count(c, Field::phi);
      if (first) {
        s.d_psi = dpsi;
        s.d_phi = dphi;
        first = false;
      } else if (dpsi != s.d_psi || dphi != s.d_phi) {
        s.uniform = false;
      }
    }
  }
  return s;
}

SparseOp polarization_operator(const FockSpace& space, int i, const PairingTable& pairs,
                               const PolarizationFrame& frame) {
  Mat2 m;
  switch (i) {
    case 0: m = Mat2::Identity(); break;
    case 1: m = pauli::dot(frame.u1); break;
    case 2: m = pauli::dot(frame.u2); break;
    case 3: m = pauli::dot(frame.e); break;
    default: throw std::out_of_range("polarization_operator: index must be 0..3");
  }
  SparseOp out = zero_op(space.dimension());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (m(a, b) == Complex(0.0)) continue;
      out += m(a, b) * gamma_ab(space, {static_cast<Spin>(a), static_cast<Spin>(b), pairs});
    }
  }
  return out / std::numbers::sqrt2;
}

PolarizationReport polarization_boson_check(const FockSpace& space, std::span<const PolarizationInput> modes) {
  std::vector<std::array<SparseOp, 4>> ops;
  for (const auto& m : modes) {
    std::array<SparseOp, 4> g;
    for (int i = 0; i < 4; ++i) g[i] = polarization_operator(space, i, m.pairs, m.frame);
    ops.push_back(std::move(g));
  }
  std::vector<std::uint32_t> states;
  for (std::uint32_t s = 0; s < space.dimension(); ++s) {
    if (std::popcount(s) <= 2) states.push_back(s);
  }
  PolarizationReport r;
  r.deviation_by_particles.assign(3, 0.0);
  r.states_checked = states.size();
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const SparseOp bd = ops[b][j].adjoint();
          const SparseOp comm = SparseOp(ops[a][i] * bd) - SparseOp(bd * ops[a][i]);
          const double expected = (a == b && i == j) ? 1.0 : 0.0;
          for (const auto s : states) {
            const double dev = std::abs(comm.coeff(s, s) - expected);
            auto& slot = r.deviation_by_particles[std::popcount(s)];
            slot = std::max(slot, dev);
          }
        }
      }
    }
  }
  r.vacuum_deviation = r.deviation_by_particles[0];
  return r;
}

namespace {

void require_shared_size(const FockSpace& space, std::span<const Complex> f) {
  if (f.size() != 2 * space.momentum_count()) {
    throw std::invalid_argument("composite boson: expected one weight per (spin, momentum) pair");
  }
}

SparseOp weighted_numbers(const FockSpace& space, std::span<const Complex> f, Field field) {
  require_shared_size(space, f);
  const std::size_t offset = static_cast<std::size_t>(field) * f.size();
  SparseOp g = zero_op(space.dimension());
  for (std::size_t i = 0; i < f.size(); ++i) g += std::norm(f[i]) * space.number(offset + i);
  return g;
}

}  // namespace

SparseOp composite_boson(const FockSpace& space, std::span<const Complex> f) {
  require_shared_size(space, f);
  SparseOp c = zero_op(space.dimension());
  for (std::size_t i = 0; i < f.size(); ++i) {
    c += f[i] * SparseOp(space.annihilator(i) * space.annihilator(f.size() + i));
  }
  return c;
}

SparseOp gamma_psi(const FockSpace& space, std::span<const Complex> f) {
  return weighted_numbers(space, f, Field::psi);
}

SparseOp gamma_phi(const FockSpace& space, std::span<const Complex> f) {
  return weighted_numbers(space, f, Field::phi);
}

double purity(std::span<const Complex> f) {
  double p = 0.0;
  for (const auto& w : f) p += std::norm(w) * std::norm(w);
  return p;
}

StateVec composite_power(const SparseOp& c, const StateVec& vacuum, int n) {
  const SparseOp cd = c.adjoint();
  StateVec v = vacuum;
  for (int i = 0; i < n; ++i) v = cd * v;
  return v;
}

StateVec composite_state(const SparseOp& c, const StateVec& vacuum, int n) {
  const StateVec v = composite_power(c, vacuum, n);
  const double norm = v.norm();
  if (norm == 0.0) {
    throw SaturationError("composite_state: (c^dagger)^" + std::to_string(n) + "|0> vanishes (Pauli blocking)");
  }
  return v / norm;
}

CompositeReport composite_boson_suite(const FockSpace& space, std::span<const Complex> f1,
                                      std::span<const Complex> f2, int n_max) {
  require_shared_size(space, f1);
  require_shared_size(space, f2);
  const SparseOp c1 = composite_boson(space, f1);
  const SparseOp c2 = composite_boson(space, f2);
  const SparseOp c1d = c1.adjoint();
  const SparseOp c2d = c2.adjoint();
  const SparseOp g_psi = gamma_psi(space, f1);
  const SparseOp g_phi = gamma_phi(space, f1);
  const SparseOp id = space.identity();

  CompositeReport r;
  r.purity = purity(f1);
  const SparseOp self = SparseOp(c1 * c1d) - SparseOp(c1d * c1);
  r.commutator_error = max_abs_entry(SparseOp(self - (id - g_psi - g_phi)));

  const SparseOp cross = SparseOp(c1 * c2d) - SparseOp(c2d * c1);
  Complex overlap(0.0);
  SparseOp mixed = zero_op(space.dimension());
  const std::size_t shared = f1.size();
  for (std::size_t i = 0; i < shared; ++i) {
    const Complex w = f1[i] * std::conj(f2[i]);
    overlap += w;
    mixed += w * SparseOp(space.number(i) + space.number(shared + i));
  }
  r.orthogonal_error = max_abs_entry(SparseOp(cross - (overlap * id - mixed)));

  const StateVec vac = space.vacuum();
  for (int n = 1; n <= n_max; ++n) {
    const StateVec state = composite_state(c1, vac, n);
    CompositeLevel l;
    l.n = n;
    l.gamma_psi = expectation(g_psi, state).real();
    l.lower = r.purity;
    l.upper = n * r.purity;
    l.cross_commutator = std::abs(expectation(cross, state));
    l.cross_bound = 2.0 * n * r.purity;
    r.levels.push_back(l);
  }
  return r;
}

std::vector<Wavevector> line_momenta(const Wavevector& base, double step, std::size_t count) {
  std::vector<Wavevector> out;
  const double centre = (static_cast<double>(count) - 1.0) / 2.0;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(base + Wavevector((static_cast<double>(j) - centre) * step, 0.0, 0.0));
  }
  return out;
}

}  // namespace qcalab
