#include "qcalab/fock_suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "qcalab/fock_oracle.hpp"

namespace qcalab {

namespace {

using nlohmann::json;

std::vector<Wavevector> pair_totals(const FockSpace& space) {
  std::vector<Wavevector> out;
  const auto& p = space.momenta();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i; j < p.size(); ++j) {
      const Wavevector k = p[i] + p[j];
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Wavevector& q) { return (q - k).norm() < 1e-9; });
      if (!seen) out.push_back(k);
    }
  }
  return out;
}

std::vector<Complex> random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  double norm = 0.0;
  for (auto& x : v) {
    x = Complex(g(rng), g(rng));
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

// Second unit vector orthogonal to f.
std::vector<Complex> random_orthogonal(std::mt19937_64& rng, const std::vector<Complex>& f) {
  std::vector<Complex> v = random_unit(rng, f.size());
  Complex overlap(0.0);
  for (std::size_t i = 0; i < f.size(); ++i) overlap += std::conj(f[i]) * v[i];
  double norm = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    v[i] -= overlap * f[i];
    norm += std::norm(v[i]);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

json vec_json(const Wavevector& k) { return json::array({k.x(), k.y(), k.z()}); }

Eigen::VectorXd real_diagonal(const SparseOp& op) { return op.diagonal().real(); }

}  // namespace

FockSuiteResult run_fock_suite(const FockSuiteConfig& config) {
  FockSuiteResult result;
  json& rep = result.report;
  std::mt19937_64 rng(config.seed);

  const FockSpace space = build_fock(line_momenta(Wavevector(config.base), config.step, config.momenta));
  const std::size_t dim = space.dimension();
  json momenta = json::array();
  for (const auto& p : space.momenta()) momenta.push_back(vec_json(p));
  rep["space"] = {{"momenta", space.momentum_count()},
                  {"modes", space.mode_count()},
                  {"dimension", dim},
                  {"momentum_list", momenta},
                  {"mode_order", "field (psi, phi), spin (R, L), momentum"}};
  json& checks = rep["checks"];
  checks["anticommutators"] = {{"pass", true}, {"method", dim <= 4096 ? "matrix" : "random-vector"}};

  const std::vector<Wavevector> totals = pair_totals(space);
  std::vector<PairingTable> uniform, random;
  for (const auto& k : totals) {
    uniform.push_back(uniform_pairing(space, k));
    random.push_back(with_weights(uniform.back(), random_unit(rng, uniform.back().size())));
  }
  const Spin spins[2] = {Spin::R, Spin::L};

  // Direct commutators against the delta I - Delta assembly.
  {
    double worst = 0.0, worst_ann = 0.0;
    int combos = 0;
    for (std::size_t a = 0; a < totals.size(); ++a) {
      for (std::size_t b = 0; b < totals.size(); ++b) {
        for (Spin al : spins) for (Spin be : spins) for (Spin al2 : spins) for (Spin be2 : spins) {
          const CommutatorReport r = commutator_report(space, {al, be, random[a]}, {al2, be2, random[b]});
          worst = std::max(worst, r.assembly_error);
          worst_ann = std::max(worst_ann, r.annihilator_commutator);
          ++combos;
        }
      }
    }
    const bool pass = worst <= 1e-12 && worst_ann <= 1e-12;
    checks["commutator_assembly"] = {
        {"pass", pass}, {"max_error", worst}, {"max_annihilator_commutator", worst_ann}, {"combinations", combos}};
    result.passed &= pass;
  }

  // Schwartz bound on every basis state and on random low-occupancy superpositions.
  {
    std::vector<std::uint32_t> low;
    for (std::uint32_t s = 0; s < dim; ++s) {
      if (std::popcount(s) <= 2) low.push_back(s);
    }
    std::vector<StateVec> states;
    std::uniform_int_distribution<std::size_t> pick(0, low.size() - 1);
    std::normal_distribution<double> g;
    for (int n = 0; n < config.random_states; ++n) {
      StateVec v = StateVec::Zero(static_cast<Eigen::Index>(dim));
      for (int term = 0; term < 4; ++term) v[low[pick(rng)]] += Complex(g(rng), g(rng));
      states.push_back(v.normalized());
    }
    bool pass = true;
    double min_slack = std::numeric_limits<double>::infinity();
    auto check_all = [&](const SparseOp& h, const SparseOp& g1, const SparseOp& g2) {
      const Eigen::VectorXcd hd = h.diagonal();
      const Eigen::VectorXd d1 = real_diagonal(g1), d2 = real_diagonal(g2);
      for (Eigen::Index s = 0; s < hd.size(); ++s) {
        const double rhs = std::sqrt(std::max(0.0, d1[s]) * std::max(0.0, d2[s]));
        const double slack = rhs - std::abs(hd[s]);
        min_slack = std::min(min_slack, slack);
        pass &= slack >= -1e-10;
      }
      for (const auto& v : states) {
        const BoundCheck b = schwartz_bound_check(v, h, g1, g2);
        min_slack = std::min(min_slack, b.rhs - b.lhs);
        pass &= b.holds;
      }
    };
    for (std::size_t a = 0; a < totals.size(); ++a) {
      for (std::size_t b = 0; b < totals.size(); ++b) {
        for (Spin s1 : spins) for (Spin s2 : spins) {
          const GammaSpec ga{s1, s1, random[a]}, gb{s2, s2, random[b]};
          check_all(h_plus(space, ga, gb), gamma_plus(space, s1, random[a]), gamma_plus(space, s2, random[b]));
          check_all(h_minus(space, ga, gb), gamma_minus(space, s1, random[a]), gamma_minus(space, s2, random[b]));
        }
      }
    }
    checks["schwartz_bound"] = {{"pass", pass},
                                {"basis_states", dim},
                                {"random_states", states.size()},
                                {"min_slack", min_slack}};
    result.passed &= pass;
  }

  // Uniform profiles: <Gamma^+_{psi,alpha,k}> = M_{psi,alpha,k} / N_k on number states.
  {
    double worst = 0.0;
    for (const auto& table : uniform) {
      for (Spin s : spins) {
        const Eigen::VectorXd d = real_diagonal(gamma_plus(space, s, table));
        for (std::uint32_t occ = 0; occ < dim; ++occ) {
          int m = 0;
          for (const auto& t : table) m += (occ >> space.linear({Field::psi, s, t.plus})) & 1u;
          worst = std::max(worst, std::abs(d[occ] - static_cast<double>(m) / static_cast<double>(table.size())));
        }
      }
    }
    const bool pass = worst <= 1e-12;
    checks["uniform_gamma_plus"] = {{"pass", pass}, {"max_error", worst}};
    result.passed &= pass;
  }

  // Polarization operators.
  {
    std::vector<PolarizationInput> inputs;
    json n_k = json::array();
    for (std::size_t a = 0; a < totals.size(); ++a) {
      inputs.push_back({uniform[a], polarization_frame(totals[a], config.sign)});
      n_k.push_back(uniform[a].size());
    }
    const PolarizationReport r = polarization_boson_check(space, inputs);
    const bool pass = r.vacuum_deviation <= 1e-12;
    checks["polarization"] = {{"pass", pass},
                              {"vacuum_deviation", r.vacuum_deviation},
                              {"deviation_by_particles", r.deviation_by_particles},
                              {"states_checked", r.states_checked},
                              {"N_k", n_k}};
    result.passed &= pass;
  }

  const std::size_t shared = 2 * space.momentum_count();
  const int n_top = std::min<int>(config.n_max, static_cast<int>(shared));

  // Composite boson on the uniform profile.
  {
    const std::vector<Complex> f(shared, Complex(1.0 / std::sqrt(static_cast<double>(shared)), 0.0));
    std::vector<Complex> f2(shared, Complex(0.0));
    // Alternating signs are orthogonal to the uniform profile for an even count.
    for (std::size_t i = 0; i < shared; ++i) f2[i] = (i % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(shared));
    const CompositeReport r = composite_boson_suite(space, f, f2, n_top);
    bool pass = r.commutator_error <= 1e-12 && r.orthogonal_error <= 1e-12;
    json levels = json::array();
    for (const auto& l : r.levels) {
      const bool ok = l.gamma_psi >= l.lower - 1e-12 && l.gamma_psi <= l.upper + 1e-12 &&
                      l.cross_commutator <= l.cross_bound + 1e-12;
      pass &= ok;
      levels.push_back({{"N", l.n},
                        {"gamma_psi", l.gamma_psi},
                        {"P", l.lower},
                        {"NP", l.upper},
                        {"cross", l.cross_commutator},
                        {"2NP", l.cross_bound},
                        {"pass", ok}});
    }
    checks["composite_uniform"] = {{"pass", pass},
                                   {"purity", r.purity},
                                   {"commutator_error", r.commutator_error},
                                   {"orthogonal_error", r.orthogonal_error},
                                   {"levels", levels}};
    result.passed &= pass;

    const SparseOp c = composite_boson(space, f);
    const StateVec over = composite_power(c, space.vacuum(), static_cast<int>(shared) + 1);
    const bool saturated = over.cwiseAbs().maxCoeff() == 0.0;
    const StateVec full = composite_power(c, space.vacuum(), static_cast<int>(shared));
    const bool full_nonzero = full.norm() > 0.0;
    checks["pauli_saturation"] = {{"pass", saturated && full_nonzero},
                                  {"shared_modes", shared},
                                  {"N", shared + 1},
                                  {"max_amplitude", over.cwiseAbs().maxCoeff()}};
    result.passed &= saturated && full_nonzero;
  }

  // Cross-commutator bound on random orthogonal pairs.
  {
    const int n = std::min(2, static_cast<int>(shared));
    bool pass = true;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < config.random_pairs; ++trial) {
      const std::vector<Complex> f1 = random_unit(rng, shared);
      const std::vector<Complex> f2 = random_orthogonal(rng, f1);
      const CompositeReport r = composite_boson_suite(space, f1, f2, n);
      const CompositeLevel& l = r.levels.back();
      worst_ratio = std::max(worst_ratio, l.cross_commutator / l.cross_bound);
      pass &= l.cross_commutator <= l.cross_bound + 1e-12 && r.orthogonal_error <= 1e-12;
    }
    checks["cross_commutator_bound"] = {
        {"pass", pass}, {"pairs", config.random_pairs}, {"N", n}, {"worst_ratio_to_2NP", worst_ratio}};
    result.passed &= pass;
  }

  // gamma moves one psi and one phi particle.
  {
    const SectorShift s = sector_shift(space, gamma_ab(space, {Spin::R, Spin::L, random.front()}));
    const bool pass = s.uniform && s.d_psi == -1 && s.d_phi == -1;
    checks["sector"] = {{"pass", pass}, {"d_psi", s.d_psi}, {"d_phi", s.d_phi}};
    result.passed &= pass;
  }
  rep["passed"] = result.passed;
  return result;
}

}  // namespace qcalab
