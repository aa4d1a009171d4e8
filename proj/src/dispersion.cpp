#include "qcalab/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qcalab/weyl_kernel.hpp"

namespace qcalab {

namespace mp = boost::multiprecision;
using Real50 = mp::cpp_bin_float_50;

double omega(const Wavevector& k, Chirality sign) { return 2.0 * bloch_data(k.half(), sign).lambda; }

namespace {

void require_nondegenerate(const Wavevector& k, Chirality sign, const char* who) {
  if (bloch_data(k.half(), sign).n.norm() < kDegenerateTolerance) {
    throw DegeneratePointError(std::string(who) + ": n_{k/2} vanishes");
  }
}

double central(const Wavevector& k, Chirality sign, int axis, double h) {
  Vec3 dk = Vec3::Zero();
  dk[axis] = h;
  return (omega(k + Wavevector(dk), sign) - omega(k - Wavevector(dk), sign)) / (2.0 * h);
}

// Speed sqrt3 |grad omega| from the closed forms in scalar type T.
template <class T>
T speed_at(const std::array<T, 3>& k, Chirality sign) {
  using std::sqrt;
  const std::array<T, 3> p{k[0] / 2, k[1] / 2, k[2] / 2};
  const auto core = detail::bloch_core<T>(p, sign);
  const T nt = sqrt(core.n_tilde[0] * core.n_tilde[0] + core.n_tilde[1] * core.n_tilde[1] +
                    core.n_tilde[2] * core.n_tilde[2]);
  const T g2 = core.grad_d[0] * core.grad_d[0] + core.grad_d[1] * core.grad_d[1] + core.grad_d[2] * core.grad_d[2];
  return sqrt(T(3)) * sqrt(g2) / nt;
}

// Coefficient g with c(k) - 1 = -+ g |k| at first order (upper sign A^+).
double first_order_coefficient(const Vec3& dir, Chirality sign) {
  return sign_of(sign) * dir.x() * dir.y() * dir.z() / std::numbers::sqrt3;
}

}  // namespace

Vec3 group_velocity(const Wavevector& k, Chirality sign) {
  require_nondegenerate(k, sign, "group_velocity");
  const double h = std::min(1e-5, 1e-3 * k.norm());
  Vec3 g;
  for (int a = 0; a < 3; ++a) {
    g[a] = (4.0 * central(k, sign, a, h / 2.0) - central(k, sign, a, h)) / 3.0;
  }
  return g;
}

Vec3 group_velocity_analytic(const Wavevector& k, Chirality sign) {
  const Wavevector p = k.half();
  const auto core = detail::bloch_core<double>({p.x(), p.y(), p.z()}, sign);
  const Vec3 nt(core.n_tilde[0], core.n_tilde[1], core.n_tilde[2]);
  if (nt.norm() < kDegenerateTolerance) throw DegeneratePointError("group_velocity_analytic: n_{k/2} vanishes");
  return -Vec3(core.grad_d[0], core.grad_d[1], core.grad_d[2]) / nt.norm();
}

DispersionPoint dispersion_point(const Wavevector& k, Chirality sign) {
  DispersionPoint p;
  p.k = k;
  p.omega = omega(k, sign);
  p.group_velocity = group_velocity(k, sign);
  p.speed = p.group_velocity.norm();
  return p;
}

double speed_of_light(double k_magnitude, Chirality sign) {
  const double c = k_magnitude / std::numbers::sqrt3;
  return std::numbers::sqrt3 * group_velocity(Wavevector(c, c, c), sign).norm();
}

SpeedExpansion speed_expansion(const Wavevector& k, Chirality sign) {
  SpeedExpansion s;
  s.k = k;
  s.exact = std::numbers::sqrt3 * group_velocity(k, sign).norm();
  const double kk = k.norm();
  const Vec3 dir = k.vec() / kk;
  s.first_order = 1.0 - first_order_coefficient(dir, sign) * kk;
  s.expanded = 1.0 - sign_of(sign) * 3.0 * k.x() * k.y() * k.z() / (kk * kk);
  const double dev_exact = s.exact - 1.0;
  const double dev_expanded = s.expanded - 1.0;
  s.disagrees = std::abs(dev_expanded - dev_exact) > 0.2 * std::abs(dev_exact);
  return s;
}

double energy_to_k(double energy_ev, const UnitSystem& units) {
  return units.lattice_spacing_factor * units.planck_length * energy_ev / (units.hbar * units.c());
}

std::vector<FlightRow> time_of_flight_delta(const FlightScenario& scenario, const UnitSystem& units) {
  if (!(scenario.distance > 0.0)) throw std::invalid_argument("time_of_flight_delta: distance must be positive");
  const Vec3 dir = scenario.direction.normalized();
  std::vector<double> ks;
  std::vector<Real50> inv_speed;
  for (const auto& [label, e] : scenario.photon_energies) {
    if (!(e > 0.0)) throw std::invalid_argument("time_of_flight_delta: energy of '" + label + "' must be positive");
    const double k = energy_to_k(e, units);
    if ((k * dir).cwiseAbs().maxCoeff() > kCellHalfWidth) {
      throw std::out_of_range("time_of_flight_delta: energy of '" + label + "' lies outside the Brillouin cell");
    }
    ks.push_back(k);
    const std::array<Real50, 3> kv{Real50(k) * Real50(dir.x()), Real50(k) * Real50(dir.y()),
                                   Real50(k) * Real50(dir.z())};
    inv_speed.push_back(Real50(1) / speed_at<Real50>(kv, scenario.chirality));
  }
  const Real50 d_over_c = Real50(scenario.distance) / Real50(units.c());
  const double g = first_order_coefficient(dir, scenario.chirality);
  const double g_expanded = sign_of(scenario.chirality) * 3.0 * dir.x() * dir.y() * dir.z();
  std::vector<FlightRow> rows;
  const auto& list = scenario.photon_energies;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      FlightRow r;
      r.label1 = list[i].first;
      r.label2 = list[j].first;
      r.energy1 = list[i].second;
      r.energy2 = list[j].second;
      r.k1 = ks[i];
      r.k2 = ks[j];
      r.delta_t = static_cast<double>(d_over_c * (inv_speed[i] - inv_speed[j]));
      // 1/c ~ 1 + g |k| at first order.
      const double dc = static_cast<double>(d_over_c);
      r.delta_t_first = dc * g * (r.k1 - r.k2);
      r.delta_t_expanded = dc * g_expanded * (r.k1 - r.k2);
      rows.push_back(r);
    }
  }
  return rows;
}

double tilt_angle_estimate(double k_magnitude) { return 2.0 * k_magnitude; }

SaturationEstimate saturation_estimate(double photon_count, double volume_cm3, const UnitSystem& units) {
  const double cell = std::pow(units.lattice_spacing_factor * units.planck_length, 3);
  SaturationEstimate s;
  s.fermionic_modes = 4.0 * (volume_cm3 * 1e-6) / cell;
  s.occupancy_ratio = photon_count / s.fermionic_modes;
  return s;
}

double omega_to_si(double omega, const UnitSystem& units) { return omega / units.planck_time; }
double omega_from_si(double omega_si, const UnitSystem& units) { return omega_si * units.planck_time; }
double k_to_si(double k, const UnitSystem& units) {
  return k / (units.lattice_spacing_factor * units.planck_length);
}
double k_from_si(double k_si, const UnitSystem& units) {
  return k_si * units.lattice_spacing_factor * units.planck_length;
}

}  // namespace qcalab
