#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcalab/types.hpp"

namespace qcalab {

/// Planck units. One automaton step is t_P and one lattice link is sqrt3 l_P,
/// so a photon of physical wavenumber k_phys has adimensional k = sqrt3 l_P k_phys.
struct UnitSystem {
  double planck_length = 1.616255e-35;  // m
  double planck_time = 5.391247e-44;    // s
  double hbar = 6.582119569e-16;        // eV s
  double lattice_spacing_factor = 1.7320508075688772;

  double c() const { return planck_length / planck_time; }
};

/// omega(k) = 2 |n_{k/2}| = 2 lambda_{k/2}.
double omega(const Wavevector& k, Chirality sign);

/// Gradient of omega by Richardson-extrapolated central differences. The step
/// is min(1e-5, 1e-3 |k|) so the stencil never straddles the cone tip at k = 0.
/// Throws DegeneratePointError where n_{k/2} vanishes.
Vec3 group_velocity(const Wavevector& k, Chirality sign);

/// Chain-rule gradient -grad d(k/2) / |n_tilde(k/2)|.
Vec3 group_velocity_analytic(const Wavevector& k, Chirality sign);

struct DispersionPoint {
  Wavevector k;
  double omega = 0.0;
  Vec3 group_velocity = Vec3::Zero();
  double speed = 0.0;
};

DispersionPoint dispersion_point(const Wavevector& k, Chirality sign);

/// sqrt3 |v_g| at k along the diagonal, |k| = k_magnitude.
double speed_of_light(double k_magnitude, Chirality sign);

/// Exact normalized speed against two small-k forms:
///   first_order = 1 -+ kx ky kz / (sqrt3 |k|^2)   (Taylor coefficient of the exact speed)
///   expanded    = 1 -+ 3 kx ky kz / |k|^2          (the quoted phenomenological form)
/// upper signs for A^+. `disagrees` flags |exact - expanded| deviations differing
/// by more than 20% relative to the exact deviation.
struct SpeedExpansion {
  Wavevector k;
  double exact = 1.0;
  double first_order = 1.0;
  double expanded = 1.0;
  bool disagrees = false;
};

SpeedExpansion speed_expansion(const Wavevector& k, Chirality sign);

/// Adimensional |k| of a photon of energy E: k = sqrt3 E t_P / hbar.
double energy_to_k(double energy_ev, const UnitSystem& units);

struct FlightScenario {
  double distance = 0.0;  // m
  std::vector<std::pair<std::string, double>> photon_energies;  // label, eV
  Chirality chirality = Chirality::minus;
  Vec3 direction = Vec3::Ones().normalized();
};

struct FlightRow {
  std::string label1, label2;
  double energy1 = 0.0, energy2 = 0.0;
  double k1 = 0.0, k2 = 0.0;
  double delta_t = 0.0;          ///< D (1/c(k1) - 1/c(k2)) / c, seconds
  double delta_t_first = 0.0;    ///< same from the first-order speed
  double delta_t_expanded = 0.0; ///< same from 1 -+ 3 kx ky kz / |k|^2
};

/// One row per unordered pair (i < j) of the scenario energies. Speeds are
/// evaluated in 50-digit arithmetic: at GeV scale 1 - c(k) is around 1e-19.
/// Throws std::out_of_range when a k component leaves the canonical cell and
/// std::invalid_argument for non-positive distance or energies.
std::vector<FlightRow> time_of_flight_delta(const FlightScenario& scenario, const UnitSystem& units);

/// Leading-order tilt of the polarization plane, 2k.
double tilt_angle_estimate(double k_magnitude);

struct SaturationEstimate {
  double fermionic_modes = 0.0;
  double occupancy_ratio = 0.0;
};

/// 2 fields x 2 spin components per BCC cell of volume (sqrt3 l_P)^3.
SaturationEstimate saturation_estimate(double photon_count, double volume_cm3, const UnitSystem& units);

double omega_to_si(double omega, const UnitSystem& units);      // rad/s
double omega_from_si(double omega_si, const UnitSystem& units);
double k_to_si(double k, const UnitSystem& units);              // 1/m
double k_from_si(double k_si, const UnitSystem& units);

}  // namespace qcalab
