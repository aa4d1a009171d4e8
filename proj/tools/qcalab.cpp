// qcalab: sweeps, convergence studies and oracle suites for the Weyl automaton
// theory of light. Every artifact starts with a '#'-prefixed JSON header that
// echoes the effective config and seed.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcalab/artifact_io.hpp"
#include "qcalab/dispersion.hpp"
#include "qcalab/em_bilinear.hpp"
#include "qcalab/fock_oracle.hpp"
#include "qcalab/fock_suite.hpp"
#include "qcalab/numerics.hpp"
#include "qcalab/weyl_kernel.hpp"

using nlohmann::json;
using namespace qcalab;

namespace {

enum Exit { kOk = 0, kCheckFailure = 1, kConfigError = 2, kIoError = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sign;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--out", c.out, "output path (stdout if omitted)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--sign", c.sign, "automaton chirality")->check(CLI::IsMember({"plus", "minus"}));
  sub->add_option("--threads", c.threads, "worker threads (default: QCALAB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

// Defaults, then file values (unknown keys rejected), then flags.
json effective_config(const json& defaults, const Common& c) {
  json cfg = defaults;
  const json file = load_config(c.config_path);
  for (auto it = file.begin(); it != file.end(); ++it) {
    if (!defaults.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    cfg[it.key()] = it.value();
  }
  if (c.seed) cfg["seed"] = *c.seed;
  if (c.sign) cfg["sign"] = *c.sign;
  return cfg;
}

template <class T>
T get(const json& cfg, const char* key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

Chirality parse_sign(const std::string& s) {
  if (s == "plus") return Chirality::plus;
  if (s == "minus") return Chirality::minus;
  throw ConfigError("sign must be 'plus' or 'minus', got '" + s + "'");
}

Wavevector get_vec(const json& cfg, const char* key) {
  const auto v = get<std::vector<double>>(cfg, key);
  if (v.size() != 3) throw ConfigError(std::string("config key '") + key + "' must have 3 components");
  return Wavevector(v[0], v[1], v[2]);
}

json header(const std::string& command, const json& cfg, json summary) {
  return {{"artifact", "qcalab"},
          {"version", kArtifactVersion},
          {"command", command},
          {"config", cfg},
          {"seed", cfg.at("seed")},
          {"summary", std::move(summary)}};
}

unsigned thread_count(const Common& c) { return c.threads ? *c.threads : default_thread_count(); }

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

int cmd_dispersion(const Common& c) {
  const json cfg = effective_config({{"seed", 0}, {"sign", "plus"}, {"min", -0.5}, {"max", 0.5}, {"points", 5}}, c);
  const double lo = get<double>(cfg, "min"), hi = get<double>(cfg, "max");
  const int n = get<int>(cfg, "points");
  if (n < 1 || !(hi >= lo)) throw ConfigError("dispersion: need points >= 1 and max >= min");
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);

  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  std::vector<std::array<double, 7>> rows(total);
  parallel_for(total, thread_count(c), [&](std::size_t idx) {
    const Wavevector k(axis[idx / (n * n)], axis[(idx / n) % n], axis[idx % n]);
    auto& r = rows[idx];
    r = {k.x(), k.y(), k.z(), omega(k, Chirality::plus), omega(k, Chirality::minus), nan(), nan()};
    // |v_g| is undefined at the cone tip.
    try {
      r[5] = group_velocity(k, Chirality::plus).norm();
    } catch (const DegeneratePointError&) {
    }
    try {
      r[6] = group_velocity(k, Chirality::minus).norm();
    } catch (const DegeneratePointError&) {
    }
  });
  CsvTable table({"kx", "ky", "kz", "omega_plus", "omega_minus", "vg_plus", "vg_minus"});
  for (const auto& r : rows) table.add_row({r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
  const json summary = {{"units", "adimensional Planck units; vg in lattice units, sqrt3*vg is the speed in units of c"},
                        {"rows", total}};
  write_text(c.out, table.render(header("dispersion", cfg, summary)));
  return kOk;
}

int cmd_maxwell(const Common& c) {
  const json defaults = {{"seed", 0},
                         {"sign", "plus"},
                         {"k", {0.4, 0.3, 0.2}},
                         {"t", 100},
                         {"radii", {0.004, 0.002, 0.001, 0.0005, 0.00025}},
                         {"cells_per_radius", 2}};
  const json cfg = effective_config(defaults, c);
  const Wavevector k = get_vec(cfg, "k");
  const long t = get<long>(cfg, "t");
  const auto radii = get<std::vector<double>>(cfg, "radii");
  const int cells = get<int>(cfg, "cells_per_radius");
  const Chirality sign = parse_sign(get<std::string>(cfg, "sign"));
  if (t < 1 || cells < 1 || radii.empty()) throw ConfigError("maxwell-convergence: need t >= 1, cells >= 1, radii");

  // Row 0 is the single-point profile; the rest follow the radius sweep.
  std::vector<SmearingProfile> profiles{make_uniform_profile(k, 1.0, 2.0)};
  for (double r : radii) {
    if (!(r > 0)) throw ConfigError("maxwell-convergence: radii must be positive");
    profiles.push_back(make_uniform_profile(k, r, r / cells));
  }
  std::vector<MaxwellReport> reports(profiles.size());
  std::vector<GeneratorCheck> gens(profiles.size());
  parallel_for(profiles.size(), thread_count(c), [&](std::size_t i) {
    reports[i] = maxwell_emergence_report(profiles[i], k, sign, t);
    gens[i] = generator_check(profiles[i], k, sign, t);
  });

  CsvTable table({"qbar", "points", "residual", "generator_residual", "tilt", "axis_angle_to_k"});
  std::vector<double> qs, res;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    table.add_row({r.qbar, static_cast<long long>(profiles[i].size()), r.residual_transverse,
                   gens[i].residual_discrete, r.tilt_angle, r.axis_angle_to_k});
    if (i > 0) {
      qs.push_back(r.qbar);
      res.push_back(r.residual_transverse);
    }
  }
  const double slope = qs.size() >= 2 ? loglog_slope(qs, res) : nan();
  const double single = reports.front().residual_transverse;
  const bool ok = single <= 1e-10 && (qs.size() < 2 || std::abs(slope - 1.0) <= 0.15);
  const double kk = k.norm();
  const json summary = {{"slope", slope},
                        {"single_point_residual", single},
                        {"n_half_norm", bloch_data(k.half(), sign).n.norm()},
                        {"tilt_estimate_2k", tilt_angle_estimate(kk)},
                        {"checks_pass", ok}};
  write_text(c.out, table.render(header("maxwell-convergence", cfg, summary)));
  return ok ? kOk : kCheckFailure;
}

int cmd_fock(const Common& c) {
  const json defaults = {{"seed", 1},
                         {"sign", "plus"},
                         {"momenta", 2},
                         {"base", {0.3, 0.2, 0.1}},
                         {"step", 0.1},
                         {"random_pairs", 1000},
                         {"random_states", 200},
                         {"n_max", 3}};
  const json cfg = effective_config(defaults, c);
  FockSuiteConfig fc;
  const int m = get<int>(cfg, "momenta");
  if (m < 0) throw ConfigError("fock-suite: momenta must be non-negative");
  fc.momenta = static_cast<std::size_t>(m);
  fc.base = get_vec(cfg, "base").vec();
  fc.step = get<double>(cfg, "step");
  fc.sign = parse_sign(get<std::string>(cfg, "sign"));
  fc.seed = get<std::uint64_t>(cfg, "seed");
  fc.random_pairs = get<int>(cfg, "random_pairs");
  fc.random_states = get<int>(cfg, "random_states");
  fc.n_max = get<int>(cfg, "n_max");
  FockSuiteResult r;
  try {
    r = run_fock_suite(fc);
  } catch (const FockSizeError& e) {
    throw ConfigError(e.what());
  }
  json out = header("fock-suite", cfg, {{"passed", r.passed}});
  out["report"] = r.report;
  write_text(c.out, out.dump(2) + "\n");
  return r.passed ? kOk : kCheckFailure;
}

int cmd_flight(const Common& c) {
  const json defaults = {{"seed", 0},
                         {"sign", "plus"},
                         {"distance_m", 3.0856775814913673e25},  // 1 Gpc
                         {"direction", {1.0, 1.0, 1.0}},
                         {"energies", json::array({{{"label", "GeV"}, {"ev", 1e9}}, {{"label", "MeV"}, {"ev", 1e6}}})}};
  const json cfg = effective_config(defaults, c);
  FlightScenario s;
  s.distance = get<double>(cfg, "distance_m");
  s.direction = get_vec(cfg, "direction").vec();
  s.chirality = parse_sign(get<std::string>(cfg, "sign"));
  if (s.direction.norm() == 0.0) throw ConfigError("flight: direction must be nonzero");
  try {
    for (const auto& e : cfg.at("energies")) s.photon_energies.emplace_back(e.at("label").get<std::string>(), e.at("ev").get<double>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("flight: energies: ") + e.what());
  }
  const UnitSystem units;
  std::vector<FlightRow> rows;
  try {
    rows = time_of_flight_delta(s, units);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }
  CsvTable table({"label1", "label2", "energy1_ev", "energy2_ev", "k1", "k2", "delta_t_s", "delta_t_first_order_s",
                  "delta_t_expanded_s"});
  for (const auto& r : rows) {
    table.add_row({r.label1, r.label2, r.energy1, r.energy2, r.k1, r.k2, r.delta_t, r.delta_t_first,
                   r.delta_t_expanded});
  }
  const json summary = {
      {"convention", "k = sqrt3 * l_P * E / (hbar c); delta_t = D/c * (1/c(k1) - 1/c(k2)), flat static distance"},
      {"planck_length_m", units.planck_length},
      {"planck_time_s", units.planck_time},
      {"hbar_ev_s", units.hbar}};
  write_text(c.out, table.render(header("flight", cfg, summary)));
  return kOk;
}

int cmd_tilt(const Common& c) {
  const json defaults = {{"seed", 0},
                         {"sign", "minus"},
                         {"k", {0.01, 0.02, 0.05, 0.1}},
                         {"direction", {1.0, 1.0, 1.0}},
                         {"t", 10},
                         {"gamma_ray_ev", 1e12}};
  const json cfg = effective_config(defaults, c);
  const auto ks = get<std::vector<double>>(cfg, "k");
  const Vec3 dir = get_vec(cfg, "direction").vec();
  const long t = get<long>(cfg, "t");
  const Chirality sign = parse_sign(get<std::string>(cfg, "sign"));
  if (dir.norm() == 0.0 || t < 0) throw ConfigError("tilt: need nonzero direction and t >= 0");
  CsvTable table({"k", "tilt_exact", "tilt_estimate", "ratio", "axis_angle_to_k"});
  for (double km : ks) {
    if (!(km > 0)) throw ConfigError("tilt: k values must be positive");
    const Wavevector k(Vec3(km * dir.normalized()));
    const MaxwellReport r = maxwell_emergence_report(make_uniform_profile(k, 1.0, 2.0), k, sign, t);
    const double est = tilt_angle_estimate(km);
    table.add_row({km, r.tilt_angle, est, r.tilt_angle / est, r.axis_angle_to_k});
  }
  const UnitSystem units;
  const double kg = energy_to_k(get<double>(cfg, "gamma_ray_ev"), units);
  const json summary = {{"gamma_ray_k", kg}, {"gamma_ray_tilt_estimate", tilt_angle_estimate(kg)}};
  write_text(c.out, table.render(header("tilt", cfg, summary)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl quantum cellular automaton laboratory"};
  app.require_subcommand(1);
  Common common;
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Common&);
  };
  const Entry entries[] = {{"dispersion", "omega and |v_g| over a cubic k grid", cmd_dispersion},
                           {"maxwell-convergence", "transverse residual against profile radius", cmd_maxwell},
                           {"fock-suite", "exact Fock-space commutator and bound checks", cmd_fock},
                           {"flight", "time-of-flight differences for photon energy pairs", cmd_flight},
                           {"tilt", "polarization-plane tilt against 2k", cmd_tilt}};
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, common);
    subs.emplace_back(sub, &e);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  try {
    for (const auto& [sub, entry] : subs) {
      if (sub->parsed()) return entry->run(common);
    }
  } catch (const IoError& e) {
    std::cerr << "qcalab: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    std::cerr << "qcalab: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcalab: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegeneratePointError& e) {
    std::cerr << "qcalab: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "qcalab: " << e.what() << '\n';
    return kCheckFailure;
  }
  return kConfigError;
}
