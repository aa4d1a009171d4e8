// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcalab/dispersion.hpp"
#include "qcalab/em_bilinear.hpp"
#include "qcalab/fock_oracle.hpp"
#include "qcalab/fock_suite.hpp"
#include "qcalab/numerics.hpp"
#include "qcalab/weyl_kernel.hpp"

using namespace qcalab;

namespace {

constexpr double kR3 = std::numbers::sqrt3;
const Chirality kBoth[] = {Chirality::plus, Chirality::minus};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  std::mt19937_64 rng(101);
  double unit = 0, norm = 0, conj = 0;
  const Mat2 sy = oracle::pauli(2);
  for (int n = 0; n < 10000; ++n) {
    const Wavevector k(oracle::random_vec(rng, kCellHalfWidth));
    for (auto s : kBoth) {
      const WeylStep w = weyl_step(k, s);
      const Mat2& a = w.matrix;
      unit = std::max(unit, (a.adjoint() * a - Mat2::Identity()).norm());
      norm = std::max(norm, std::abs(w.bloch.d * w.bloch.d + w.bloch.n_tilde.squaredNorm() - 1));
      conj = std::max(conj, (a.conjugate() - sy * a * sy).norm());
    }
  }
  return {unit <= 1e-12 && norm <= 1e-12 && conj <= 1e-12,
          "max |A^dag A - I| " + fmt("%.2e", unit) + ", |d^2+|n~|^2-1| " + fmt("%.2e", norm) +
              ", |A* - sy A sy| " + fmt("%.2e", conj)};
}

Outcome ac2() {
  std::mt19937_64 rng(102);
  const Vec3 dir = oracle::random_dir(rng);
  std::vector<double> ks, dm, dp, dp_mirror;
  for (int i = 0; i <= 12; ++i) {
    const double kk = std::pow(10.0, -4.0 + 3.0 * i / 12.0);
    const Vec3 k = kk * dir;
    const Vec3 mirrored(k.x(), -k.y(), k.z());
    ks.push_back(kk);
    dm.push_back((weyl_step(Wavevector(k), Chirality::minus).matrix - oracle::expm_i(k / kR3)).norm());
    dp.push_back((weyl_step(Wavevector(k), Chirality::plus).matrix - oracle::expm_i(k / kR3)).norm());
    dp_mirror.push_back((weyl_step(Wavevector(k), Chirality::plus).matrix - oracle::expm_i(mirrored / kR3)).norm());
  }
  const double sm = loglog_slope(ks, dm), sp = loglog_slope(ks, dp), spm = loglog_slope(ks, dp_mirror);
  return {sm >= 1.9 && sp >= 1.9,
          "slope A- " + fmt("%.3f", sm) + ", A+ " + fmt("%.3f", sp) +
              " (A+ against exp(-i (kx,-ky,kz).sigma/sqrt3): " + fmt("%.3f", spm) +
              "; the A+ closed form has a y-mirrored small-k limit)"};
}

Outcome ac3() {
  bool pass = true;
  double worst_single = 0;
  for (auto s : kBoth) {
    for (const Wavevector k : {Wavevector(0.4, 0.3, 0.2), Wavevector(-0.7, 0.1, 0.5), Wavevector(1.1, -0.9, 0.3)}) {
      for (long t : {1L, 10L, 100L, 1000L}) {
        const auto r = maxwell_emergence_report(make_uniform_profile(k, 1.0, 2.0), k, s, t);
        worst_single = std::max(worst_single, r.residual_transverse);
      }
    }
  }
  pass &= worst_single <= 1e-10;
  std::string detail = "single-point residual " + fmt("%.2e", worst_single) + "; slopes";
  const Wavevector k(0.4, 0.3, 0.2);
  for (auto s : kBoth) {
    std::vector<double> q, res;
    for (double r : {0.004, 0.002, 0.001, 0.0005, 0.00025}) {
      const auto rep = maxwell_emergence_report(make_uniform_profile(k, r, r / 2), k, s, 100);
      q.push_back(rep.qbar);
      res.push_back(rep.residual_transverse);
    }
    const double slope = loglog_slope(q, res);
    pass &= std::abs(slope - 1.0) <= 0.15;
    detail += std::string(" ") + to_string(s) + " " + fmt("%.3f", slope);
  }
  return {pass, detail};
}

Outcome ac4() {
  bool pass = true;
  const Wavevector k(0.4, 0.3, 0.2);
  std::string detail;
  for (auto s : kBoth) {
    const double nn = bloch_data(k.half(), s).n.norm();
    const auto single = generator_check(make_uniform_profile(k, 1.0, 2.0), k, s, 100);
    std::vector<double> q, gen, ratio;
    for (double r : {0.004, 0.002, 0.001, 0.0005, 0.00025}) {
      const auto p = make_uniform_profile(k, r, r / 2);
      const auto g = generator_check(p, k, s, 100);
      const auto m = maxwell_emergence_report(p, k, s, 100);
      q.push_back(m.qbar);
      gen.push_back(g.residual_discrete);
      ratio.push_back(g.residual_discrete / (m.qbar / nn));
    }
    const double slope = loglog_slope(q, gen);
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    // O(qbar/|n|): slope one and a bounded, nearly constant prefactor.
    const bool ok = single.residual_discrete <= 1e-12 && std::abs(slope - 1) <= 0.15 && *hi <= 1.5 * *lo;
    pass &= ok;
    detail += std::string(to_string(s)) + ": single " + fmt("%.1e", single.residual_discrete) + ", slope " +
              fmt("%.3f", slope) + ", residual/(qbar/|n|) in [" + fmt("%.3g", *lo) + ", " + fmt("%.3g", *hi) +
              "], continuum single " + fmt("%.2e", single.residual_continuum) + "; ";
  }
  return {pass, detail};
}

Outcome ac5() {
  std::mt19937_64 rng(105);
  double worst_omega = 0;
  for (int n = 0; n < 1000; ++n) {
    const Vec3 k = 1e-3 * oracle::random_dir(rng);
    for (auto s : kBoth) worst_omega = std::max(worst_omega, std::abs(omega(Wavevector(k), s) * kR3 / 1e-3 - 1));
  }
  const double k = 1e-2;
  const double dp = speed_of_light(k, Chirality::plus) - 1;
  const double dm = speed_of_light(k, Chirality::minus) - 1;
  const bool opposite = dp * dm < 0;
  const double target = k / kR3;
  const bool magnitude = std::abs(std::abs(dp) - target) <= 0.1 * target && std::abs(std::abs(dm) - target) <= 0.1 * target;
  double worst_grad = 0;
  int used = 0;
  while (used < 1000) {
    const Wavevector kv(oracle::random_vec(rng, 4.0));
    const auto s = used % 2 ? Chirality::plus : Chirality::minus;
    if (bloch_data(kv.half(), s).n.norm() < 0.05) continue;
    const Vec3 an = group_velocity_analytic(kv, s);
    worst_grad = std::max(worst_grad, (group_velocity(kv, s) - an).norm() / an.norm());
    ++used;
  }
  const bool pass = worst_omega <= 1e-4 && opposite && magnitude && worst_grad <= 1e-6;
  return {pass, "omega rel err " + fmt("%.2e", worst_omega) + "; c+ - 1 = " + fmt("%.4e", dp) + ", c- - 1 = " +
                    fmt("%.4e", dm) + " (opposite: " + (opposite ? "yes" : "no") + "), k/sqrt3 = " +
                    fmt("%.4e", target) + ", exact first order k/9 = " + fmt("%.4e", k / 9) +
                    " (factor 3 sqrt3 below k/sqrt3); gradient rel err " + fmt("%.2e", worst_grad)};
}

// A+_k = A-_{(kx,-ky,kz)}, so the A+ tilt against its mirrored momentum is the
// A- tilt; A- along the diagonal is evaluated.
Outcome ac6() {
  bool pass = true;
  std::string detail;
  const Vec3 dir = Vec3::Ones().normalized();
  for (double k : {0.05, 0.1}) {
    const Wavevector kv(Vec3(k * dir));
    const auto r = maxwell_emergence_report(make_uniform_profile(kv, 1.0, 2.0), kv, Chirality::minus, 10);
    const double ratio = r.tilt_angle / tilt_angle_estimate(k);
    pass &= ratio >= 0.5 && ratio <= 2.0;
    detail += "k=" + fmt("%g", k) + " tilt " + fmt("%.4e", r.tilt_angle) + " (ratio to 2k " + fmt("%.4f", ratio) +
              "); ";
  }
  const UnitSystem u;
  const double kg = energy_to_k(1e12, u);
  const double theta = tilt_angle_estimate(kg);
  const bool order = std::abs(std::log10(theta / 1e-15)) <= 1.0;
  pass &= order;
  detail += "1 TeV: k " + fmt("%.3e", kg) + ", 2k " + fmt("%.3e", theta) + " rad";
  return {pass, detail};
}

// The Fock suites on 1, 2, 3 momenta are shared by AC7-AC9.
std::vector<nlohmann::json>& fock_reports() {
  static std::vector<nlohmann::json> reports;
  if (reports.empty()) {
    for (std::size_t m = 1; m <= 3; ++m) {
      FockSuiteConfig cfg;
      cfg.momenta = m;
      reports.push_back(run_fock_suite(cfg).report);
    }
  }
  return reports;
}

bool check_pass(const nlohmann::json& rep, const char* name) { return rep.at("checks").at(name).at("pass").get<bool>(); }

Outcome ac7() {
  bool pass = true;
  std::string detail;
  for (const auto& rep : fock_reports()) {
    const auto& c = rep.at("checks").at("commutator_assembly");
    pass &= check_pass(rep, "anticommutators") && c.at("pass").get<bool>();
    detail += std::to_string(rep.at("space").at("momenta").get<int>()) + " momenta: " +
              std::to_string(c.at("combinations").get<int>()) + " label combos, max error " +
              fmt("%.1e", c.at("max_error").get<double>()) + "; ";
  }
  return {pass, detail + "anticommutators exact at build"};
}

Outcome ac8() {
  bool pass = true;
  std::string detail;
  for (const auto& rep : fock_reports()) {
    const int m = rep.at("space").at("momenta").get<int>();
    const auto& ch = rep.at("checks");
    bool ok = check_pass(rep, "schwartz_bound") && check_pass(rep, "cross_commutator_bound");
    // Sandwich on uniform profiles over at least four shared modes.
    if (2 * m >= 4) ok &= check_pass(rep, "composite_uniform");
    pass &= ok;
    detail += std::to_string(m) + " momenta: Schwartz min slack " +
              fmt("%.1e", ch.at("schwartz_bound").at("min_slack").get<double>()) + ", worst cross/2NP " +
              fmt("%.3f", ch.at("cross_commutator_bound").at("worst_ratio_to_2NP").get<double>()) + "; ";
  }
  return {pass, detail};
}

Outcome ac9() {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(109);
  for (std::size_t m = 1; m <= 3; ++m) {
    const FockSpace space = build_fock(line_momenta(Wavevector(0.3, 0.2, 0.1), 0.1, m));
    const std::size_t shared = 2 * m;
    std::normal_distribution<double> g;
    std::vector<Complex> f(shared);
    double s = 0;
    for (auto& x : f) {
      x = Complex(g(rng), g(rng));
      s += std::norm(x);
    }
    for (auto& x : f) x /= std::sqrt(s);
    const SparseOp c = composite_boson(space, f);
    bool ok = true;
    for (std::size_t n = 1; n <= shared + 1; ++n) {
      const double amp = composite_power(c, space.vacuum(), static_cast<int>(n)).cwiseAbs().maxCoeff();
      ok &= (n <= shared) == (amp > 0.0);
    }
    pass &= ok;
    detail += std::to_string(shared) + " shared modes: " + (ok ? "vanishes first at N=" + std::to_string(shared + 1)
                                                                  : std::string("mismatch")) + "; ";
  }
  return {pass, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome ac10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qcalab_acceptance";
  fs::create_directories(dir);
  const std::string cli = QCALAB_CLI_PATH;
  const std::vector<std::pair<std::string, std::string>> runs = {{"dispersion", "csv"},
                                                                  {"maxwell-convergence", "csv"},
                                                                  {"flight", "csv"},
                                                                  {"tilt", "csv"},
                                                                  {"fock-suite", "json"}};
  bool pass = true;
  std::string detail;
  for (const auto& [cmd, ext] : runs) {
    std::string outs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / (cmd + "_" + std::to_string(rep) + "." + ext);
      // The second run uses a different thread count.
      const std::string line = "\"" + cli + "\" " + cmd + " --seed 7 --threads " + (rep ? "1" : "4") + " --out \"" +
                               out.string() + "\"";
      const int rc = std::system(line.c_str());
      if (rc != 0) {
        pass = false;
        detail += cmd + " exit " + std::to_string(rc) + "; ";
      }
      outs[rep] = slurp(out);
    }
    const bool same = !outs[0].empty() && outs[0] == outs[1];
    pass &= same;
    detail += cmd + (same ? " identical" : " DIFFERS") + " (" + std::to_string(outs[0].size()) + " B); ";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::printf("%s %s [%.2f s] %s\n", name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
