#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "commands.hpp"
#include "common.hpp"
#include "cyl/errors.hpp"
#include "cyl/frequency_kernel.hpp"
#include "cyl/io.hpp"
#include "cyl/lattice_annuli.hpp"

namespace cylab {

using namespace cyl;

namespace {

std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0.0)) throw ConfigError("sweep step must be positive");
  std::vector<double> v;
  for (long i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 1e-9 * step) break;
    v.push_back(x);
  }
  return v;
}

const std::vector<double> kShellRadii{50.0, 100.0, 1000.0, 10000.0};

struct ShellSup {
  double measure = 0.0;
  double simplebd2 = 0.0;
};

ShellSup shell_sups(const std::vector<double>& radii, const std::vector<double>& centres,
                    std::vector<ShellRow>* rows = nullptr) {
  ShellSup s;
  for (double R : radii)
    for (double c : centres)
      for (int j = 0; j <= ShellSpec::max_index(R); ++j) {
        const ShellSpec shell{R, j, c};
        const double m = shell_measure(shell);
        s.measure = std::max(s.measure, m);
        s.simplebd2 = std::max(s.simplebd2, simplebd2_sup(shell).sup);
        if (rows && c == centres.front()) rows->push_back({R, j, m});
      }
  return s;
}

}  // namespace

int cmd_schur(ConfigNode& cfg, const GlobalOptions& opt) {
  auto sweep = SchurSweepConfig::defaults();
  sweep.c_values = cfg.numbers("c_values", sweep.c_values);
  if (cfg.has("A")) {
    auto a = cfg.child("A");
    sweep.A_values = arange(a.number("min"), a.number("max"), a.number("step"));
    a.finish();
  }
  sweep.R_values = cfg.numbers("R_values", sweep.R_values);
  sweep.nodes = cfg.integer("nodes", sweep.nodes);
  sweep.fold_mu = cfg.boolean("fold_mu", sweep.fold_mu);
  sweep.mu_max = cfg.number("mu_max", sweep.mu_max);
  cfg.finish();
  sweep.threads = opt.threads;

  const auto result = schur_sweep(sweep);
  {
    auto out = open_output(opt, "schur.csv");
    result.write_csv(out);
  }
  if (sweep.fold_mu) {
    auto out = open_output(opt, "schur_folded.csv");
    result.write_folded_csv(out);
  }
  std::cout << "schur: sup " << format_number(result.sup) << " at c=" << result.argmax.c
            << " cp=" << result.argmax.cp << " A=" << result.argmax.A << " R=" << result.argmax.R
            << " Rp=" << result.argmax.Rp << ", certificate " << format_number(result.certificate) << "\n";
  if (opt.freeze) freeze_constants(opt, {{"schur_sup", result.sup}, {"schur_folded_sup", result.folded_sup}});
  if (result.certificate > 0.01) {
    std::cerr << "schur: refinement certificate exceeds 1%\n";
    return 1;
  }
  return 0;
}

int cmd_annulus(ConfigNode& cfg, const GlobalOptions& opt) {
  const auto R_list = cfg.numbers("R_list", std::vector<double>{20, 50, 100, 500, 2000});
  const auto w_list = cfg.numbers("w_list", std::vector<double>{0.01, 0.1, 1, 5, 20});
  const auto x_list = cfg.numbers("x_list", std::vector<double>{0, 0.25, 0.5});
  auto shells = cfg.child("shells");
  const auto shell_R = shells.numbers("R_list", kShellRadii);
  const auto shell_c = shells.numbers("c_values", std::vector<double>{0.0, 0.5});
  shells.finish();
  cfg.finish();

  const auto sweep = volcomp_ratio_sweep(R_list, w_list, x_list);
  {
    auto out = open_output(opt, "annulus.csv");
    sweep.write_csv(out);
  }
  std::vector<ShellRow> rows;
  const auto sups = shell_sups(shell_R, shell_c, &rows);
  {
    auto out = open_output(opt, "shells.csv");
    write_shell_csv(out, rows);
  }
  std::cout << "annulus: ratio sup " << format_number(sweep.sup) << ", shell measure sup "
            << format_number(sups.measure) << "\n";
  if (opt.freeze)
    freeze_constants(opt, {{"volcomp_ratio_sup", sweep.sup}, {"shell_measure_sup", sups.measure},
                           {"simplebd2_sup", sups.simplebd2}, {"control_exp_c0", kControlExpC0}});
  return 0;
}

int cmd_verify(ConfigNode& cfg, const GlobalOptions& opt) {
  const int samples = cfg.integer("samples", 100000);
  const std::uint64_t seed = opt.seed ? *opt.seed : static_cast<std::uint64_t>(cfg.integer("seed", 1));
  cfg.finish();
  if (samples < 1) throw ConfigError("config key 'samples' must be positive");

  auto out = open_output(opt, "verify.csv");
  CsvWriter csv(out, {"check", "value", "bound", "pass"});
  bool all = true;
  const auto report = [&](const std::string& name, double value, double bound, bool pass) {
    csv.row({name, format_number(value), format_number(bound), pass ? "1" : "0"});
    std::cout << (pass ? "PASS " : "FAIL ") << name << " value=" << format_number(value)
              << " bound=" << format_number(bound) << "\n";
    all = all && pass;
  };
  std::mt19937_64 rng(seed);

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double B = std::pow(10.0, -4.0 + 8.0 * i / 19.0);
    worst = std::max(worst, std::abs(delta_circle_integral([](double, double) { return 1.0; }, B) - std::numbers::pi));
  }
  report("delta_circle_pi", worst, 1e-8, worst <= 1e-8);

  worst = 0.0;
  for (double eps : {0.1, 0.3, 1.0, 3.0, 10.0})
    for (double theta : {0.0, 1.0, std::numbers::pi, 5.0}) {
      const auto t = poisson_theta_check(eps, theta);
      worst = std::max(worst, std::abs(t.lhs - t.rhs) / std::abs(t.rhs));
    }
  report("poisson_theta", worst, 1e-10, worst <= 1e-10);

  worst = 0.0;
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  std::uniform_int_distribution<int> integer(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    FreqTuple4 t;
    t.xi = {real(rng), real(rng), real(rng), 0.0};
    t.xi[3] = t.xi[0] - t.xi[1] + t.xi[2];
    t.kk = {integer(rng), integer(rng), integer(rng), 0};
    t.kk[3] = t.kk[0] - t.kk[1] + t.kk[2];
    const double Q = q_form(t);
    const double scale = std::max(1.0, std::abs(Q));
    worst = std::max(worst, std::abs(reconstruct_q(factor_q(t), t) - Q) / scale);
    worst = std::max(worst, std::abs(reconstruct_q_primed(factor_q_primed(t), t) - Q) / scale);
  }
  report("factorization", worst, 1e-10, worst <= 1e-10);

  long violations = 0;
  std::uniform_int_distribution<long> dyadic(-(1L << 20), 1L << 20);
  for (int i = 0; i < samples; ++i) {
    const double Q = std::ldexp(static_cast<double>(dyadic(rng)), -10);
    const double Qp = std::ldexp(static_cast<double>(dyadic(rng)), -10);
    const auto p = polarization_exponents(Q, Qp);
    if (p.lhs > p.rhs) ++violations;
  }
  report("polarization", static_cast<double>(violations), 0.0, violations == 0);

  const double volcomp_ceiling = frozen_constant(opt, "volcomp_ratio_sup");
  const auto sweep = volcomp_ratio_sweep({20, 50, 100, 500, 2000}, {0.01, 0.1, 1, 5, 20}, {0, 0.25, 0.5});
  report("volcomp_ratio_sup", sweep.sup, volcomp_ceiling, sweep.sup <= volcomp_ceiling);

  const auto sups = shell_sups(kShellRadii, {0.0, 0.5});
  const double shell_ceiling = frozen_constant(opt, "shell_measure_sup");
  report("shell_measure_sup", sups.measure, shell_ceiling, sups.measure <= shell_ceiling);
  const double bd2_ceiling = frozen_constant(opt, "simplebd2_sup");
  report("simplebd2_sup", sups.simplebd2, bd2_ceiling, sups.simplebd2 <= bd2_ceiling);

  for (const ShellSpec& s : {ShellSpec{50, 0, 0.0}, ShellSpec{10000, 100, 0.5}}) {
    const auto r = kappa_implication_check(s, samples, seed);
    report("kappa_implication_R" + format_number(s.R), static_cast<double>(r.counterexamples), 0.0, r.passed());
  }
  const double c0 = frozen_constant(opt, "control_exp_c0");
  for (const auto& [s, C] : std::vector<std::pair<ShellSpec, double>>{{{100, 5, 0.0}, 1.0},
                                                                      {{100, kInfiniteShell, 0.0}, 1.0},
                                                                      {{10, kInfiniteShell, 0.5}, c0}}) {
    const auto r = control_exp_check(s, samples, C, seed);
    report("control_exp_R" + format_number(s.R) + "_j" + std::to_string(s.index),
           static_cast<double>(r.counterexamples), 0.0, r.passed());
  }
  return all ? 0 : 1;
}

}  // namespace cylab
