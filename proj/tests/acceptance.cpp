// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyl/frequency_kernel.hpp"
#include "cyl/grid.hpp"
#include "cyl/io.hpp"
#include "cyl/lattice_annuli.hpp"
#include "cyl/mixed_norms.hpp"
#include "cyl/optimizer.hpp"
#include "cyl/saturators.hpp"

using namespace cyl;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail& operator()(const std::string& key, const T& v) {
    if (!os_.str().empty()) os_ << ' ';
    os_ << key << '=';
    if constexpr (std::is_floating_point_v<T>)
      os_ << format_number(v);
    else
      os_ << v;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::map<std::string, double> load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file " + path);
  std::map<std::string, double> values;
  std::string key;
  double v = 0.0;
  while (in >> key >> v) values[key] = v;
  return values;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    num += std::norm(a.coeffs[i] - b.coeffs[i]);
    den += std::norm(b.coeffs[i]);
  }
  return std::sqrt(num / den);
}

PhysicalField random_physical(const CylinderGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalField u(g);
  for (auto& v : u.values) v = Complex(normal(rng), normal(rng));
  return u;
}

SpectralField random_spectral(const CylinderGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField F(g);
  for (auto& c : F.coeffs) c = Complex(normal(rng), normal(rng));
  return F;
}

SpectralField scaled(const SpectralField& F, Complex a) {
  SpectralField out = F;
  for (auto& c : out.coeffs) c *= a;
  return out;
}

SpectralField axpy(const SpectralField& F, double a, const SpectralField& H) {
  SpectralField out = F;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += a * H.coeffs[i];
  return out;
}

SpectralField modulate_y(const SpectralField& F, int q) {
  SpectralField out(F.grid);
  for (int ix = 0; ix < F.grid.nx; ++ix)
    for (int iy = 0; iy < F.grid.ny; ++iy) out.at(ix, F.grid.index_y(F.grid.mode_y(iy) + q)) = F.at(ix, iy);
  return out;
}

SpectralField translate_x(const SpectralField& F, int s) {
  SpectralField out = F;
  for (int ix = 0; ix < F.grid.nx; ++ix)
    for (int iy = 0; iy < F.grid.ny; ++iy)
      out.at(ix, iy) *= std::polar(1.0, -F.grid.xi_at(ix) * s * F.grid.dx());
  return out;
}

FlowSampling periodic() {
  FlowSampling s;
  s.escape.enforce = false;
  return s;
}

FreqTuple4 random_constrained(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> real(-20.0, 20.0);
  std::uniform_int_distribution<int> integer(-15, 15);
  FreqTuple4 t;
  t.xi = {real(rng), real(rng), real(rng), 0.0};
  t.xi[3] = t.xi[0] - t.xi[1] + t.xi[2];
  t.kk = {integer(rng), integer(rng), integer(rng), 0};
  t.kk[3] = t.kk[0] - t.kk[1] + t.kk[2];
  return t;
}

Outcome unitarity_suite() {
  auto g = make_grid(20.0, 64, 16);
  auto u = random_physical(g, 5);
  auto F = forward_transform(u);
  const double n0 = l2_norm(F);
  double coeff = 0.0, physical = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = -1000.0 + 50.0 * i + 0.37 * (i % 3);
    const auto G = propagate(F, t);
    coeff = std::max(coeff, std::abs(l2_norm(G) - n0) / n0);
    physical = std::max(physical, std::abs(l2_norm(inverse_transform(G)) - n0) / n0);
  }
  double group = 0.0;
  for (auto [s, t] : std::vector<std::pair<double, double>>{{0.3, 1.1}, {-2.5, 0.7}, {5.0, -5.0}, {0.01, 3.0}})
    group = std::max(group, rel_diff(propagate(propagate(F, s), t), propagate(F, s + t)));
  const auto v = inverse_transform(F);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    num += std::norm(u.values[i] - v.values[i]);
    den += std::norm(u.values[i]);
  }
  const double roundtrip = std::sqrt(num / den);
  const double plancherel = std::abs(l2_norm(u) - n0) / n0;
  const bool pass = coeff <= 1e-12 && physical <= 1e-10 && group <= 1e-12 && roundtrip <= 1e-12 && plancherel <= 1e-10;
  return {pass, Detail()("unitarity_coeff", coeff)("unitarity_physical", physical)("group_law", group)(
                    "roundtrip", roundtrip)("plancherel", plancherel)
                    .str()};
}

Outcome gaussian_evolution() {
  auto g = make_grid(200.0, 1024, 2);
  PhysicalField u0(g);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) u0.at(ix, iy) = std::exp(-g.x_at(ix) * g.x_at(ix));
  const auto F = forward_transform(u0);
  double worst = 0.0, escape = 0.0;
  for (double t : {0.1, 0.5, 2.0}) {
    const auto u = inverse_transform(propagate(F, t));
    escape = std::max(escape, escape_fraction(u));
    const Complex denom(1.0, 4.0 * t);
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x_at(ix);
      const Complex exact = std::exp(-x * x / denom) / std::sqrt(denom);
      num += std::norm(u.at(ix, 0) - exact);
      den += std::norm(exact);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return {worst <= 1e-6 && escape <= 1e-8, Detail()("max_rel_l2", worst)("max_escape", escape).str()};
}

Outcome delta_circle() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double B = std::pow(10.0, -4.0 + 8.0 * i / 19.0);
    worst = std::max(worst, std::abs(delta_circle_integral([](double, double) { return 1.0; }, B) - kPi));
  }
  return {worst <= 1e-8, Detail()("max_abs_err", worst)("points", 20).str()};
}

Outcome theta_identity() {
  double worst = 0.0;
  int points = 0;
  for (double eps : {0.05, 0.1, 0.5, 1.0, 3.0})
    for (double theta : {0.0, 1.0, kPi, 5.0}) {
      const auto r = poisson_theta_check(eps, theta);
      worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::abs(r.rhs));
      ++points;
    }
  return {worst <= 1e-10, Detail()("max_rel_err", worst)("points", points).str()};
}

Outcome jgamma_oracle() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> count(1, 6), mcell(-3, 3), kcell(-2, 2);
  std::normal_distribution<double> normal;
  const std::vector<double> spacings{0.25, 0.5, 1.0};
  double worst = 0.0;
  int evaluations = 0;
  for (int d = 0; d < 10; ++d) {
    DiscreteDensity f;
    f.h = spacings[static_cast<std::size_t>(d) % spacings.size()];
    const int n = count(rng);
    while (static_cast<int>(f.cells.size()) < n) {
      const int m = mcell(rng), k = kcell(rng);
      bool dup = false;
      for (const auto& c : f.cells) dup = dup || (c.m == m && c.k == k);
      if (!dup) f.cells.push_back({m, k, Complex(normal(rng), normal(rng))});
    }
    const auto F = to_spectral_field(f, 64, 16);
    for (int gamma = -2; gamma <= 2; ++gamma) {
      WindowedNormSpec spec;
      spec.gamma = gamma;
      spec.time_nodes = 256;
      const double physical = jgamma_fourth(F, spec, periodic());
      const double spectral = jgamma4_spectral(f, gamma);
      worst = std::max(worst, std::abs(spectral - physical) / std::abs(spectral));
      ++evaluations;
    }
  }
  return {worst <= 1e-3, Detail()("max_rel_err", worst)("densities", 10)("evaluations", evaluations).str()};
}

Outcome factorization() {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_constrained(rng);
    const double Q = q_form(t);
    worst = std::max(worst, std::abs(reconstruct_q(factor_q(t), t) - Q));
    worst = std::max(worst, std::abs(reconstruct_q_primed(factor_q_primed(t), t) - Q));
  }
  std::uniform_int_distribution<long> dyadic(-(1L << 20), 1L << 20);
  long violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const double Q = std::ldexp(static_cast<double>(dyadic(rng)), -10);
    const double Qp = std::ldexp(static_cast<double>(dyadic(rng)), -10);
    const auto p = polarization_exponents(Q, Qp);
    if (!(p.lhs <= p.rhs)) ++violations;
  }
  return {worst <= 1e-10 && violations == 0,
          Detail()("max_abs_err", worst)("tuples", 1000)("polarization_violations", violations)("samples", 100000)
              .str()};
}

std::string entries_detail(const std::string& label, const QuotientReport& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    os << ' ' << label << "_q" << format_number(e.n) << '=' << format_number(e.quotient);
    if (!std::isnan(e.ratio_prev)) os << ' ' << label << "_ratio" << format_number(e.n) << '=' << format_number(e.ratio_prev);
    os << ' ' << label << "_delta" << format_number(e.n) << '=' << format_number(e.refinement_delta);
  }
  return os.str();
}

Outcome saturation() {
  const std::vector<double> ns{8.0, 16.0, 32.0};
  StudyOptions opts;
  opts.refine = true;
  const auto flat = saturation_study(SaturatorKind::flat_1d, ns, {}, opts);
  const auto conc = saturation_study(SaturatorKind::concentrating_2d, ns, {}, opts);
  bool pass = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    pass = pass && flat.entries[i].refinement_delta <= 0.02 && conc.entries[i].refinement_delta <= 0.02;
    if (i > 0) {
      pass = pass && flat.entries[i].ratio_prev >= 0.95 && flat.entries[i].ratio_prev <= 1.05;
      pass = pass && conc.entries[i].ratio_prev >= 0.90 && conc.entries[i].ratio_prev <= 1.10;
    }
  }
  return {pass, (entries_detail("f", flat) + entries_detail("F", conc)).substr(1)};
}

Outcome exponent_optimality() {
  const std::vector<double> ns{8.0, 16.0, 32.0};
  StudyOptions opts;
  opts.refine = false;
  const auto probe = exponent_probe(4.0, ns, opts);
  const auto control = exponent_probe(8.0, ns, opts);
  bool pass = true;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    pass = pass && probe.entries[i].ratio_prev >= 1.1;
    pass = pass && std::abs(control.entries[i].ratio_prev - 1.0) <= 0.05;
  }
  return {pass, (entries_detail("l4", probe) + entries_detail("l8", control)).substr(1)};
}

Outcome schur(const std::map<std::string, double>& frozen) {
  const auto config = SchurSweepConfig::defaults();
  const auto a = schur_sweep(config);
  const auto b = schur_sweep(config);
  const double ceiling = frozen.at("schur_sup");
  const bool pass = std::isfinite(a.sup) && a.certificate <= 0.01 && a.sup == b.sup && a.sup == ceiling &&
                    a.folded_sup == b.folded_sup;
  return {pass, Detail()("sup", a.sup)("rerun_sup", b.sup)("frozen", ceiling)("certificate", a.certificate)(
                    "argmax_A", a.argmax.A)("argmax_R", a.argmax.R)("argmax_Rp", a.argmax.Rp)("folded_sup", a.folded_sup)
                    .str()};
}

const std::vector<double> kShellRadii{50.0, 100.0, 1000.0, 10000.0};

Outcome volcomp(const std::map<std::string, double>& frozen) {
  const std::vector<double> Rs{20, 50, 100, 500, 2000}, ws{0.01, 0.1, 1, 5, 20}, xs{0, 0.25, 0.5};
  int violations = 0;
  double worst_excess = 0.0;
  std::string worst_point;
  for (double R : Rs)
    for (double w : ws)
      for (double x : xs) {
        const double V = annulus_volume({R, w, x});
        const double err = std::abs(V - kPi * (2 * R * w + w * w));
        const double bound = 3.0 * std::sqrt(R * w) + 3.0;
        if (err > bound) {
          ++violations;
          if (err / bound > worst_excess) {
            worst_excess = err / bound;
            worst_point = format_number(R) + "/" + format_number(w) + "/" + format_number(x);
          }
        }
      }
  const auto sweep = volcomp_ratio_sweep(Rs, ws, xs);
  double shell = 0.0;
  for (double R : kShellRadii)
    for (double c : {0.0, 0.5})
      for (int j = 0; j <= ShellSpec::max_index(R); ++j) shell = std::max(shell, shell_measure({R, j, c}));
  const bool pass = violations == 0 && sweep.sup <= frozen.at("volcomp_ratio_sup") &&
                    shell <= frozen.at("shell_measure_sup");
  Detail d;
  d("discrepancy_violations", violations);
  if (violations > 0) d("worst_excess", worst_excess)("worst_R/w/x", worst_point);
  d("ratio_sup", sweep.sup)("ratio_ceiling", frozen.at("volcomp_ratio_sup"))("shell_sup", shell)(
      "shell_ceiling", frozen.at("shell_measure_sup"));
  return {pass, d.str()};
}

Outcome shell_controls(const std::map<std::string, double>& frozen) {
  double bd2 = 0.0;
  for (double R : kShellRadii)
    for (double c : {0.0, 0.5})
      for (int j = 0; j <= ShellSpec::max_index(R); ++j) bd2 = std::max(bd2, simplebd2_sup({R, j, c}).sup);
  std::int64_t counterexamples = 0;
  bool all_passed = true;
  for (const ShellSpec& s : {ShellSpec{50, 0, 0.0}, ShellSpec{10000, 100, 0.0}}) {
    const auto r = kappa_implication_check(s, 100000, 1);
    counterexamples += r.counterexamples;
    all_passed = all_passed && r.passed() && r.checked >= 100000;
  }
  const double c0 = frozen.at("control_exp_c0");
  for (const auto& [s, C] : std::vector<std::pair<ShellSpec, double>>{
           {{100, 5, 0.0}, 1.0}, {{100, kInfiniteShell, 0.5}, 1.0}, {{10, kInfiniteShell, 0.0}, c0}}) {
    const auto r = control_exp_check(s, 100000, C, 1);
    counterexamples += r.counterexamples;
    all_passed = all_passed && r.passed() && r.checked >= 100000;
  }
  const double ceiling = frozen.at("simplebd2_sup");
  return {bd2 <= ceiling && all_passed && counterexamples == 0,
          Detail()("simplebd2_sup", bd2)("ceiling", ceiling)("counterexamples", counterexamples).str()};
}

Outcome optimizer() {
  // Gradient against central differences.
  const auto small = make_grid(16.0, 32, 8);
  const auto five = SlabDecomposition::uniform(-2, 2, 8);
  const auto F = random_spectral(small, 2);
  const auto og = objective_and_gradient(F, five, periodic());
  double fd_err = 0.0;
  const double eps = 1e-5;
  for (std::uint64_t d = 0; d < 10; ++d) {
    auto H = random_spectral(small, 100 + d);
    H = scaled(H, l2_norm(F) / l2_norm(H));
    const double fd =
        (objective(axpy(F, eps, H), five, periodic()) - objective(axpy(F, -eps, H), five, periodic())) / (2 * eps);
    const double analytic = inner_product(og.grad, H).real();
    fd_err = std::max(fd_err, std::abs(fd - analytic) / std::abs(analytic));
  }

  // Ascent from the flat profile.
  OptimizerConfig config;
  config.init = InitKind::from_fn;
  config.init_n = 8.0;
  config.max_iters = 20;
  const auto grid = make_grid(256.0, 256, 8);
  const auto slabs = SlabDecomposition::time_symmetric(8, 8);
  const auto init = make_init(config, grid);
  const double q0 = quotient_of(init, slabs, config.sampling);
  const auto trace = maximize(init, config, slabs);
  bool monotone = true;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) monotone = monotone && trace.steps[i].phi >= trace.steps[i - 1].phi;
  const double q1 = trace.steps.back().quotient;

  const auto& G = trace.final_field;
  const double qG = quotient_of(G, slabs, config.sampling);
  double sym = 0.0;
  sym = std::max(sym, std::abs(quotient_of(scaled(G, std::polar(1.0, 0.9)), slabs, config.sampling) - qG));
  sym = std::max(sym, std::abs(quotient_of(translate_x(G, 1), slabs, config.sampling) - qG));
  sym = std::max(sym, std::abs(quotient_of(modulate_y(G, 1), slabs, config.sampling) - qG));
  const auto twin = maximize(modulate_y(init, 1), config, slabs);
  sym = std::max(sym, std::abs(twin.steps.back().quotient - q1));

  const bool pass = fd_err <= 1e-4 && monotone && q1 >= q0 && sym <= 1e-5;
  return {pass, Detail()("fd_rel_err", fd_err)("monotone", monotone ? "yes" : "no")("start_quotient", q0)(
                    "final_quotient", q1)("iterations", trace.steps.size())("symmetry_gap", sym)
                    .str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string constants = argc > 1 ? argv[1] : CYL_CONSTANTS_FILE;
  std::map<std::string, double> frozen;
  try {
    frozen = load_constants(constants);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"unitarity, group law and Plancherel", unitarity_suite},
      {"closed-form Gaussian evolution", gaussian_evolution},
      {"delta integral over circles equals pi", delta_circle},
      {"Poisson summation theta identity", theta_identity},
      {"J_gamma^4 spectral sum vs time quadrature", jgamma_oracle},
      {"factorization and polarization", factorization},
      {"saturating families", saturation},
      {"exponent optimality probe", exponent_optimality},
      {"Schur sweep", [&] { return schur(frozen); }},
      {"annulus volumes and shell measures", [&] { return volcomp(frozen); }},
      {"row delta sums and pointwise controls", [&] { return shell_controls(frozen); }},
      {"optimizer", optimizer},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s %zu %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
