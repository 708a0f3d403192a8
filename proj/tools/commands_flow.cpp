#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "cyl/errors.hpp"
#include "cyl/io.hpp"
#include "cyl/optimizer.hpp"
#include "cyl/saturators.hpp"

namespace cylab {

using namespace cyl;

int cmd_simulate(ConfigNode& cfg, const GlobalOptions& opt) {
  const auto grid = read_grid(cfg.child("grid"));
  const auto u0 = read_initial(cfg.child("initial"), grid);
  const auto times = cfg.numbers("times", std::vector<double>{0.0});
  const auto escape = read_escape(cfg.child("escape"));
  cfg.finish();

  const auto F = forward_transform(u0);
  auto out = open_output(opt, "simulate.csv");
  CsvWriter csv(out, {"index", "t", "l2_norm", "escape", "snapshot"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto u = inverse_transform(propagate(F, times[i]));
    const double e = escape_fraction(u);
    const std::string name = "snapshot_" + std::to_string(i) + ".cylf";
    write_cylf(u, output_path(opt, name));
    csv.row({std::to_string(i), format_number(times[i]), format_number(l2_norm(u)), format_number(e), name});
    if (escape.enforce && e > escape.threshold)
      throw DiagnosticError("box escape at t=" + format_number(times[i]) + ": edge mass fraction " + format_number(e));
  }
  std::cout << "simulate: wrote " << times.size() << " snapshots\n";
  return 0;
}

int cmd_norm(ConfigNode& cfg, const GlobalOptions& opt) {
  const auto grid = read_grid(cfg.child("grid"));
  const auto u0 = read_initial(cfg.child("initial"), grid);
  const auto e = read_exponents(cfg.child("exponents"));
  const auto slabs = read_slabs(cfg.child("slabs"), SlabDecomposition::time_symmetric(4, 8));
  FlowSampling sampling;
  sampling.escape = read_escape(cfg.child("escape"));
  sampling.adaptive_window = cfg.boolean("adaptive_window", false);
  sampling.threads = opt.threads;
  cfg.finish();

  const auto F = forward_transform(u0);
  const auto lhs = strichartz_lhs(F, e, slabs, sampling);
  const double denom = e.sobolev_s ? sobolev_norm(F, *e.sobolev_s) : l2_norm(F);
  auto out = open_output(opt, "norm.csv");
  CsvWriter csv(out, {"a", "b", "c", "value", "quotient", "tail_ratio", "max_escape"});
  csv.row({format_number(e.a), format_number(e.b), format_number(e.c), format_number(lhs.value),
           format_number(lhs.value / denom), format_number(lhs.tail_ratio), format_number(lhs.max_escape)});
  std::cout << "norm: " << format_number(lhs.value) << "\n";
  return 0;
}

int cmd_saturate(ConfigNode& cfg, const GlobalOptions& opt) {
  const auto kind = saturator_kind_from_string(cfg.string("kind", "flat_1d"));
  const auto n_list = cfg.numbers("n_list", std::vector<double>{8, 16, 32});
  const auto e = read_exponents(cfg.child("exponents"));
  StudyOptions study;
  study.threads = opt.threads;
  study.refine = cfg.boolean("refine", true);
  const bool probe = cfg.has("probe_a");
  const double probe_a = cfg.number("probe_a", 8.0);
  cfg.finish();

  const auto report = probe ? exponent_probe(probe_a, n_list, study) : saturation_study(kind, n_list, e, study);
  auto out = open_output(opt, "saturate.csv");
  report.write_csv(out);
  for (const auto& r : report.entries)
    std::cout << "saturate: n=" << format_number(r.n) << " quotient=" << format_number(r.quotient) << "\n";
  return 0;
}

int cmd_optimize(ConfigNode& cfg, const GlobalOptions& opt) {
  const auto grid = read_grid(cfg.child("grid"));
  const auto slabs = read_slabs(cfg.child("slabs"), SlabDecomposition::time_symmetric(8, 8));
  OptimizerConfig oc;
  auto init = cfg.child("init");
  oc.init = init_kind_from_string(init.string("kind", "from_fn"));
  oc.init_n = init.number("n", 8.0);
  init.finish();
  oc.max_iters = cfg.integer("max_iters", oc.max_iters);
  oc.initial_step = cfg.number("initial_step", oc.initial_step);
  oc.backtrack = cfg.number("backtrack", oc.backtrack);
  oc.sufficient_increase = cfg.number("sufficient_increase", oc.sufficient_increase);
  oc.tol = cfg.number("tol", oc.tol);
  oc.dealias = cfg.boolean("dealias", false);
  oc.seed = static_cast<std::uint64_t>(cfg.integer("seed", 1));
  if (opt.seed) oc.seed = *opt.seed;
  oc.sampling.escape = read_escape(cfg.child("escape"));
  oc.sampling.threads = opt.threads;
  cfg.finish();

  const auto trace = maximize(make_init(oc, grid), oc, slabs);
  auto out = open_output(opt, "optimize.csv");
  trace.write_csv(out);
  write_cylf(inverse_transform(trace.final_field), output_path(opt, "optimum.cylf"));
  std::cout << "optimize: quotient " << format_number(trace.steps.front().quotient) << " -> "
            << format_number(trace.steps.back().quotient) << "\n";
  return 0;
}

}  // namespace cylab
