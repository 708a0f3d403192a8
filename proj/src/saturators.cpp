#include "cyl/saturators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "cyl/errors.hpp"
#include "cyl/io.hpp"

namespace cyl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool smooth_235(int m) {
  for (int p : {2, 3, 5})
    while (m % p == 0) m /= p;
  return m == 1;
}

int smooth_at_least(int n) {
  int m = std::max(n, 1);
  while (!smooth_235(m)) ++m;
  return m;
}

// Distance to 0 on the circle, in (-pi, pi].
double wrap_y(double y) { return y > std::numbers::pi ? y - 2.0 * std::numbers::pi : y; }

void check_n(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw DomainError("family parameter n must be >= 1");
}

// Predicted 6.5-sigma half-width of |u(t)|^2 for a centred profile.
double spread_half_width(double sigma_x, double sigma_xi, double t) {
  return 6.5 * (sigma_x + 2.0 * std::abs(t) * sigma_xi);
}

}  // namespace

std::string to_string(SaturatorKind kind) {
  return kind == SaturatorKind::concentrating_2d ? "concentrating_2d" : "flat_1d";
}

SaturatorKind saturator_kind_from_string(const std::string& s) {
  if (s == "concentrating_2d") return SaturatorKind::concentrating_2d;
  if (s == "flat_1d") return SaturatorKind::flat_1d;
  throw DomainError("unknown saturator kind '" + s + "'");
}

int fft_friendly_size(int n) {
  int m = smooth_at_least(n);
  while (m % 2 != 0) m = smooth_at_least(m + 1);
  return m;
}

PhysicalField build_Fn(double n, const CylinderGrid& grid) {
  check_n(n);
  const double scale = 1.0 / (8.0 * std::sqrt(n));
  if (grid.dx() > scale * (1.0 + 1e-12) || grid.dy() > scale * (1.0 + 1e-12))
    throw DomainError("grid does not resolve the concentration scale n^{-1/2}/8");
  if (0.5 * grid.box_length_x <= 1.0 / std::sqrt(n)) throw DomainError("box too small for the support of F_n");
  PhysicalField f(grid);
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double x = grid.x_at(ix);
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double y = wrap_y(grid.y_at(iy));
      const double r2 = x * x + y * y;
      f.at(ix, iy) = n * r2 <= 1.0 ? n * std::exp(-n * n * r2) : 0.0;
    }
  }
  return f;
}

PhysicalField build_fn(double n, const CylinderGrid& grid) {
  check_n(n);
  if (grid.box_length_x < 16.0 * n * (1.0 - 1e-12)) throw DomainError("box length must be at least 16 n for f_n");
  PhysicalField f(grid);
  const double amp = 1.0 / std::sqrt(n);
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double s = grid.x_at(ix) / n;
    const double v = amp * std::exp(-s * s);
    for (int iy = 0; iy < grid.ny; ++iy) f.at(ix, iy) = v;
  }
  return f;
}

PhysicalField build_family(const SaturatorFamily& family, const CylinderGrid& grid) {
  return family.kind == SaturatorKind::concentrating_2d ? build_Fn(family.n, grid) : build_fn(family.n, grid);
}

SaturatorPlan default_plan(SaturatorKind kind, double n, int threads) {
  check_n(n);
  SaturatorPlan plan;
  plan.family = {kind, n};
  plan.sampling.threads = threads;
  if (kind == SaturatorKind::flat_1d) {
    // Scale invariance: time window |t| <= 2n^2 + 1, spatial step n/3.
    const int G = static_cast<int>(std::ceil(2.0 * n * n));
    const double dx = n / 3.0;
    const double reach = spread_half_width(0.5 * n, 1.0 / n, G + 1.0) + 4.0 * n;
    const double length = std::max(16.0 * n, 4.0 * reach);
    const int nx = fft_friendly_size(static_cast<int>(std::ceil(length / dx)));
    plan.grid = make_grid(nx * dx, nx, 2);
    plan.slabs = SlabDecomposition::time_symmetric(G, 8);
    return plan;
  }
  // Concentrating family: slabs [-1, 1) graded toward t = 0 at the
  // dispersive scale 1/n^2, evaluated on adaptive periodized windows.
  const double scale = 1.0 / (8.0 * std::sqrt(n));
  const int ny = fft_friendly_size(static_cast<int>(std::ceil(2.0 * std::numbers::pi / scale)));
  const double dx = 2.0 * std::numbers::pi / ny;
  const double reach = spread_half_width(0.5 / n, n, 1.0) + 1.0;
  const int blocks = smooth_at_least(static_cast<int>(std::ceil(4.0 * reach / dx / 64.0)));
  const int nx = 64 * blocks;
  plan.grid = make_grid(nx * dx, nx, ny);
  plan.slabs = SlabDecomposition::graded(-1, 0, 1.0 / (4.0 * n * n), 4);
  plan.sampling.adaptive_window = true;
  return plan;
}

QuotientEntry evaluate_quotient(const SaturatorPlan& plan, const ExponentTriple& e, bool refine) {
  const auto F = forward_transform(build_family(plan.family, plan.grid));
  const double mass = l2_norm(F);
  const auto lhs = strichartz_lhs(F, e, plan.slabs, plan.sampling);
  QuotientEntry entry;
  entry.n = plan.family.n;
  entry.quotient = lhs.value / mass;
  entry.ratio_prev = kNaN;
  entry.tail_ratio = lhs.tail_ratio;
  if (refine) {
    const auto fine = strichartz_lhs(F, e, plan.slabs.refined(), plan.sampling);
    entry.refinement_delta = std::abs(fine.value / mass - entry.quotient) / entry.quotient;
  }
  if (!(entry.quotient > 0.0)) throw DiagnosticError("non-positive Strichartz quotient");
  return entry;
}

QuotientReport saturation_study(SaturatorKind kind, const std::vector<double>& n_list, const ExponentTriple& e,
                                const StudyOptions& options) {
  if (n_list.empty()) throw DomainError("empty n list");
  e.validate();
  QuotientReport report;
  report.kind = kind;
  report.exponents = e;
  for (double n : n_list) {
    auto plan = default_plan(kind, n, options.threads);
    if (options.slabs) plan.slabs = *options.slabs;
    auto entry = evaluate_quotient(plan, e, options.refine);
    if (!report.entries.empty()) entry.ratio_prev = entry.quotient / report.entries.back().quotient;
    report.entries.push_back(entry);
  }
  return report;
}

QuotientReport exponent_probe(double a, const std::vector<double>& n_list, const StudyOptions& options) {
  if (!(a >= 4.0 && a <= 8.0)) throw DomainError("probe exponent a must lie in [4, 8]");
  ExponentTriple e;
  e.a = a;
  e.b = 4.0;
  e.c = 4.0;
  return saturation_study(SaturatorKind::flat_1d, n_list, e, options);
}

void QuotientReport::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"kind", "n", "a", "b", "c", "quotient", "ratio_prev", "tail_ratio", "refinement_delta"});
  for (const auto& r : entries)
    csv.row({to_string(kind), format_number(r.n), format_number(exponents.a), format_number(exponents.b),
             format_number(exponents.c), format_number(r.quotient), format_number(r.ratio_prev),
             format_number(r.tail_ratio), format_number(r.refinement_delta)});
}

}  // namespace cyl
