#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "cyl/errors.hpp"
#include "cyl/mixed_norms.hpp"
#include "cyl/optimizer.hpp"
#include "cyl/saturators.hpp"

using namespace cyl;

namespace {

FlowSampling periodic() {
  FlowSampling s;
  s.escape.enforce = false;
  return s;
}

SpectralField random_field(const CylinderGrid& g, std::uint64_t seed) {
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

// u -> e^{i q y} u.
SpectralField modulate_y(const SpectralField& F, int q) {
  SpectralField out(F.grid);
  for (int ix = 0; ix < F.grid.nx; ++ix)
    for (int iy = 0; iy < F.grid.ny; ++iy) out.at(ix, F.grid.index_y(F.grid.mode_y(iy) + q)) = F.at(ix, iy);
  return out;
}

// u(x) -> u(x - s dx).
SpectralField translate_x(const SpectralField& F, int s) {
  SpectralField out = F;
  for (int ix = 0; ix < F.grid.nx; ++ix)
    for (int iy = 0; iy < F.grid.ny; ++iy)
      out.at(ix, iy) *= std::polar(1.0, -F.grid.xi_at(ix) * s * F.grid.dx());
  return out;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
  return m;
}

double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (auto c : a.coeffs) m = std::max(m, std::abs(c));
  return m;
}

const CylinderGrid kSmall = make_grid(16.0, 32, 8);
const SlabDecomposition kFive = SlabDecomposition::uniform(-2, 2, 8);

}  // namespace

TEST_CASE("objective") {
  SpectralField zero(kSmall);
  CHECK(objective(zero, kFive, periodic()) == 0.0);
  auto F = random_field(kSmall, 1);
  const double phi = objective(F, kFive, periodic());
  CHECK(phi > 0.0);
  for (double lambda : {0.5, 2.0, 7.0})
    CHECK(objective(scaled(F, lambda), kFive, periodic()) == doctest::Approx(std::pow(lambda, 8) * phi).epsilon(1e-10));

  auto sym = SlabDecomposition::uniform(-2, 2, 8);
  ExponentTriple e;
  const double lhs = strichartz_lhs(F, e, sym, periodic()).value;
  CHECK(phi == doctest::Approx(std::pow(lhs, 8)).epsilon(1e-10));
  CHECK(quotient_of(F, kFive, periodic()) == doctest::Approx(lhs / l2_norm(F)).epsilon(1e-12));
}

TEST_CASE("objective on the flat family matches the mixed norm") {
  auto plan = default_plan(SaturatorKind::flat_1d, 8.0);
  auto F = forward_transform(build_fn(8.0, plan.grid));
  ExponentTriple e;
  const double lhs = strichartz_lhs(F, e, plan.slabs, plan.sampling).value;
  CHECK(objective(F, plan.slabs, plan.sampling) == doctest::Approx(std::pow(lhs, 8)).epsilon(1e-10));
}

TEST_CASE("gradient") {
  SpectralField zero(kSmall);
  CHECK(max_abs(gradient(zero, kFive, periodic())) == 0.0);

  auto F = random_field(kSmall, 2);
  auto og = objective_and_gradient(F, kFive, periodic());
  CHECK(og.phi == doctest::Approx(objective(F, kFive, periodic())).epsilon(1e-14));

  double worst = 0.0;
  const double eps = 1e-5;
  for (std::uint64_t d = 0; d < 10; ++d) {
    auto H = random_field(kSmall, 100 + d);
    H = scaled(H, 1.0 / l2_norm(H) * l2_norm(F));
    const double fd =
        (objective(axpy(F, eps, H), kFive, periodic()) - objective(axpy(F, -eps, H), kFive, periodic())) / (2 * eps);
    const double analytic = inner_product(og.grad, H).real();
    worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
  }
  CHECK(worst <= 1e-4);

  const Complex phase = std::polar(1.0, 0.7);
  auto rotated = gradient(scaled(F, phase), kFive, periodic());
  CHECK(max_abs_diff(rotated, scaled(og.grad, phase)) <= 1e-10 * max_abs(og.grad));
}

TEST_CASE("initial data") {
  OptimizerConfig c;
  c.init = InitKind::random_gaussian;
  c.seed = 9;
  auto a = make_init(c, kSmall);
  auto b = make_init(c, kSmall);
  CHECK(a.coeffs == b.coeffs);
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  c.seed = 10;
  CHECK(make_init(c, kSmall).coeffs != a.coeffs);
  CHECK(init_kind_from_string("from_Fn") == InitKind::from_Fn);
  CHECK(to_string(InitKind::random_gaussian) == "random_gaussian");
  CHECK_THROWS_AS(init_kind_from_string("uniform"), DomainError);

  OptimizerConfig bad;
  bad.backtrack = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = OptimizerConfig{};
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("ascent") {
  OptimizerConfig c;
  c.init = InitKind::random_gaussian;
  c.seed = 4;
  c.max_iters = 12;
  c.dealias = true;
  c.sampling = periodic();
  const auto grid = make_grid(16.0, 32, 16);
  auto init = make_init(c, grid);
  auto trace = maximize(init, c, kFive);
  REQUIRE(trace.steps.size() >= 2);
  for (std::size_t i = 1; i < trace.steps.size(); ++i) CHECK(trace.steps[i].phi >= trace.steps[i - 1].phi);
  CHECK(trace.steps.back().quotient >= quotient_of(init, kFive, c.sampling) - 1e-9);
  CHECK(l2_norm(trace.final_field) == doctest::Approx(1.0).epsilon(1e-12));

  auto again = maximize(make_init(c, grid), c, kFive);
  REQUIRE(again.steps.size() == trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) CHECK(again.steps[i].phi == trace.steps[i].phi);
  CHECK(again.final_field.coeffs == trace.final_field.coeffs);

  const auto& G = trace.final_field;
  const double q = quotient_of(G, kFive, c.sampling);
  CHECK(std::abs(quotient_of(scaled(G, std::polar(1.0, 1.3)), kFive, c.sampling) - q) <= 1e-5);
  CHECK(std::abs(quotient_of(translate_x(G, 3), kFive, c.sampling) - q) <= 1e-5);
  CHECK(std::abs(quotient_of(modulate_y(G, 1), kFive, c.sampling) - q) <= 1e-5);

  std::ostringstream os;
  trace.write_csv(os);
  CHECK(os.str().rfind("iter,phi,quotient,step,gradnorm\n", 0) == 0);

  CHECK_THROWS(maximize(SpectralField(grid), c, kFive));
}

TEST_CASE("ascent from y-modulated starts") {
  OptimizerConfig c;
  c.init = InitKind::from_fn;
  c.init_n = 2.0;
  c.max_iters = 6;
  c.sampling = periodic();
  const auto grid = make_grid(32.0, 64, 8);
  auto init = make_init(c, grid);
  auto a = maximize(init, c, kFive);
  auto b = maximize(modulate_y(init, 1), c, kFive);
  CHECK(b.steps.back().quotient == doctest::Approx(a.steps.back().quotient).epsilon(1e-5));
  CHECK(a.steps.back().quotient >= a.steps.front().quotient);
}
