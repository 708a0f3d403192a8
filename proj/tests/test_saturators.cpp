#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cyl/errors.hpp"
#include "cyl/saturators.hpp"

using namespace cyl;

namespace {

constexpr double kPi = std::numbers::pi;

double squared_norm(const PhysicalField& u) {
  const double n = l2_norm(u);
  return n * n;
}

}  // namespace

TEST_CASE("fft-friendly sizes") {
  CHECK(fft_friendly_size(1) == 2);
  CHECK(fft_friendly_size(7) == 8);
  CHECK(fft_friendly_size(286) == 288);
  CHECK(fft_friendly_size(1000) == 1000);
}

TEST_CASE("concentrating family") {
  for (double n : {1.0, 4.0, 16.0}) {
    auto plan = default_plan(SaturatorKind::concentrating_2d, n);
    auto u = build_Fn(n, plan.grid);
    CHECK(squared_norm(u) == doctest::Approx(0.5 * kPi * (1.0 - std::exp(-2.0 * n))).epsilon(0.01));
    CHECK(u.at(plan.grid.nx / 2, 0) == Complex(n));
  }
  auto plan = default_plan(SaturatorKind::concentrating_2d, 1.0);
  CHECK(squared_norm(build_Fn(1.0, plan.grid)) == doctest::Approx(1.3580).epsilon(0.01));
  auto p16 = default_plan(SaturatorKind::concentrating_2d, 16.0);
  CHECK(std::abs(squared_norm(build_Fn(16.0, p16.grid)) - 0.5 * kPi) <= 1e-6);
  // Support indicator is respected on the grid.
  auto g = p16.grid;
  auto u = build_Fn(16.0, g);
  int outside = 0;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double y = g.y_at(iy) > kPi ? g.y_at(iy) - 2 * kPi : g.y_at(iy);
      if (16.0 * (g.x_at(ix) * g.x_at(ix) + y * y) > 1.0 && u.at(ix, iy) != Complex(0.0)) ++outside;
    }
  CHECK(outside == 0);
  CHECK_THROWS_AS(build_Fn(16.0, make_grid(64.0, 256, 16)), DomainError);
  CHECK_THROWS_AS(build_Fn(0.5, p16.grid), DomainError);
}

TEST_CASE("flat family") {
  for (double n : {1.0, 8.0, 32.0}) {
    auto plan = default_plan(SaturatorKind::flat_1d, n);
    auto u = build_fn(n, plan.grid);
    CHECK(squared_norm(u) == doctest::Approx(2.0 * kPi * std::sqrt(kPi / 2.0)).epsilon(1e-3));
    for (int iy = 0; iy < plan.grid.ny; ++iy) CHECK(u.at(plan.grid.nx / 2, iy) == Complex(1.0 / std::sqrt(n)));
    auto F = forward_transform(u);
    double off = 0.0, wide = 0.0, total = 0.0;
    for (int ix = 0; ix < plan.grid.nx; ++ix)
      for (int iy = 0; iy < plan.grid.ny; ++iy) {
        const double w = std::norm(F.at(ix, iy));
        total += w;
        if (iy != 0) off += w;
        if (std::abs(plan.grid.xi_at(ix)) > 8.0 / n) wide += w;
      }
    CHECK(off == 0.0);
    CHECK(wide <= 1e-12 * total);
  }
  const double m1 = squared_norm(build_fn(1.0, make_grid(64.0, 512, 2)));
  CHECK(m1 == doctest::Approx(2.0 * kPi * std::sqrt(kPi / 2.0)).epsilon(1e-10));
  CHECK(m1 == doctest::Approx(7.8736).epsilon(1e-3));
  CHECK_THROWS_AS(build_fn(8.0, make_grid(100.0, 64, 2)), DomainError);
}

TEST_CASE("flat family quotient is scale invariant") {
  StudyOptions opts;
  auto report = saturation_study(SaturatorKind::flat_1d, {4.0, 8.0}, {}, opts);
  REQUIRE(report.entries.size() == 2);
  CHECK(std::isnan(report.entries[0].ratio_prev));
  CHECK(report.entries[1].ratio_prev == doctest::Approx(1.0).epsilon(0.05));
  for (const auto& e : report.entries) {
    CHECK(e.quotient > 0.0);
    CHECK(e.refinement_delta <= 0.02);
  }
  std::ostringstream os;
  report.write_csv(os);
  CHECK(os.str().rfind("kind,n,a,b,c,quotient,ratio_prev,tail_ratio,refinement_delta\n", 0) == 0);
  CHECK(os.str().find("flat_1d,4,8,4,4,") != std::string::npos);

  auto single = saturation_study(SaturatorKind::flat_1d, {4.0});
  CHECK(single.entries.size() == 1);
  CHECK(single.entries[0].quotient > 0.0);
}

TEST_CASE("exponent probe at a = 4 grows") {
  auto report = exponent_probe(4.0, {4.0, 8.0});
  CHECK(report.entries[1].ratio_prev >= 1.1);
  auto control = exponent_probe(8.0, {4.0});
  CHECK(control.entries[0].quotient > 0.0);
  CHECK_THROWS_AS(exponent_probe(3.0, {4.0}), DomainError);
}

TEST_CASE("concentrating family quotient at small n") {
  StudyOptions opts;
  auto report = saturation_study(SaturatorKind::concentrating_2d, {8.0}, {}, opts);
  CHECK(report.entries[0].quotient > 0.0);
  CHECK(report.entries[0].refinement_delta <= 0.02);
  CHECK(saturator_kind_from_string("concentrating_2d") == SaturatorKind::concentrating_2d);
  CHECK_THROWS_AS(saturator_kind_from_string("round"), DomainError);
}
