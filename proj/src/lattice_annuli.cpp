#include "cyl/lattice_annuli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "cyl/errors.hpp"
#include "cyl/io.hpp"

namespace cyl {

namespace {

constexpr double kMinShellRadius = 50.0;

struct Band {
  double lo = 0.0;  // radii, lo <= |z - C| < hi
  double hi = 0.0;
};

std::vector<Band> shell_bands(const ShellSpec& s) {
  const double step = 1.0 / s.R;
  return {{s.R - (s.index + 1) * step, s.R - s.index * step}, {s.R + s.index * step, s.R + (s.index + 1) * step}};
}

bool in_band(double d2, const Band& b) { return b.lo * b.lo <= d2 && d2 < b.hi * b.hi; }

// Radii of the gap left by the finite shells: |z - C| in [outer_lo, outer_hi) is covered.
Band covered_band(const ShellSpec& s) {
  const double reach = (ShellSpec::max_index(s.R) + 1) / s.R;
  return {s.R - reach, s.R + reach};
}

}  // namespace

double segment_length(double y, double R, double w) {
  if (!(R >= 0.0) || !(w >= 0.0)) throw DomainError("segment length needs R, w >= 0");
  const double ay = std::abs(y);
  const double outer = R + w;
  if (ay > outer) return 0.0;
  const double out = std::sqrt(std::max(0.0, outer * outer - ay * ay));
  if (ay >= R) return out;
  return out - std::sqrt(std::max(0.0, R * R - ay * ay));
}

void AnnulusSpec::validate() const {
  if (!(R >= 0.0) || !(w >= 0.0) || !std::isfinite(R) || !std::isfinite(w))
    throw DomainError("annulus needs finite R, w >= 0");
  if (!(std::abs(x_offset) <= 0.5)) throw DomainError("annulus offset must satisfy |x| <= 1/2");
}

double annulus_volume(const AnnulusSpec& a) {
  a.validate();
  const double outer = a.R + a.w;
  const long lo = static_cast<long>(std::ceil(-outer - a.x_offset));
  const long hi = static_cast<long>(std::floor(outer - a.x_offset));
  double v = 0.0;
  for (long k = lo; k <= hi; ++k) v += 2.0 * segment_length(static_cast<double>(k) + a.x_offset, a.R, a.w);
  return v;
}

VolcompSweep volcomp_ratio_sweep(const std::vector<double>& R_list, const std::vector<double>& w_list,
                                 const std::vector<double>& x_list) {
  if (R_list.empty() || w_list.empty() || x_list.empty()) throw DomainError("empty annulus sweep");
  for (double w : w_list)
    if (!(w > 0.0) || !(w <= 20.0)) throw DomainError("annulus sweep needs 0 < w <= 20");
  for (double R : R_list)
    if (!(R >= 20.0) || !std::isfinite(R)) throw DomainError("annulus sweep needs R >= 20");
  VolcompSweep out;
  for (double R : R_list)
    for (double w : w_list)
      for (double x : x_list) {
        VolcompRow row{R, w, x};
        row.volume = annulus_volume({R, w, x});
        row.bound = std::sqrt(R * w) + R * w;
        row.ratio = row.volume / row.bound;
        if (row.ratio > out.sup) {
          out.sup = row.ratio;
          out.argmax = row;
        }
        out.rows.push_back(row);
      }
  return out;
}

void VolcompSweep::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"R", "w", "x", "V", "bound", "ratio"});
  for (const auto& r : rows)
    csv.row({format_number(r.R), format_number(r.w), format_number(r.x), format_number(r.volume),
             format_number(r.bound), format_number(r.ratio)});
}

int ShellSpec::max_index(double R) { return static_cast<int>(std::ceil(std::sqrt(R))) + 1; }

void ShellSpec::validate() const {
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("shell radius must be finite and nonnegative");
  if (c != 0.0 && c != 0.5) throw DomainError("shell centre offset must be 0 or 1/2");
  if (index == kInfiniteShell) return;
  if (R < kMinShellRadius) throw DomainError("finite shells are defined only for R >= 50");
  if (index < 0 || index > max_index(R)) throw DomainError("shell index outside 0 .. ceil(sqrt R) + 1");
}

bool ShellSpec::contains(double zeta, double kappa) const {
  const double dk = kappa - c;
  const double d2 = zeta * zeta + dk * dk;
  if (!finite()) {
    if (R < kMinShellRadius) return true;
    return !in_band(d2, covered_band(*this));
  }
  if (R < kMinShellRadius) return false;
  for (const auto& b : shell_bands(*this))
    if (in_band(d2, b)) return true;
  return false;
}

double shell_measure(const ShellSpec& s) {
  s.validate();
  if (!s.finite()) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& b : shell_bands(s)) total += annulus_volume({b.lo, b.hi - b.lo, -s.c});
  return total;
}

void write_shell_csv(std::ostream& os, const std::vector<ShellRow>& rows) {
  CsvWriter csv(os, {"R", "j", "measure"});
  for (const auto& r : rows) csv.row({format_number(r.R), std::to_string(r.j), format_number(r.measure)});
}

namespace {

// Points of S_j (finite j) with radius biased toward the band edges and rows
// biased toward |kappa| = R - 10.
class ShellSampler {
 public:
  ShellSampler(const ShellSpec& s, std::uint64_t seed) : s_(s), rng_(seed) {}

  bool draw(double& zeta, double& kappa, double& radius) {
    const auto bands = shell_bands(s_);
    const Band& b = bands[pick(2)];
    radius = pick_radius(b.lo, b.hi);
    const long edge = static_cast<long>(std::floor(s_.R - 10.0));
    long k;
    if (pick(2) == 0) {
      std::uniform_int_distribution<long> row(static_cast<long>(std::floor(s_.c - radius)),
                                              static_cast<long>(std::ceil(s_.c + radius)));
      k = row(rng_);
    } else {
      std::uniform_int_distribution<long> off(-3, 6);
      k = (pick(2) == 0 ? 1 : -1) * (edge - off(rng_));
    }
    kappa = static_cast<double>(k);
    const double dk = kappa - s_.c;
    const double z2 = radius * radius - dk * dk;
    if (z2 < 0.0) return false;
    zeta = (pick(2) == 0 ? 1.0 : -1.0) * std::sqrt(z2);
    return true;
  }

  double pick_radius(double lo, double hi) {
    switch (pick(4)) {
      case 0:
        return lo;
      case 1:
        return std::nextafter(hi, lo);
      default:
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  ShellSpec s_;
  std::mt19937_64 rng_;
};

void record(SampleCheck& r, double margin) {
  ++r.checked;
  r.worst_margin = std::min(r.worst_margin, margin);
  if (margin < 0.0) ++r.counterexamples;
}

void require_samples(std::int64_t samples) {
  if (samples < 1) throw DomainError("sample count must be positive");
}

std::int64_t draw_cap(std::int64_t samples) { return 200 * samples + 1000; }

}  // namespace

SampleCheck kappa_implication_check(const ShellSpec& s, std::int64_t samples, std::uint64_t seed) {
  s.validate();
  require_samples(samples);
  if (!s.finite() || s.R < kMinShellRadius) throw DomainError("kappa implication needs a finite shell with R >= 50");
  ShellSampler sampler(s, seed);
  SampleCheck r;
  while (r.checked < samples && r.drawn < draw_cap(samples)) {
    ++r.drawn;
    double zeta, kappa, radius;
    if (!sampler.draw(zeta, kappa, radius) || !s.contains(zeta, kappa)) continue;
    if (std::abs(kappa) > s.R - 10.0) {
      ++r.excluded;
      continue;
    }
    record(r, std::abs(zeta) - std::sqrt(s.R * (s.R - std::abs(kappa) - 1.0)));
  }
  return r;
}

double simplebd2_sum(double A, const ShellSpec& s) {
  s.validate();
  if (A == 0.0) throw DomainError("simplebd2 sum is undefined at A = 0");
  if (A < 0.0 || !s.finite() || s.R < kMinShellRadius) return 0.0;
  const double zeta = std::sqrt(A);
  const long K = static_cast<long>(std::floor(s.R - 10.0));
  long count = 0;
  for (long k = -K; k <= K; ++k)
    if (s.contains(zeta, static_cast<double>(k))) ++count;
  return static_cast<double>(count) / zeta;
}

Simplebd2Sup simplebd2_sup(const ShellSpec& s) {
  s.validate();
  if (!s.finite()) throw DomainError("simplebd2 sup needs a finite shell");
  const long K = static_cast<long>(std::floor(s.R - 10.0));
  const auto bands = shell_bands(s);
  // Rows with A + (kappa - c)^2 in [lo^2, hi^2), restricted to |kappa| <= K, taken
  // just to the right of A: band entries and exits that tie with A up to rounding
  // are resolved as entered and exited.
  const auto count_rows = [&](double A) {
    const double tol = 1e-10 * (s.R + 2.0) * (s.R + 2.0);
    const auto in_band_right = [&](double d2, const Band& b) {
      return b.lo * b.lo - tol <= d2 && d2 < b.hi * b.hi - tol;
    };
    long count = 0;
    for (const auto& b : bands) {
      const double u_lo = std::sqrt(std::max(0.0, b.lo * b.lo - A));
      const double u_hi = std::sqrt(std::max(0.0, b.hi * b.hi - A));
      for (int sign : {1, -1}) {
        const double first = s.c + sign * (sign > 0 ? u_lo : u_hi);
        const double last = s.c + sign * (sign > 0 ? u_hi : u_lo);
        for (long k = static_cast<long>(std::floor(first)) - 1; k <= static_cast<long>(std::ceil(last)) + 1; ++k) {
          if (std::abs(k) > K) continue;
          if (sign < 0 && static_cast<double>(k) - s.c >= 0.0) continue;
          if (sign > 0 && static_cast<double>(k) - s.c < 0.0) continue;
          const double dk = static_cast<double>(k) - s.c;
          if (in_band_right(A + dk * dk, b)) ++count;
        }
      }
    }
    return count;
  };
  Simplebd2Sup best;
  for (long k = -K; k <= K; ++k) {
    const double dk = static_cast<double>(k) - s.c;
    for (const auto& b : bands) {
      const double A = b.lo * b.lo - dk * dk;
      if (!(A > 0.0)) continue;
      const double v = static_cast<double>(count_rows(A)) / std::sqrt(A);
      if (v > best.sup) best = {v, A};
    }
  }
  return best;
}

SampleCheck control_exp_check(const ShellSpec& s, std::int64_t samples, double C0, std::uint64_t seed) {
  s.validate();
  require_samples(samples);
  if (!(C0 > 0.0)) throw DomainError("control constant must be positive");
  const double log_c0 = std::log(C0);
  ShellSampler sampler(s, seed);
  SampleCheck r;
  const double R2 = s.R * s.R;
  const auto lhs_at = [&](double zeta, double kappa) {
    const double dk = kappa - s.c;
    const double e = zeta * zeta + dk * dk - R2;
    return -0.5 * e * e;
  };
  if (s.finite()) {
    const double rhs = log_c0 - 0.5 * s.index * s.index;
    while (r.checked < samples && r.drawn < draw_cap(samples)) {
      ++r.drawn;
      double zeta, kappa, radius;
      if (!sampler.draw(zeta, kappa, radius) || !s.contains(zeta, kappa)) continue;
      record(r, rhs - lhs_at(zeta, kappa));
    }
    return r;
  }
  // Radii from the two sides of the finite shells (or everywhere when R < 50),
  // biased toward R and the shell edges.
  const Band gap = covered_band(s);
  const double far = 3.0 * s.R + 150.0;
  while (r.checked < samples && r.drawn < draw_cap(samples)) {
    ++r.drawn;
    double radius;
    switch (sampler.pick(4)) {
      case 0:
        radius = s.R < kMinShellRadius ? s.R : std::max(0.0, std::nextafter(gap.lo, 0.0));
        break;
      case 1:
        radius = s.R < kMinShellRadius ? std::uniform_real_distribution<double>(0.0, 2.0 * s.R + 1.0)(sampler.rng())
                                       : gap.hi;
        break;
      default:
        radius = std::uniform_real_distribution<double>(0.0, far)(sampler.rng());
    }
    std::uniform_int_distribution<long> row(static_cast<long>(std::floor(s.c - radius)),
                                            static_cast<long>(std::ceil(s.c + radius)));
    const double kappa = static_cast<double>(row(sampler.rng()));
    const double dk = kappa - s.c;
    const double z2 = radius * radius - dk * dk;
    if (z2 < 0.0) continue;
    const double zeta = (sampler.pick(2) == 0 ? 1.0 : -1.0) * std::sqrt(z2);
    if (!s.contains(zeta, kappa)) continue;
    const double dist = std::sqrt(zeta * zeta + dk * dk);
    record(r, log_c0 - 0.5 * dist - lhs_at(zeta, kappa));
  }
  return r;
}

}  // namespace cyl
