#pragma once

// Annuli and thin shells in R x Z (the row picture of R x T in frequency):
// exact row-by-row measures, the shell decomposition around a circle of
// radius R, and sampled checks of the pointwise controls used with them.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace cyl {

// Length of {x >= 0 : R^2 <= x^2 + y^2 <= (R+w)^2} in one row.
double segment_length(double y, double R, double w);

struct AnnulusSpec {
  double R = 0.0;
  double w = 0.0;
  double x_offset = 0.0;  // |x| <= 1/2

  void validate() const;
};

// V = sum over integer rows kappa of both segments at height kappa + x.
double annulus_volume(const AnnulusSpec& a);

struct VolcompRow {
  double R = 0.0, w = 0.0, x = 0.0;
  double volume = 0.0;
  double bound = 0.0;  // sqrt(Rw) + Rw
  double ratio = 0.0;
};

struct VolcompSweep {
  std::vector<VolcompRow> rows;
  double sup = 0.0;
  VolcompRow argmax;

  void write_csv(std::ostream& os) const;
};

// Requires 0 < w <= 20 <= R for every point.
VolcompSweep volcomp_ratio_sweep(const std::vector<double>& R_list, const std::vector<double>& w_list,
                                 const std::vector<double>& x_list);

inline constexpr int kInfiniteShell = -1;

struct ShellSpec {
  double R = 50.0;
  int index = 0;  // 0 .. ceil(sqrt R) + 1, or kInfiniteShell
  double c = 0.0;  // centre (0, c), c in {0, 1/2}

  static int max_index(double R);
  bool finite() const { return index != kInfiniteShell; }
  void validate() const;
  // Point (zeta, kappa) in the shell: | |(zeta, kappa - c)| - R | in [j/R, (j+1)/R),
  // or beyond every finite shell for the infinite index (everything when R < 50).
  bool contains(double zeta, double kappa) const;
};

// Exact measure (annulus volumes of the two bands); +inf for the infinite shell.
double shell_measure(const ShellSpec& s);

struct ShellRow {
  double R = 0.0;
  int j = 0;
  double measure = 0.0;
};
void write_shell_csv(std::ostream& os, const std::vector<ShellRow>& rows);

struct SampleCheck {
  std::int64_t drawn = 0;
  std::int64_t checked = 0;
  std::int64_t excluded = 0;
  std::int64_t counterexamples = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // min of rhs - lhs over checked samples

  bool passed() const { return counterexamples == 0 && checked > 0; }
};

// (zeta,kappa) in S_j and |kappa| <= R - 10  ==>  |zeta| >= sqrt(R (R - |kappa| - 1)).
SampleCheck kappa_implication_check(const ShellSpec& s, std::int64_t samples, std::uint64_t seed = 1);

// sum_{|kappa| <= R-10} \int 1_{S_j}(zeta, kappa) delta(zeta^2 - A) d zeta.
double simplebd2_sum(double A, const ShellSpec& s);

struct Simplebd2Sup {
  double sup = 0.0;
  double argmax_A = 0.0;
};

// Exact supremum over A > 0. The sum is count(A)/sqrt(A) with count piecewise
// constant and left-closed, so the supremum is attained at a left endpoint.
Simplebd2Sup simplebd2_sup(const ShellSpec& s);

inline const double kControlExpC0 = std::exp(26.0);

// 1_{S_j} e^{-(|z-C|^2 - R^2)^2/2} <= C0 e^{-j^2/2}, and for the infinite shell
// <= C0 e^{-|z-C|/2}; compared in log form.
SampleCheck control_exp_check(const ShellSpec& s, std::int64_t samples, double C0 = kControlExpC0,
                              std::uint64_t seed = 1);

}  // namespace cyl
