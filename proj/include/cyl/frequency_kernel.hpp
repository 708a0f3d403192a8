#pragma once

// Frequency-side objects for the l^8 L^4 L^4 estimate: the quartic resonance
// form Q, its factorizations, the spectral expansion of J_gamma^4, a theta
// series identity, and the reduced Schur integral with its sweep.

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "cyl/grid.hpp"

namespace cyl {

struct FreqTuple4 {
  std::array<double, 4> xi{};
  std::array<int, 4> kk{};
};

// Q = xi1^2 + xi3^2 - xi2^2 - xi4^2 + k1^2 + k3^2 - k2^2 - k4^2.
double q_form(const FreqTuple4& t);
// (xi1 - xi2 + xi3 - xi4, k1 - k2 + k3 - k4).
std::pair<double, int> linear_forms(const FreqTuple4& t);

struct FactoredForm {
  double cx = 0.0;
  double cy = 0.0;  // in Z/2
  double radius_sq = 0.0;
};

// Q = -2 (|(xi2,k2) - c|^2 - R^2), c = midpoint of (xi1,k1), (xi3,k3).
FactoredForm factor_q(const FreqTuple4& t);
// Q' = +2 (|(xi1,k1) - c'|^2 - R'^2), c' = midpoint of (xi2,k2), (xi4,k4).
FactoredForm factor_q_primed(const FreqTuple4& t);
double reconstruct_q(const FactoredForm& f, const FreqTuple4& t);
double reconstruct_q_primed(const FactoredForm& f, const FreqTuple4& t);

// Piecewise-constant density: value v on the cell centred at xi = m h, row k.
struct DensityCell {
  int m = 0;
  int k = 0;
  Complex value;
};

struct DiscreteDensity {
  double h = 1.0;
  std::vector<DensityCell> cells;

  void validate() const;
};

inline constexpr double kMaxSpectralTerms = 1e7;

// 4 pi^{5/2} h^3 sum over cells with m4 = m1 - m2 + m3, k4 = k1 - k2 + k3 of
// f1 conj(f2) f3 conj(f4) e^{-Q^2/4} e^{-i gamma Q}.
double jgamma4_spectral(const DiscreteDensity& f, int gamma);

// The density as Fourier coefficients of the 2pi/h-periodic function on a
// box of length 2pi/h (its lattice periodization).
SpectralField to_spectral_field(const DiscreteDensity& f, int nx, int ny);

struct ThetaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// sum_gamma e^{-eps gamma^2} e^{-i gamma theta} and
// sqrt(pi/eps) sum_m e^{-(theta - 2 pi m)^2 / (4 eps)}, summed in 50-digit arithmetic.
ThetaCheck poisson_theta_check(double eps, double theta);

using CircleWeight = std::function<double(double, double)>;

// \iint delta(z^2 + z'^2 - B) g dz dz' = (1/2) \int_0^{2pi} g(sqrt B cos t, sqrt B sin t) dt,
// trapezoid rule; 0 for B <= 0.
double delta_circle_integral(const CircleWeight& g, double B, int nodes = 256);

// Exponents of both sides of e^{-(Q^2+Q'^2)/4} <= e^{-mu^2/16} e^{-(Q^2+Q'^2)/8}, mu = Q - Q'.
struct PolarizationExponents {
  double lhs = 0.0;
  double rhs = 0.0;
};
PolarizationExponents polarization_exponents(double Q, double Qp);

// Level on the circle |z|^2 + |z'|^2 = A_mu where Q - Q' = mu, given Q = -2(|z|^2 - R^2)
// and Q' = 2(|z'|^2 - R'^2): A_mu = R^2 + R'^2 - mu/2.
double folded_level(double R, double Rp, double mu);

struct ReducedIntegralParams {
  double c = 0.0;
  double c_prime = 0.0;
  double A = 0.0;
  double R = 0.0;
  double R_prime = 0.0;
  std::optional<int> kappa_bound;  // default ceil(sqrt(max(A,0))) + 10
  int nodes = 64;

  int effective_kappa_bound() const;
  void validate() const;
};

// sum_{kappa,kappa'} \iint e^{-([|(z,kappa)-C|^2 - R^2]^2 + [|(z',kappa')-C'|^2 - R'^2]^2)/2}
//   delta(|(z,kappa)-C|^2 + |(z',kappa')-C'|^2 - A) dz dz', C = (0,c), C' = (0,c').
double reduced_I(const ReducedIntegralParams& p);

struct SchurPoint {
  double c = 0.0, cp = 0.0, A = 0.0, R = 0.0, Rp = 0.0;
  double value = 0.0;
  double cert = 0.0;  // relative change under doubled nodes and kappa range
};

struct SchurFoldedPoint {
  double c = 0.0, cp = 0.0, R = 0.0, Rp = 0.0;
  double value = 0.0;
  double cert = 0.0;
};

struct SchurSweepConfig {
  std::vector<double> c_values{0.0, 0.5};
  std::vector<double> A_values;  // default -10, -5, ..., 400
  std::vector<double> R_values;  // default 0..20, 60, 100
  int nodes = 64;
  bool fold_mu = true;
  double mu_max = 40.0;
  int threads = 1;

  static SchurSweepConfig defaults();
  void validate() const;
};

struct SchurSweepResult {
  std::vector<SchurPoint> points;
  std::vector<SchurFoldedPoint> folded;
  double sup = 0.0;
  SchurPoint argmax;
  double certificate = 0.0;
  double folded_sup = 0.0;

  void write_csv(std::ostream& os) const;
  void write_folded_csv(std::ostream& os) const;
};

SchurSweepResult schur_sweep(const SchurSweepConfig& config);

}  // namespace cyl
