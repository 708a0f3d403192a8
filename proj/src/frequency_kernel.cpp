#include "cyl/frequency_kernel.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <set>

#include "cyl/errors.hpp"
#include "cyl/io.hpp"
#include "cyl/parallel.hpp"
#include "cyl/quadrature.hpp"

namespace cyl {

namespace {

constexpr double kPi = std::numbers::pi;

void require_constrained(const std::pair<double, int>& forms) {
  if (std::abs(forms.first) > 1e-12 || forms.second != 0)
    throw DomainError("tuple violates the linear constraints <xi> = <k> = 0");
}

}  // namespace

double q_form(const FreqTuple4& t) {
  const auto& x = t.xi;
  const auto& k = t.kk;
  return x[0] * x[0] + x[2] * x[2] - x[1] * x[1] - x[3] * x[3] +
         static_cast<double>(k[0] * k[0] + k[2] * k[2] - k[1] * k[1] - k[3] * k[3]);
}

std::pair<double, int> linear_forms(const FreqTuple4& t) {
  return {t.xi[0] - t.xi[1] + t.xi[2] - t.xi[3], t.kk[0] - t.kk[1] + t.kk[2] - t.kk[3]};
}

FactoredForm factor_q(const FreqTuple4& t) {
  require_constrained(linear_forms(t));
  const double hx = 0.5 * (t.xi[0] - t.xi[2]);
  const double hy = 0.5 * (t.kk[0] - t.kk[2]);
  return {0.5 * (t.xi[0] + t.xi[2]), 0.5 * (t.kk[0] + t.kk[2]), hx * hx + hy * hy};
}

FactoredForm factor_q_primed(const FreqTuple4& t) {
  require_constrained(linear_forms(t));
  const double hx = 0.5 * (t.xi[1] - t.xi[3]);
  const double hy = 0.5 * (t.kk[1] - t.kk[3]);
  return {0.5 * (t.xi[1] + t.xi[3]), 0.5 * (t.kk[1] + t.kk[3]), hx * hx + hy * hy};
}

double reconstruct_q(const FactoredForm& f, const FreqTuple4& t) {
  const double dx = t.xi[1] - f.cx;
  const double dy = t.kk[1] - f.cy;
  return -2.0 * (dx * dx + dy * dy - f.radius_sq);
}

double reconstruct_q_primed(const FactoredForm& f, const FreqTuple4& t) {
  const double dx = t.xi[0] - f.cx;
  const double dy = t.kk[0] - f.cy;
  return 2.0 * (dx * dx + dy * dy - f.radius_sq);
}

void DiscreteDensity::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("density spacing h must be positive");
  std::set<std::pair<int, int>> seen;
  for (const auto& c : cells) {
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag()))
      throw DomainError("density values must be finite");
    if (!seen.insert({c.m, c.k}).second) throw DomainError("duplicate density cell");
  }
}

double jgamma4_spectral(const DiscreteDensity& f, int gamma) {
  f.validate();
  const double n = static_cast<double>(f.cells.size());
  if (n * n * n > kMaxSpectralTerms) throw DomainError("density support too large for the constrained quadruple sum");
  std::map<std::pair<int, int>, Complex> lookup;
  for (const auto& c : f.cells) lookup[{c.m, c.k}] = c.value;
  Complex sum = 0.0;
  double magnitude = 0.0;
  for (const auto& c1 : f.cells)
    for (const auto& c2 : f.cells)
      for (const auto& c3 : f.cells) {
        const int m4 = c1.m - c2.m + c3.m;
        const int k4 = c1.k - c2.k + c3.k;
        const auto it = lookup.find({m4, k4});
        if (it == lookup.end()) continue;
        FreqTuple4 t;
        t.xi = {c1.m * f.h, c2.m * f.h, c3.m * f.h, m4 * f.h};
        t.kk = {c1.k, c2.k, c3.k, k4};
        const double Q = q_form(t);
        const Complex term = c1.value * std::conj(c2.value) * c3.value * std::conj(it->second) *
                             std::exp(-0.25 * Q * Q) * std::polar(1.0, -gamma * Q);
        sum += term;
        magnitude += std::abs(term);
      }
  if (std::abs(sum.imag()) > 1e-8 * std::max(std::abs(sum.real()), 1e-300) && std::abs(sum.imag()) > 1e-14 * magnitude)
    throw DiagnosticError("spectral J_gamma^4 has a non-negligible imaginary part");
  const double value = 4.0 * std::pow(kPi, 2.5) * f.h * f.h * f.h * sum.real();
  return std::max(value, 0.0);
}

SpectralField to_spectral_field(const DiscreteDensity& f, int nx, int ny) {
  f.validate();
  SpectralField F(make_grid(2.0 * kPi / f.h, nx, ny));
  for (const auto& c : f.cells) {
    if (2 * std::abs(c.m) >= nx || 2 * std::abs(c.k) >= ny) throw DomainError("density cell outside the grid band");
    F.mode(c.m, c.k) = c.value;
  }
  return F;
}

ThetaCheck poisson_theta_check(double eps, double theta) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("theta check needs eps > 0");
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  // Terms below e^{-130} are dropped on both sides.
  constexpr double cut = 130.0;
  const Real e = eps;
  const Real th = theta;
  const Real pi = boost::math::constants::pi<Real>();
  Real lhs = 1;
  const long G = static_cast<long>(std::ceil(std::sqrt(cut / eps)));
  for (long g = 1; g <= G; ++g) {
    const Real gg = g;
    lhs += 2 * exp(-e * gg * gg) * cos(gg * th);
  }
  Real rhs = 0;
  const double centre = theta / (2.0 * kPi);
  const long span = static_cast<long>(std::ceil(std::sqrt(4.0 * eps * cut) / (2.0 * kPi))) + 1;
  for (long m = static_cast<long>(std::floor(centre)) - span; m <= static_cast<long>(std::ceil(centre)) + span; ++m) {
    const Real d = th - 2 * pi * m;
    rhs += exp(-d * d / (4 * e));
  }
  rhs *= sqrt(pi / e);
  return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

double delta_circle_integral(const CircleWeight& g, double B, int nodes) {
  if (nodes < 1) throw DomainError("node count must be positive");
  if (!(B > 0.0)) return 0.0;
  const double r = std::sqrt(B);
  const double step = 2.0 * kPi / nodes;
  double sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = j * step;
    sum += g(r * std::cos(t), r * std::sin(t));
  }
  return 0.5 * step * sum;
}

PolarizationExponents polarization_exponents(double Q, double Qp) {
  const double mu = Q - Qp;
  const double s = Q * Q + Qp * Qp;
  return {-0.25 * s, -mu * mu / 16.0 - 0.125 * s};
}

double folded_level(double R, double Rp, double mu) { return R * R + Rp * Rp - 0.5 * mu; }

int ReducedIntegralParams::effective_kappa_bound() const {
  return kappa_bound ? *kappa_bound : static_cast<int>(std::ceil(std::sqrt(std::max(A, 0.0)))) + 10;
}

void ReducedIntegralParams::validate() const {
  auto half_integer_centre = [](double v) { return v == 0.0 || v == 0.5; };
  if (!half_integer_centre(c) || !half_integer_centre(c_prime)) throw DomainError("centres c, c' must be 0 or 1/2");
  if (!std::isfinite(A)) throw DomainError("A must be finite");
  if (!(R >= 0.0) || !(R_prime >= 0.0) || !std::isfinite(R) || !std::isfinite(R_prime))
    throw DomainError("radii must be nonnegative");
  if (nodes < 64) throw DomainError("angular node count must be at least 64");
  if (effective_kappa_bound() < std::sqrt(std::max(A, 0.0)) + 10.0) throw DomainError("insufficient kappa truncation");
}

namespace {

// Per (kappa,kappa') the circle integral reduces, with X = z^2 on z^2 + z'^2 = B, to
//   e^{-(p-q)^2/4} \int_0^pi e^{-(B(1+cos phi)/2 - m)^2} d phi,
// p = R^2 - a, q = B + a' - R'^2, m = (p+q)/2. Gauss-Legendre runs over the
// phi-window where |X - m| <= 9.
double reduced_I_impl(const ReducedIntegralParams& p, int nodes, int bound) {
  if (p.A <= 0.0) return 0.0;
  const auto unit = gauss_legendre(nodes, -1.0, 1.0);
  // Distinct values of (kappa - c)^2 with their multiplicities; kappa and
  // 2c - kappa give the same offset.
  const auto offsets = [&](double c) {
    std::vector<std::pair<double, double>> a;
    for (int j = 0; j <= bound; ++j) {
      const double d = j + c;
      a.push_back({d * d, (d == 0.0) ? 1.0 : 2.0});
    }
    return a;
  };
  const auto as = offsets(p.c);
  const auto aps = offsets(p.c_prime);
  const double gap = p.R * p.R + p.R_prime * p.R_prime - p.A;  // p - q, the same for every pair
  const double prefactor_exponent = 0.25 * gap * gap;
  if (prefactor_exponent > 700.0) return 0.0;
  const double prefactor = std::exp(-prefactor_exponent);
  double total = 0.0;
  for (const auto& [a, wa] : as) {
    for (const auto& [ap, wap] : aps) {
      const double B = p.A - a - ap;
      if (B <= 0.0) continue;
      const double pp = p.R * p.R - a;
      const double qq = B + ap - p.R_prime * p.R_prime;
      const double m = 0.5 * (pp + qq);
      const double xl = std::max(0.0, m - 9.0);
      const double xh = std::min(B, m + 9.0);
      if (xl >= xh) continue;
      const double phi_lo = std::acos(std::clamp(2.0 * xh / B - 1.0, -1.0, 1.0));
      const double phi_hi = std::acos(std::clamp(2.0 * xl / B - 1.0, -1.0, 1.0));
      const double mid = 0.5 * (phi_lo + phi_hi);
      const double half = 0.5 * (phi_hi - phi_lo);
      double s = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double phi = mid + half * unit.nodes[i];
        const double d = 0.5 * B * (1.0 + std::cos(phi)) - m;
        s += unit.weights[i] * std::exp(-d * d);
      }
      total += wa * wap * half * s;
    }
  }
  return prefactor * total;
}

double relative_change(double coarse, double fine) {
  const double diff = std::abs(fine - coarse);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(coarse), 1e-100);
}

}  // namespace

double reduced_I(const ReducedIntegralParams& p) {
  p.validate();
  return reduced_I_impl(p, p.nodes, p.effective_kappa_bound());
}

SchurSweepConfig SchurSweepConfig::defaults() {
  SchurSweepConfig c;
  for (int A = -10; A <= 400; A += 5) c.A_values.push_back(A);
  for (int R = 0; R <= 20; ++R) c.R_values.push_back(R);
  c.R_values.push_back(60);
  c.R_values.push_back(100);
  return c;
}

void SchurSweepConfig::validate() const {
  if (c_values.empty() || A_values.empty() || R_values.empty()) throw DomainError("Schur sweep is empty");
  for (double c : c_values)
    if (c != 0.0 && c != 0.5) throw DomainError("sweep centres must be 0 or 1/2");
  for (double R : R_values)
    if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("sweep radii must be nonnegative");
  for (double A : A_values)
    if (!std::isfinite(A)) throw DomainError("sweep levels must be finite");
  if (nodes < 64) throw DomainError("angular node count must be at least 64");
  if (!(mu_max >= 0.0)) throw DomainError("mu truncation must be nonnegative");
}

SchurSweepResult schur_sweep(const SchurSweepConfig& config) {
  config.validate();
  struct Base {
    double c, cp, R, Rp;
  };
  std::vector<Base> bases;
  for (double c : config.c_values)
    for (double cp : config.c_values)
      for (double R : config.R_values)
        for (double Rp : config.R_values) bases.push_back({c, cp, R, Rp});

  const auto evaluate = [&](const Base& b, double A) {
    ReducedIntegralParams p;
    p.c = b.c;
    p.c_prime = b.cp;
    p.A = A;
    p.R = b.R;
    p.R_prime = b.Rp;
    p.nodes = config.nodes;
    const int bound = p.effective_kappa_bound();
    return std::make_pair(reduced_I_impl(p, config.nodes, bound), reduced_I_impl(p, 2 * config.nodes, 2 * bound));
  };

  const std::size_t nA = config.A_values.size();
  SchurSweepResult result;
  result.points.resize(bases.size() * nA);
  parallel_for(result.points.size(), config.threads, [&](std::size_t i) {
    const Base& b = bases[i / nA];
    const double A = config.A_values[i % nA];
    const auto [coarse, fine] = evaluate(b, A);
    result.points[i] = {b.c, b.cp, A, b.R, b.Rp, coarse, relative_change(coarse, fine)};
  });

  if (config.fold_mu) {
    const int J = static_cast<int>(std::floor(config.mu_max / (2.0 * kPi)));
    result.folded.resize(bases.size());
    parallel_for(bases.size(), config.threads, [&](std::size_t i) {
      const Base& b = bases[i];
      double coarse = 0.0, fine = 0.0;
      for (int j = -J; j <= J; ++j) {
        const double mu = 2.0 * kPi * j;
        const double w = 0.5 * std::exp(-mu * mu / 16.0);
        const auto [c0, c1] = evaluate(b, folded_level(b.R, b.Rp, mu));
        coarse += w * c0;
        fine += w * c1;
      }
      result.folded[i] = {b.c, b.cp, b.R, b.Rp, coarse, relative_change(coarse, fine)};
    });
  }

  for (const auto& pt : result.points) {
    if (!std::isfinite(pt.value)) throw DiagnosticError("non-finite reduced integral in the Schur sweep");
    if (pt.value > result.sup) {
      result.sup = pt.value;
      result.argmax = pt;
    }
    result.certificate = std::max(result.certificate, pt.cert);
  }
  for (const auto& pt : result.folded) {
    if (!std::isfinite(pt.value)) throw DiagnosticError("non-finite folded Schur value");
    result.folded_sup = std::max(result.folded_sup, pt.value);
    result.certificate = std::max(result.certificate, pt.cert);
  }
  if (result.points.size() == 1 && result.sup == 0.0) result.argmax = result.points.front();
  return result;
}

void SchurSweepResult::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"c", "cp", "A", "R", "Rp", "value", "cert"});
  for (const auto& p : points)
    csv.row({format_number(p.c), format_number(p.cp), format_number(p.A), format_number(p.R), format_number(p.Rp),
             format_number(p.value), format_number(p.cert)});
}

void SchurSweepResult::write_folded_csv(std::ostream& os) const {
  CsvWriter csv(os, {"c", "cp", "R", "Rp", "value", "cert"});
  for (const auto& p : folded)
    csv.row({format_number(p.c), format_number(p.cp), format_number(p.R), format_number(p.Rp),
             format_number(p.value), format_number(p.cert)});
}

}  // namespace cyl
