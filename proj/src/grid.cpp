#include "cyl/grid.hpp"

#include <cmath>
#include <numbers>

#include "cyl/errors.hpp"
#include "fft.hpp"

namespace cyl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_grid(const CylinderGrid& a, const CylinderGrid& b) {
  if (!(a == b)) throw DomainError("grid mismatch");
}

}  // namespace

double CylinderGrid::dy() const { return kTwoPi / ny; }
double CylinderGrid::dxi() const { return kTwoPi / box_length_x; }

CylinderGrid make_grid(double box_length_x, int nx, int ny) {
  if (!(box_length_x > 0.0) || !std::isfinite(box_length_x))
    throw DomainError("box_length_x must be positive and finite");
  if (nx < 2 || nx % 2 != 0) throw DomainError("nx must be even and >= 2");
  if (ny < 2 || ny % 2 != 0) throw DomainError("ny must be even and >= 2");
  return CylinderGrid{box_length_x, nx, ny};
}

double BumpProfile::operator()(double r) const {
  const double a = std::abs(r);
  if (a <= inner_radius) return 1.0;
  if (a >= outer_radius) return 0.0;
  const double u = (a - inner_radius) / (outer_radius - inner_radius);
  const double g0 = std::exp(-1.0 / (1.0 - u));
  const double g1 = std::exp(-1.0 / u);
  return g0 / (g0 + g1);
}

SpectralField forward_transform(const PhysicalField& f) {
  const auto& g = f.grid;
  SpectralField F(g);
  F.coeffs = f.values;
  detail::fft2d(F.coeffs, g.nx, g.ny, detail::FftDirection::kForward);
  // x_0 = -Lx/2 contributes the phase e^{i pi m} = (-1)^m.
  const double scale = g.dx() * g.dy() / (kTwoPi * kTwoPi);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double s = (ix % 2 == 0) ? scale : -scale;
    for (int iy = 0; iy < g.ny; ++iy) F.at(ix, iy) *= s;
  }
  return F;
}

PhysicalField inverse_transform(const SpectralField& F) {
  const auto& g = F.grid;
  PhysicalField f(g);
  f.values = F.coeffs;
  const double scale = g.dxi();
  for (int ix = 0; ix < g.nx; ++ix) {
    const double s = (ix % 2 == 0) ? scale : -scale;
    for (int iy = 0; iy < g.ny; ++iy) f.at(ix, iy) *= s;
  }
  detail::fft2d(f.values, g.nx, g.ny, detail::FftDirection::kBackward);
  return f;
}

SpectralField propagate(const SpectralField& F, double t) {
  if (!std::isfinite(t)) throw DomainError("propagation time must be finite");
  const auto& g = F.grid;
  std::vector<Complex> px(g.nx), py(g.ny);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double xi = g.xi_at(ix);
    px[ix] = std::polar(1.0, -t * xi * xi);
  }
  for (int iy = 0; iy < g.ny; ++iy) {
    const double k = g.k_at(iy);
    py[iy] = std::polar(1.0, -t * k * k);
  }
  SpectralField out(g);
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) out.at(ix, iy) = F.at(ix, iy) * px[ix] * py[iy];
  return out;
}

SpectralField periodize(const SpectralField& F, int factor) {
  const auto& g = F.grid;
  if (factor < 1 || g.nx % factor != 0 || (g.nx / factor) % 2 != 0)
    throw DomainError("periodization factor must divide nx into an even count");
  const CylinderGrid sub{g.box_length_x / factor, g.nx / factor, g.ny};
  SpectralField out(sub);
  for (int ix = 0; ix < sub.nx; ++ix) {
    const int src = g.index_x(sub.mode_x(ix) * factor);
    for (int iy = 0; iy < g.ny; ++iy) out.at(ix, iy) = F.at(src, iy);
  }
  return out;
}

SpectralField project_low(const SpectralField& F, double N, const BumpProfile& phi) {
  if (!(N > 0.0)) throw DomainError("projection scale N must be positive");
  const auto& g = F.grid;
  SpectralField out(g);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double wx = phi(g.xi_at(ix) / N);
    for (int iy = 0; iy < g.ny; ++iy) out.at(ix, iy) = F.at(ix, iy) * (wx * phi(g.k_at(iy) / N));
  }
  return out;
}

double l2_norm(const SpectralField& F) { return sobolev_norm(F, 0.0); }

double l2_norm(const PhysicalField& f) {
  double sum = 0.0;
  for (const auto& v : f.values) sum += std::norm(v);
  return std::sqrt(sum * f.grid.dx() * f.grid.dy());
}

double sobolev_norm(const SpectralField& F, double s) {
  const auto& g = F.grid;
  double sum = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double xi = g.xi_at(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double a = std::norm(F.at(ix, iy));
      if (a == 0.0) continue;
      const double k = g.k_at(iy);
      sum += (s == 0.0 ? 1.0 : std::pow(1.0 + xi * xi + k * k, s)) * a;
    }
  }
  return kTwoPi * std::sqrt(sum * g.dxi());
}

Complex inner_product(const PhysicalField& a, const PhysicalField& b) {
  require_same_grid(a.grid, b.grid);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::conj(a.values[i]) * b.values[i];
  return sum * (a.grid.dx() * a.grid.dy());
}

Complex inner_product(const SpectralField& A, const SpectralField& B) {
  require_same_grid(A.grid, B.grid);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < A.coeffs.size(); ++i) sum += std::conj(A.coeffs[i]) * B.coeffs[i];
  return sum * (kTwoPi * kTwoPi * A.grid.dxi());
}

double escape_fraction(const PhysicalField& f) {
  const auto& g = f.grid;
  const double edge = 0.25 * g.box_length_x;
  double total = 0.0, outer = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    double row = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) row += std::norm(f.at(ix, iy));
    total += row;
    if (std::abs(g.x_at(ix)) >= edge) outer += row;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace cyl
