#pragma once

// Discretized cylinder R x T (T = R / 2piZ), Fourier pair, free Schrodinger
// propagator and the base L2 / H^s norms.
//
// Conventions. The x-interval [-Lx/2, Lx/2) is sampled at x_i = -Lx/2 + i dx,
// the circle at y_j = j dy. Frequencies are xi_m = m (2pi/Lx) and integers k,
// stored in FFT order (index i <-> signed i for i < n/2, i - n otherwise).
// The coefficient array approximates
//     F(xi,k) = (2pi)^-2 \int\int u(x,y) e^{-i x xi - i k y} dy dx,
// and the synthesis is u(x,y) = sum_k \int F(xi,k) e^{i x xi + i k y} d xi,
// with d xi = 2pi/Lx. With these weights the physical L2 norm equals
// 2pi * (sum |F|^2 d xi)^{1/2}.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cyl {

using Complex = std::complex<double>;

struct CylinderGrid {
  double box_length_x = 0.0;
  int nx = 0;
  int ny = 0;

  double dx() const { return box_length_x / nx; }
  double dy() const;
  double dxi() const;  // x-frequency spacing 2pi/Lx
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  double x_at(int ix) const { return -0.5 * box_length_x + ix * dx(); }
  double y_at(int iy) const { return iy * dy(); }
  // Signed frequency numbers for an FFT-ordered index.
  int mode_x(int ix) const { return ix < nx / 2 ? ix : ix - nx; }
  int mode_y(int iy) const { return iy < ny / 2 ? iy : iy - ny; }
  double xi_at(int ix) const { return mode_x(ix) * dxi(); }
  double k_at(int iy) const { return mode_y(iy); }
  // FFT-ordered index of a signed mode number (wraps modulo n).
  int index_x(int m) const { return ((m % nx) + nx) % nx; }
  int index_y(int k) const { return ((k % ny) + ny) % ny; }

  bool operator==(const CylinderGrid&) const = default;
};

CylinderGrid make_grid(double box_length_x, int nx, int ny);

// Samples u(x_i, y_j), row-major with ix outer.
struct PhysicalField {
  CylinderGrid grid;
  std::vector<Complex> values;

  PhysicalField() = default;
  explicit PhysicalField(const CylinderGrid& g) : grid(g), values(g.size()) {}
  Complex& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * grid.ny + iy]; }
  Complex at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * grid.ny + iy]; }
};

// Coefficients F(xi_m, k), FFT order, row-major with the xi index outer.
struct SpectralField {
  CylinderGrid grid;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(const CylinderGrid& g) : grid(g), coeffs(g.size()) {}
  Complex& at(int ix, int iy) { return coeffs[static_cast<std::size_t>(ix) * grid.ny + iy]; }
  Complex at(int ix, int iy) const { return coeffs[static_cast<std::size_t>(ix) * grid.ny + iy]; }
  Complex& mode(int m, int k) { return at(grid.index_x(m), grid.index_y(k)); }
  Complex mode(int m, int k) const { return at(grid.index_x(m), grid.index_y(k)); }
};

// Smooth even cutoff: 1 on [-1,1], 0 outside [-2,2], monotone in between.
// Transition is the C-infinity partition e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}).
struct BumpProfile {
  double inner_radius = 1.0;
  double outer_radius = 2.0;

  double operator()(double r) const;
  static constexpr const char* kName = "exp-partition-of-unity";
};

SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& F);

// Multiplies by e^{-it(xi^2 + k^2)}.
SpectralField propagate(const SpectralField& F, double t);

// Coefficients of the Lx/factor-periodization of the synthesized field,
// i.e. every factor-th xi coefficient. Exact DFT aliasing identity; the
// result lives on a box of length Lx/factor with the same dx.
SpectralField periodize(const SpectralField& F, int factor);

// Multiplier phi(xi/N) phi(k/N).
SpectralField project_low(const SpectralField& F, double N, const BumpProfile& phi = {});

double l2_norm(const SpectralField& F);
double l2_norm(const PhysicalField& f);
// Weight (1 + xi^2 + k^2)^{s/2}.
double sobolev_norm(const SpectralField& F, double s);

// Discrete physical inner product dx dy sum conj(a) b.
Complex inner_product(const PhysicalField& a, const PhysicalField& b);
// Spectral inner product consistent with l2_norm: 4pi^2 dxi sum conj(A) B.
Complex inner_product(const SpectralField& A, const SpectralField& B);

// Fraction of |u|^2 mass with |x| >= Lx/4, i.e. within Lx/4 of the box edge.
double escape_fraction(const PhysicalField& f);

struct EscapeConfig {
  double threshold = 1e-8;
  bool enforce = true;
};

// CYLF v1 text format.
void write_cylf(const PhysicalField& f, const std::string& path);
PhysicalField read_cylf(const std::string& path);

}  // namespace cyl
