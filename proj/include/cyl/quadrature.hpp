#pragma once

#include <vector>

namespace cyl {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

// Gauss-Legendre on `panels` equal sub-intervals of [a, b].
QuadratureRule composite_gauss_legendre(int panels, int nodes_per_panel, double a, double b);

// Unit time slabs [gamma, gamma+1), gamma_min <= gamma <= gamma_max, all
// sharing one quadrature rule on [0,1). With `mirror_negative`, slabs with
// gamma < 0 use the reflected rule s -> 1 - s, so a rule graded toward s = 0
// is graded toward t = 0 on both sides.
struct SlabDecomposition {
  int gamma_min = 0;
  int gamma_max = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  bool mirror_negative = false;
  int panels = 1;

  int slab_count() const { return gamma_max - gamma_min + 1; }
  int nodes_per_slab() const { return static_cast<int>(nodes.size()); }
  double time(int gamma, int node) const;
  double weight(int /*gamma*/, int node) const { return weights[node]; }
  // gamma_min = -gamma_max (integer-centred) or gamma_min = -gamma_max - 1
  // (time interval symmetric about t = 0).
  bool symmetric() const;
  // Same panels, twice the nodes per panel.
  SlabDecomposition refined() const;

  // Gauss-Legendre with `nodes` points per slab.
  static SlabDecomposition uniform(int gamma_min, int gamma_max, int nodes = 8);
  // Composite rule with panel edges 0, h, 2h, 4h, ..., 1 (geometric toward 0)
  // and reflected on negative slabs.
  static SlabDecomposition graded(int gamma_min, int gamma_max, double finest_panel,
                                  int nodes_per_panel = 4);
  // Slabs -G-1 .. G, covering the time interval [-G-1, G+1).
  static SlabDecomposition time_symmetric(int G, int nodes = 8);

  void validate() const;

 private:
  int nodes_per_panel_ = 0;
  double finest_panel_ = 0.0;
};

}  // namespace cyl
