#pragma once

// Mixed space-time norms over unit time slabs,
//   ||u||_{l^a L^b L^c} = ( sum_gamma ( \int_0^1 ||u(gamma+s)||_{L^c}^b ds )^{a/b} )^{1/a},
// the Gaussian-windowed slab norms J_gamma, and Strichartz quotients.

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyl/grid.hpp"
#include "cyl/quadrature.hpp"

namespace cyl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ExponentTriple {
  double a = 8.0;
  double b = 4.0;
  double c = 4.0;
  std::optional<double> sobolev_s;
  std::optional<std::pair<double, double>> qp;

  // l^q L^p L^p with 2/q + 1/p = 1/2 and s = 1 - 4/p.
  static ExponentTriple from_qp(double q, double p);
  void validate() const;
};

struct FlowSampling {
  EscapeConfig escape;
  // Evaluate each node on the smallest Lx/2^p sub-box that still passes the
  // escape diagnostic (exact periodization of the full-box field).
  bool adaptive_window = false;
  int threads = 1;
};

struct TimeSampledField {
  SlabDecomposition slabs;
  std::vector<PhysicalField> snapshots;  // slab-major, ascending gamma

  const PhysicalField& at(int gamma, int node) const;
  void validate() const;
};

// Snapshots u(gamma + s_i) = inverse_transform(propagate(F, gamma + s_i)).
TimeSampledField sample_flow(const SpectralField& F, const SlabDecomposition& slabs,
                             const FlowSampling& sampling = {});

// (dx dy sum |u|^c)^{1/c}; c = inf gives the max modulus.
double spatial_norm(const PhysicalField& u, double c);

struct MixedNormResult {
  double value = 0.0;
  double tail_ratio = 0.0;  // share of the outermost slab pair in the gamma-sum
};

// Nested reduction from per-node spatial L^c norms (slab-major order).
MixedNormResult reduce_mixed_norm(const SlabDecomposition& slabs, std::span<const double> node_norms,
                                  double a, double b);

double mixed_norm(const TimeSampledField& u, const ExponentTriple& e);

struct FlowNodeNorms {
  std::vector<double> norms;
  std::vector<double> escape;
  std::vector<int> window_factor;
  double max_escape() const;
};

// Streams the flow node by node and keeps only the spatial L^c norms.
FlowNodeNorms flow_node_norms(const SpectralField& F, const SlabDecomposition& slabs, double c,
                              const FlowSampling& sampling = {});

struct StrichartzLhs {
  double value = 0.0;
  double tail_ratio = 0.0;
  double max_escape = 0.0;
};

StrichartzLhs strichartz_lhs(const SpectralField& F, const ExponentTriple& e, const SlabDecomposition& slabs,
                             const FlowSampling& sampling = {});

// lhs / ||F||_{L2}, or lhs / ||F||_{H^s} when e.sobolev_s is set.
double strichartz_quotient(const SpectralField& F, const ExponentTriple& e, const SlabDecomposition& slabs,
                           const FlowSampling& sampling = {});

struct WindowedNormSpec {
  int gamma = 0;
  double half_width = 8.0;  // T_c
  int time_nodes = 256;

  void validate() const;
};

// J_gamma^4 = \int e^{-(t-gamma)^2} ||u(t)||_{L^4}^4 dt over [gamma - T_c, gamma + T_c].
double jgamma_fourth(const SpectralField& F, const WindowedNormSpec& spec, const FlowSampling& sampling = {});
double jgamma(const SpectralField& F, const WindowedNormSpec& spec, const FlowSampling& sampling = {});

// ||e^{it Lap} P_{<=N} F||_{l^4 L^inf L^inf} / (N ||F||_{L2}).
double linfty_probe(const SpectralField& F, double N, const SlabDecomposition& slabs,
                    const FlowSampling& sampling = {}, const BumpProfile& phi = {});

}  // namespace cyl
