#pragma once

// Projected gradient ascent for Phi(F) = sum_gamma I_gamma^2,
// I_gamma = \int_slab \int |e^{it Lap} F|^4, on the unit L2 sphere.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyl/grid.hpp"
#include "cyl/mixed_norms.hpp"
#include "cyl/quadrature.hpp"

namespace cyl {

enum class InitKind { from_Fn, from_fn, random_gaussian };

std::string to_string(InitKind kind);
InitKind init_kind_from_string(const std::string& s);

struct OptimizerConfig {
  int max_iters = 50;
  double initial_step = 0.5;
  double backtrack = 0.5;
  double sufficient_increase = 1e-4;
  double tol = 1e-10;
  double min_step = 1e-12;
  std::uint64_t seed = 1;
  InitKind init = InitKind::from_fn;
  double init_n = 8.0;
  // Restrict the search to |m| < nx/4, |k| < ny/4.
  bool dealias = false;
  FlowSampling sampling;

  void validate() const;
};

// Normalized initial datum on `grid`.
SpectralField make_init(const OptimizerConfig& config, const CylinderGrid& grid);

double objective(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling = {});

struct ObjectiveGradient {
  double phi = 0.0;
  SpectralField grad;
};

// Representative of the real derivative under the spectral inner product:
// Phi(F + h) = Phi(F) + Re<grad, h> + o(|h|).
ObjectiveGradient objective_and_gradient(const SpectralField& F, const SlabDecomposition& slabs,
                                         const FlowSampling& sampling = {});
SpectralField gradient(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling = {});

// Phi^{1/8} / |F|_{L2}.
double quotient_of(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling = {});

struct AscentStep {
  int iter = 0;
  double phi = 0.0;
  double quotient = 0.0;
  double step = 0.0;
  double gradnorm = 0.0;
};

struct AscentTrace {
  std::vector<AscentStep> steps;
  SpectralField final_field;
  bool converged = false;

  void write_csv(std::ostream& os) const;
};

AscentTrace maximize(const SpectralField& init, const OptimizerConfig& config, const SlabDecomposition& slabs);

}  // namespace cyl
