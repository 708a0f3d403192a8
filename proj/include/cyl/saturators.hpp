#pragma once

// The two saturating families
//   F_n(x,y) = n e^{-n^2 (x^2+y^2)} 1{n (x^2+y^2) <= 1}   (concentrating, genuinely 2d)
//   f_n(x,y) = n^{-1/2} e^{-x^2/n^2}                      (flat in y, 1d scaling)
// and the quotient studies along them.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyl/grid.hpp"
#include "cyl/mixed_norms.hpp"

namespace cyl {

enum class SaturatorKind { concentrating_2d, flat_1d };

std::string to_string(SaturatorKind kind);
SaturatorKind saturator_kind_from_string(const std::string& s);

struct SaturatorFamily {
  SaturatorKind kind = SaturatorKind::flat_1d;
  double n = 1.0;
};

PhysicalField build_Fn(double n, const CylinderGrid& grid);
PhysicalField build_fn(double n, const CylinderGrid& grid);
PhysicalField build_family(const SaturatorFamily& family, const CylinderGrid& grid);

// Smallest even integer >= n whose only prime factors are 2, 3 and 5.
int fft_friendly_size(int n);

// Grid, slabs and sampling used for one member of a family.
struct SaturatorPlan {
  SaturatorFamily family;
  CylinderGrid grid;
  SlabDecomposition slabs;
  FlowSampling sampling;
};

SaturatorPlan default_plan(SaturatorKind kind, double n, int threads = 1);

struct QuotientEntry {
  double n = 0.0;
  double quotient = 0.0;
  double ratio_prev = 0.0;  // NaN for the first entry
  double tail_ratio = 0.0;
  double refinement_delta = 0.0;
};

struct QuotientReport {
  SaturatorKind kind = SaturatorKind::flat_1d;
  ExponentTriple exponents;
  std::vector<QuotientEntry> entries;

  void write_csv(std::ostream& os) const;
};

struct StudyOptions {
  int threads = 1;
  // Recompute every entry with doubled time nodes and record the relative change.
  bool refine = true;
  std::optional<SlabDecomposition> slabs;  // overrides the per-n default
};

QuotientEntry evaluate_quotient(const SaturatorPlan& plan, const ExponentTriple& e, bool refine);

QuotientReport saturation_study(SaturatorKind kind, const std::vector<double>& n_list,
                                const ExponentTriple& e = {}, const StudyOptions& options = {});

// l^a L^4 L^4 quotient of f_n; a in [4, 8].
QuotientReport exponent_probe(double a, const std::vector<double>& n_list, const StudyOptions& options = {});

}  // namespace cyl
