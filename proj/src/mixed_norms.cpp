#include "cyl/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyl/errors.hpp"
#include "cyl/parallel.hpp"

namespace cyl {

namespace {

bool valid_exponent(double p) { return p >= 1.0 || p == kInf; }

// Position and frequency spread of |u|^2, used to predict how far the
// solution can have travelled by time t.
struct SpreadModel {
  double mean_x = 0.0, sigma_x = 0.0;
  double mean_xi = 0.0, sigma_xi = 0.0;

  explicit SpreadModel(const SpectralField& F) {
    const auto& g = F.grid;
    const PhysicalField u = inverse_transform(F);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
      double row = 0.0;
      for (int iy = 0; iy < g.ny; ++iy) row += std::norm(u.at(ix, iy));
      const double x = g.x_at(ix);
      m0 += row;
      m1 += row * x;
      m2 += row * x * x;
    }
    if (m0 > 0.0) {
      mean_x = m1 / m0;
      sigma_x = std::sqrt(std::max(0.0, m2 / m0 - mean_x * mean_x));
    }
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
      double row = 0.0;
      for (int iy = 0; iy < g.ny; ++iy) row += std::norm(F.at(ix, iy));
      const double xi = g.xi_at(ix);
      s0 += row;
      s1 += row * xi;
      s2 += row * xi * xi;
    }
    if (s0 > 0.0) {
      mean_xi = s1 / s0;
      sigma_xi = std::sqrt(std::max(0.0, s2 / s0 - mean_xi * mean_xi));
    }
  }

  // Position operator x + 2t xi: the standard deviation is subadditive.
  double half_width(double t) const {
    return std::abs(mean_x + 2.0 * t * mean_xi) + 6.5 * (sigma_x + 2.0 * std::abs(t) * sigma_xi);
  }
};

class FlowEvaluator {
 public:
  FlowEvaluator(const SpectralField& F, const FlowSampling& sampling)
      : F_(F), sampling_(sampling) {
    if (sampling_.adaptive_window) spread_.emplace(F);
  }

  struct Snapshot {
    PhysicalField field;
    double escape = 0.0;
    int factor = 1;
  };

  Snapshot evaluate(double t) const {
    int factor = initial_factor(t);
    while (true) {
      Snapshot s{evolve(t, factor), 0.0, factor};
      s.escape = escape_fraction(s.field);
      if (factor == 1 || s.escape <= sampling_.escape.threshold) return s;
      factor /= 2;
    }
  }

 private:
  int initial_factor(double t) const {
    if (!spread_) return 1;
    const auto& g = F_.grid;
    const double need = 4.0 * (spread_->half_width(t) + 2.0 * g.dx());
    int factor = 1;
    while (g.nx % (2 * factor) == 0 && (g.nx / (2 * factor)) % 2 == 0 && g.nx / (2 * factor) >= 8 &&
           g.box_length_x / (2 * factor) >= need)
      factor *= 2;
    return factor;
  }

  PhysicalField evolve(double t, int factor) const {
    if (factor == 1) return inverse_transform(propagate(F_, t));
    return inverse_transform(propagate(periodize(F_, factor), t));
  }

  const SpectralField& F_;
  FlowSampling sampling_;
  std::optional<SpreadModel> spread_;
};

std::string escape_message(double fraction, double threshold, int gamma, double t) {
  std::ostringstream os;
  os << "box escape at slab gamma=" << gamma << " (t=" << t << "): edge mass fraction " << fraction
     << " exceeds threshold " << threshold;
  return os.str();
}

}  // namespace

ExponentTriple ExponentTriple::from_qp(double q, double p) {
  ExponentTriple e;
  e.a = q;
  e.b = p;
  e.c = p;
  e.qp = std::make_pair(q, p);
  e.sobolev_s = 1.0 - 4.0 / p;
  e.validate();
  return e;
}

void ExponentTriple::validate() const {
  if (!valid_exponent(a) || !valid_exponent(b) || !valid_exponent(c))
    throw DomainError("mixed-norm exponents must be >= 1 or infinite");
  if (qp) {
    const auto [q, p] = *qp;
    if (std::abs(2.0 / q + 1.0 / p - 0.5) > 1e-12) throw DomainError("(q,p) must satisfy 2/q + 1/p = 1/2");
    if (!sobolev_s || std::abs(*sobolev_s - (1.0 - 4.0 / p)) > 1e-12)
      throw DomainError("Sobolev index must equal 1 - 4/p for the (q,p) pair");
  }
}

const PhysicalField& TimeSampledField::at(int gamma, int node) const {
  return snapshots[static_cast<std::size_t>(gamma - slabs.gamma_min) * slabs.nodes_per_slab() + node];
}

void TimeSampledField::validate() const {
  slabs.validate();
  if (snapshots.size() != static_cast<std::size_t>(slabs.slab_count()) * slabs.nodes_per_slab())
    throw DomainError("snapshot count does not match the slab decomposition");
}

TimeSampledField sample_flow(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling) {
  slabs.validate();
  const FlowEvaluator eval(F, sampling);
  const int per = slabs.nodes_per_slab();
  const std::size_t total = static_cast<std::size_t>(slabs.slab_count()) * per;
  std::vector<FlowEvaluator::Snapshot> snaps(total);
  parallel_for(total, sampling.threads, [&](std::size_t i) {
    const int gamma = slabs.gamma_min + static_cast<int>(i / per);
    snaps[i] = eval.evaluate(slabs.time(gamma, static_cast<int>(i % per)));
  });
  TimeSampledField out;
  out.slabs = slabs;
  out.snapshots.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const int gamma = slabs.gamma_min + static_cast<int>(i / per);
    if (sampling.escape.enforce && snaps[i].escape > sampling.escape.threshold)
      throw DiagnosticError(escape_message(snaps[i].escape, sampling.escape.threshold, gamma,
                                           slabs.time(gamma, static_cast<int>(i % per))));
    out.snapshots.push_back(std::move(snaps[i].field));
  }
  return out;
}

double spatial_norm(const PhysicalField& u, double c) {
  if (c == kInf) {
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (c == 4.0) {
    for (const auto& v : u.values) {
      const double a = std::norm(v);
      sum += a * a;
    }
  } else if (c == 2.0) {
    for (const auto& v : u.values) sum += std::norm(v);
  } else {
    for (const auto& v : u.values) sum += std::pow(std::abs(v), c);
  }
  return std::pow(sum * u.grid.dx() * u.grid.dy(), 1.0 / c);
}

MixedNormResult reduce_mixed_norm(const SlabDecomposition& slabs, std::span<const double> node_norms, double a,
                                  double b) {
  const int per = slabs.nodes_per_slab();
  const int count = slabs.slab_count();
  if (count < 1) throw DomainError("empty slab set");
  if (node_norms.size() != static_cast<std::size_t>(count) * per)
    throw DomainError("node norm count does not match the slab decomposition");
  std::vector<double> inner(count);
  for (int g = 0; g < count; ++g) {
    const auto row = node_norms.subspan(static_cast<std::size_t>(g) * per, per);
    if (b == kInf) {
      inner[g] = *std::max_element(row.begin(), row.end());
    } else {
      double s = 0.0;
      for (int i = 0; i < per; ++i) s += slabs.weight(slabs.gamma_min + g, i) * std::pow(row[i], b);
      inner[g] = std::pow(s, 1.0 / b);
    }
  }
  MixedNormResult r;
  if (a == kInf) {
    r.value = *std::max_element(inner.begin(), inner.end());
    const double edge = std::max(inner.front(), inner.back());
    r.tail_ratio = r.value > 0.0 ? edge / r.value : 0.0;
    return r;
  }
  double total = 0.0;
  std::vector<double> terms(count);
  for (int g = 0; g < count; ++g) {
    terms[g] = std::pow(inner[g], a);
    total += terms[g];
  }
  r.value = std::pow(total, 1.0 / a);
  const double edge = count == 1 ? terms.front() : terms.front() + terms.back();
  r.tail_ratio = total > 0.0 ? edge / total : 0.0;
  return r;
}

double mixed_norm(const TimeSampledField& u, const ExponentTriple& e) {
  e.validate();
  u.validate();
  std::vector<double> norms(u.snapshots.size());
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = spatial_norm(u.snapshots[i], e.c);
  return reduce_mixed_norm(u.slabs, norms, e.a, e.b).value;
}

double FlowNodeNorms::max_escape() const {
  return escape.empty() ? 0.0 : *std::max_element(escape.begin(), escape.end());
}

FlowNodeNorms flow_node_norms(const SpectralField& F, const SlabDecomposition& slabs, double c,
                              const FlowSampling& sampling) {
  slabs.validate();
  const FlowEvaluator eval(F, sampling);
  const int per = slabs.nodes_per_slab();
  const std::size_t total = static_cast<std::size_t>(slabs.slab_count()) * per;
  FlowNodeNorms out;
  out.norms.resize(total);
  out.escape.resize(total);
  out.window_factor.resize(total);
  parallel_for(total, sampling.threads, [&](std::size_t i) {
    const int gamma = slabs.gamma_min + static_cast<int>(i / per);
    auto snap = eval.evaluate(slabs.time(gamma, static_cast<int>(i % per)));
    out.norms[i] = spatial_norm(snap.field, c);
    out.escape[i] = snap.escape;
    out.window_factor[i] = snap.factor;
  });
  if (sampling.escape.enforce) {
    for (std::size_t i = 0; i < total; ++i) {
      if (out.escape[i] > sampling.escape.threshold) {
        const int gamma = slabs.gamma_min + static_cast<int>(i / per);
        throw DiagnosticError(escape_message(out.escape[i], sampling.escape.threshold, gamma,
                                             slabs.time(gamma, static_cast<int>(i % per))));
      }
    }
  }
  return out;
}

StrichartzLhs strichartz_lhs(const SpectralField& F, const ExponentTriple& e, const SlabDecomposition& slabs,
                             const FlowSampling& sampling) {
  e.validate();
  if (!slabs.symmetric()) throw DomainError("Strichartz evaluation needs slabs symmetric about 0");
  const auto nodes = flow_node_norms(F, slabs, e.c, sampling);
  const auto r = reduce_mixed_norm(slabs, nodes.norms, e.a, e.b);
  return {r.value, r.tail_ratio, nodes.max_escape()};
}

double strichartz_quotient(const SpectralField& F, const ExponentTriple& e, const SlabDecomposition& slabs,
                           const FlowSampling& sampling) {
  const double denom = e.sobolev_s ? sobolev_norm(F, *e.sobolev_s) : l2_norm(F);
  if (!(denom > 0.0)) throw DomainError("Strichartz quotient of the zero field");
  return strichartz_lhs(F, e, slabs, sampling).value / denom;
}

void WindowedNormSpec::validate() const {
  if (!(half_width >= 8.0)) throw DomainError("window truncation T_c must be at least 8");
  if (time_nodes < 8) throw DomainError("window quadrature needs at least 8 nodes");
}

double jgamma_fourth(const SpectralField& F, const WindowedNormSpec& spec, const FlowSampling& sampling) {
  spec.validate();
  const int per_panel = 8;
  const int panels = (spec.time_nodes + per_panel - 1) / per_panel;
  const auto rule = composite_gauss_legendre(panels, per_panel, spec.gamma - spec.half_width,
                                             spec.gamma + spec.half_width);
  const FlowEvaluator eval(F, sampling);
  std::vector<double> terms(rule.nodes.size());
  std::vector<double> escape(rule.nodes.size());
  parallel_for(rule.nodes.size(), sampling.threads, [&](std::size_t i) {
    const double t = rule.nodes[i];
    auto snap = eval.evaluate(t);
    escape[i] = snap.escape;
    const double l4 = spatial_norm(snap.field, 4.0);
    const double dt = t - spec.gamma;
    terms[i] = rule.weights[i] * std::exp(-dt * dt) * l4 * l4 * l4 * l4;
  });
  double sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (sampling.escape.enforce && escape[i] > sampling.escape.threshold)
      throw DiagnosticError(escape_message(escape[i], sampling.escape.threshold, spec.gamma, rule.nodes[i]));
    sum += terms[i];
  }
  return sum;
}

double jgamma(const SpectralField& F, const WindowedNormSpec& spec, const FlowSampling& sampling) {
  return std::pow(jgamma_fourth(F, spec, sampling), 0.25);
}

double linfty_probe(const SpectralField& F, double N, const SlabDecomposition& slabs, const FlowSampling& sampling,
                    const BumpProfile& phi) {
  const double mass = l2_norm(F);
  if (!(mass > 0.0)) throw DomainError("L-infinity probe of the zero field");
  const auto low = project_low(F, N, phi);
  ExponentTriple e;
  e.a = 4.0;
  e.b = kInf;
  e.c = kInf;
  return strichartz_lhs(low, e, slabs, sampling).value / (N * mass);
}

}  // namespace cyl
