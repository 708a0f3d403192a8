#include "cyl/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "cyl/errors.hpp"

namespace cyl {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 0) return {1.0, 0.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule composite_gauss_legendre(int panels, int nodes_per_panel, double a, double b) {
  if (panels < 1) throw DomainError("composite rule needs at least one panel");
  QuadratureRule out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    auto r = gauss_legendre(nodes_per_panel, a + p * h, a + (p + 1) * h);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

double SlabDecomposition::time(int gamma, int node) const {
  const double s = nodes[node];
  return gamma + ((mirror_negative && gamma < 0) ? 1.0 - s : s);
}

bool SlabDecomposition::symmetric() const {
  return gamma_min + gamma_max == 0 || gamma_min + gamma_max == -1;
}

void SlabDecomposition::validate() const {
  if (gamma_min > 0 || gamma_max < 0) throw DomainError("slab range must contain gamma = 0");
  if (nodes.empty() || nodes.size() != weights.size()) throw DomainError("slab quadrature is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0) || nodes[i] < 0.0 || nodes[i] >= 1.0)
      throw DomainError("slab quadrature must have positive weights and nodes in [0,1)");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("slab quadrature weights must sum to 1");
}

SlabDecomposition SlabDecomposition::uniform(int gamma_min, int gamma_max, int nodes) {
  SlabDecomposition s;
  s.gamma_min = gamma_min;
  s.gamma_max = gamma_max;
  auto r = gauss_legendre(nodes);
  s.nodes = std::move(r.nodes);
  s.weights = std::move(r.weights);
  s.nodes_per_panel_ = nodes;
  s.validate();
  return s;
}

SlabDecomposition SlabDecomposition::graded(int gamma_min, int gamma_max, double finest_panel,
                                            int nodes_per_panel) {
  if (!(finest_panel > 0.0) || finest_panel >= 1.0) throw DomainError("finest panel must lie in (0,1)");
  SlabDecomposition s;
  s.gamma_min = gamma_min;
  s.gamma_max = gamma_max;
  s.mirror_negative = true;
  s.nodes_per_panel_ = nodes_per_panel;
  s.finest_panel_ = finest_panel;
  std::vector<double> edges{0.0};
  double h = finest_panel;
  while (h < 1.0) {
    edges.push_back(h);
    h *= 2.0;
  }
  edges.push_back(1.0);
  // Merge a sliver last panel into its neighbour.
  if (edges.size() > 2 && (1.0 - edges[edges.size() - 2]) < 0.25 * (edges[edges.size() - 2] - edges[edges.size() - 3]))
    edges.erase(edges.end() - 2);
  s.panels = static_cast<int>(edges.size()) - 1;
  for (int p = 0; p < s.panels; ++p) {
    auto r = gauss_legendre(nodes_per_panel, edges[p], edges[p + 1]);
    s.nodes.insert(s.nodes.end(), r.nodes.begin(), r.nodes.end());
    s.weights.insert(s.weights.end(), r.weights.begin(), r.weights.end());
  }
  s.validate();
  return s;
}

SlabDecomposition SlabDecomposition::time_symmetric(int G, int nodes) {
  if (G < 0) throw DomainError("slab half-range must be nonnegative");
  return uniform(-G - 1, G, nodes);
}

SlabDecomposition SlabDecomposition::refined() const {
  if (finest_panel_ > 0.0) return graded(gamma_min, gamma_max, finest_panel_, 2 * nodes_per_panel_);
  if (nodes_per_panel_ > 0) return uniform(gamma_min, gamma_max, 2 * nodes_per_panel_);
  throw DomainError("custom slab rule cannot be refined automatically");
}

}  // namespace cyl
