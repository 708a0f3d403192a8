#include "cyl/optimizer.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "cyl/errors.hpp"
#include "cyl/io.hpp"
#include "cyl/parallel.hpp"
#include "cyl/saturators.hpp"

namespace cyl {

namespace {

PhysicalField evolve_checked(const SpectralField& F, double t, const EscapeConfig& escape) {
  auto u = inverse_transform(propagate(F, t));
  if (escape.enforce) {
    const double e = escape_fraction(u);
    if (e > escape.threshold) {
      std::ostringstream os;
      os << "box escape at t=" << t << ": edge mass fraction " << e << " exceeds " << escape.threshold;
      throw DiagnosticError(os.str());
    }
  }
  return u;
}

double quartic_integral(const PhysicalField& u) {
  double s = 0.0;
  for (const auto& v : u.values) {
    const double a = std::norm(v);
    s += a * a;
  }
  return s * u.grid.dx() * u.grid.dy();
}

void scale(SpectralField& F, Complex a) {
  for (auto& c : F.coeffs) c *= a;
}

void axpy(SpectralField& y, Complex a, const SpectralField& x) {
  for (std::size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
}

void apply_dealias(SpectralField& F) {
  const auto& g = F.grid;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      if (4 * std::abs(g.mode_x(ix)) >= g.nx || 4 * std::abs(g.mode_y(iy)) >= g.ny) F.at(ix, iy) = 0.0;
}

void normalize(SpectralField& F) {
  const double n = l2_norm(F);
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero field");
  scale(F, 1.0 / n);
}

// Slab integrals I_gamma, and optionally the gradient sum_gamma 8 I_gamma sum_i w_i S_i^*(|u_i|^2 u_i).
double evaluate(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling,
                SpectralField* grad) {
  slabs.validate();
  const int per = slabs.nodes_per_slab();
  double phi = 0.0;
  if (grad) *grad = SpectralField(F.grid);
  std::vector<double> quartic(per);
  std::vector<SpectralField> adjoint(grad ? per : 0);
  for (int gamma = slabs.gamma_min; gamma <= slabs.gamma_max; ++gamma) {
    parallel_for(per, sampling.threads, [&](std::size_t i) {
      const double t = slabs.time(gamma, static_cast<int>(i));
      auto u = evolve_checked(F, t, sampling.escape);
      quartic[i] = quartic_integral(u);
      if (grad) {
        for (auto& v : u.values) v *= std::norm(v);
        adjoint[i] = propagate(forward_transform(u), -t);
      }
    });
    double I = 0.0;
    for (int i = 0; i < per; ++i) I += slabs.weight(gamma, i) * quartic[i];
    phi += I * I;
    if (grad && I != 0.0)
      for (int i = 0; i < per; ++i) axpy(*grad, 8.0 * I * slabs.weight(gamma, i), adjoint[i]);
  }
  if (!std::isfinite(phi)) throw DiagnosticError("non-finite objective");
  return phi;
}

}  // namespace

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::from_Fn:
      return "from_Fn";
    case InitKind::from_fn:
      return "from_fn";
    default:
      return "random_gaussian";
  }
}

InitKind init_kind_from_string(const std::string& s) {
  if (s == "from_Fn") return InitKind::from_Fn;
  if (s == "from_fn") return InitKind::from_fn;
  if (s == "random_gaussian") return InitKind::random_gaussian;
  throw DomainError("unknown init kind '" + s + "'");
}

void OptimizerConfig::validate() const {
  if (max_iters < 0) throw DomainError("max_iters must be nonnegative");
  if (!(initial_step > 0.0)) throw DomainError("initial step must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw DomainError("backtracking factor must lie in (0,1)");
  if (!(sufficient_increase >= 0.0 && sufficient_increase < 1.0))
    throw DomainError("sufficient-increase parameter must lie in [0,1)");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(min_step > 0.0)) throw DomainError("minimum step must be positive");
}

SpectralField make_init(const OptimizerConfig& config, const CylinderGrid& grid) {
  SpectralField F;
  switch (config.init) {
    case InitKind::from_Fn:
      F = forward_transform(build_Fn(config.init_n, grid));
      break;
    case InitKind::from_fn:
      F = forward_transform(build_fn(config.init_n, grid));
      break;
    case InitKind::random_gaussian: {
      std::mt19937_64 rng(config.seed);
      std::normal_distribution<double> normal;
      PhysicalField u(grid);
      const double width = grid.box_length_x / 16.0;
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double s = grid.x_at(ix) / width;
        const double envelope = std::exp(-0.5 * s * s);
        for (int iy = 0; iy < grid.ny; ++iy) {
          const double re = normal(rng);
          const double im = normal(rng);
          u.at(ix, iy) = envelope * Complex(re, im);
        }
      }
      F = forward_transform(u);
      break;
    }
  }
  if (config.dealias) apply_dealias(F);
  normalize(F);
  return F;
}

double objective(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling) {
  return evaluate(F, slabs, sampling, nullptr);
}

ObjectiveGradient objective_and_gradient(const SpectralField& F, const SlabDecomposition& slabs,
                                         const FlowSampling& sampling) {
  ObjectiveGradient out;
  out.phi = evaluate(F, slabs, sampling, &out.grad);
  return out;
}

SpectralField gradient(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling) {
  return objective_and_gradient(F, slabs, sampling).grad;
}

double quotient_of(const SpectralField& F, const SlabDecomposition& slabs, const FlowSampling& sampling) {
  const double n = l2_norm(F);
  if (!(n > 0.0)) throw DomainError("quotient of the zero field");
  return std::pow(objective(F, slabs, sampling), 0.125) / n;
}

AscentTrace maximize(const SpectralField& init, const OptimizerConfig& config, const SlabDecomposition& slabs) {
  config.validate();
  if (!(l2_norm(init) > 0.0)) throw DomainError("optimizer needs a nonzero initial field");
  SpectralField F = init;
  if (config.dealias) apply_dealias(F);
  normalize(F);

  AscentTrace trace;
  auto current = objective_and_gradient(F, slabs, config.sampling);
  double step = config.initial_step;
  for (int iter = 0;; ++iter) {
    if (config.dealias) apply_dealias(current.grad);
    // Tangential part of the gradient at F on the unit sphere.
    SpectralField dir = current.grad;
    axpy(dir, -inner_product(F, current.grad).real(), F);
    const double gnorm = l2_norm(dir);
    trace.steps.push_back({iter, current.phi, std::pow(current.phi, 0.125), iter == 0 ? 0.0 : step, gnorm});
    if (iter >= config.max_iters || !(gnorm > 0.0)) break;
    scale(dir, 1.0 / gnorm);

    bool accepted = false;
    ObjectiveGradient next;
    SpectralField candidate;
    while (step >= config.min_step) {
      candidate = F;
      axpy(candidate, step, dir);
      normalize(candidate);
      double phi = 0.0;
      try {
        phi = objective(candidate, slabs, config.sampling);
      } catch (const DiagnosticError&) {
        // Trial point leaves the trustworthy box; shorten the step.
        step *= config.backtrack;
        continue;
      }
      if (phi > current.phi && phi - current.phi >= config.sufficient_increase * step * gnorm) {
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) {
      trace.converged = true;
      break;
    }
    next = objective_and_gradient(candidate, slabs, config.sampling);
    const double change = (next.phi - current.phi) / current.phi;
    F = std::move(candidate);
    current = std::move(next);
    if (change < config.tol) {
      if (config.dealias) apply_dealias(current.grad);
      SpectralField d = current.grad;
      axpy(d, -inner_product(F, current.grad).real(), F);
      trace.steps.push_back({iter + 1, current.phi, std::pow(current.phi, 0.125), step, l2_norm(d)});
      trace.converged = true;
      break;
    }
    step = std::min(config.initial_step, step / config.backtrack);
  }
  trace.final_field = std::move(F);
  return trace;
}

void AscentTrace::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"iter", "phi", "quotient", "step", "gradnorm"});
  for (const auto& s : steps)
    csv.row({std::to_string(s.iter), format_number(s.phi), format_number(s.quotient), format_number(s.step),
             format_number(s.gradnorm)});
}

}  // namespace cyl
