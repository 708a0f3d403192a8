#include "common.hpp"

#include <cmath>
#include <filesystem>

#include "cyl/errors.hpp"
#include "cyl/io.hpp"
#include "cyl/saturators.hpp"

namespace cylab {

using namespace cyl;

CylinderGrid read_grid(ConfigNode node) {
  const double Lx = node.number("Lx", 64.0);
  const int nx = node.integer("nx", 256);
  const int ny = node.integer("ny", 16);
  node.finish();
  return make_grid(Lx, nx, ny);
}

PhysicalField read_initial(ConfigNode node, const CylinderGrid& grid) {
  const std::string kind = node.string("kind", "gaussian");
  if (kind == "gaussian") {
    const double width = node.number("width", 2.0);
    const double x0 = node.number("x0", 0.0);
    const int ky = node.integer("ky", 0);
    const double xi0 = node.number("xi0", 0.0);
    node.finish();
    if (!(width > 0.0)) throw ConfigError("config key 'initial.width' must be positive");
    PhysicalField u(grid);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double s = (grid.x_at(ix) - x0) / width;
      for (int iy = 0; iy < grid.ny; ++iy)
        u.at(ix, iy) = std::exp(-s * s) * std::polar(1.0, xi0 * grid.x_at(ix) + ky * grid.y_at(iy));
    }
    return u;
  }
  if (kind == "Fn" || kind == "fn") {
    const double n = node.number("n");
    node.finish();
    return kind == "Fn" ? build_Fn(n, grid) : build_fn(n, grid);
  }
  if (kind == "cylf") {
    const std::string path = node.string("path");
    node.finish();
    auto u = read_cylf(path);
    if (!(u.grid == grid)) throw ConfigError("config key 'initial.path' holds a field on a different grid");
    return u;
  }
  throw ConfigError("config key 'initial.kind' must be gaussian, Fn, fn or cylf");
}

EscapeConfig read_escape(ConfigNode node) {
  EscapeConfig e;
  e.threshold = node.number("threshold", e.threshold);
  e.enforce = node.boolean("enforce", e.enforce);
  node.finish();
  return e;
}

ExponentTriple read_exponents(ConfigNode node) {
  if (node.has("q") || node.has("p")) {
    const double q = node.exponent("q");
    const double p = node.exponent("p");
    node.finish();
    return ExponentTriple::from_qp(q, p);
  }
  ExponentTriple e;
  e.a = node.exponent("a", e.a);
  e.b = node.exponent("b", e.b);
  e.c = node.exponent("c", e.c);
  if (node.has("sobolev_s")) e.sobolev_s = node.number("sobolev_s");
  node.finish();
  e.validate();
  return e;
}

SlabDecomposition read_slabs(ConfigNode node, const SlabDecomposition& fallback) {
  const int nodes = node.integer("nodes", 8);
  if (node.has("symmetric")) {
    const int G = node.integer("symmetric");
    node.finish();
    return SlabDecomposition::time_symmetric(G, nodes);
  }
  if (node.has("gamma_min") || node.has("gamma_max")) {
    const int lo = node.integer("gamma_min");
    const int hi = node.integer("gamma_max");
    node.finish();
    if (hi < lo) throw ConfigError("config key 'slabs.gamma_max' must be >= gamma_min");
    return SlabDecomposition::uniform(lo, hi, nodes);
  }
  node.finish();
  return fallback;
}

std::string output_path(const GlobalOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::ofstream open_output(const GlobalOptions& opt, const std::string& name) {
  const auto path = output_path(opt, name);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void freeze_constants(const GlobalOptions& opt, const std::map<std::string, double>& values) {
  FrozenConstants constants;
  if (std::filesystem::exists(opt.constants_path)) constants = read_frozen_constants(opt.constants_path);
  for (const auto& [k, v] : values) constants[k] = v;
  const auto parent = std::filesystem::path(opt.constants_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_frozen_constants(constants, opt.constants_path);
}

double frozen_constant(const GlobalOptions& opt, const std::string& name) {
  if (!std::filesystem::exists(opt.constants_path))
    throw ConfigError("constants file '" + opt.constants_path + "' not found");
  const auto constants = read_frozen_constants(opt.constants_path);
  const auto it = constants.find(name);
  if (it == constants.end()) throw ConfigError("constant '" + name + "' missing from " + opt.constants_path);
  return it->second;
}

}  // namespace cylab
