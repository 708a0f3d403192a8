#pragma once

#include <fstream>
#include <map>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "cyl/grid.hpp"
#include "cyl/mixed_norms.hpp"
#include "cyl/quadrature.hpp"

namespace cylab {

// Each reader consumes its node and rejects unknown keys.
cyl::CylinderGrid read_grid(ConfigNode node);
cyl::PhysicalField read_initial(ConfigNode node, const cyl::CylinderGrid& grid);
cyl::EscapeConfig read_escape(ConfigNode node);
cyl::ExponentTriple read_exponents(ConfigNode node);
cyl::SlabDecomposition read_slabs(ConfigNode node, const cyl::SlabDecomposition& fallback);

std::string output_path(const GlobalOptions& opt, const std::string& name);
std::ofstream open_output(const GlobalOptions& opt, const std::string& name);

// Merges `values` into the constants file.
void freeze_constants(const GlobalOptions& opt, const std::map<std::string, double>& values);
// Reads one frozen constant; ConfigError when absent.
double frozen_constant(const GlobalOptions& opt, const std::string& name);

}  // namespace cylab
