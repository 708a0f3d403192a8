#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace cylab {

struct GlobalOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool freeze = false;
  std::string constants_path = "data/frozen_constants.txt";
};

// Returns the process exit code for a completed run (0, or 1 when a check fails).
int cmd_simulate(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_norm(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_saturate(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_optimize(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_schur(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_annulus(ConfigNode& cfg, const GlobalOptions& opt);
int cmd_verify(ConfigNode& cfg, const GlobalOptions& opt);

}  // namespace cylab
