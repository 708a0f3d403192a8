#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cyl {

// Shortest round-trip decimal (17 significant digits); "inf"/"nan" spelled out.
std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

// `name value` lines; '#' starts a comment.
using FrozenConstants = std::map<std::string, double>;
FrozenConstants read_frozen_constants(const std::string& path);
void write_frozen_constants(const FrozenConstants& constants, const std::string& path);

}  // namespace cyl
