#include "cyl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cyl/errors.hpp"
#include "cyl/grid.hpp"

namespace cyl {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw DomainError("CSV row has wrong column count");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

FrozenConstants read_frozen_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open constants file: " + path);
  FrozenConstants out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, value;
    if (!(ls >> name)) continue;
    if (!(ls >> value)) throw ConfigError("constants file: missing value for " + name);
    out[name] = std::stod(value);
  }
  return out;
}

void write_frozen_constants(const FrozenConstants& constants, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write constants file: " + path);
  for (const auto& [name, value] : constants) out << name << ' ' << format_number(value) << '\n';
}

void write_cylf(const PhysicalField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CYLF file: " + path);
  out << "cylf 1\n";
  out << "Lx " << format_number(f.grid.box_length_x) << '\n';
  out << "nx " << f.grid.nx << '\n';
  out << "ny " << f.grid.ny << '\n';
  for (const auto& v : f.values) out << format_number(v.real()) << ' ' << format_number(v.imag()) << '\n';
}

PhysicalField read_cylf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CYLF file: " + path);
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "cylf" || version != 1)
    throw ConfigError("not a CYLF v1 file: " + path);
  double lx = 0.0;
  int nx = 0, ny = 0;
  std::string key;
  if (!(in >> key >> lx) || key != "Lx") throw ConfigError("CYLF: expected Lx");
  if (!(in >> key >> nx) || key != "nx") throw ConfigError("CYLF: expected nx");
  if (!(in >> key >> ny) || key != "ny") throw ConfigError("CYLF: expected ny");
  PhysicalField f(make_grid(lx, nx, ny));
  for (auto& v : f.values) {
    std::string re, im;
    if (!(in >> re >> im)) throw ConfigError("CYLF: truncated value list");
    v = Complex(std::stod(re), std::stod(im));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ConfigError("CYLF: non-finite value");
  }
  return f;
}

}  // namespace cyl
