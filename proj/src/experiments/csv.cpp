#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sparsekit/errors.hpp"
#include "sparsekit/experiments.hpp"

namespace sparsekit::experiments {

namespace {

std::string six_digits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_csv(const PhaseGrid& grid, std::ostream& out) {
  std::vector<const CellMetric*> rows;
  rows.reserve(grid.cells.size());
  for (const auto& c : grid.cells) rows.push_back(&c);
  std::stable_sort(rows.begin(), rows.end(), [](const CellMetric* a, const CellMetric* b) {
    if (a->sparsity != b->sparsity) return a->sparsity < b->sparsity;
    if (a->alpha != b->alpha) return a->alpha < b->alpha;
    if (a->algorithm != b->algorithm) return a->algorithm < b->algorithm;
    return a->metric < b->metric;
  });
  out << kCsvHeader << '\n';
  for (const CellMetric* c : rows) {
    out << grid.experiment << ',' << grid.dict << ',' << grid.dim << ',' << grid.num_atoms << ',' << c->sparsity << ','
        << six_digits(c->alpha) << ',' << c->algorithm << ',' << c->metric << ',' << six_digits(c->value) << ','
        << c->trials << ',' << grid.master_seed << '\n';
  }
}

void write_csv(const PhaseGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(grid, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

PhaseGrid read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidArgument(std::string("phase grid CSV: row 1 is not the header '") + kCsvHeader + "'");
  }
  PhaseGrid grid;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) f.push_back(field);
    if (f.size() != 11) {
      throw InvalidArgument("phase grid CSV: row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                            " fields, expected 11");
    }
    try {
      if (grid.cells.empty()) {
        grid.experiment = f[0];
        grid.dict = f[1];
        grid.dim = std::stoul(f[2]);
        grid.num_atoms = std::stoul(f[3]);
        grid.master_seed = std::stoull(f[10]);
      }
      CellMetric c;
      c.sparsity = std::stoul(f[4]);
      c.alpha = std::stod(f[5]);
      c.algorithm = f[6];
      c.metric = f[7];
      c.value = std::stod(f[8]);
      c.trials = std::stoul(f[9]);
      grid.cells.push_back(std::move(c));
    } catch (const std::logic_error&) {
      throw InvalidArgument("phase grid CSV: unparsable value on row " + std::to_string(row));
    }
  }
  return grid;
}

}  // namespace sparsekit::experiments
