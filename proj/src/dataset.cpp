#include "csda/dataset.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace csda {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, size_t line_no) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("load_csv: non-numeric feature value '" + s +
                    "' at line " + std::to_string(line_no));
  }
}

int parse_label(const std::string& s, size_t line_no) {
  double v = parse_double(s, line_no);
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9) {
    throw DataError("load_csv: class column is not integral at line " +
                    std::to_string(line_no));
  }
  return static_cast<int>(r);
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("load_csv: cannot open '" + path + "'");
  std::string line;
  size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (has_header && line_no == 1) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() < 2) {
      throw DataError("load_csv: missing class column at line " +
                      std::to_string(line_no));
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw DataError("load_csv: ragged row at line " +
                      std::to_string(line_no));
    }
    std::vector<double> row(width - 1);
    for (size_t j = 0; j + 1 < width; ++j) {
      row[j] = parse_double(fields[j], line_no);
    }
    labels.push_back(parse_label(fields.back(), line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("load_csv: no samples in '" + path + "'");

  Dataset out;
  out.features.resize(static_cast<Index>(width - 1),
                      static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j + 1 < width; ++j) {
      out.features(static_cast<Index>(j), static_cast<Index>(i)) = rows[i][j];
    }
  }
  out.labels = std::move(labels);
  return out;
}

void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("write_csv: cannot open '" + path + "'");
  out.precision(17);
  for (Index i = 0; i < data.features.cols(); ++i) {
    for (Index j = 0; j < data.features.rows(); ++j) {
      out << data.features(j, i) << ',';
    }
    out << data.labels[i] << '\n';
  }
  if (!out) throw DataError("write_csv: write failed for '" + path + "'");
}

Dataset synth_generate(const SynthSpec& spec) {
  if (spec.dim < 1) throw ConfigError("synth_generate: dim must be >= 1");
  if (spec.n_pos < 1) throw ConfigError("synth_generate: n_pos must be >= 1");
  if (spec.clusters.empty()) {
    throw ConfigError("synth_generate: need at least one negative cluster");
  }
  if (spec.pos_mean.size() != spec.dim) {
    throw ConfigError("synth_generate: pos_mean dimension mismatch");
  }
  Index total = spec.n_pos;
  for (const SynthCluster& c : spec.clusters) {
    if (c.count < 1) throw ConfigError("synth_generate: cluster count >= 1");
    if (c.mean.size() != spec.dim) {
      throw ConfigError("synth_generate: cluster mean dimension mismatch");
    }
    total += c.count;
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset out;
  out.features.resize(spec.dim, total);
  out.labels.reserve(total);
  Index col = 0;
  for (Index i = 0; i < spec.n_pos; ++i, ++col) {
    for (Index j = 0; j < spec.dim; ++j) {
      out.features(j, col) = spec.pos_mean(j) + spec.pos_stdev * normal(rng);
    }
    out.labels.push_back(0);
  }
  int label = 1;
  for (const SynthCluster& c : spec.clusters) {
    for (Index i = 0; i < c.count; ++i, ++col) {
      for (Index j = 0; j < spec.dim; ++j) {
        out.features(j, col) = c.mean(j) + c.stdev * normal(rng);
      }
      out.labels.push_back(label);
    }
    ++label;
  }
  return out;
}

}  // namespace csda
