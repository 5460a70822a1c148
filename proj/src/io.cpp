#include "maxmin/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace maxmin::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
  }
  return out;
}

double parse_number(const std::string& field, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(v)) {
    throw IoError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
  }
  return v;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round12(v[i]));
  return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Cdf read_cdf_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<double> xs, fs, atoms;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw IoError("line " + std::to_string(line_no) + ": expected 2 or 3 columns");
    }
    xs.push_back(parse_number(fields[0], line_no));
    fs.push_back(parse_number(fields[1], line_no));
    atoms.push_back(fields.size() == 3 ? parse_number(fields[2], line_no) : 0.0);
  }
  if (!header_seen) throw IoError("CDF file is empty; a header row is required");
  if (xs.empty()) throw IoError("CDF file has no data rows");
  const auto n = static_cast<Eigen::Index>(xs.size());
  return Cdf::grid(Eigen::Map<Eigen::VectorXd>(xs.data(), n), Eigen::Map<Eigen::VectorXd>(fs.data(), n),
                   Eigen::Map<Eigen::VectorXd>(atoms.data(), n));
}

Cdf read_cdf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_cdf_csv(in);
}

void write_cdf_csv(std::ostream& out, const Eigen::VectorXd& knots, const Eigen::VectorXd& values,
                   const Eigen::VectorXd& atoms) {
  out << "x,F,atom\n";
  char buf[96];
  for (Eigen::Index k = 0; k < knots.size(); ++k) {
    const double atom = k < atoms.size() ? atoms[k] : 0.0;
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", knots[k], values[k], atom);
    out << buf;
  }
  if (!out) throw IoError("failed writing CDF CSV");
}

void write_cdf_csv(std::ostream& out, const GridCdf& grid) { write_cdf_csv(out, grid.knots, grid.values, grid.atoms); }

nlohmann::json to_json(const SolvedConstants<double>& c) {
  return {{"mu", round12(c.mu)},
          {"a", round12(c.a)},
          {"lambda", round12(c.lambda)},
          {"revenue_guarantee", round12(c.revenue_guarantee)},
          {"h_at_a", round12(c.h_at_a)}};
}

nlohmann::json to_json(const RevenueReport& r) {
  return {{"method", r.method}, {"value", round12(r.value)}, {"std_error", round12(r.std_error)},
          {"n_samples", r.n_samples}, {"seed", r.seed}, {"mu", round12(r.mu)}, {"a", round12(r.a)}};
}

nlohmann::json to_json(const DiscreteDirectMechanism& m) {
  return {{"n", m.size()},           {"quantiles", vector_json(m.quantiles)}, {"types", vector_json(m.types)},
          {"q1", matrix_json(m.q1)}, {"q2", matrix_json(m.q2)},               {"t1", matrix_json(m.t1)},
          {"t2", matrix_json(m.t2)}};
}

}  // namespace maxmin::io
