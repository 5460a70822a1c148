#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "maxmin/adversary.hpp"
#include "maxmin/auction.hpp"
#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"
#include "maxmin/upper_bound.hpp"

namespace maxmin::io {

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits, the precision of every emitted float.
double round12(double v);

// CSV grid CDFs: header row, then "x,F" or "x,F,atom" per knot.

Cdf read_cdf_csv(std::istream& in);
Cdf read_cdf_csv(const std::string& path);
void write_cdf_csv(std::ostream& out, const Eigen::VectorXd& knots, const Eigen::VectorXd& values,
                   const Eigen::VectorXd& atoms);
void write_cdf_csv(std::ostream& out, const GridCdf& grid);

nlohmann::json to_json(const SolvedConstants<double>& c);
nlohmann::json to_json(const RevenueReport& report);
nlohmann::json to_json(const DiscreteDirectMechanism& mechanism);

}  // namespace maxmin::io
