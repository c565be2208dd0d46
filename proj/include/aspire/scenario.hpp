#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aspire/curves.hpp"
#include "aspire/errors.hpp"

namespace aspire {

/// Malformed scenario input. `path()` names the offending field, e.g.
/// "lotteries[1].alpha".
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct NamedCurve {
  std::string name;
  Curve curve;
};

/// One reference value to compare a computed quantity against.
struct ReferenceValue {
  std::string quantity;
  std::string lottery;  // empty when the quantity is not per lottery
  std::string utility;  // empty when the quantity is not per utility
  double value;
  double tolerance;
  std::string note;
};

/// Declarative input for one run of the command-line tool.
///
/// {
///   "title": "...",
///   "domain": {"lo": 0, "hi": 1, "unit": "$M"},
///   "lotteries": [{"name": "fund A", "kind": "scaled_beta", "alpha": 2, "beta": 8}],
///   "utilities": [{"name": "g3", "kind": "exponential_normalized", "gamma": 3}],
///   "target": 3.0, "old_lottery": "...", "new_lottery": "...",
///   "gammas": [...], "fractile": 0.5, "terms": 6, "grid": 2048,
///   "compare": ["A", "B"],
///   "reference": {"tolerance": 0.01, "values": [{"quantity": "...", "value": 0.45}]}
/// }
struct Scenario {
  std::string title;
  Interval domain;
  std::string unit;
  std::vector<NamedCurve> lotteries;
  std::vector<NamedCurve> utilities;

  std::optional<double> target;
  std::optional<std::string> old_lottery;
  std::optional<std::string> new_lottery;
  std::vector<double> gammas;
  std::optional<double> fractile;
  std::optional<int> terms;
  std::optional<int> grid;
  std::vector<std::string> compare;
  std::vector<ReferenceValue> reference;

  /// Lookup by name; throws ScenarioError naming `field` when absent.
  const NamedCurve& find_lottery(const std::string& name, const std::string& field) const;
  const NamedCurve& find_curve(const std::string& name, const std::string& field) const;
};

/// Builds a curve from {"kind": ..., parameters...} on `domain`.
Curve parse_curve(const nlohmann::json& j, const Interval& domain, const std::string& path);

Scenario parse_scenario(const nlohmann::json& j);
/// Reads and parses a scenario file; I/O and JSON syntax errors become ScenarioError.
Scenario load_scenario(const std::string& path);

/// Fixed 9-significant-digit rendering used by every output format.
std::string format_real(double x);
/// x rounded to 9 significant digits (identity on non-finite values).
double round_real(double x);

}  // namespace aspire
