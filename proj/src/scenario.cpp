#include "aspire/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace aspire {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(join(path, key), "missing required field");
  return *it;
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ScenarioError(path, "expected a finite number");
  return x;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ScenarioError(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ScenarioError(path, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ScenarioError(join(path, it.key()), "unknown field");
  }
}

std::vector<NamedCurve> parse_curve_list(const json& root, const std::string& key,
                                         const Interval& domain, Role role) {
  const json& list = require(root, key, "");
  if (!list.is_array()) throw ScenarioError(key, "expected an array");
  if (list.empty()) throw ScenarioError(key, "must contain at least one curve");
  std::vector<NamedCurve> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = index(key, i);
    if (!list[i].is_object()) throw ScenarioError(path, "expected an object");
    std::string name = as_string(require(list[i], "name", path), join(path, "name"));
    if (!seen.insert(name).second) {
      throw ScenarioError(join(path, "name"), "duplicate name '" + name + "'");
    }
    out.push_back({std::move(name), parse_curve(list[i], domain, path).with_role(role)});
  }
  return out;
}

std::vector<ReferenceValue> parse_reference(const json& ref) {
  const std::string path = "reference";
  if (!ref.is_object()) throw ScenarioError(path, "expected an object");
  reject_unknown(ref, {"tolerance", "values"}, path);
  const double tol = ref.contains("tolerance")
                         ? as_real(ref["tolerance"], join(path, "tolerance"))
                         : 0.01;
  std::vector<ReferenceValue> out;
  const json& values = require(ref, "values", path);
  if (!values.is_array()) throw ScenarioError(join(path, "values"), "expected an array");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string p = index(join(path, "values"), i);
    const json& v = values[i];
    if (!v.is_object()) throw ScenarioError(p, "expected an object");
    reject_unknown(v, {"quantity", "lottery", "utility", "value", "tolerance", "note"}, p);
    ReferenceValue r;
    r.quantity = as_string(require(v, "quantity", p), join(p, "quantity"));
    r.lottery = v.contains("lottery") ? as_string(v["lottery"], join(p, "lottery")) : "";
    r.utility = v.contains("utility") ? as_string(v["utility"], join(p, "utility")) : "";
    r.value = as_real(require(v, "value", p), join(p, "value"));
    r.tolerance = v.contains("tolerance") ? as_real(v["tolerance"], join(p, "tolerance")) : tol;
    r.note = v.contains("note") ? as_string(v["note"], join(p, "note")) : "";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Curve parse_curve(const json& j, const Interval& domain, const std::string& path) {
  const std::string kind_name = as_string(require(j, "kind", path), join(path, "kind"));
  const auto kind = parse_curve_kind(kind_name);
  if (!kind) throw ScenarioError(join(path, "kind"), "unknown curve kind '" + kind_name + "'");
  auto real = [&](const char* key) { return as_real(require(j, key, path), join(path, key)); };

  std::set<std::string> allowed{"name", "kind"};
  try {
    switch (*kind) {
      case CurveKind::uniform:
        reject_unknown(j, allowed, path);
        return Curve::uniform(domain);
      case CurveKind::linear:
        reject_unknown(j, allowed, path);
        return Curve::linear(domain);
      case CurveKind::triangular: {
        allowed.insert("mode");
        reject_unknown(j, allowed, path);
        std::optional<double> mode;
        if (j.contains("mode")) mode = real("mode");
        return Curve::triangular(domain, mode);
      }
      case CurveKind::scaled_beta:
        allowed.insert({"alpha", "beta"});
        reject_unknown(j, allowed, path);
        return Curve::scaled_beta(domain, real("alpha"), real("beta"));
      case CurveKind::exponential_normalized:
        allowed.insert("gamma");
        reject_unknown(j, allowed, path);
        return Curve::exponential(domain, real("gamma"));
      case CurveKind::truncated_gaussian:
        allowed.insert({"mu", "sigma"});
        reject_unknown(j, allowed, path);
        return Curve::truncated_gaussian(domain, real("mu"), real("sigma"));
      case CurveKind::log_wealth:
        allowed.insert("w");
        reject_unknown(j, allowed, path);
        return Curve::log_wealth(domain, real("w"));
      case CurveKind::step:
        allowed.insert("at");
        reject_unknown(j, allowed, path);
        return Curve::step(domain, real("at"));
      case CurveKind::piecewise_linear: {
        allowed.insert("knots");
        reject_unknown(j, allowed, path);
        const std::string kp = join(path, "knots");
        const json& knots = require(j, "knots", path);
        if (!knots.is_array()) throw ScenarioError(kp, "expected an array of [x, y] pairs");
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t i = 0; i < knots.size(); ++i) {
          const std::string p = index(kp, i);
          if (!knots[i].is_array() || knots[i].size() != 2) {
            throw ScenarioError(p, "expected an [x, y] pair");
          }
          xs.push_back(as_real(knots[i][0], p + "[0]"));
          ys.push_back(as_real(knots[i][1], p + "[1]"));
        }
        return Curve::piecewise_linear(domain, std::move(xs), std::move(ys));
      }
    }
  } catch (const InvalidCurve& e) {
    throw ScenarioError(path, e.what());
  } catch (const DomainError& e) {
    throw ScenarioError(path, e.what());
  }
  throw ScenarioError(join(path, "kind"), "unhandled curve kind");
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
  reject_unknown(j,
                 {"title", "domain", "lotteries", "utilities", "target", "old_lottery",
                  "new_lottery", "gammas", "fractile", "terms", "grid", "compare", "reference"},
                 "");
  Scenario s;
  if (j.contains("title")) s.title = as_string(j["title"], "title");

  const json& dom = require(j, "domain", "");
  if (!dom.is_object()) throw ScenarioError("domain", "expected an object");
  reject_unknown(dom, {"lo", "hi", "unit"}, "domain");
  s.domain.lo = as_real(require(dom, "lo", "domain"), "domain.lo");
  s.domain.hi = as_real(require(dom, "hi", "domain"), "domain.hi");
  if (!(s.domain.lo < s.domain.hi)) throw ScenarioError("domain", "requires lo < hi");
  if (dom.contains("unit")) s.unit = as_string(dom["unit"], "domain.unit");

  s.lotteries = parse_curve_list(j, "lotteries", s.domain, Role::lottery);
  s.utilities = parse_curve_list(j, "utilities", s.domain, Role::utility);

  if (j.contains("target")) s.target = as_real(j["target"], "target");
  if (j.contains("old_lottery")) s.old_lottery = as_string(j["old_lottery"], "old_lottery");
  if (j.contains("new_lottery")) s.new_lottery = as_string(j["new_lottery"], "new_lottery");
  if (j.contains("gammas")) {
    const json& g = j["gammas"];
    if (!g.is_array()) throw ScenarioError("gammas", "expected an array");
    for (std::size_t i = 0; i < g.size(); ++i) s.gammas.push_back(as_real(g[i], index("gammas", i)));
  }
  if (j.contains("fractile")) s.fractile = as_real(j["fractile"], "fractile");
  if (j.contains("terms")) s.terms = as_int(j["terms"], "terms");
  if (j.contains("grid")) s.grid = as_int(j["grid"], "grid");
  if (j.contains("compare")) {
    const json& c = j["compare"];
    if (!c.is_array() || c.size() != 2) throw ScenarioError("compare", "expected two curve names");
    for (std::size_t i = 0; i < 2; ++i) {
      s.compare.push_back(as_string(c[i], index("compare", i)));
      s.find_curve(s.compare.back(), index("compare", i));
    }
  }
  if (s.old_lottery) s.find_lottery(*s.old_lottery, "old_lottery");
  if (s.new_lottery) s.find_lottery(*s.new_lottery, "new_lottery");
  if (j.contains("reference")) s.reference = parse_reference(j["reference"]);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

const NamedCurve& Scenario::find_lottery(const std::string& name, const std::string& field) const {
  for (const auto& c : lotteries) {
    if (c.name == name) return c;
  }
  throw ScenarioError(field, "no lottery named '" + name + "'");
}

const NamedCurve& Scenario::find_curve(const std::string& name, const std::string& field) const {
  for (const auto* list : {&utilities, &lotteries}) {
    for (const auto& c : *list) {
      if (c.name == name) return c;
    }
  }
  throw ScenarioError(field, "no curve named '" + name + "'");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double round_real(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

}  // namespace aspire
