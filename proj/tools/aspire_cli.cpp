// aspire: command-line front end for scenario files.
//
//   aspire eval --scenario table1.json --csv out.csv
//
// Exit codes: 0 success, 2 input or schema error, 3 numeric failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aspire/approximations.hpp"
#include "aspire/delegation.hpp"
#include "aspire/dominance.hpp"
#include "aspire/duality.hpp"
#include "aspire/scenario.hpp"
#include "aspire/selection.hpp"

namespace {

using aspire::format_real;
using aspire::round_real;
using Json = nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string scenario;
  std::string csv;
  std::string json;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<int> terms;
  std::optional<double> fractile;
};

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Quantity {
  std::string name;
  std::string lottery;
  std::string utility;
  double value;
};

struct Report {
  std::vector<std::string> notes;  // printed after the tables
  std::vector<Table> tables;
  Json json = Json::object();
  std::vector<Quantity> quantities;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const std::vector<Table>& tables) {
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t > 0) os << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
      os << '\n';
    };
    line(tables[t].header);
    for (const auto& r : tables[t].rows) line(r);
  }
}

void print_table(std::ostream& os, const Table& t) {
  if (!t.title.empty()) os << t.title << '\n';
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], cells[i].size());
    }
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);
  auto line = [&](const std::vector<std::string>& cells) {
    os << ' ';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << ' ' << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

double rounded(double x) { return round_real(x); }

Json number(double x) {
  if (!std::isfinite(x)) return format_real(x);  // JSON has no infinity
  return rounded(x);
}

class Runner {
 public:
  Runner(const aspire::Scenario& s, const Options& o) : s_(s), o_(o) {
    if (o.tol) {
      spec_.relative_tolerance = *o.tol;
      spec_.validate();
    }
  }

  Report eval() {
    Report r;
    Table t{"", {"lottery", "utility", "expected_utility", "expected_disutility",
                 "certain_equivalent", "aspiration_equivalent", "duality_residual"}, {}};
    Json rows = Json::array();
    for (const auto& f : s_.lotteries) {
      for (const auto& u : s_.utilities) {
        const auto d = aspire::evaluate_pair(f.curve, u.curve, spec_);
        const double residual = d.expected_utility + d.expected_disutility - 1.0;
        t.rows.push_back({f.name, u.name, format_real(d.expected_utility),
                          format_real(d.expected_disutility), format_real(d.certain_equivalent),
                          format_real(d.aspiration_equivalent), format_real(residual)});
        rows.push_back({{"lottery", f.name},
                        {"utility", u.name},
                        {"expected_utility", number(d.expected_utility)},
                        {"expected_disutility", number(d.expected_disutility)},
                        {"certain_equivalent", number(d.certain_equivalent)},
                        {"aspiration_equivalent", number(d.aspiration_equivalent)}});
        add_pair(r, f.name, u.name, d);
      }
    }
    r.tables.push_back(std::move(t));
    r.json["results"] = std::move(rows);
    return r;
  }

  Report sweep() {
    if (s_.lotteries.size() != 1) {
      throw aspire::ScenarioError("lotteries", "sweep takes exactly one lottery");
    }
    if (s_.gammas.empty()) throw aspire::ScenarioError("gammas", "sweep needs a gamma grid");
    const auto& f = s_.lotteries.front();
    Report r;
    Table t{"", {"gamma", "expected_utility", "certain_equivalent", "aspiration_equivalent"}, {}};
    Json rows = Json::array();
    for (double g : s_.gammas) {
      const auto u = aspire::Curve::exponential_or_linear(s_.domain, g);
      const auto d = aspire::evaluate_pair(f.curve, u, spec_);
      t.rows.push_back({format_real(g), format_real(d.expected_utility),
                        format_real(d.certain_equivalent), format_real(d.aspiration_equivalent)});
      rows.push_back({{"gamma", number(g)},
                      {"expected_utility", number(d.expected_utility)},
                      {"certain_equivalent", number(d.certain_equivalent)},
                      {"aspiration_equivalent", number(d.aspiration_equivalent)}});
    }
    r.tables.push_back(std::move(t));
    r.json["lottery"] = f.name;
    r.json["sweep"] = std::move(rows);
    return r;
  }

  Report update_target() {
    if (!s_.target) throw aspire::ScenarioError("target", "missing required field");
    if (!s_.old_lottery) throw aspire::ScenarioError("old_lottery", "missing required field");
    if (!s_.new_lottery) throw aspire::ScenarioError("new_lottery", "missing required field");
    const auto& old_f = s_.find_lottery(*s_.old_lottery, "old_lottery");
    const auto& new_f = s_.find_lottery(*s_.new_lottery, "new_lottery");
    const auto u = aspire::update_target(old_f.curve, *s_.target, new_f.curve, spec_);

    const auto implied = aspire::Curve::exponential_or_linear(s_.domain, u.effective_gamma);
    const double round_trip =
        std::abs(aspire::aspiration_equivalent(old_f.curve, implied, spec_) - u.old_target);
    const double round_trip_tol = 1e-5 * s_.domain.span();
    const double rho = u.effective_gamma == 0.0 ? aspire::kInfiniteTolerance
                                                : 1.0 / u.effective_gamma;

    Report r;
    Table t{"", {"field", "value"}, {}};
    auto row = [&](const std::string& k, double v) {
      t.rows.push_back({k, format_real(v)});
      r.json[k] = number(v);
      r.quantities.push_back({k, "", "", v});
    };
    r.json["old_lottery"] = old_f.name;
    r.json["new_lottery"] = new_f.name;
    row("old_target", u.old_target);
    row("old_exceed_prob", u.old_exceed_prob);
    row("effective_gamma", u.effective_gamma);
    row("risk_tolerance", rho);
    row("new_target", u.new_target);
    row("new_exceed_prob", u.new_exceed_prob);
    row("round_trip_residual", round_trip);
    const bool ok = round_trip <= round_trip_tol;
    r.json["round_trip_pass"] = ok;
    r.notes.push_back("round-trip check |AE(old, exp(gamma_eff)) - target| <= " +
                      format_real(round_trip_tol) + ": " + (ok ? "PASS" : "FAIL"));
    r.notes.push_back(std::string("exceedance probability ") +
                      (u.new_exceed_prob > u.old_exceed_prob ? "rises" : "does not rise") +
                      " with the new lottery");
    r.tables.push_back(std::move(t));
    return r;
  }

  Report solve_gamma() {
    if (!s_.target) throw aspire::ScenarioError("target", "missing required field");
    Report r;
    Table t{"", {"lottery", "target", "effective_gamma", "risk_tolerance", "exceed_prob"}, {}};
    Json rows = Json::array();
    for (const auto& f : s_.lotteries) {
      const double g = aspire::effective_gamma(f.curve, *s_.target, spec_);
      const double rho = g == 0.0 ? aspire::kInfiniteTolerance : 1.0 / g;
      const double exceed = 1.0 - f.curve.value(*s_.target);
      t.rows.push_back({f.name, format_real(*s_.target), format_real(g), format_real(rho),
                        format_real(exceed)});
      rows.push_back({{"lottery", f.name},
                      {"target", number(*s_.target)},
                      {"effective_gamma", number(g)},
                      {"risk_tolerance", number(rho)},
                      {"exceed_prob", number(exceed)}});
      r.quantities.push_back({"effective_gamma", f.name, "", g});
      r.quantities.push_back({"risk_tolerance", f.name, "", rho});
    }
    r.tables.push_back(std::move(t));
    r.json["results"] = std::move(rows);
    return r;
  }

  Report matrix() {
    const auto m = aspire::evaluate_matrix(curves(s_.lotteries), curves(s_.utilities), spec_);
    Report r;
    r.json["lotteries"] = names(s_.lotteries);
    r.json["utilities"] = names(s_.utilities);
    const std::pair<const char*, const aspire::Matrix*> blocks[] = {
        {"EU", &m.eu}, {"EDU", &m.edu}, {"CE", &m.ce}, {"AE", &m.ae}};
    for (const auto& [tag, mat] : blocks) {
      Table t{"", {tag}, {}};
      for (const auto& u : s_.utilities) t.header.push_back(u.name);
      Json cells = Json::array();
      for (std::size_t i = 0; i < mat->rows(); ++i) {
        std::vector<std::string> row{s_.lotteries[i].name};
        Json jr = Json::array();
        for (std::size_t j = 0; j < mat->cols(); ++j) {
          row.push_back(format_real((*mat)(i, j)));
          jr.push_back(number((*mat)(i, j)));
        }
        t.rows.push_back(std::move(row));
        cells.push_back(std::move(jr));
      }
      r.tables.push_back(std::move(t));
      r.json[tag] = std::move(cells);
    }
    for (std::size_t i = 0; i < m.eu.rows(); ++i) {
      for (std::size_t j = 0; j < m.eu.cols(); ++j) {
        add_pair(r, s_.lotteries[i].name, s_.utilities[j].name,
                 {m.eu(i, j), m.edu(i, j), m.ce(i, j), m.ae(i, j)});
      }
    }
    const auto saddle = aspire::find_pure_saddle(m.eu);
    Json js{{"maximin", number(saddle.maximin)}, {"minimax", number(saddle.minimax)}};
    r.quantities.push_back({"maximin", "", "", saddle.maximin});
    r.quantities.push_back({"minimax", "", "", saddle.minimax});
    if (saddle.saddle) {
      const auto& c = *saddle.saddle;
      js["lottery"] = s_.lotteries[c.row].name;
      js["utility"] = s_.utilities[c.col].name;
      js["value"] = number(c.value);
      r.notes.push_back("EU pure saddle " + format_real(c.value) + " at (" +
                        s_.lotteries[c.row].name + ", " + s_.utilities[c.col].name + ")");
    } else {
      r.notes.push_back("EU matrix has no pure saddle (maximin " + format_real(saddle.maximin) +
                        ", minimax " + format_real(saddle.minimax) + ")");
    }
    r.json["eu_saddle"] = std::move(js);
    return r;
  }

  Report allocate() {
    const auto m = aspire::evaluate_matrix(curves(s_.lotteries), curves(s_.utilities), spec_);
    const auto a = aspire::saddle_allocate(m.eu);
    const auto sums = aspire::allocation_sums(a, m);
    Report r;
    Table t{"", {"stage", "lottery", "utility", "expected_utility", "certain_equivalent",
                 "aspiration_equivalent", "pure_saddle", "maximin", "minimax"}, {}};
    Json stages = Json::array();
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
      const auto& p = a.pairs[k];
      const auto& st = a.stages[k];
      const auto& fl = s_.lotteries[p.lottery].name;
      const auto& ul = s_.utilities[p.utility].name;
      t.rows.push_back({std::to_string(k + 1), fl, ul, format_real(p.eu),
                        format_real(m.ce(p.lottery, p.utility)),
                        format_real(m.ae(p.lottery, p.utility)), yes_no(st.pure_saddle),
                        format_real(st.maximin), format_real(st.minimax)});
      stages.push_back({{"stage", k + 1},
                        {"lottery", fl},
                        {"utility", ul},
                        {"expected_utility", number(p.eu)},
                        {"pure_saddle", st.pure_saddle},
                        {"maximin", number(st.maximin)},
                        {"minimax", number(st.minimax)}});
      if (!st.pure_saddle) {
        r.notes.push_back("stage " + std::to_string(k + 1) +
                          ": no pure saddle, paired the maximin row with its minimizing column");
      }
    }
    if (!a.pairs.empty()) r.quantities.push_back({"first_saddle", "", "", a.pairs.front().eu});
    r.quantities.push_back({"sum_ce", "", "", sums.sum_ce});
    r.quantities.push_back({"sum_ae", "", "", sums.sum_ae});
    r.quantities.push_back({"sum_eu", "", "", sums.sum_eu});
    r.notes.push_back("sum CE " + format_real(sums.sum_ce) + ", sum AE " +
                      format_real(sums.sum_ae) + ", sum EU " + format_real(sums.sum_eu));
    r.tables.push_back(std::move(t));
    r.json["stages"] = std::move(stages);
    r.json["sums"] = {{"sum_ce", number(sums.sum_ce)},
                      {"sum_ae", number(sums.sum_ae)},
                      {"sum_eu", number(sums.sum_eu)}};
    return r;
  }

  Report dominance() {
    const aspire::NamedCurve* a = nullptr;
    const aspire::NamedCurve* b = nullptr;
    if (!s_.compare.empty()) {
      a = &s_.find_curve(s_.compare[0], "compare[0]");
      b = &s_.find_curve(s_.compare[1], "compare[1]");
    } else if (s_.utilities.size() >= 2) {
      a = &s_.utilities[0];
      b = &s_.utilities[1];
    } else {
      throw aspire::ScenarioError("compare", "dominance needs two curves to compare");
    }
    const int grid = o_.grid.value_or(s_.grid.value_or(2048));
    const auto first = aspire::first_order_dominates(a->curve, b->curve, grid);
    const auto second = aspire::second_order_dominates(a->curve, b->curve, grid, spec_);
    const std::string phrase = aspire::dominance_phrase(a->curve);

    Report r;
    Table verdicts{"", {"order", "a", "b", "dominates", "strict_witness", "max_violation"}, {}};
    auto verdict = [&](const char* order, const aspire::DominanceVerdict& v) {
      const std::string witness = v.strict_witness ? format_real(*v.strict_witness) : "none";
      verdicts.rows.push_back({order, a->name, b->name, yes_no(v.dominates), witness,
                               format_real(v.max_violation)});
      Json j{{"dominates", v.dominates},
             {"strict_witness", v.strict_witness ? Json(number(*v.strict_witness)) : Json()},
             {"max_violation", number(v.max_violation)},
             {"analog_derived", v.analog_derived}};
      r.json[std::string(order)] = std::move(j);
    };
    r.json["a"] = a->name;
    r.json["b"] = b->name;
    verdict("first_order", first);
    verdict("second_order", second);
    r.notes.push_back("first order: " + a->name + (first.dominates ? " " : " does not ") + phrase +
                      " " + b->name);
    r.notes.push_back("second order (integrated analog): " + a->name +
                      (second.dominates ? " " : " does not ") + phrase + " " + b->name);
    r.tables.push_back(std::move(verdicts));

    if (first.max_violation <= aspire::kGridTolerance) {
      const auto imp = aspire::dominance_implications(a->curve, b->curve,
                                                      curves(s_.lotteries), spec_);
      Table t{"", {"lottery", "edu_a", "edu_b", "edu_margin", "ae_a", "ae_b", "ae_margin", "eu_a",
                   "eu_b", "eu_margin", "holds"}, {}};
      Json rows = Json::array();
      for (std::size_t i = 0; i < imp.rows.size(); ++i) {
        const auto& row = imp.rows[i];
        const auto& name = s_.lotteries[i].name;
        t.rows.push_back({name, format_real(row.edu_a), format_real(row.edu_b),
                          format_real(row.edu_margin), format_real(row.ae_a), format_real(row.ae_b),
                          format_real(row.ae_margin), format_real(row.eu_a), format_real(row.eu_b),
                          format_real(row.eu_margin), yes_no(row.holds)});
        rows.push_back({{"lottery", name},
                        {"edu_margin", number(row.edu_margin)},
                        {"ae_margin", number(row.ae_margin)},
                        {"eu_margin", number(row.eu_margin)},
                        {"holds", row.holds}});
        r.quantities.push_back({"ae_margin", name, "", row.ae_margin});
      }
      r.tables.push_back(std::move(t));
      r.json["implications"] = {{"mean_a", number(imp.mean_a)},
                                {"mean_b", number(imp.mean_b)},
                                {"mean_margin", number(imp.mean_margin)},
                                {"rows", std::move(rows)},
                                {"holds", imp.holds}};
      r.notes.push_back("implications (EDU, AE, EU, utility-density mean): " +
                        std::string(imp.holds ? "all hold" : "VIOLATED"));
    } else {
      r.notes.push_back("implications skipped: " + a->name + " <= " + b->name +
                        " fails on the grid");
    }

    const auto ga = exponential_gamma(a->curve);
    const auto gb = exponential_gamma(b->curve);
    if (ga && gb && *ga <= *gb) {
      Table t{"", {"lottery", "utility_order", "eu_order", "ae_order", "ce_order", "holds"}, {}};
      Json rows = Json::array();
      for (const auto& f : s_.lotteries) {
        const auto c = aspire::exponential_chain(*ga, *gb, f.curve, spec_, grid);
        std::vector<std::string> row{f.name};
        for (double m : c.margins) row.push_back(format_real(m));
        row.push_back(yes_no(c.holds));
        t.rows.push_back(std::move(row));
        Json margins = Json::array();
        for (double m : c.margins) margins.push_back(number(m));
        rows.push_back({{"lottery", f.name}, {"margins", std::move(margins)}, {"holds", c.holds}});
      }
      r.tables.push_back(std::move(t));
      r.json["exponential_chain"] = std::move(rows);
    }
    return r;
  }

  Report approx() {
    Report r;
    Table t{"", {"lottery", "utility", "quantity", "exact", "approx", "first_moment",
                 "central_second_moment", "tolerance", "tolerance_term", "premium"}, {}};
    Json rows = Json::array();
    Table series{"", {"lottery", "utility", "lambda", "terms", "closed_form", "series",
                      "diverging"}, {}};
    Json series_rows = Json::array();
    const int terms = o_.terms.value_or(s_.terms.value_or(6));
    for (const auto& f : s_.lotteries) {
      for (const auto& u : s_.utilities) {
        const auto ce = aspire::ce_taylor2(f.curve, u.curve, spec_);
        const auto ae = aspire::ae_taylor2(f.curve, u.curve, spec_);
        for (const auto& [label, rep] : {std::pair{"certain_equivalent", ce},
                                         std::pair{"aspiration_equivalent", ae}}) {
          t.rows.push_back({f.name, u.name, label, format_real(rep.exact), format_real(rep.approx),
                            format_real(rep.first_moment), format_real(rep.central_second_moment),
                            format_real(rep.tolerance), format_real(rep.tolerance_term),
                            format_real(rep.premium)});
          rows.push_back({{"lottery", f.name},
                          {"utility", u.name},
                          {"quantity", label},
                          {"exact", number(rep.exact)},
                          {"approx", number(rep.approx)},
                          {"first_moment", number(rep.first_moment)},
                          {"central_second_moment", number(rep.central_second_moment)},
                          {"tolerance", number(rep.tolerance)},
                          {"tolerance_term", number(rep.tolerance_term)},
                          {"premium", number(rep.premium)}});
        }
        auto q = [&](const char* name, double v) { r.quantities.push_back({name, f.name, u.name, v}); };
        q("ce_exact", ce.exact);
        q("ce_approx", ce.approx);
        q("lottery_mean", ce.first_moment);
        q("lottery_variance", ce.central_second_moment);
        q("risk_tolerance", ce.tolerance);
        q("risk_premium", ce.premium);
        q("ae_exact", ae.exact);
        q("ae_approx", ae.approx);
        q("utility_mean", ae.first_moment);
        q("utility_variance", ae.central_second_moment);
        q("spread_tolerance", ae.tolerance);
        q("spread_premium", ae.premium);

        const auto lambda = exponential_gamma(f.curve);
        if (lambda && *lambda > 0.0 && !u.curve.is_step()) {
          const auto cs = aspire::ae_cumulant_series(f.curve, u.curve, terms, spec_);
          series.rows.push_back({f.name, u.name, format_real(cs.lambda), std::to_string(terms),
                                 format_real(cs.closed_form), format_real(cs.series),
                                 yes_no(cs.diverging)});
          Json partial = Json::array();
          for (double p : cs.partial_sums) partial.push_back(number(p));
          series_rows.push_back({{"lottery", f.name},
                                 {"utility", u.name},
                                 {"lambda", number(cs.lambda)},
                                 {"closed_form", number(cs.closed_form)},
                                 {"series", number(cs.series)},
                                 {"partial_sums", std::move(partial)},
                                 {"diverging", cs.diverging}});
          q("series_closed_form", cs.closed_form);
          q("series", cs.series);
          if (cs.diverging) {
            r.notes.push_back("warning: cumulant series for (" + f.name + ", " + u.name +
                              ") is diverging; use the closed form");
          }
        }
      }
    }
    r.tables.push_back(std::move(t));
    r.json["approximations"] = std::move(rows);
    if (!series.rows.empty()) {
      r.tables.push_back(std::move(series));
      r.json["cumulant_series"] = std::move(series_rows);
    }
    return r;
  }

  Report delegate() {
    const double fractile = o_.fractile.value_or(s_.fractile.value_or(0.5));
    Report r;
    Table rules{"", {"utility", "rule", "agent_choice", "principal_choice", "uses_utility",
                     "agrees_with_principal"}, {}};
    Table targets{"", {"utility", "rule", "lottery", "target", "exceed_prob"}, {}};
    Json out = Json::array();
    for (const auto& u : s_.utilities) {
      const auto rep = aspire::desiderata_report(curves(s_.lotteries), u.curve, fractile, spec_);
      Json jr = Json::array();
      for (const auto& rule : rep.rules) {
        const std::string rule_name = aspire::to_string(rule.rule);
        rules.rows.push_back({u.name, rule_name, s_.lotteries[rule.agent_index].name,
                              s_.lotteries[rep.principal_index].name, yes_no(rule.uses_utility),
                              yes_no(rule.agrees_with_principal)});
        for (std::size_t i = 0; i < rule.targets.size(); ++i) {
          targets.rows.push_back({u.name, rule_name, s_.lotteries[i].name,
                                  format_real(rule.targets[i]), format_real(rule.exceedances[i])});
        }
        jr.push_back({{"rule", rule_name},
                      {"agent_choice", s_.lotteries[rule.agent_index].name},
                      {"uses_utility", rule.uses_utility},
                      {"agrees_with_principal", rule.agrees_with_principal}});
      }
      out.push_back({{"utility", u.name},
                     {"principal_choice", s_.lotteries[rep.principal_index].name},
                     {"rules", std::move(jr)}});
    }
    r.tables.push_back(std::move(rules));
    r.tables.push_back(std::move(targets));
    r.json["fractile"] = number(fractile);
    r.json["delegation"] = std::move(out);
    return r;
  }

 private:
  static std::vector<aspire::Curve> curves(const std::vector<aspire::NamedCurve>& list) {
    std::vector<aspire::Curve> out;
    for (const auto& c : list) out.push_back(c.curve);
    return out;
  }

  static Json names(const std::vector<aspire::NamedCurve>& list) {
    Json out = Json::array();
    for (const auto& c : list) out.push_back(c.name);
    return out;
  }

  static std::optional<double> exponential_gamma(const aspire::Curve& c) {
    if (c.kind() == aspire::CurveKind::exponential_normalized) {
      return std::get<aspire::ExponentialParams>(c.params()).gamma;
    }
    if (c.kind() == aspire::CurveKind::linear) return 0.0;
    return std::nullopt;
  }

  static void add_pair(Report& r, const std::string& f, const std::string& u,
                       const aspire::DualityResult& d) {
    r.quantities.push_back({"expected_utility", f, u, d.expected_utility});
    r.quantities.push_back({"expected_disutility", f, u, d.expected_disutility});
    r.quantities.push_back({"certain_equivalent", f, u, d.certain_equivalent});
    r.quantities.push_back({"aspiration_equivalent", f, u, d.aspiration_equivalent});
  }

  const aspire::Scenario& s_;
  const Options& o_;
  aspire::numerics::QuadratureSpec spec_;
};

// Computed values next to the scenario's reference values.
void compare_reference(const aspire::Scenario& s, Report& r, std::ostream& os) {
  if (s.reference.empty()) return;
  Table t{"reference comparison", {"quantity", "lottery", "utility", "computed", "reference",
                                   "difference", "tolerance", "status"}, {}};
  Json rows = Json::array();
  int exceeded = 0;
  for (const auto& ref : s.reference) {
    auto it = std::find_if(r.quantities.begin(), r.quantities.end(), [&](const Quantity& q) {
      return q.name == ref.quantity && q.lottery == ref.lottery && q.utility == ref.utility;
    });
    if (it == r.quantities.end()) continue;
    const double diff = it->value - ref.value;
    const bool ok = std::abs(diff) <= ref.tolerance;
    if (!ok) ++exceeded;
    t.rows.push_back({ref.quantity, ref.lottery, ref.utility, format_real(it->value),
                      format_real(ref.value), format_real(diff), format_real(ref.tolerance),
                      ok ? "ok" : "WARNING tolerance exceeded"});
    rows.push_back({{"quantity", ref.quantity},
                    {"lottery", ref.lottery},
                    {"utility", ref.utility},
                    {"computed", number(it->value)},
                    {"reference", number(ref.value)},
                    {"difference", number(diff)},
                    {"tolerance", number(ref.tolerance)},
                    {"within_tolerance", ok}});
  }
  if (t.rows.empty()) return;
  os << '\n';
  print_table(os, t);
  if (exceeded > 0) {
    os << "warning: " << exceeded << " of " << t.rows.size()
       << " reference values differ by more than their tolerance\n";
  }
  r.json["reference_comparison"] = std::move(rows);
}

void emit(const aspire::Scenario& s, const std::string& command, Report r, const Options& o) {
  std::ostream& os = std::cout;
  os << command;
  if (!s.title.empty()) os << ": " << s.title;
  if (!s.unit.empty()) os << " [" << s.unit << "]";
  os << '\n';
  for (const auto& t : r.tables) {
    os << '\n';
    print_table(os, t);
  }
  if (!r.notes.empty()) os << '\n';
  for (const auto& n : r.notes) os << n << '\n';
  compare_reference(s, r, os);

  if (!o.csv.empty()) {
    std::ofstream out(o.csv, std::ios::binary);
    if (!out) throw aspire::ScenarioError("--csv", "cannot write '" + o.csv + "'");
    write_csv(out, r.tables);
  }
  if (!o.json.empty()) {
    std::ofstream out(o.json, std::ios::binary);
    if (!out) throw aspire::ScenarioError("--json", "cannot write '" + o.json + "'");
    Json doc{{"command", command}, {"title", s.title},
             {"domain", {{"lo", number(s.domain.lo)}, {"hi", number(s.domain.hi)},
                         {"unit", s.unit}}}};
    doc.update(r.json);
    if (!r.notes.empty()) doc["notes"] = r.notes;
    out << doc.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected utility, expected disutility, certain and aspiration equivalents"};
  app.require_subcommand(1);
  Options opt;

  using Method = Report (Runner::*)();
  const std::vector<std::tuple<std::string, std::string, Method>> commands = {
      {"eval", "EU, EDU, CE and AE for every lottery-utility pair", &Runner::eval},
      {"sweep", "CE and AE of the lottery across a gamma grid", &Runner::sweep},
      {"update-target", "carry a target over to a new lottery", &Runner::update_target},
      {"solve-gamma", "effective risk aversion implied by a target", &Runner::solve_gamma},
      {"matrix", "EU/EDU/CE/AE matrices with the EU saddle", &Runner::matrix},
      {"allocate", "saddle-point allocation of lotteries to utilities", &Runner::allocate},
      {"dominance", "dominance verdicts and their implications", &Runner::dominance},
      {"approx", "second-order and cumulant approximations", &Runner::approx},
      {"delegate", "compare target-setting rules for delegation", &Runner::delegate},
  };
  for (const auto& [name, help, method] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", opt.scenario, "scenario JSON file")->required();
    sub->add_option("--csv", opt.csv, "write CSV output to PATH");
    sub->add_option("--json", opt.json, "write JSON output to PATH");
    sub->add_option("--tol", opt.tol, "relative quadrature tolerance");
    sub->add_option("--grid", opt.grid, "dominance grid points")->check(CLI::Range(64, 1 << 22));
    sub->add_option("--terms", opt.terms, "cumulant series terms")->check(CLI::Range(1, 8));
    sub->add_option("--fractile", opt.fractile, "fractile for the delegation rule")
        ->check(CLI::Range(0.0, 1.0));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto scenario = aspire::load_scenario(opt.scenario);
    Runner runner(scenario, opt);
    for (const auto& [name, help, method] : commands) {
      if (name == command) emit(scenario, command, (runner.*method)(), opt);
    }
  } catch (const aspire::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const aspire::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const aspire::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
