#include "sympwidth/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sympwidth/criteria.hpp"
#include "sympwidth/errors.hpp"
#include "sympwidth/forms.hpp"
#include "sympwidth/posopt.hpp"
#include "sympwidth/quad.hpp"
#include "sympwidth/scan.hpp"
#include "sympwidth/spec_json.hpp"
#include "sympwidth/symp.hpp"

namespace sympwidth {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"mean-width", "msp",  "optimize", "variation",
                                            "staircase",  "ramos", "criteria"};

struct HelpRequest {
  std::string text;
};

struct CommandDefaults {
  int radial;
  int angular;
  const char* output;
};

CommandDefaults defaults_for(const std::string& command) {
  if (command == "optimize") return {16, 32, "json"};
  if (command == "staircase") return {16, 32, "csv"};
  if (command == "variation") return {12, 24, "json"};
  if (command == "ramos") return {64, 64, "json"};
  return {32, 64, "json"};
}

// Inline JSON when the text starts with '{', otherwise a file path.
json load_spec(const std::string& text, const std::string& flag) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_text(text, flag);
  std::ifstream in(text);
  if (!in) throw SpecError(flag, "cannot open spec file '" + text + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), flag + " (" + text + ")");
}

std::vector<int> parse_id_list(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || id < 1 || id > kCriterionCount)
      throw SpecError("--only", "expected criterion ids in 1.." + std::to_string(kCriterionCount) +
                                    ", got '" + item + "'");
    ids.push_back(id);
  }
  return ids;
}

void check_finite(const json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw NumericalError("non-finite result at " + where);
  if (j.is_object())
    for (const auto& [key, value] : j.items()) check_finite(value, where + "/" + key);
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) check_finite(j[i], where + "/" + std::to_string(i));
}

// json::dump writes NaN as null, so non-finite values are rejected earlier.
std::string format_number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const json& v) {
  if (v.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? ";" : "") + csv_cell(v[i]);
    return joined;
  }
  if (v.is_string()) return csv_quote(v.get<std::string>());
  if (v.is_number_float()) return format_number(v.get<double>(), 17);
  return csv_quote(v.dump());
}

void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& cells) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, keys, cells);
    } else {
      keys.push_back(name);
      cells.push_back(csv_cell(value));
    }
  }
}

QuadratureRule make_rule(const RunConfig& c, int n) {
  if (c.mc_samples > 0) return monte_carlo_rule(n, c.mc_samples, c.seed);
  return hopf_rule(n, c.radial, c.angular);
}

Body body_of(const RunConfig& c) {
  if (c.body.is_null()) throw SpecError("--body", "this command needs a body spec");
  Body body = parse_body(c.body);
  if (c.n != 0 && body.dim_n() != c.n)
    throw SpecError("--n", "body has n = " + std::to_string(body.dim_n()) + " but --n is " +
                               std::to_string(c.n));
  return body;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

struct Outcome {
  json result = json::object();
  int code = 0;
  std::string csv;  // preformatted CSV body, else the result is flattened
};

Outcome cmd_mean_width(const RunConfig& c, std::ostream& err) {
  const Body body = body_of(c);
  const QuadratureRule rule = make_rule(c, body.dim_n());
  Outcome o;
  const double mw = mean_width(body, rule);
  o.result["mean_width"] = mw;
  o.result["rule_nodes"] = rule.size();
  if (const auto vol = normalized_volume(body)) {
    const double bound = 0.25 * mw * mw;
    o.result["normalized_volume"] = *vol;
    o.result["urysohn_bound"] = bound;
    const bool holds = *vol <= bound * (1.0 + c.tol);
    o.result["urysohn_holds"] = holds;
    if (!holds) {
      err << "check failed: normalized volume " << *vol << " exceeds (M/2)^2 = " << bound << "\n";
      o.code = 4;
    }
  }
  return o;
}

Outcome cmd_msp(const RunConfig& c, std::ostream& err) {
  const Body body = body_of(c);
  const Mat form = ellipsoid_form(body);
  const QuadratureRule rule = make_rule(c, body.dim_n());
  const WilliamsonForm w = williamson(form);
  Outcome o;
  const double msp = msp_ellipsoid(form, rule);
  const double mw = mean_width(body, rule);
  o.result["lambda"] = vector_json(w.lambda);
  o.result["msp"] = msp;
  o.result["mean_width"] = mw;
  const bool holds = msp <= mw + c.tol * std::max(1.0, mw);
  o.result["msp_below_mean_width"] = holds;
  if (!holds) {
    err << "check failed: M_Sp = " << msp << " exceeds M = " << mw << "\n";
    o.code = 4;
  }
  return o;
}

Outcome cmd_optimize(const RunConfig& c, std::ostream& err) {
  const Body body = body_of(c);
  const QuadratureRule rule = make_rule(c, body.dim_n());
  DescentOptions options;
  options.starts = c.starts;
  options.seed = c.seed;
  options.tol = c.tol;
  const DescentReport report = minimize_position(body, rule, options);
  Outcome o;
  o.result["best_value"] = report.best_value;
  o.result["best_param"] = {{"c", matrix_json(report.best_param.c)},
                            {"d", matrix_json(report.best_param.d)}};
  o.result["best_param_norm"] = report.best_param.to_vector().norm();
  o.result["initial_value"] = report.initial_value;
  o.result["gradient_norm"] = report.gradient_norm;
  o.result["iterations"] = report.iterations;
  o.result["converged"] = report.converged;
  o.result["start_values"] = report.start_values;
  o.result["start_param_norms"] = report.start_param_norms;
  json trace = json::array();
  for (const auto& [it, value] : report.trace) trace.push_back({it, value});
  o.result["trace"] = trace;
  const double mw = mean_width(body, rule);
  o.result["mean_width"] = mw;
  o.result["msp_upper_bound"] = std::min(mw, report.best_value);
  // Nothing in the orbit of an ellipsoid beats its Williamson value.
  Mat form;
  bool is_ellipsoid = true;
  try {
    form = ellipsoid_form(body);
  } catch (const SpecError&) {
    is_ellipsoid = false;
  }
  if (is_ellipsoid) {
    const double floor = msp_ellipsoid(form, rule);
    o.result["msp_ellipsoid"] = floor;
    if (report.best_value < floor - 1e-3 * std::max(1.0, floor)) {
      err << "check failed: descent reached " << report.best_value << " below M_Sp = " << floor
          << "\n";
      o.code = 4;
    }
  }
  if (!report.converged) err << "note: descent stopped before reaching the gradient tolerance\n";
  return o;
}

Outcome cmd_variation(const RunConfig& c, std::ostream&) {
  const Body body = body_of(c);
  if (c.ham.is_null()) throw SpecError("--ham", "variation needs a Hamiltonian spec");
  const HamiltonianSystem sys = parse_hamiltonian(c.ham, body.dim_n());
  const QuadratureRule rule = make_rule(c, body.dim_n());
  if (c.order != 1 && c.order != 2) throw SpecError("--order", "expected 1 or 2");
  Outcome o;
  o.result["order"] = c.order;
  o.result["value"] = c.order == 1 ? first_variation(body, sys, c.h, rule)
                                   : second_variation_fd(body, sys, c.h, rule);
  o.result["mean_width"] = mean_width(body, rule);
  return o;
}

Outcome cmd_staircase(const RunConfig& c, std::ostream& err) {
  if (c.steps < 1) throw SpecError("--steps", "need at least one step");
  std::vector<double> a_values;
  for (int k = 0; k < c.steps; ++k)
    a_values.push_back(c.steps == 1 ? c.from : c.from + (c.to - c.from) * k / (c.steps - 1));
  DescentOptions options;
  options.starts = c.starts;
  options.seed = c.seed;
  options.tol = c.tol;
  const auto rows = staircase_table(a_values, make_rule(c, 2), c.optimize, options);
  Outcome o;
  std::ostringstream csv;
  csv << "a,vol,mw_sq_quarter,cb,msp_upper_sq_quarter,strict_chain\n";
  json list = json::array();
  bool all = true;
  for (const auto& r : rows) {
    csv << format_number(r.a, 12) << ',' << format_number(r.vol, 12) << ','
        << format_number(r.mw_sq_quarter, 12) << ',' << format_number(r.cb, 12) << ','
        << format_number(r.msp_upper_sq_quarter, 12) << ',' << (r.strict_chain ? "true" : "false")
        << '\n';
    list.push_back({{"a", r.a},
                    {"vol", r.vol},
                    {"mw_sq_quarter", r.mw_sq_quarter},
                    {"cb", r.cb},
                    {"msp_upper_sq_quarter", r.msp_upper_sq_quarter},
                    {"urysohn", r.urysohn},
                    {"strict_chain", r.strict_chain}});
    all = all && r.strict_chain;
  }
  o.result["rows"] = list;
  o.result["strict_chain_all"] = all;
  o.csv = csv.str();
  if (!all) {
    err << "check failed: strict chain violated on at least one row\n";
    o.code = 4;
  }
  return o;
}

Outcome cmd_ramos(const RunConfig& c, std::ostream& err) {
  const QuadratureRule rule = make_rule(c, 2);
  Outcome o;
  // A violated chain throws CheckFailure, reported with exit code 4.
  const RamosComparison cmp = ramos_compare(rule, c.samples);
  const double coarse = mean_width(Body::toric(ramos_profile(c.samples / 2)), rule);
  o.result["mw_x0"] = cmp.mw_x0;
  o.result["mw_x0_half_samples"] = coarse;
  o.result["mw_x0_sample_change"] = std::abs(cmp.mw_x0 - coarse);
  o.result["mw_x1"] = cmp.mw_x1;
  o.result["mw_pl"] = cmp.mw_pl;
  o.result["mw_pl_quadrature"] = cmp.mw_pl_quadrature;
  o.result["chain_holds"] = cmp.chain_holds;
  err << "M(X0) is an upper bound from a piecewise-linear outer cover of the moment region\n";
  return o;
}

Outcome cmd_criteria(const RunConfig& c, std::ostream& err) {
  std::vector<int> ids = c.only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  Outcome o;
  json list = json::array();
  std::ostringstream csv;
  csv << "id,name,pass,detail\n";
  for (int id : ids) {
    const CriterionResult r = run_criterion(id);
    err << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << r.seconds
        << " s)\n";
    list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    csv << r.id << ',' << csv_quote(r.name) << ',' << (r.pass ? "true" : "false") << ','
        << csv_quote(r.detail) << '\n';
    if (!r.pass) o.code = 4;
  }
  o.result["criteria"] = list;
  o.csv = csv.str();
  return o;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  return json{{"command", c.command}, {"body", c.body},       {"ham", c.ham},
              {"n", c.n},             {"radial", c.radial},   {"angular", c.angular},
              {"mc_samples", c.mc_samples}, {"seed", c.seed}, {"output", c.output},
              {"threads", c.threads}, {"tol", c.tol},         {"starts", c.starts},
              {"h_step", c.h},             {"order", c.order},     {"from", c.from},
              {"to", c.to},           {"steps", c.steps},     {"optimize", c.optimize},
              {"samples", c.samples}, {"only", c.only}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("", "config must be a JSON object");
  RunConfig c;
  const auto get = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(target);
    } catch (const json::exception& e) {
      throw SpecError(std::string("/") + key, e.what());
    }
  };
  for (const auto& [key, value] : j.items())
    if (!config_to_json(RunConfig{}).contains(key)) throw SpecError("/" + key, "unknown field");
  get("command", c.command);
  if (j.contains("body")) c.body = j.at("body");
  if (j.contains("ham")) c.ham = j.at("ham");
  get("n", c.n);
  get("radial", c.radial);
  get("angular", c.angular);
  get("mc_samples", c.mc_samples);
  get("seed", c.seed);
  get("output", c.output);
  get("threads", c.threads);
  get("tol", c.tol);
  get("starts", c.starts);
  get("h_step", c.h);
  get("order", c.order);
  get("from", c.from);
  get("to", c.to);
  get("steps", c.steps);
  get("optimize", c.optimize);
  get("samples", c.samples);
  get("only", c.only);
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw SpecError("/command", "unknown command '" + c.command + "'");
  if (c.output != "json" && c.output != "csv")
    throw SpecError("/output", "expected \"json\" or \"csv\"");
  return c;
}

RunConfig parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"Mean widths and symplectic positions of convex bodies in R^{2n}", "sympwidth"};
  app.require_subcommand(0, 1);
  std::string config_text;
  app.add_option("--config", config_text, "Rerun a config (inline JSON or path)");

  RunConfig c;
  std::string body_text, ham_text, only_text, output;
  const auto add_rule_flags = [&](CLI::App* sub, bool with_body) {
    if (with_body) {
      sub->add_option("--body", body_text, "Body spec: inline JSON or path")->required();
      sub->add_option("--n", c.n, "Half dimension; checked against the body");
    }
    sub->add_option("--radial", c.radial, "Radial Gauss-Legendre points per axis");
    sub->add_option("--angular", c.angular, "Angular points per circle (even, >= 4)");
    sub->add_option("--mc-samples", c.mc_samples, "Use a Monte-Carlo rule with this many samples");
    sub->add_option("--seed", c.seed, "Seed for Monte-Carlo rules and random starts");
    sub->add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");
    sub->add_option("--tol", c.tol, "Tolerance for checks and descent");
  };

  CLI::App* mw = app.add_subcommand("mean-width", "Mean width of a body");
  add_rule_flags(mw, true);
  CLI::App* msp = app.add_subcommand("msp", "Williamson radii and M_Sp of an ellipsoid");
  add_rule_flags(msp, true);
  CLI::App* opt = app.add_subcommand("optimize", "Minimize M(PK) over symmetric symplectic P");
  add_rule_flags(opt, true);
  opt->add_option("--starts", c.starts, "Random starts");
  CLI::App* var = app.add_subcommand("variation", "Variation of M along a Hamiltonian flow");
  add_rule_flags(var, true);
  var->add_option("--ham", ham_text, "Hamiltonian spec: inline JSON or path")->required();
  CLI::Option* h_opt = var->add_option("--h-step", c.h,
                                       "Finite-difference time step (default 1e-3, 1e-2 for order 2)");
  var->add_option("--order", c.order, "1 = first variation, 2 = second variation");
  CLI::App* stair = app.add_subcommand("staircase", "Ellipsoid bounds against the staircase");
  add_rule_flags(stair, false);
  stair->add_option("--from", c.from, "First a");
  stair->add_option("--to", c.to, "Last a");
  stair->add_option("--steps", c.steps, "Number of rows");
  stair->add_flag("--optimize", c.optimize, "Run position descent on each row");
  stair->add_option("--starts", c.starts, "Random starts when optimizing");
  CLI::App* ramos = app.add_subcommand("ramos", "Compare the outer cover with X1 and the bidisk");
  add_rule_flags(ramos, false);
  ramos->add_option("--samples", c.samples, "Boundary curve samples");
  CLI::App* crit = app.add_subcommand("criteria", "Run acceptance criteria");
  crit->add_option("--only", only_text, "Comma-separated criterion ids");
  crit->add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  crit->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequest{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequest{app.help("", CLI::AppFormatMode::All)};
  }

  if (!config_text.empty()) {
    if (!app.get_subcommands().empty())
      throw SpecError("--config", "cannot be combined with a subcommand");
    return config_from_json(load_spec(config_text, "--config"));
  }
  if (app.get_subcommands().empty()) throw SpecError("", "missing subcommand; see --help");
  c.command = app.get_subcommands().front()->get_name();

  const CommandDefaults d = defaults_for(c.command);
  if (c.radial == 0) c.radial = d.radial;
  if (c.angular == 0) c.angular = d.angular;
  c.output = output.empty() ? d.output : output;
  if (!body_text.empty()) c.body = load_spec(body_text, "--body");
  if (!ham_text.empty()) c.ham = load_spec(ham_text, "--ham");
  if (!only_text.empty()) c.only = parse_id_list(only_text);
  if (h_opt->count() == 0) c.h = c.order == 2 ? 1e-2 : 1e-3;
  return c;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.threads < 0) throw SpecError("--threads", "must be >= 0");
  set_max_threads(c.threads);
  Outcome o;
  if (c.command == "mean-width")
    o = cmd_mean_width(c, err);
  else if (c.command == "msp")
    o = cmd_msp(c, err);
  else if (c.command == "optimize")
    o = cmd_optimize(c, err);
  else if (c.command == "variation")
    o = cmd_variation(c, err);
  else if (c.command == "staircase")
    o = cmd_staircase(c, err);
  else if (c.command == "ramos")
    o = cmd_ramos(c, err);
  else if (c.command == "criteria")
    o = cmd_criteria(c, err);
  else
    throw SpecError("command", "unknown command '" + c.command + "'");
  check_finite(o.result, c.command);

  const json config = config_to_json(c);
  if (c.output == "csv") {
    out << "# config=" << config.dump() << "\n";
    if (!o.csv.empty()) {
      out << o.csv;
    } else {
      std::vector<std::string> keys, cells;
      flatten(o.result, "", keys, cells);
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
      out << "\n";
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << "\n";
    }
  } else {
    json doc = o.result;
    doc["command"] = c.command;
    doc["config"] = config;
    out << doc.dump(2) << "\n";
  }
  return o.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_arguments(args);
    return execute(config, out, err);
  } catch (const HelpRequest& h) {
    out << h.text;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sympwidth
