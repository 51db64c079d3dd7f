#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqfval/acceptance.hpp"
#include "sqfval/report.hpp"

namespace sqfval {

struct CliResult {
  int exit_code = 0;
  std::string output;
};

/// Effective runtime knobs: built-in defaults, overridden by a config file,
/// overridden again by explicit flags.
struct CliConfig {
  unsigned workers = 1;
  std::uint64_t max_evals = 10'000'000;
  std::uint64_t max_box = 1'000'000;
  std::uint64_t max_q = kDefaultFieldCeiling;
};

/// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
inline CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  CliConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::uint64_t v = 0;
    try {
      v = std::stoull(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad value for key \"" + key + "\"");
    }
    if (key == "workers")
      cfg.workers = static_cast<unsigned>(v);
    else if (key == "max_evals")
      cfg.max_evals = v;
    else if (key == "max_box")
      cfg.max_box = v;
    else if (key == "max_q")
      cfg.max_q = v;
    else
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
  }
  return cfg;
}

namespace detail {

inline std::string quote_arg(const std::string& a) {
  if (a.find_first_of(" \t\"") == std::string::npos) return a;
  std::string out = "\"";
  for (char c : a) {
    if (c == '"') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string echo_invocation(const std::vector<std::string>& args) {
  std::string out = "sqfval";
  for (const auto& a : args) out += " " + quote_arg(a);
  return out;
}

inline Json config_json(const CliConfig& cfg) {
  Json j;
  j["workers"] = cfg.workers;
  j["max_evals"] = cfg.max_evals;
  j["max_box"] = cfg.max_box;
  j["max_q"] = cfg.max_q;
  return j;
}

}  // namespace detail

/// Parse and dispatch one invocation. The report goes to the returned output
/// (or to --out when given); the exit code is 0 only when every check in the
/// selected experiment passed.
inline CliResult run_invocation(const std::vector<std::string>& args) {
  CLI::App app{"square-free value experiments over F_q[t]"};
  app.require_subcommand(1);

  std::string field_spec, f_src, poly_src, out_path, grid_path, config_path;
  std::vector<std::string> a_src, b_src, c_src;
  std::vector<std::uint32_t> box_m;
  std::vector<std::uint64_t> q_list;
  CliConfig flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the report to this path");
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--workers", flags.workers, "parallel workers");
    sub->add_option("--max-evals", flags.max_evals,
                    "sparse-count evaluation ceiling");
    sub->add_option("--max-box", flags.max_box, "monic-box evaluation ceiling");
    sub->add_option("--max-q", flags.max_q, "field size ceiling");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", field_spec, "field spec: p, p^n, or a prime power")
        ->required();
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--f", f_src, "polynomial in t and x1..xd")->required();
    sub->add_option("--a", a_src, "a_i in F_q[t], one per variable")->required();
    sub->add_option("--b", b_src, "b_i in F_q[t], one per variable")->required();
    sub->add_option("--c", c_src, "c_i in F_q[t], one per variable")->required();
  };

  CLI::App* cmd_field_info = app.add_subcommand("field-info", "describe a field");
  add_field(cmd_field_info);
  add_common(cmd_field_info);

  CLI::App* cmd_sqfree = app.add_subcommand("sqfree-check",
                                            "square-freeness verdict");
  add_field(cmd_sqfree);
  cmd_sqfree->add_option("--poly", poly_src, "polynomial to test")->required();
  add_common(cmd_sqfree);

  CLI::App* cmd_cond = app.add_subcommand("check-conditions",
                                          "hypothesis checks for a family");
  add_field(cmd_cond);
  add_family(cmd_cond);
  add_common(cmd_cond);

  CLI::App* cmd_buildp = app.add_subcommand("build-p",
                                            "construct the vanishing polynomial");
  add_field(cmd_buildp);
  add_family(cmd_buildp);
  add_common(cmd_buildp);

  CLI::App* cmd_count = app.add_subcommand("count",
                                           "exhaustive sparse-family count");
  add_field(cmd_count);
  add_family(cmd_count);
  cmd_count->add_option("--emit-grid", grid_path, "write per-point CSV here");
  add_common(cmd_count);

  CLI::App* cmd_box = app.add_subcommand("monic-box",
                                         "monic box count and decomposition");
  add_field(cmd_box);
  cmd_box->add_option("--f", f_src, "polynomial in t and x1..xd")->required();
  cmd_box->add_option("--m", box_m, "monic degree per variable, each >= 2")
      ->required();
  add_common(cmd_box);

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "frequency sweep over q");
  cmd_sweep->add_option("--f", f_src, "polynomial template")->required();
  cmd_sweep->add_option("--a", a_src, "a_i template, one per variable")
      ->required();
  cmd_sweep->add_option("--b", b_src, "b_i template, one per variable")
      ->required();
  cmd_sweep->add_option("--c", c_src, "c_i template, one per variable")
      ->required();
  cmd_sweep->add_option("--q", q_list, "prime powers to sweep")->required();
  add_common(cmd_sweep);

  CLI::App* cmd_cex = app.add_subcommand("counterexamples",
                                         "run the two fixed counterexamples");
  add_field(cmd_cex);
  add_common(cmd_cex);

  CLI::App* cmd_verify = app.add_subcommand("verify",
                                            "run the built-in acceptance suite");
  add_common(cmd_verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    return {code, os.str()};
  }

  CliResult result;
  try {
    CliConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    auto pick = [&](CLI::App* sub) {
      if (sub->count("--workers")) cfg.workers = flags.workers;
      if (sub->count("--max-evals")) cfg.max_evals = flags.max_evals;
      if (sub->count("--max-box")) cfg.max_box = flags.max_box;
      if (sub->count("--max-q")) cfg.max_q = flags.max_q;
    };
    HarnessOptions opts;
    auto harness_opts = [&]() {
      opts.workers = cfg.workers;
      opts.max_evals = cfg.max_evals;
      opts.max_box = cfg.max_box;
      return opts;
    };

    Json report;
    report["invocation"] = detail::echo_invocation(args);
    bool checks_pass = true;
    bool text_mode = false;
    std::string text_output;

    auto parse_family = [&](const Field& field)
        -> std::pair<XPoly, SparseSpec> {
      if (a_src.empty() || a_src.size() != b_src.size() ||
          a_src.size() != c_src.size())
        throw std::invalid_argument(
            "need the same number of --a, --b and --c entries");
      const auto d = static_cast<std::uint32_t>(a_src.size());
      XPoly f = parse_xpoly(field, f_src, d);
      std::vector<TPoly> a, b, c;
      for (std::uint32_t i = 0; i < d; ++i) {
        a.push_back(parse_tpoly(field, a_src[i]));
        b.push_back(parse_tpoly(field, b_src[i]));
        c.push_back(parse_tpoly(field, c_src[i]));
      }
      return {std::move(f), SparseSpec(std::move(a), std::move(b), std::move(c))};
    };

    if (*cmd_field_info) {
      pick(cmd_field_info);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      report["field"] = field_json(field.get());
      report["spec_string"] = field->spec_string();
      report["element_count"] = field->q();
    } else if (*cmd_sqfree) {
      pick(cmd_sqfree);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      report["field"] = field_json(field.get());
      const XPoly g = parse_xpoly_infer(field, poly_src);
      report["poly"] = to_string(g);
      if (g.is_zero()) {
        report["ring"] = g.nvars() == 0 ? "F_q[t]" : "F_q[t][x]";
        report["is_squarefree"] = false;
        report["input_zero"] = true;
        report["witness"] = Json(nullptr);
      } else if (g.nvars() == 0) {
        const auto verdict = is_squarefree_t(g.to_tpoly());
        report["ring"] = "F_q[t]";
        report["is_squarefree"] = verdict.is_squarefree;
        report["input_zero"] = verdict.input_zero;
        report["witness"] =
            verdict.witness ? Json(to_string(*verdict.witness)) : Json(nullptr);
      } else {
        const auto verdict = is_squarefree_f(g);
        report["ring"] = "F_q[t][x]";
        report["is_squarefree"] = verdict.is_squarefree;
        report["input_zero"] = false;
        report["witness"] =
            verdict.witness ? Json(to_string(*verdict.witness)) : Json(nullptr);
      }
    } else if (*cmd_cond) {
      pick(cmd_cond);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      auto [f, spec] = parse_family(field);
      report["field"] = field_json(field.get());
      report["f"] = to_string(f);
      report["spec"] = spec_json(spec);
      report["conditions"] = conditions_json(validate_conditions(f, spec));
      report["bounds"] = bounds_json(compute_bounds(f, spec));
    } else if (*cmd_buildp) {
      pick(cmd_buildp);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      auto [f, spec] = parse_family(field);
      const VanishingPoly vp = build_vanishing_poly(f, spec);
      const Json payload = build_p_json(field.get(), f, spec, vp);
      for (const auto& [k, v] : payload.items()) report[k] = v;
    } else if (*cmd_count) {
      pick(cmd_count);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      auto [f, spec] = parse_family(field);
      harness_opts();
      opts.emit_grid = !grid_path.empty();
      const CountReport rep = count_sparse(f, spec, opts);
      const Json payload = count_report_json(field.get(), f, spec, rep);
      for (const auto& [k, v] : payload.items()) report[k] = v;
      if (!grid_path.empty()) {
        std::ofstream gout(grid_path);
        if (!gout)
          throw std::invalid_argument("cannot open grid path " + grid_path);
        gout << grid_csv(rep, 2 * spec.d);
      }
      checks_pass = rep.superset_check &&
                    (!rep.vp.conditions.overall || rep.bound_check);
    } else if (*cmd_box) {
      pick(cmd_box);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      const XPoly f = parse_xpoly_infer(field, f_src);
      const BoxReport rep = count_monic_box(f, box_m, harness_opts());
      const Json payload = box_report_json(field.get(), f, rep);
      for (const auto& [k, v] : payload.items()) report[k] = v;
      checks_pass = rep.decomposition_check;
    } else if (*cmd_sweep) {
      pick(cmd_sweep);
      report["config"] = detail::config_json(cfg);
      const SweepTable table =
          frequency_sweep(f_src, a_src, b_src, c_src, q_list, harness_opts());
      const Json payload = sweep_json(f_src, a_src, b_src, c_src, table);
      for (const auto& [k, v] : payload.items()) report[k] = v;
      checks_pass = table.all_ok();
    } else if (*cmd_cex) {
      pick(cmd_cex);
      report["config"] = detail::config_json(cfg);
      Field field = FieldDescriptor::from_spec(field_spec, cfg.max_q);
      const CounterexampleReport rep =
          run_counterexamples(field, harness_opts());
      report["field"] = field_json(field.get());
      Json scenarios = Json::array();
      {
        Json s;
        s["name"] = "gcd";
        s["f"] = "x^2 + t*x";
        s["sqf_count"] = rep.gcd_scenario.sqf_count;
        s["total"] = rep.gcd_scenario.total;
        s["pass"] = rep.gcd_pass;
        scenarios.push_back(s);
      }
      {
        Json s;
        s["name"] = "frobenius";
        s["f"] = "x + " + std::to_string(field->q() - 1) + "*t";
        s["sqf_count"] = rep.frobenius_scenario.sqf_count;
        s["total"] = rep.frobenius_scenario.total;
        s["pass"] = rep.frobenius_pass;
        scenarios.push_back(s);
      }
      report["scenarios"] = scenarios;
      report["pass"] = rep.gcd_pass && rep.frobenius_pass;
      checks_pass = rep.gcd_pass && rep.frobenius_pass;
    } else if (*cmd_verify) {
      pick(cmd_verify);
      text_mode = true;
      std::ostringstream os;
      checks_pass = print_acceptance(os);
      text_output = os.str();
    }

    result.output = text_mode ? text_output : report.dump(2) + "\n";
    result.exit_code = checks_pass ? 0 : 1;
    if (!out_path.empty()) {
      std::ofstream fout(out_path);
      if (!fout)
        throw std::invalid_argument("cannot open output path " + out_path);
      fout << result.output;
      result.output.clear();
    }
  } catch (const InternalError& e) {
    result.exit_code = 3;
    result.output = std::string("internal error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.output = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace sqfval
