// normlab command line: scenario ingestion, norm estimation, theorem
// verification, twisting, formal adjoints, demos and seeded batches.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normlab/normlab.hpp"

namespace fs = std::filesystem;
using namespace normlab;

namespace {

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "inf" || tok == "Inf" || tok == "INF") {
      out.push_back(kInfinity);
    } else {
      try {
        out.push_back(std::stod(tok));
      } catch (...) {
        throw ParseError("bad exponent token '" + tok + "' (use \"1\", \"inf\" or a decimal)");
      }
    }
    check_p(out.back());
  }
  if (out.empty()) throw ParseError("empty exponent list");
  return out;
}

std::vector<std::string> parse_checks(const std::string& text) {
  if (text == "all") return kAllChecks;
  std::vector<std::string> out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (std::find(kAllChecks.begin(), kAllChecks.end(), tok) == kAllChecks.end())
      throw UnknownCommandError("unknown check '" + tok + "'");
    out.push_back(tok);
  }
  if (out.empty()) throw UnknownCommandError("empty check list");
  return out;
}

void emit(const std::string& out_dir, const std::string& filename, const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content << "\n";
    return;
  }
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / filename, std::ios::binary);
  if (!f) throw IoError("cannot write " + (fs::path(out_dir) / filename).string());
  f << content;
  std::cerr << "wrote " << (fs::path(out_dir) / filename).string() << "\n";
}

std::string outcomes_json(const std::vector<CheckOutcome>& outcomes) {
  json j = json::array();
  for (const auto& o : outcomes) j.push_back(outcome_to_json(o));
  return j.dump(2);
}

std::string outcomes_csv(const std::vector<CheckOutcome>& outcomes) {
  std::string out = reports_csv_header() + "\n";
  for (const auto& o : outcomes) {
    if (o.report)
      out += report_csv_row(*o.report) + "\n";
    else
      out += o.name + ",,,,skipped(" + o.skip_code + ")\n";
  }
  return out;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

int run_demo(const AscentOptions& opts) {
  std::cout << "== running scenario: Z2 swapping two points, a_e=(1,2), a_s=(3,1), uniform mu ==\n";
  Scenario s = running_scenario();
  for (double p : {1.0, 2.0, kInfinity}) {
    NormBounds nb = norm_p(realize(s.element, p), opts);
    std::cout << "  ||b||_" << detail::format_p(p) << " = " << format_double(nb.upper) << "  ["
              << nb.upper_method << "]\n";
  }
  auto outcomes = run_suite(s, kAllChecks, opts);
  bool ok = true;
  for (const auto& o : outcomes) {
    if (!o.report) {
      std::cout << "  " << o.name << ": skipped (" << o.skip_code << ")\n";
      continue;
    }
    std::cout << "  " << o.report->claim << ": " << (o.report->passed ? "pass" : "FAIL")
              << "  (discrepancy " << short_double(o.report->discrepancy) << ", tolerance "
              << short_double(o.report->tolerance) << ")\n";
    ok = ok && o.report->passed;
  }

  std::cout << "== counterexample: Z2 acting trivially (not free), b = T_e - T_s ==\n";
  Scenario c = counterexample_scenario();
  VerificationReport star = check_property_star(c.element, 2.0, opts);
  std::cout << "  " << star.claim << ": " << (star.passed ? "unexpectedly passed" : "expected failure: property (*)")
            << "  (||b|| = " << short_double(star.measured[0].value)
            << " < ||a_e|| = " << short_double(star.measured[1].value) << ")\n";
  std::cout << "  hypotheses: free_action=" << star.hypotheses.at("free_action") << "\n";
  bool counter_ok = !star.passed && star.hypotheses.at("free_action") == "false";
  std::cout << (ok && counter_ok ? "demo: all checks behaved as expected\n"
                                 : "demo: UNEXPECTED RESULTS\n");
  return ok && counter_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for algebras of weighted composition operators on finite measured group actions"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string p_list = "1,2,inf";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string checks = "all";
  std::string out_dir;
  std::string format = "json";
  int restarts = 64;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--seed", seed, "seed override (default: scenario seed)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--out", out_dir, "output directory (default: stdout)");
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--restarts", restarts, "ascent restarts for randomized lower bounds");
  };

  auto* cmd_norm = app.add_subcommand("norm", "norm bounds of the realized element for each p");
  add_common(cmd_norm, true);
  cmd_norm->add_option("--p", p_list, "comma separated exponents: \"1\", \"inf\", decimals");

  auto* cmd_verify = app.add_subcommand("verify", "run theorem checkers and emit reports");
  add_common(cmd_verify, true);
  cmd_verify->add_option("--checks", checks, "comma separated checker names, or \"all\"");
  std::string verify_p_list;
  cmd_verify->add_option("--p", verify_p_list,
                         "exponent set for the checkers (inequality checkers accept only 1, 2, inf)");

  auto* cmd_twist = app.add_subcommand("twist", "emit the twisted element per character");
  add_common(cmd_twist, true);

  auto* cmd_adjoint = app.add_subcommand("adjoint", "emit the formal adjoint matrix");
  add_common(cmd_adjoint, true);

  auto* cmd_demo = app.add_subcommand("demo", "built-in running scenario and counterexample");
  cmd_demo->add_option("--restarts", restarts, "ascent restarts");

  auto* cmd_batch = app.add_subcommand("batch", "run N seeded random scenarios through the verify suite");
  std::string group_desc = "cyclic:3";
  int points = 6, fiber = 1, support = 2, count = 10;
  add_common(cmd_batch, false);
  cmd_batch->add_option("--group", group_desc, "group descriptor");
  cmd_batch->add_option("--points", points, "number of points (multiple of the group order)");
  cmd_batch->add_option("--fiber", fiber, "fiber dimension d");
  cmd_batch->add_option("--support", support, "support size");
  cmd_batch->add_option("--count", count, "number of scenarios");
  cmd_batch->add_option("--checks", checks, "comma separated checker names, or \"all\"");

  CLI11_PARSE(app, argc, argv);

  try {
    AscentOptions opts;
    opts.restarts = restarts;

    if (cmd_demo->parsed()) return run_demo(opts);

    if (cmd_batch->parsed()) {
      BatchSpec spec;
      spec.group_descriptor = group_desc;
      spec.points = points;
      spec.dim = fiber;
      spec.support = support;
      spec.count = count;
      spec.seed = seed_given ? seed : 1;
      spec.checks = parse_checks(checks);
      auto runs = run_batch(spec, opts);
      if (format == "csv") {
        emit(out_dir, "batch_summary.csv", batch_to_csv(runs));
      } else {
        emit(out_dir, "batch_reports.json", batch_to_json(runs).dump(2));
        if (!out_dir.empty()) emit(out_dir, "batch_summary.csv", batch_to_csv(runs));
      }
      bool ok = true;
      for (const auto& run : runs) ok = ok && outcomes_ok(run.outcomes);
      return ok ? 0 : 1;
    }

    Scenario s = load_scenario(scenario_path);
    if (seed_given) s.seed = seed;

    if (cmd_norm->parsed()) {
      auto ps = parse_p_list(p_list);
      if (format == "csv") {
        std::string csv = "p,lower,upper,exact,lower_method,upper_method\n";
        for (double p : ps) {
          NormBounds nb = norm_p(realize(s.element, p), opts);
          csv += detail::format_p(p) + "," + format_double(nb.lower) + "," + format_double(nb.upper) +
                 "," + (nb.exact ? "true" : "false") + "," + nb.lower_method + "," + nb.upper_method + "\n";
        }
        emit(out_dir, "norms.csv", csv);
      } else {
        json j = json::array();
        for (double p : ps) {
          NormBounds nb = norm_p(realize(s.element, p), opts);
          json row = bounds_to_json(nb);
          row["p"] = detail::format_p(p);
          j.push_back(std::move(row));
        }
        emit(out_dir, "norms.json", j.dump(2));
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      auto names = parse_checks(checks);
      std::vector<CheckOutcome> outcomes;
      if (verify_p_list.empty()) {
        outcomes = run_suite(s, names, opts);
      } else {
        auto ps = parse_p_list(verify_p_list);
        outcomes = run_suite(s, names, opts, ps, ps);
      }
      if (format == "csv")
        emit(out_dir, "reports.csv", outcomes_csv(outcomes));
      else
        emit(out_dir, "reports.json", outcomes_json(outcomes));
      return outcomes_ok(outcomes) ? 0 : 1;
    }

    if (cmd_twist->parsed()) {
      if (!is_abelian(*s.group)) throw NonAbelianGroupError("twist: acting group is not abelian");
      auto chars = characters(*s.group);
      json j = json::array();
      for (size_t i = 0; i < chars.size(); ++i) {
        json entry;
        json values = json::array();
        for (int g = 0; g < s.group->order; ++g)
          values.push_back(json::array({chars[i].value(g).real(), chars[i].value(g).imag()}));
        entry["character"] = std::move(values);
        Scenario twisted = s;
        twisted.element = twist(s.element, chars[i]);
        twisted.label = s.label + "/twist-chi" + std::to_string(i);
        entry["scenario"] = save_scenario(twisted);
        j.push_back(std::move(entry));
      }
      emit(out_dir, "twist.json", j.dump(2));
      return 0;
    }

    if (cmd_adjoint->parsed()) {
      Realization S = formal_adjoint_matrix(s.element);
      if (format == "csv")
        emit(out_dir, "adjoint.csv", realization_to_csv(S));
      else
        emit(out_dir, "adjoint.json", realization_to_json(S).dump(2));
      return 0;
    }

    throw UnknownCommandError("no command given");
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
