#include "asics/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "asics/error.hpp"
#include "asics/selective.hpp"
#include "asics/selftest.hpp"

namespace asics::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt6(double v) { return fmt(v, 6); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string case_label(double rho) {
  if (rho == 0.0) return "1";
  if (rho == 0.5) return "2";
  return "";
}

int emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out, std::ostream& err) {
  if (!path) {
    out << text;
    return ok;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << *path << '\n';
    return usage;
  }
  file << text;
  return ok;
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "'");
}

unsigned threads_from_string(const std::string& s) {
  if (s == "auto") return std::max(1u, std::thread::hardware_concurrency());
  std::size_t used = 0;
  const long v = std::stol(s, &used);
  if (used != s.size() || v < 1) throw std::invalid_argument("threads must be a positive integer or 'auto'");
  return static_cast<unsigned>(v);
}

std::string flags_of(const SelectiveTest& sel, const SelectiveTest& nom, double alpha) {
  std::vector<std::string> flags;
  if (sel.separation_flag) flags.emplace_back("separated");
  if (sel.saturated) flags.emplace_back("saturated");
  if (sel.adjusted_p <= alpha) flags.emplace_back("selective_reject");
  if (nom.adjusted_p <= alpha) flags.emplace_back("nominal_reject");
  std::string joined;
  for (const auto& f : flags) joined += (joined.empty() ? "" : ";") + f;
  return joined;
}

}  // namespace

std::vector<SimScenario> expand_grid(const SimulateConfig& cfg) {
  if (cfg.n.empty() || cfg.d.empty() || cfg.rho.empty() || cfg.pattern.empty() || cfg.method.empty() ||
      cfg.k.empty())
    throw std::invalid_argument("every grid dimension needs at least one value");
  std::vector<SimScenario> cells;
  for (double rho : cfg.rho)
    for (auto d : cfg.d)
      for (auto n : cfg.n)
        for (auto method : cfg.method)
          for (auto k : cfg.k)
            for (auto pattern : cfg.pattern) {
              SimScenario sc;
              sc.n = n;
              sc.d = d;
              sc.rho = rho;
              sc.pattern = pattern;
              sc.k = k;
              sc.runs = cfg.runs;
              sc.alpha = cfg.alpha;
              sc.master_seed = cfg.seed;
              sc.method = method;
              validate(sc);
              cells.push_back(sc);
            }
  return cells;
}

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err) {
  Dataset raw;
  try {
    std::ifstream in(cfg.input_path);
    if (!in) {
      err << "error: cannot open " << cfg.input_path << '\n';
      return usage;
    }
    raw = parse_libsvm(in);
    validate(raw);
  } catch (const ParseError& e) {
    err << "error: " << cfg.input_path << ": " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  if (cfg.k < 1 || cfg.k > raw.d()) {
    err << "error: --k must lie in [1, " << raw.d() << "]\n";
    return usage;
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    err << "error: --alpha must lie in (0, 1)\n";
    return usage;
  }

  const Standardized st = standardize(raw);
  if (!st.constant_columns.empty()) {
    err << "warning: constant columns:";
    for (auto j : st.constant_columns) err << ' ' << j + 1;
    err << '\n';
  }

  InferenceOptions opts;
  opts.alpha = cfg.alpha;
  SelectiveReport sel;
  SelectiveReport nom;
  try {
    sel = run_asics(st.data, cfg.k, opts);
    nom = run_nominal(st.data, cfg.k, opts);
  } catch (const SingularDesign& e) {
    err << "error: singular design: " << e.what() << '\n';
    return numeric;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return numeric;
  }

  const double root_n = std::sqrt(static_cast<double>(st.data.n()));
  std::ostringstream text;
  json rows = json::array();
  if (cfg.format == Format::csv) text << kAnalyzeHeader << '\n';
  for (std::size_t i = 0; i < sel.tests.size(); ++i) {
    const auto& a = sel.tests[i];
    const auto& b = nom.tests[i];
    const double z = sel.selection.z(a.feature_index);
    const int sign = sel.selection.signs[i];
    const double beta_hat = a.t_stat / root_n;
    const std::string flags = flags_of(a, b, cfg.alpha);
    if (cfg.format == Format::csv) {
      text << a.feature_index + 1 << ',' << fmt(z, 10) << ',' << sign << ',' << fmt(beta_hat, 10) << ','
           << fmt(a.t_stat, 10) << ',' << fmt(a.lower, 10) << ',' << fmt(a.upper, 10) << ',' << fmt(a.p_value, 10)
           << ',' << fmt(a.adjusted_p, 10) << ',' << fmt(b.p_value, 10) << ',' << fmt(b.adjusted_p, 10) << ','
           << flags << '\n';
    } else {
      rows.push_back({{"feature", a.feature_index + 1},
                      {"z", z},
                      {"sign", sign},
                      {"beta_hat", beta_hat},
                      {"t_stat", a.t_stat},
                      {"lower", number_or_null(a.lower)},
                      {"upper", number_or_null(a.upper)},
                      {"p_selective", a.p_value},
                      {"p_selective_adj", a.adjusted_p},
                      {"p_nominal", b.p_value},
                      {"p_nominal_adj", b.adjusted_p},
                      {"flags", flags}});
    }
  }
  if (cfg.format == Format::json) {
    json doc{{"n", st.data.n()}, {"d", st.data.d()}, {"k", cfg.k}, {"alpha", cfg.alpha}, {"rows", rows}};
    json constant = json::array();
    for (auto j : st.constant_columns) constant.push_back(j + 1);
    doc["constant_columns"] = constant;
    text << doc.dump(2) << '\n';
  }
  return emit(text.str(), cfg.out_path, out, err);
}

int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<SimScenario> cells;
  try {
    cells = expand_grid(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: invalid grid: " << e.what() << '\n';
    return usage;
  }

  std::ostringstream text;
  json rows = json::array();
  if (cfg.format == Format::csv) text << kSimulateHeader << '\n';
  for (const auto& sc : cells) {
    const SimMetrics m = run_scenario(sc, cfg.threads);
    if (cfg.format == Format::csv) {
      text << case_label(sc.rho) << ',' << fmt6(sc.rho) << ',' << sc.d << ',' << sc.n << ',' << to_string(sc.method)
           << ',' << sc.k << ',' << to_string(sc.pattern) << ',' << fmt6(sc.alpha) << ',' << fmt6(m.rejection_rate)
           << ',' << fmt6(m.rejection_sd) << ',' << fmt6(m.fwer) << ',' << fmt6(m.power) << ','
           << fmt6(m.separation_rate) << ',' << m.runs_completed << ',' << sc.master_seed << '\n';
    } else {
      const auto six = [](double v) { return std::stod(fmt6(v)); };
      rows.push_back({{"case", case_label(sc.rho)},
                      {"rho", six(sc.rho)},
                      {"d", sc.d},
                      {"n", sc.n},
                      {"method", std::string(to_string(sc.method))},
                      {"k", sc.k},
                      {"pattern", std::string(to_string(sc.pattern))},
                      {"alpha", six(sc.alpha)},
                      {"rejection_rate", six(m.rejection_rate)},
                      {"rejection_sd", six(m.rejection_sd)},
                      {"fwer", six(m.fwer)},
                      {"power", six(m.power)},
                      {"separation_rate", six(m.separation_rate)},
                      {"runs", m.runs_completed},
                      {"seed", sc.master_seed}});
    }
  }
  if (cfg.format == Format::json) text << rows.dump(2) << '\n';
  return emit(text.str(), cfg.out_path, out, err);
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
  const auto results = run_selftest();
  bool all = true;
  double total = 0.0;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%s %-30s cases=%d worst=%.3g time=%.2fs\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.cases, r.worst_error, r.seconds);
    out << line;
    all = all && r.passed;
    total += r.seconds;
  }
  if (total > 60.0) err << "warning: selftest took " << fmt(total, 3) << "s (budget 60s)\n";
  return all ? ok : selftest_failed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective inference for logistic regression after marginal screening", "asics"};
  app.require_subcommand(1);

  AnalyzeConfig acfg;
  std::string aformat = "csv";
  std::string aout;
  auto* analyze = app.add_subcommand("analyze", "Selective and nominal p-values for a LIBSVM dataset");
  analyze->add_option("--input", acfg.input_path, "LIBSVM file")->required();
  analyze->add_option("--k", acfg.k, "Number of features to select")->required();
  analyze->add_option("--alpha", acfg.alpha, "Significance level")->required();
  analyze->add_option("--format", aformat, "csv or json");
  analyze->add_option("--out", aout, "Output path (default stdout)");

  SimulateConfig scfg;
  std::vector<std::string> patterns{"null"};
  std::vector<std::string> methods;
  std::string sformat = "csv";
  std::string sout;
  std::string threads = "1";
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo error rates and power over a scenario grid");
  simulate->add_option("--n", scfg.n, "Sample sizes")->required()->delimiter(',');
  simulate->add_option("--d", scfg.d, "Dimensions")->required()->delimiter(',');
  simulate->add_option("--rho", scfg.rho, "AR(1) correlations")->required()->delimiter(',');
  simulate->add_option("--pattern", patterns, "null, model1, model2")->delimiter(',');
  simulate->add_option("--method", methods, "asics, ds, nt")->required()->delimiter(',');
  simulate->add_option("--k", scfg.k, "Selection sizes")->required()->delimiter(',');
  simulate->add_option("--runs", scfg.runs, "Replicates per cell")->required();
  simulate->add_option("--seed", scfg.seed, "Master seed")->required();
  simulate->add_option("--alpha", scfg.alpha, "Significance level");
  simulate->add_option("--threads", threads, "Worker threads or 'auto'");
  simulate->add_option("--format", sformat, "csv or json");
  simulate->add_option("--out", sout, "Output path (default stdout)");

  app.add_subcommand("selftest", "Run the embedded oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return usage;
  }

  try {
    if (analyze->parsed()) {
      acfg.format = format_from_string(aformat);
      if (!aout.empty()) acfg.out_path = aout;
      return cmd_analyze(acfg, out, err);
    }
    if (simulate->parsed()) {
      for (const auto& p : patterns) scfg.pattern.push_back(pattern_from_string(p));
      for (const auto& m : methods) scfg.method.push_back(method_from_string(m));
      scfg.threads = threads_from_string(threads);
      scfg.format = format_from_string(sformat);
      if (!sout.empty()) scfg.out_path = sout;
      return cmd_simulate(scfg, out, err);
    }
    return cmd_selftest(out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"asics"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace asics::cli
